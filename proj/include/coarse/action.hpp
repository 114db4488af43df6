#pragma once

#include "coarse/classify.hpp"
#include "coarse/group.hpp"

#include <string>
#include <utility>
#include <vector>

namespace coarse {

// Whole-action verdicts over a scanned ball. The limit set is never computed
// as a topological object; every boundary statement below means "among the
// axis endpoints and invariant directions witnessed in the ball", and each
// report says so via boundary_proxy.
enum class ActKind { Elliptic, Parabolic, Lineal, Quasiparabolic, GeneralType, Unresolved };

const char* act_kind_name(ActKind k);

struct LoxWitness {
    std::string word;
    Rat tau{0};
    Dir forward;
    Dir backward;
};

struct ActionClass {
    ActKind kind = ActKind::Unresolved;
    EllipticSub sub = EllipticSub::None; // refinement when kind is elliptic
    bool oriented = false;               // lineal: every element fixes both directions
    bool low_confidence = false;         // lineal issued without two distinct second endpoints
    std::vector<LoxWitness> loxodromics; // witnessed loxodromic elements (capped)
    std::vector<Dir> fixed_directions;   // directions every witness pair shares
    std::pair<std::string, std::string> independent_pair; // general-type witness words
    long long horizon = 0;
    long long ball_size = 0;
    std::string boundary_proxy = "witnessed axis ends";
    std::string note;
};

// Scans group_ball(G, n), classifies every element, and reads the action kind
// off the witnessed loxodromic endpoint pairs: disjoint pairs give general
// type; one shared pair gives lineal (oriented when no element swaps it); one
// common direction with two distinct second endpoints gives quasiparabolic,
// with a single second endpoint lineal at low confidence. With no loxodromics
// the verdict is parabolic when the base orbit meets the frontier and every
// element fixes the model's cusp, elliptic otherwise with the group-level
// displacement census deciding tremble/rotation/rift.
ActionClass classify_action(const MarkedGroup& G, long long n,
                            const std::vector<Rat>& L_grid = {});

// The geodesic ray from the base point toward dir, len edges long.
// BadArgument when the direction has no ray in this model, HorizonExceeded
// when len overruns the truncation.
std::vector<Point> ray_to(const SpacePtr& sp, const Dir& dir, long long len);

struct BusemannRow {
    std::string word;
    Rat raw{0};   // d(g x0, x_m) - d(x0, x_m) at the deepest ray point
    Rat homog{0}; // raw(g^K)/K at the deepest feasible K <= 5
    bool exact = false;
};

struct BusemannTable {
    Dir direction;
    long long ray_len = 0;
    std::vector<BusemannRow> rows; // one per ball element, ball order
    Rat defect_bound{0};           // max |raw(gh) - raw(g) - raw(h)| over scanned pairs
    Rat shift_error{0};            // measured max d(q(s - homog(g)), g q(s))
    bool exact = false;            // every row's raw agreed at ray lengths m-1 and m
};

// Tabulates the horofunction growth of every ball element along the ray to
// xi. DoesNotFixDirection if some ball element fails to fix xi on the tail.
BusemannTable busemann(const MarkedGroup& G, const Dir& xi, long long n, long long ray_len);

// max |homog(g)| over ball elements with d(x, g x) <= r
Rat busemann_spread(const MarkedGroup& G, const Dir& xi, const Point& x, const Rat& r,
                    long long n, long long ray_len);

struct UnifBoundRow {
    std::string word;
    Rat c0{0};    // 2M + 3*lambda + 3 d(g q(0), q(0))
    Rat worst{0}; // max displacement of the window points q(-w)..q(w)
    bool ok = false;
};

struct UnifBoundReport {
    Rat M{0};      // measured detour gap of the window
    Rat lambda{0}; // additive defect of the window parameterization (0: geodesic)
    std::vector<UnifBoundRow> rows;
    long long skipped = 0; // ball elements not fixing both ends pointwise
    bool all_ok = false;
};

// On a quasi-line spanned between two boundary directions, checks the
// displacement bound d(g q(j), q(j)) <= C0(g) for every ball element fixing
// both directions pointwise, across the window j in [-window, window].
UnifBoundReport unif_bound_check(const MarkedGroup& G, const Dir& forward, const Dir& backward,
                                 long long n, long long window);

// Parabolic escape diagnostic along the ray to the invariant direction:
// M(t) = largest m <= n with every element of group_ball(G, m) displacing
// the ray point q(t) by at most E. Returns (t, M(t)) for t = 0..len.
std::vector<std::pair<long long, long long>> parabolic_escape_profile(
    const MarkedGroup& G, const Dir& xi, const Rat& E, long long n, long long len);

} // namespace coarse
