#pragma once

#include <string>
#include <vector>

#include "coarse/isometry.hpp"
#include "coarse/space.hpp"

namespace coarse {

// Translation length with its provenance. On trees and horoballs the value is
// the minimal displacement found by convex descent from the base point; it is
// flagged exact when the descent stops strictly inside the truncation with
// every neighbor probe defined (displacement is convex there, so a local
// minimum is global). Everywhere else, and whenever the descent runs into the
// frontier, the value is the Fekete quotient d(g^h x0, x0)/h with the error
// bar 2 d(x0, best)/h, where best is the lowest-displacement point seen.
struct TauReport {
    Rat tau{0};
    bool exact = false;
    Rat error_bar{0};
    Point witness; // point realizing the reported (or best found) displacement
};

TauReport translation_length_report(const SpacePtr& sp, const Isometry& g, long long horizon);
Rat translation_length(const SpacePtr& sp, const Isometry& g, long long horizon);

enum class IsoVerdict { Elliptic, Loxodromic, Parabolic, Unresolved };

// Elliptic fine type from the bounded-displacement census. None is reported
// for non-elliptic verdicts; Unresolved when the census cannot run (the space
// is too large to enumerate, or iterates leave the model).
enum class EllipticSub { None, Tremble, Rotation, Rift, Unresolved };

const char* iso_verdict_name(IsoVerdict v);
const char* elliptic_sub_name(EllipticSub s);

// Classification of a single isometry on a single truncated model.
//   tau       stable translation length: 0 for elliptic and parabolic verdicts,
//             the certified minimal displacement for loxodromic ones
//   evidence  d(g^n base, base) for n = 1.. up to the horizon (stops early if
//             an iterate leaves the model)
//   note      one-line account of which rule fired; census verdicts name the
//             frontier proxy they used, since bounded models cannot observe
//             the limit behavior directly
// Verdicts are per-truncation. For a stability check, classify the same
// isometry on two truncation radii and compare; the corpus tests do exactly
// that.
struct IsoClass {
    IsoVerdict kind = IsoVerdict::Unresolved;
    EllipticSub sub = EllipticSub::None;
    Rat tau{0};
    bool tau_exact = false;
    std::vector<Rat> evidence;
    long long horizon = 0;
    std::string note;
};

// Displacement thresholds used by the elliptic census.
std::vector<Rat> default_L_grid();

// The shared displacement-census engine behind elliptic sub-verdicts. The
// movers are the powers of one isometry (classify_isometry) or a whole group
// ball (classify_action). Census points are the enumerable vertices whose
// frontier depth exceeds the collar, so every tabulated displacement is a
// distance the truncation cannot distort. Verdict off the level sets: some L
// covers every census point (tremble), some level set touches the census edge
// without covering (rift, a frontier proxy), every level set stays interior
// (rotation). fixed_point marks verdicts exact at tau = 0.
IsoClass displacement_census(const SpacePtr& sp, const std::vector<Isometry>& movers,
                             long long collar, const std::vector<Rat>& L_grid, bool fixed_point);

// Trichotomy rules, in order:
//   identity                        -> elliptic(tremble)
//   line-horoball shear, shift != 0 -> parabolic (zero stable translation,
//                                      invariant cusp direction, unbounded orbit)
//   certified minimal displacement > 0 -> loxodromic
//   otherwise census the safe region (frontier depth > root displacement):
//   for each L in the grid, O_L = points whose displacement under every power
//   up to the horizon stays <= L. Some O_L covering the whole census -> tremble;
//   else some O_L reaching the census edge -> rift; else rotation.
IsoClass classify_isometry(const SpacePtr& sp, const Isometry& g, long long horizon,
                           const std::vector<Rat>& L_grid = {});

// Invariant geodesic data of a loxodromic isometry: a geodesic segment of the
// axis through the minimal-displacement witness, plus the two fixed boundary
// directions. Tree ends come from the eventually periodic word of the forward
// orbit; dyadic scaling maps fix the cusp and the residue ray of b/(1 - 2^s);
// factor-permutation-free product isometries need every factor loxodromic and
// combine factor directions into a tuple. Throws NotLoxodromic otherwise.
struct AxisReport {
    std::vector<Point> path;
    Dir forward;
    Dir backward;
};

AxisReport axis(const SpacePtr& sp, const Isometry& g, long long horizon);

} // namespace coarse
