#include "coarse/classify.hpp"

#include <algorithm>
#include <climits>
#include <optional>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

// Displacement of g at p, or nothing when the image leaves the model.
std::optional<long long> disp_at(const SpacePtr& sp, const Isometry& g, const Point& p) {
    try {
        return sp->idist(p, g.apply(p));
    } catch (const CoarseError& e) {
        if (e.kind == ErrKind::HorizonExceeded) return std::nullopt;
        throw;
    }
}

struct Descent {
    Point at;
    long long disp = 0;
    // true when the walk stopped strictly inside the truncation with every
    // neighbor probe defined, or when it found a fixed point
    bool certified = false;
};

// Greedy walk from the base point, always stepping to the first neighbor with
// strictly smaller displacement. Displacement is integer valued, so the walk
// takes at most disp(base) steps.
Descent descend(const SpacePtr& sp, const Isometry& g) {
    Point cur = sp->base();
    auto d0 = disp_at(sp, g, cur);
    if (!d0) fail(ErrKind::HorizonExceeded, "cannot evaluate the isometry at the base point");
    long long cd = *d0;
    bool clean = true;
    while (cd > 0) {
        bool moved = false;
        clean = true;
        for (const Point& nb : sp->neighbors(cur)) {
            auto dn = disp_at(sp, g, nb);
            if (!dn) {
                clean = false;
                continue;
            }
            if (*dn < cd) {
                cur = nb;
                cd = *dn;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    bool interior = sp->frontier_depth(cur) >= 1;
    return {cur, cd, cd == 0 || (clean && interior)};
}

bool sigma_is_identity(const Isometry& g) {
    for (size_t i = 0; i < g.sigma.size(); ++i)
        if (g.sigma[i] != static_cast<int>(i)) return false;
    return true;
}

long long sigma_order(const Isometry& g) {
    std::vector<int> cur = g.sigma;
    long long k = 1;
    auto is_id = [](const std::vector<int>& s) {
        for (size_t i = 0; i < s.size(); ++i)
            if (s[i] != static_cast<int>(i)) return false;
        return true;
    };
    while (!is_id(cur)) {
        std::vector<int> nxt(cur.size());
        for (size_t i = 0; i < cur.size(); ++i) nxt[i] = g.sigma[cur[i]];
        cur = nxt;
        if (++k > 720) fail(ErrKind::BadArgument, "factor permutation order out of range");
    }
    return k;
}

// Deepest orbit point g^h(x0) with h <= horizon, along with h.
std::pair<Point, long long> deepest_iterate(const SpacePtr& sp, const Isometry& g,
                                            const Point& x0, long long horizon) {
    Point x = x0;
    long long h = 0;
    for (long long n = 1; n <= horizon; ++n) {
        try {
            x = g.apply(x);
        } catch (const CoarseError& e) {
            if (e.kind == ErrKind::HorizonExceeded) break;
            throw;
        }
        h = n;
    }
    (void)sp;
    return {x, h};
}

} // namespace

TauReport translation_length_report(const SpacePtr& sp, const Isometry& g, long long horizon) {
    if (horizon < 2) fail(ErrKind::BadArgument, "horizon must be at least 2");

    if (g.kind == IsoKind::TupleIso) {
        if (!sigma_is_identity(g)) {
            // reduce to the smallest power that stops permuting factors
            long long k = sigma_order(g);
            TauReport r = translation_length_report(sp, power(g, k), horizon);
            r.tau /= k;
            r.error_bar /= k;
            return r;
        }
        TauReport out;
        out.exact = true;
        std::vector<Point> wit;
        for (size_t i = 0; i < g.parts.size(); ++i) {
            TauReport ri = translation_length_report(sp->factors[i], g.parts[i], horizon);
            out.exact = out.exact && ri.exact;
            if (sp->pnorm == 1) {
                out.tau += ri.tau;
                out.error_bar += ri.error_bar;
            } else {
                out.tau = rat_max(out.tau, ri.tau);
                out.error_bar = rat_max(out.error_bar, ri.error_bar);
            }
            wit.push_back(ri.witness);
        }
        if (out.exact) out.error_bar = Rat(0);
        out.witness = Point::make_tuple(sp->id, wit);
        return out;
    }

    bool convex = sp->kind == SpaceKind::RegularTree || sp->kind == SpaceKind::BinTree ||
                  sp->kind == SpaceKind::Horoball;
    Descent dr = descend(sp, g);
    // a dyadic scaling map shifts every level by s, so no point moves less
    // than |s|; a witness achieving that is exact even at a truncation cut
    if (g.kind == IsoKind::DyadicAffine && g.s != 0) {
        long long floor_disp = g.s > 0 ? g.s : -g.s;
        if (dr.disp == floor_disp) return {Rat(floor_disp), true, Rat(0), dr.at};
    }
    if (convex && dr.certified) return {Rat(dr.disp), true, Rat(0), dr.at};

    // best displacement point for the error bar; exhaustive where affordable
    Point best = dr.at;
    long long best_disp = dr.disp;
    if (sp->enumerable()) {
        for (const Point& v : sp->vertices()) {
            auto dv = disp_at(sp, g, v);
            if (dv && *dv < best_disp) {
                best = v;
                best_disp = *dv;
            }
        }
    }
    if (best_disp == 0) return {Rat(0), true, Rat(0), best};

    Point x0 = sp->base();
    auto [xh, h] = deepest_iterate(sp, g, x0, horizon);
    if (h < 2) fail(ErrKind::HorizonExceeded, "cannot iterate the isometry twice from the base point");
    TauReport out;
    out.tau = Rat(sp->idist(x0, xh), h);
    out.exact = false;
    out.error_bar = Rat(2 * sp->idist(x0, best), h);
    out.witness = best;
    return out;
}

Rat translation_length(const SpacePtr& sp, const Isometry& g, long long horizon) {
    return translation_length_report(sp, g, horizon).tau;
}

const char* iso_verdict_name(IsoVerdict v) {
    switch (v) {
        case IsoVerdict::Elliptic: return "elliptic";
        case IsoVerdict::Loxodromic: return "loxodromic";
        case IsoVerdict::Parabolic: return "parabolic";
        case IsoVerdict::Unresolved: return "unresolved";
    }
    return "?";
}

const char* elliptic_sub_name(EllipticSub s) {
    switch (s) {
        case EllipticSub::None: return "none";
        case EllipticSub::Tremble: return "tremble";
        case EllipticSub::Rotation: return "rotation";
        case EllipticSub::Rift: return "rift";
        case EllipticSub::Unresolved: return "unresolved";
    }
    return "?";
}

std::vector<Rat> default_L_grid() { return {Rat(0), Rat(1), Rat(2), Rat(4), Rat(8)}; }

IsoClass classify_isometry(const SpacePtr& sp, const Isometry& g, long long horizon,
                           const std::vector<Rat>& L_grid) {
    if (horizon < 2) fail(ErrKind::BadArgument, "horizon must be at least 2");
    if (g.space->id != sp->id) fail(ErrKind::MismatchedSpace, "isometry acts on a different space");
    std::vector<Rat> grid = L_grid.empty() ? default_L_grid() : L_grid;

    IsoClass out;
    out.horizon = horizon;

    // orbit of the base point, recorded as displacement evidence
    bool orbit_truncated = false;
    {
        Point x0 = sp->base();
        Point x = x0;
        for (long long n = 1; n <= horizon; ++n) {
            try {
                x = g.apply(x);
            } catch (const CoarseError& e) {
                if (e.kind != ErrKind::HorizonExceeded) throw;
                orbit_truncated = true;
                break;
            }
            out.evidence.push_back(Rat(sp->idist(x0, x)));
        }
    }

    if (g.is_identity()) {
        out.kind = IsoVerdict::Elliptic;
        out.sub = EllipticSub::Tremble;
        out.tau = Rat(0);
        out.tau_exact = true;
        out.note = "identity: every point is fixed";
        return out;
    }

    if (g.kind == IsoKind::BaseShift && !sp->cycle_base && g.shift != 0) {
        // shear along a line-based horoball: orbits sink toward the cut,
        // stable translation is zero, and the cusp direction is invariant
        out.kind = IsoVerdict::Parabolic;
        out.tau = Rat(0);
        out.tau_exact = true;
        out.note = "horoball shear: zero stable translation with an invariant cusp direction";
        return out;
    }

    TauReport tr;
    try {
        tr = translation_length_report(sp, g, horizon);
    } catch (const CoarseError& e) {
        if (e.kind != ErrKind::HorizonExceeded) throw;
        out.kind = IsoVerdict::Unresolved;
        out.note = "displacement is not measurable anywhere reachable in this truncation";
        return out;
    }

    // Minimal displacement equals the stable translation length on trees, but
    // a bounded-orbit isometry of a model with large-scale cycles can also
    // move every point. Only accept a loxodromic verdict when the orbit grows
    // linearly at rate tau, as a true axis forces.
    bool orbit_linear = true;
    for (size_t i = 0; i < out.evidence.size(); ++i)
        if (out.evidence[i] < Rat(static_cast<long long>(i) + 1) * tr.tau) {
            orbit_linear = false;
            break;
        }
    if (tr.exact && tr.tau > Rat(0) && orbit_linear) {
        out.kind = IsoVerdict::Loxodromic;
        out.tau = tr.tau;
        out.tau_exact = true;
        out.note = "certified minimal displacement " + rat_str(tr.tau) + " at " +
                   point_name(tr.witness);
        return out;
    }

    // a fixed point certifies elliptic on its own; otherwise an orbit that
    // outruns the truncation leaves no certificate either way
    bool fixed_point = tr.exact && tr.tau == Rat(0);
    if (!fixed_point && orbit_truncated) {
        out.kind = IsoVerdict::Unresolved;
        out.note = "orbit outruns the truncation without a displacement or cusp certificate";
        return out;
    }

    long long collar = 0;
    try {
        collar = g.root_displacement();
    } catch (const CoarseError&) {
        out.kind = IsoVerdict::Unresolved;
        out.note = "base point displacement is not measurable in this truncation";
        return out;
    }

    // powers of g up to the horizon are the movers of the census
    std::vector<Isometry> pows;
    {
        Isometry cur = g;
        for (long long n = 1; n <= horizon; ++n) {
            pows.push_back(cur);
            if (n == horizon) break;
            try {
                cur = compose(g, cur);
            } catch (const CoarseError&) {
                break;
            }
        }
    }

    IsoClass cen = displacement_census(sp, pows, collar, grid, fixed_point);
    out.kind = cen.kind;
    out.sub = cen.sub;
    out.tau = cen.tau;
    out.tau_exact = cen.tau_exact;
    out.note = cen.note;
    return out;
}

IsoClass displacement_census(const SpacePtr& sp, const std::vector<Isometry>& movers,
                             long long collar, const std::vector<Rat>& L_grid, bool fixed_point) {
    std::vector<Rat> grid = L_grid.empty() ? default_L_grid() : L_grid;
    IsoClass out;
    out.tau = Rat(0);
    out.tau_exact = fixed_point;

    if (!sp->enumerable()) {
        if (fixed_point) {
            out.kind = IsoVerdict::Elliptic;
            out.sub = EllipticSub::Unresolved;
            out.note = "fixed point certified; census skipped: space too large to enumerate";
        } else {
            out.kind = IsoVerdict::Unresolved;
            out.tau_exact = false;
            out.note = "no certificate within the horizon and the space is too large to census";
        }
        return out;
    }

    constexpr long long kUnbounded = 1LL << 60;
    Point base = sp->base();
    struct Row {
        long long dist;
        long long worst;
    };
    std::vector<Row> rows;
    for (const Point& v : sp->vertices()) {
        if (sp->frontier_depth(v) <= collar) continue;
        long long worst = 0;
        for (const Isometry& mv : movers) {
            try {
                worst = std::max(worst, sp->idist(v, mv.apply(v)));
            } catch (const CoarseError&) {
                worst = kUnbounded;
                break;
            }
        }
        rows.push_back({sp->idist(base, v), worst});
    }

    if (rows.empty()) {
        out.kind = fixed_point ? IsoVerdict::Elliptic : IsoVerdict::Unresolved;
        out.sub = fixed_point ? EllipticSub::Unresolved : EllipticSub::None;
        out.tau_exact = fixed_point;
        out.note = "no census points clear the frontier collar";
        return out;
    }

    long long cap = 0;
    for (const Row& r : rows) cap = std::max(cap, r.dist);

    bool any_full = false;
    bool any_edge = false;
    Rat full_at(0);
    Rat edge_at(0);
    for (const Rat& L : grid) {
        size_t members = 0;
        bool edge = false;
        for (const Row& r : rows) {
            if (Rat(r.worst) > L) continue;
            ++members;
            if (r.dist == cap && cap >= 1) edge = true;
        }
        if (members == rows.size()) {
            if (!any_full) full_at = L;
            any_full = true;
        } else if (edge) {
            if (!any_edge) edge_at = L;
            any_edge = true;
        }
    }

    out.kind = IsoVerdict::Elliptic;
    if (any_full) {
        out.sub = EllipticSub::Tremble;
        out.note = "every census point moves at most " + rat_str(full_at) + " under all movers";
    } else if (any_edge) {
        out.sub = EllipticSub::Rift;
        out.note = "displacement level " + rat_str(edge_at) +
                   " reaches the census edge without covering it (frontier proxy)";
    } else {
        out.sub = EllipticSub::Rotation;
        out.note = "every displacement level set stays strictly inside the census region";
    }
    return out;
}

namespace {

// Forward orbit of the witness until the model ends, at most horizon steps.
std::vector<Point> orbit_points(const Isometry& g, const Point& start, long long horizon) {
    std::vector<Point> pts{start};
    Point p = start;
    for (long long n = 1; n <= horizon; ++n) {
        try {
            p = g.apply(p);
        } catch (const CoarseError& e) {
            if (e.kind == ErrKind::HorizonExceeded) break;
            throw;
        }
        pts.push_back(p);
    }
    return pts;
}

// The periodic end of a forward word orbit: find the least period p with
// w[n-p] a prefix of w[n] and w[n-2p] a prefix of w[n-p], both extended by the
// same nonempty tail, and name the end by that eventually periodic word.
Dir periodic_end(const std::vector<Point>& orbit) {
    size_t n = orbit.size() - 1;
    for (size_t p = 1; 2 * p <= n; ++p) {
        const std::string& bn = orbit[n].word;
        const std::string& b1 = orbit[n - p].word;
        const std::string& b2 = orbit[n - 2 * p].word;
        if (b1.size() >= bn.size() || b2.size() >= b1.size()) continue;
        if (bn.compare(0, b1.size(), b1) != 0) continue;
        if (b1.compare(0, b2.size(), b2) != 0) continue;
        std::string t = bn.substr(b1.size());
        if (t != b1.substr(b2.size())) continue;
        return Dir::tree_end(b2, t);
    }
    fail(ErrKind::HorizonExceeded, "orbit too short to expose the periodic end");
}

Rat pow2(long long s) {
    Rat r(1);
    for (long long i = 0; i < s; ++i) r *= 2;
    for (long long i = 0; i > s; --i) r /= 2;
    return r;
}

} // namespace

AxisReport axis(const SpacePtr& sp, const Isometry& g, long long horizon) {
    if (horizon < 2) fail(ErrKind::BadArgument, "horizon must be at least 2");
    if (g.space->id != sp->id) fail(ErrKind::MismatchedSpace, "isometry acts on a different space");

    if (g.kind == IsoKind::TupleIso) {
        if (!sigma_is_identity(g))
            fail(ErrKind::NotLoxodromic,
                 "factor-permuting product isometry: take a power with trivial permutation");
        std::vector<Dir> fwd, bwd;
        std::vector<Point> wit;
        for (size_t i = 0; i < g.parts.size(); ++i) {
            AxisReport ri = axis(sp->factors[i], g.parts[i], horizon);
            fwd.push_back(ri.forward);
            bwd.push_back(ri.backward);
            wit.push_back(ri.path.front());
        }
        Point w0 = Point::make_tuple(sp->id, wit);
        auto f = orbit_points(g, w0, horizon);
        auto b = orbit_points(invert(g), w0, horizon);
        AxisReport out;
        out.path = sp->geodesic(b.back(), f.back());
        out.forward = Dir::tuple(fwd);
        out.backward = Dir::tuple(bwd);
        return out;
    }

    if (g.kind == IsoKind::BaseShift)
        fail(ErrKind::NotLoxodromic, "horoball shear fixes a single boundary direction");

    TauReport tr = translation_length_report(sp, g, horizon);
    if (!(tr.exact && tr.tau > Rat(0)))
        fail(ErrKind::NotLoxodromic, "no certified positive translation length");

    if (g.kind == IsoKind::TreeIso) {
        Point w0 = tr.witness;
        if (w0.leaf) w0 = Point::make_word(w0.space, w0.word);
        auto f = orbit_points(g, w0, horizon);
        auto b = orbit_points(invert(g), w0, horizon);
        if (f.size() < 3 || b.size() < 3)
            fail(ErrKind::HorizonExceeded, "orbit too short to expose the periodic end");
        AxisReport out;
        out.path = sp->geodesic(b.back(), f.back());
        out.forward = periodic_end(f);
        out.backward = periodic_end(b);
        return out;
    }

    if (g.kind == IsoKind::DyadicAffine) {
        // u -> 2^s u + b fixes the residue ray of b / (1 - 2^s) and the cusp;
        // scaling up moves toward the residue ray, scaling down toward the cusp
        Rat fp = g.b / (Rat(1) - pow2(g.s));
        if (fp.denominator() % 2 == 0)
            fail(ErrKind::HorizonExceeded, "fixed residue ray lies outside the dyadic window");
        auto f = orbit_points(g, tr.witness, horizon);
        auto b = orbit_points(invert(g), tr.witness, horizon);
        AxisReport out;
        out.path = sp->geodesic(b.back(), f.back());
        out.forward = g.s > 0 ? Dir::bin_end(fp) : Dir::cusp();
        out.backward = g.s > 0 ? Dir::cusp() : Dir::bin_end(fp);
        return out;
    }

    fail(ErrKind::NotLoxodromic, "no axis for this isometry family");
}

} // namespace coarse
