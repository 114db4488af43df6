#include "coarse/action.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coarse/errors.hpp"
#include "coarse/metric.hpp"

namespace coarse {

const char* act_kind_name(ActKind k) {
    switch (k) {
        case ActKind::Elliptic: return "elliptic";
        case ActKind::Parabolic: return "parabolic";
        case ActKind::Lineal: return "lineal";
        case ActKind::Quasiparabolic: return "quasiparabolic";
        case ActKind::GeneralType: return "general_type";
        case ActKind::Unresolved: return "unresolved";
    }
    return "?";
}

namespace {

// residue of a rational with odd denominator modulo 2^l, via the 2-adic
// inverse of the denominator (Newton doubling, exact in 64-bit wraparound)
long long residue_mod(const Rat& v, long long l) {
    if (l <= 0) return 0;
    unsigned long long mask = (l >= 63) ? ~0ULL : ((1ULL << l) - 1);
    unsigned long long p = static_cast<unsigned long long>(v.numerator());
    unsigned long long q = static_cast<unsigned long long>(v.denominator());
    unsigned long long inv = q; // correct mod 8 for odd q
    for (int i = 0; i < 5; ++i) inv *= 2 - q * inv;
    return static_cast<long long>((p * inv) & mask);
}

std::vector<Point> tree_ray(const SpacePtr& sp, const Dir& dir, long long len) {
    if (dir.kind != Dir::Kind::TreeEnd)
        fail(ErrKind::BadArgument, "this model's directions at infinity are tree ends");
    if (len > sp->radius)
        fail(ErrKind::HorizonExceeded, "ray length exceeds the truncation radius");
    std::string w = sp->word_reduce(dir.prefix);
    if (static_cast<long long>(w.size()) != static_cast<long long>(dir.prefix.size()))
        fail(ErrKind::BadArgument, "direction prefix is not reduced");
    while (static_cast<long long>(w.size()) < len) {
        size_t before = w.size();
        w = sp->word_mul(w, dir.tail);
        if (w.size() <= before)
            fail(ErrKind::BadArgument, "the direction does not name a geodesic ray");
    }
    std::vector<Point> out;
    for (long long j = 0; j <= len; ++j)
        out.push_back(Point::make_word(sp->id, w.substr(0, static_cast<size_t>(j))));
    return out;
}

std::vector<Point> bin_ray(const SpacePtr& sp, const Dir& dir, long long len) {
    long long half = sp->height / 2;
    if (dir.kind == Dir::Kind::Cusp) {
        if (len > half)
            fail(ErrKind::HorizonExceeded, "ray to the root end exceeds the truncation");
        std::vector<Point> out;
        for (long long j = 0; j <= len; ++j)
            out.push_back(Point::make_levelpos(sp->id, half - j, 0));
        return out;
    }
    if (dir.kind != Dir::Kind::BinEnd)
        fail(ErrKind::BadArgument, "residue tree directions are the cusp or 2-adic ends");
    if (dir.value.denominator() % 2 == 0)
        fail(ErrKind::BadArgument, "even-denominator value names no residue ray");
    // climb to the fork where the base column meets the residue ray, then
    // descend along the residues
    long long fork = 0;
    while (fork < half && residue_mod(dir.value, fork + 1) == 0) ++fork;
    long long avail = (half - fork) + (sp->height - fork);
    if (len > avail) fail(ErrKind::HorizonExceeded, "ray outruns the residue window");
    std::vector<Point> out;
    for (long long j = 0; j <= len; ++j) {
        if (j <= half - fork) {
            out.push_back(Point::make_levelpos(sp->id, half - j, 0));
        } else {
            long long lvl = fork + (j - (half - fork));
            out.push_back(Point::make_levelpos(sp->id, lvl, residue_mod(dir.value, lvl)));
        }
    }
    return out;
}

} // namespace

std::vector<Point> ray_to(const SpacePtr& sp, const Dir& dir, long long len) {
    if (len < 0) fail(ErrKind::BadArgument, "ray length must be nonnegative");
    switch (sp->kind) {
        case SpaceKind::RegularTree: return tree_ray(sp, dir, len);
        case SpaceKind::BinTree: return bin_ray(sp, dir, len);
        case SpaceKind::Horoball: {
            if (dir.kind != Dir::Kind::Cusp)
                fail(ErrKind::BadArgument, "horoball directions are the cusp only");
            if (len > sp->depth)
                fail(ErrKind::HorizonExceeded, "ray to the cusp exceeds the truncation depth");
            std::vector<Point> out;
            for (long long j = 0; j <= len; ++j)
                out.push_back(Point::make_levelpos(sp->id, j, 0));
            return out;
        }
        case SpaceKind::Product:
            fail(ErrKind::BadArgument, "product rays are taken per factor");
        default:
            fail(ErrKind::BadArgument, "this model has no directions at infinity");
    }
}

// --- whole-action classification ------------------------------------------------

namespace {

struct EndPair {
    std::string lo, hi; // sorted keys, the unordered pair identity
    Dir a, b;           // forward and backward of the first witness, in that order
    std::string word;   // first witness
};

bool pair_disjoint(const EndPair& x, const EndPair& y) {
    return x.lo != y.lo && x.lo != y.hi && x.hi != y.lo && x.hi != y.hi;
}

// a point fixed by every generator certifies the whole group elliptic; scan
// the vertex list when it is small, otherwise a capped crawl from the base
bool common_fixed_point(const MarkedGroup& G) {
    auto fixes_all = [&](const Point& v) {
        for (const auto& g : G.gens) {
            try {
                if (g.iso.apply(v) != v) return false;
            } catch (const CoarseError& e) {
                if (e.kind != ErrKind::HorizonExceeded) throw;
                return false;
            }
        }
        return true;
    };
    if (G.sp->enumerable()) {
        for (const Point& v : G.sp->vertices())
            if (fixes_all(v)) return true;
        return false;
    }
    constexpr size_t kCrawlCap = 20000;
    std::set<std::string> seen;
    std::vector<Point> queue{G.sp->base()};
    seen.insert(queue[0].key());
    for (size_t i = 0; i < queue.size() && i < kCrawlCap; ++i) {
        if (fixes_all(queue[i])) return true;
        for (const Point& w : G.sp->neighbors(queue[i]))
            if (seen.insert(w.key()).second) queue.push_back(w);
    }
    return false;
}

} // namespace

ActionClass classify_action(const MarkedGroup& G, long long n, const std::vector<Rat>& L_grid) {
    if (n < 2) fail(ErrKind::BadArgument, "horizon must be at least 2");
    auto ball = group_ball(G, n);
    const SpacePtr& sp = G.sp;

    ActionClass out;
    out.horizon = n;
    out.ball_size = static_cast<long long>(ball.size());

    constexpr size_t kWitnessCap = 16;
    std::vector<EndPair> pairs;
    long long lox_total = 0, lox_no_ends = 0;

    for (const auto& el : ball) {
        if (el.length == 0) continue;
        IsoClass ic = classify_isometry(sp, el.iso, n, L_grid);
        if (ic.kind != IsoVerdict::Loxodromic) continue;
        ++lox_total;
        AxisReport ax;
        try {
            ax = axis(sp, el.iso, n);
        } catch (const CoarseError& e) {
            if (e.kind != ErrKind::HorizonExceeded && e.kind != ErrKind::NotLoxodromic) throw;
            ++lox_no_ends;
            continue;
        }
        if (out.loxodromics.size() < kWitnessCap)
            out.loxodromics.push_back({el.word, ic.tau, ax.forward, ax.backward});
        EndPair p{ax.forward.key(), ax.backward.key(), ax.forward, ax.backward, el.word};
        if (p.hi < p.lo) std::swap(p.lo, p.hi);
        bool known = false;
        for (const auto& q : pairs)
            if (q.lo == p.lo && q.hi == p.hi) known = true;
        if (!known) pairs.push_back(std::move(p));
    }

    if (lox_total > 0 && pairs.empty()) {
        out.kind = ActKind::Unresolved;
        out.note = "loxodromic elements certified but none exposed its axis ends";
        return out;
    }

    if (!pairs.empty()) {
        if (lox_no_ends > 0) {
            out.low_confidence = true;
            out.note = std::to_string(lox_no_ends) +
                       " loxodromic element(s) without computable ends; ";
        }
        for (size_t i = 0; i < pairs.size(); ++i)
            for (size_t j = i + 1; j < pairs.size(); ++j)
                if (pair_disjoint(pairs[i], pairs[j])) {
                    out.kind = ActKind::GeneralType;
                    out.independent_pair = {pairs[i].word, pairs[j].word};
                    out.note += "independent loxodromics '" + pairs[i].word + "' and '" +
                                pairs[j].word + "' with disjoint endpoint pairs";
                    return out;
                }

        if (pairs.size() == 1) {
            out.kind = ActKind::Lineal;
            out.fixed_directions = {pairs[0].a, pairs[0].b};
            bool swapped = false, stray = false;
            for (const auto& el : ball) {
                Dir ta, tb;
                try {
                    ta = el.iso.transport(pairs[0].a);
                    tb = el.iso.transport(pairs[0].b);
                } catch (const CoarseError& e) {
                    if (e.kind != ErrKind::HorizonExceeded && e.kind != ErrKind::BadArgument)
                        throw;
                    stray = true;
                    continue;
                }
                if (ta == pairs[0].a && tb == pairs[0].b) continue;
                if (ta == pairs[0].b && tb == pairs[0].a)
                    swapped = true;
                else
                    stray = true;
            }
            out.oriented = !swapped && !stray;
            if (stray) {
                out.low_confidence = true;
                out.note += "some element moves the shared endpoint pair off itself; ";
            }
            out.note += swapped ? "all witnessed axes share one endpoint pair, swapped by "
                                  "some element"
                                : "all witnessed axes share one endpoint pair, fixed by every "
                                  "element";
            return out;
        }

        // several endpoint pairs without a disjoint couple: look for one
        // direction lying in all of them
        std::set<std::string> common{pairs[0].lo, pairs[0].hi};
        for (const auto& p : pairs) {
            std::set<std::string> keep;
            if (common.count(p.lo)) keep.insert(p.lo);
            if (common.count(p.hi)) keep.insert(p.hi);
            common = std::move(keep);
        }
        if (common.empty()) {
            out.kind = ActKind::Unresolved;
            out.note += "endpoint pairs overlap without one common direction";
            return out;
        }
        std::string ck = *common.begin();
        std::set<std::string> seconds;
        for (const auto& p : pairs) seconds.insert(p.lo == ck ? p.hi : p.lo);
        out.fixed_directions = {pairs[0].a.key() == ck ? pairs[0].a : pairs[0].b};
        if (seconds.size() >= 2) {
            out.kind = ActKind::Quasiparabolic;
            out.note += "every witnessed axis fixes one common direction, with " +
                        std::to_string(seconds.size()) + " distinct second endpoints";
        } else {
            out.kind = ActKind::Lineal;
            out.low_confidence = true;
            out.note += "one common direction but a single second endpoint witnessed";
        }
        return out;
    }

    // no loxodromic elements: decide parabolic vs elliptic
    bool unbounded = false;
    long long collar = 0;
    for (const auto& el : ball) {
        try {
            Point img = el.iso.apply(sp->base());
            collar = std::max(collar, sp->idist(sp->base(), img));
            if (sp->has_frontier() && sp->frontier_depth(img) == 0) unbounded = true;
        } catch (const CoarseError& e) {
            if (e.kind != ErrKind::HorizonExceeded) throw;
            unbounded = true;
        }
    }

    if (unbounded && (sp->kind == SpaceKind::Horoball || sp->kind == SpaceKind::BinTree)) {
        bool all_fix = true;
        for (const auto& el : ball) {
            try {
                if (el.iso.transport(Dir::cusp()) != Dir::cusp()) all_fix = false;
            } catch (const CoarseError&) {
                all_fix = false;
            }
            if (!all_fix) break;
        }
        if (all_fix) {
            out.kind = ActKind::Parabolic;
            out.fixed_directions = {Dir::cusp()};
            out.note = "no loxodromics, the base orbit meets the frontier, and every element "
                       "fixes the cusp direction";
            return out;
        }
    }

    if (unbounded)
        out.note = "orbit met the frontier without an invariant direction; census verdict may "
                   "reflect the truncation; ";

    std::vector<Isometry> movers;
    for (const auto& el : ball)
        if (el.length > 0) movers.push_back(el.iso);
    IsoClass cen = displacement_census(sp, movers, collar, L_grid, common_fixed_point(G));
    out.kind = cen.kind == IsoVerdict::Elliptic ? ActKind::Elliptic : ActKind::Unresolved;
    out.sub = cen.sub;
    out.note += cen.note;
    return out;
}

// --- busemann tables -------------------------------------------------------------

namespace {

struct RawProbe {
    Rat value{0};
    bool exact = false;
    bool feasible = false;
};

RawProbe raw_probe(const SpacePtr& sp, const std::vector<Point>& ray, const Isometry& g) {
    RawProbe out;
    Point gx;
    try {
        gx = g.apply(ray.front());
    } catch (const CoarseError& e) {
        if (e.kind != ErrKind::HorizonExceeded) throw;
        return out;
    }
    size_t m = ray.size() - 1;
    long long dm = sp->idist(gx, ray[m]) - sp->idist(ray.front(), ray[m]);
    long long dp = sp->idist(gx, ray[m - 1]) - sp->idist(ray.front(), ray[m - 1]);
    out.value = Rat(dm);
    out.exact = dm == dp;
    out.feasible = true;
    return out;
}

} // namespace

BusemannTable busemann(const MarkedGroup& G, const Dir& xi, long long n, long long ray_len) {
    if (ray_len < 2)
        fail(ErrKind::BadArgument, "ray length must be at least 2 for the stability check");
    auto ray = ray_to(G.sp, xi, ray_len);
    auto ball = group_ball(G, n);

    for (const auto& el : ball) {
        Dir img;
        try {
            img = el.iso.transport(xi);
        } catch (const CoarseError&) {
            fail(ErrKind::DoesNotFixDirection,
                 "'" + el.word + "' does not carry the direction anywhere in this model");
        }
        if (img != xi)
            fail(ErrKind::DoesNotFixDirection, "'" + el.word + "' moves the direction");
    }

    BusemannTable tb;
    tb.direction = xi;
    tb.ray_len = ray_len;
    tb.exact = true;

    std::vector<Rat> raws;
    std::vector<bool> raw_exact;
    for (const auto& el : ball) {
        RawProbe base = raw_probe(G.sp, ray, el.iso);
        if (!base.feasible)
            fail(ErrKind::HorizonExceeded,
                 "'" + el.word + "' moves the base point beyond the truncation");
        raws.push_back(base.value);
        raw_exact.push_back(base.exact);
        if (!base.exact) tb.exact = false;

        // homogenize along the deepest power whose raw value is certified,
        // falling back to the deepest feasible one
        long long J = 1;
        Rat vJ = base.value;
        bool eJ = base.exact;
        long long J_prev = 0;
        Rat v_prev(0);
        bool e_prev = false;
        Isometry p = el.iso;
        for (long long j = 2; j <= 5; ++j) {
            p = compose(el.iso, p);
            RawProbe pr = raw_probe(G.sp, ray, p);
            if (!pr.feasible) break;
            if (pr.exact || !eJ) {
                J_prev = J;
                v_prev = vJ;
                e_prev = eJ;
                J = j;
                vJ = pr.value;
                eJ = pr.exact;
            }
        }
        BusemannRow r;
        r.word = el.word;
        r.raw = base.value;
        r.homog = vJ / Rat(J);
        r.exact = eJ && e_prev && J_prev >= 1 && vJ / Rat(J) == v_prev / Rat(J_prev);
        tb.rows.push_back(std::move(r));
    }

    // additivity defect over element pairs, strided when the ball is large
    size_t b = ball.size();
    size_t stride = std::max<size_t>(1, (b * b) / 4000);
    size_t c = 0;
    for (size_t i = 0; i < b; ++i)
        for (size_t j = 0; j < b; ++j, ++c) {
            if (c % stride) continue;
            RawProbe pr = raw_probe(G.sp, ray, compose(ball[i].iso, ball[j].iso));
            if (!pr.feasible) continue;
            tb.defect_bound = std::max(tb.defect_bound, rat_abs(pr.value - raws[i] - raws[j]));
        }

    // measured ray-shift error for rows with certified whole-number growth
    long long m = ray_len;
    for (size_t i = 0; i < b; ++i) {
        if (!tb.rows[i].exact || !is_integer(tb.rows[i].homog)) continue;
        long long beta = tb.rows[i].homog.numerator();
        for (long long s = std::max(0LL, beta); s <= std::min(m, m + beta); ++s) {
            try {
                Point gq = ball[i].iso.apply(ray[static_cast<size_t>(s)]);
                tb.shift_error = std::max(
                    tb.shift_error, Rat(G.sp->idist(ray[static_cast<size_t>(s - beta)], gq)));
            } catch (const CoarseError& e) {
                if (e.kind != ErrKind::HorizonExceeded) throw;
            }
        }
    }
    return tb;
}

Rat busemann_spread(const MarkedGroup& G, const Dir& xi, const Point& x, const Rat& r,
                    long long n, long long ray_len) {
    G.sp->check_point(x);
    if (r < Rat(0)) fail(ErrKind::BadArgument, "displacement budget must be nonnegative");
    auto tb = busemann(G, xi, n, ray_len);
    auto ball = group_ball(G, n);
    Rat best(0);
    for (size_t i = 0; i < ball.size(); ++i) {
        long long d;
        try {
            d = G.sp->idist(x, ball[i].iso.apply(x));
        } catch (const CoarseError& e) {
            if (e.kind != ErrKind::HorizonExceeded) throw;
            continue; // image beyond the truncation: displacement already exceeds r
        }
        if (Rat(d) <= r) best = std::max(best, rat_abs(tb.rows[i].homog));
    }
    return best;
}

UnifBoundReport unif_bound_check(const MarkedGroup& G, const Dir& forward, const Dir& backward,
                                 long long n, long long window) {
    if (window < 1) fail(ErrKind::BadArgument, "window must be at least 1");
    auto rf = ray_to(G.sp, forward, window);
    auto rb = ray_to(G.sp, backward, window);

    std::vector<Point> q; // q[j + window], j in [-window, window]
    for (long long j = window; j >= 1; --j) q.push_back(rb[static_cast<size_t>(j)]);
    for (long long j = 0; j <= window; ++j) q.push_back(rf[static_cast<size_t>(j)]);

    UnifBoundReport rep;
    for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = i + 1; j < q.size(); ++j) {
            long long gap = static_cast<long long>(j - i) - G.sp->idist(q[i], q[j]);
            rep.lambda = std::max(rep.lambda, Rat(gap));
        }
    rep.M = morse_gap(G.sp, q, G.sp->geodesic(q.front(), q.back()));

    const Point& q0 = q[static_cast<size_t>(window)];
    for (const auto& el : group_ball(G, n)) {
        bool fixes = false;
        try {
            fixes = el.iso.transport(forward) == forward &&
                    el.iso.transport(backward) == backward;
        } catch (const CoarseError&) {
            fixes = false;
        }
        if (!fixes) {
            ++rep.skipped;
            continue;
        }
        UnifBoundRow row;
        row.word = el.word;
        try {
            row.c0 = Rat(2) * rep.M + Rat(3) * rep.lambda +
                     Rat(3) * Rat(G.sp->idist(el.iso.apply(q0), q0));
            for (const Point& p : q)
                row.worst = std::max(row.worst, Rat(G.sp->idist(el.iso.apply(p), p)));
        } catch (const CoarseError& e) {
            if (e.kind != ErrKind::HorizonExceeded) throw;
            fail(ErrKind::HorizonExceeded,
                 "'" + el.word + "' moves the window beyond the truncation; shrink the window "
                 "or the horizon");
        }
        row.ok = row.worst <= row.c0;
        rep.rows.push_back(std::move(row));
    }
    rep.all_ok = !rep.rows.empty();
    for (const auto& r : rep.rows)
        if (!r.ok) rep.all_ok = false;
    return rep;
}

std::vector<std::pair<long long, long long>> parabolic_escape_profile(
    const MarkedGroup& G, const Dir& xi, const Rat& E, long long n, long long len) {
    if (E < Rat(0)) fail(ErrKind::BadArgument, "displacement tolerance must be nonnegative");
    auto ray = ray_to(G.sp, xi, len);
    auto ball = group_ball(G, n); // breadth-first: lengths nondecreasing

    std::vector<std::pair<long long, long long>> prof;
    for (long long t = 0; t <= len; ++t) {
        const Point& qt = ray[static_cast<size_t>(t)];
        long long reach = n;
        for (const auto& el : ball) {
            if (el.length == 0) continue;
            bool small;
            try {
                small = Rat(G.sp->idist(el.iso.apply(qt), qt)) <= E;
            } catch (const CoarseError& e) {
                if (e.kind != ErrKind::HorizonExceeded) throw;
                small = false; // image beyond the truncation certainly moved far
            }
            if (!small) {
                reach = el.length - 1;
                break;
            }
        }
        prof.emplace_back(t, reach);
    }
    return prof;
}

} // namespace coarse
