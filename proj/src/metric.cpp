#include "coarse/metric.hpp"

#include <algorithm>
#include <map>

#include "coarse/errors.hpp"

namespace coarse {

Rat gromov_product(const SpacePtr& sp, const Point& x, const Point& y, const Point& o) {
    return Rat(sp->idist(x, o) + sp->idist(o, y) - sp->idist(x, y), 2);
}

namespace {

// a point at rational arc position along a unit-step path: at `u` when f = 0,
// else on the edge u -> v at offset f from u
struct Loc {
    Point u, v;
    Rat f{0};
};

Loc path_point(const std::vector<Point>& path, const Rat& pos) {
    long long i = pos.numerator() / pos.denominator(); // pos >= 0
    Rat f = pos - Rat(i);
    if (f == Rat(0)) return {path[i], path[i], Rat(0)};
    return {path[i], path[i + 1], f};
}

Rat dist_located(const SpacePtr& sp, const Loc& p, const Loc& q) {
    Rat best(-1);
    auto consider = [&](const Rat& c) {
        if (best < Rat(0) || c < best) best = c;
    };
    if (p.f != Rat(0) && q.f != Rat(0)) {
        // interior points of the same edge reach each other along it
        if (p.u == q.u && p.v == q.v) consider(rat_abs(p.f - q.f));
        else if (p.u == q.v && p.v == q.u) consider(rat_abs(p.f - (Rat(1) - q.f)));
    }
    std::vector<std::pair<Rat, Point>> ap, aq;
    if (p.f == Rat(0)) ap.push_back({Rat(0), p.u});
    else {
        ap.push_back({p.f, p.u});
        ap.push_back({Rat(1) - p.f, p.v});
    }
    if (q.f == Rat(0)) aq.push_back({Rat(0), q.u});
    else {
        aq.push_back({q.f, q.u});
        aq.push_back({Rat(1) - q.f, q.v});
    }
    for (const auto& [cp, wp] : ap)
        for (const auto& [cq, wq] : aq) consider(cp + sp->dist(wp, wq) + cq);
    return best;
}

} // namespace

HyperReport hyperbolicity_estimate(const SpacePtr& sp, const std::vector<Point>& sample,
                                   bool exhaustive) {
    std::vector<Point> pts = exhaustive ? sp->vertices() : sample;
    if (pts.empty()) fail(ErrKind::EmptySample, "hyperbolicity estimate needs sample points");
    size_t n = pts.size();

    std::vector<std::vector<long long>> D(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) D[i][j] = D[j][i] = sp->idist(pts[i], pts[j]);

    HyperReport rep;
    rep.sample_size = static_cast<long long>(n);
    rep.exhaustive = exhaustive;

    // four-point condition, tracked as doubled integers
    long long best2 = 0;
    for (size_t w = 0; w < n; ++w)
        for (size_t x = 0; x < n; ++x)
            for (size_t y = 0; y < n; ++y)
                for (size_t z = 0; z < n; ++z) {
                    long long xz = D[x][w] + D[w][z] - D[x][z];
                    long long zy = D[z][w] + D[w][y] - D[z][y];
                    long long xy = D[x][w] + D[w][y] - D[x][y];
                    best2 = std::max(best2, std::min(xz, zy) - xy);
                }
    rep.delta_four = Rat(best2, 2);

    // tripod centers over ordered distinct triples; geodesics cached per pair
    std::map<std::pair<size_t, size_t>, std::vector<Point>> geod;
    auto path = [&](size_t i, size_t j) -> const std::vector<Point>& {
        auto it = geod.find({i, j});
        if (it == geod.end()) it = geod.emplace(std::make_pair(i, j), sp->geodesic(pts[i], pts[j])).first;
        return it->second;
    };
    Rat tri(0);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            if (b == a) continue;
            for (size_t c = 0; c < n; ++c) {
                if (c == a || c == b) continue;
                Loc m = path_point(path(c, a), Rat(D[c][a] + D[c][b] - D[a][b], 2));
                Loc mp = path_point(path(a, b), Rat(D[a][c] + D[a][b] - D[c][b], 2));
                Loc mq = path_point(path(b, c), Rat(D[b][c] + D[b][a] - D[c][a], 2));
                Rat v = rat_max(dist_located(sp, m, mp),
                                rat_max(dist_located(sp, mp, mq), dist_located(sp, m, mq)));
                tri = rat_max(tri, v);
            }
        }
    rep.delta_tripod = tri;
    return rep;
}

Rat morse_gap(const SpacePtr& sp, const std::vector<Point>& q, const std::vector<Point>& geo) {
    if (q.empty() || geo.empty()) fail(ErrKind::BadArgument, "paths must be nonempty");
    if (q.front() != geo.front() || q.back() != geo.back())
        fail(ErrKind::EndpointMismatch, "paths do not share endpoints");
    long long worst = 0;
    auto one_side = [&](const std::vector<Point>& from, const std::vector<Point>& to) {
        for (const Point& p : from) {
            long long nearest = -1;
            for (const Point& g : to) {
                long long d = sp->idist(p, g);
                if (nearest < 0 || d < nearest) nearest = d;
            }
            worst = std::max(worst, nearest);
        }
    };
    one_side(q, geo);
    one_side(geo, q);
    return Rat(worst);
}

bool is_unit_path(const SpacePtr& sp, const std::vector<Point>& path) {
    for (size_t i = 0; i + 1 < path.size(); ++i)
        if (sp->idist(path[i], path[i + 1]) != 1) return false;
    return true;
}

bool is_quasigeodesic(const SpacePtr& sp, const std::vector<Point>& path, const Rat& lam,
                      const Rat& c) {
    if (lam < Rat(1) || c < Rat(0))
        fail(ErrKind::BadArgument, "quasigeodesic constants need lambda >= 1 and c >= 0");
    for (size_t i = 0; i < path.size(); ++i)
        for (size_t j = i + 1; j < path.size(); ++j) {
            Rat d = sp->dist(path[i], path[j]);
            Rat gap = Rat(static_cast<long long>(j - i));
            if (d > lam * gap + c) return false;
            if (d < gap / lam - c) return false;
        }
    return true;
}

Rat measure_morse_gap(const SpacePtr& sp, const std::vector<std::pair<Point, Point>>& pairs,
                      const Rat& lam, const Rat& c) {
    if (lam < Rat(1) || c < Rat(0))
        fail(ErrKind::BadArgument, "quasigeodesic constants need lambda >= 1 and c >= 0");
    long long depth_cap = (c.numerator() / c.denominator()) / 2; // floor(c/2) for c >= 0
    Rat worst(0);
    for (const auto& [a, b] : pairs) {
        std::vector<Point> geo = sp->geodesic(a, b);
        if (geo.size() < 2 || depth_cap == 0) continue;
        for (size_t i = 1; i + 1 < geo.size(); ++i) {
            for (const Point& nb : sp->neighbors(geo[i])) {
                if (nb == geo[i - 1] || nb == geo[i + 1]) continue;
                // walk outward from the geodesic as far as the budget allows
                std::vector<Point> detour{geo[i], nb};
                while (static_cast<long long>(detour.size()) - 1 < depth_cap) {
                    Point cur = detour.back();
                    long long dcur = sp->idist(geo[i], cur);
                    bool grew = false;
                    for (const Point& nx : sp->neighbors(cur)) {
                        if (sp->idist(geo[i], nx) == dcur + 1) {
                            detour.push_back(nx);
                            grew = true;
                            break;
                        }
                    }
                    if (!grew) break;
                }
                std::vector<Point> path(geo.begin(), geo.begin() + i);
                path.insert(path.end(), detour.begin(), detour.end());
                path.insert(path.end(), detour.rbegin() + 1, detour.rend());
                path.insert(path.end(), geo.begin() + i + 1, geo.end());
                if (!is_quasigeodesic(sp, path, lam, c)) continue;
                worst = rat_max(worst, morse_gap(sp, path, geo));
            }
        }
    }
    return worst;
}

TreeApproxReport tree_approx(const SpacePtr& sp, const std::vector<Point>& pts) {
    size_t n = pts.size();
    if (n < 2) fail(ErrKind::TooFewPoints, "tree approximation needs at least 2 points");
    const Point& o = pts[0];

    std::vector<std::vector<Rat>> g(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j) g[i][j] = gromov_product(sp, pts[i], pts[j], o);
    for (size_t i = 0; i < n; ++i) g[i][i] = sp->dist(pts[i], o); // <x,x>_o = d(o,x)

    // subdominant closure: best bottleneck over chains
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                Rat via = rat_min(g[i][k], g[k][j]);
                if (via > g[i][j]) g[i][j] = via;
            }

    TreeApproxReport rep;
    rep.table.assign(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            rep.table[i][j] = sp->dist(pts[i], o) + sp->dist(pts[j], o) - Rat(2) * g[i][j];
            Rat err = rat_abs(rep.table[i][j] - sp->dist(pts[i], pts[j]));
            rep.distortion = rat_max(rep.distortion, err);
        }
    return rep;
}

ThinQuadReport thin_quad(const SpacePtr& sp, const std::vector<Point>& a,
                         const std::vector<Point>& b) {
    if (a.size() != b.size() || a.empty())
        fail(ErrKind::BadArgument, "synchronous comparison needs equal-length paths");
    ThinQuadReport rep;
    rep.L = std::max(sp->idist(a.front(), b.front()), sp->idist(a.back(), b.back()));
    long long len = static_cast<long long>(a.size()) - 1;
    for (long long t = 0; t <= len; ++t) {
        long long d = sp->idist(a[t], b[t]);
        rep.worst = std::max(rep.worst, d);
        if (t >= rep.L && t <= len - rep.L) rep.worst_mid = std::max(rep.worst_mid, d);
    }
    return rep;
}

Rat path_projection_distance(const SpacePtr& sp, const std::vector<Point>& path,
                             const Point& p) {
    if (path.empty()) fail(ErrKind::BadArgument, "projection needs a nonempty path");
    long long best = -1;
    for (const Point& q : path) {
        long long d = sp->idist(p, q);
        if (best < 0 || d < best) best = d;
    }
    return Rat(best);
}

} // namespace coarse
