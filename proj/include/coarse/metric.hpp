#pragma once

#include <vector>

#include "coarse/point.hpp"
#include "coarse/space.hpp"

namespace coarse {

// Two independent hyperbolicity estimators over one point sample:
//   delta_four   - max over ordered 4-tuples (x,y,z,w) of
//                  min(<x,z>_w, <z,y>_w) - <x,y>_w, clamped at 0
//   delta_tripod - max over ordered triples of the diameter of the three
//                  comparison-tripod center preimages: the point on [c,a] at
//                  arc position <a,b>_c from c, on [a,b] at <c,b>_a from a,
//                  and on [b,c] at <c,a>_b from b, with geodesics chosen by
//                  the tie-break rule and positions allowed at half-integers
// No relation between the two values is asserted anywhere; both are reported.
struct HyperReport {
    Rat delta_four{0};
    Rat delta_tripod{0};
    long long sample_size = 0;
    bool exhaustive = false;
};

struct TreeApproxReport {
    std::vector<std::vector<Rat>> table; // tree metric on the input points
    Rat distortion{0};                   // max |table - d| over pairs
};

struct ThinQuadReport {
    long long L = 0;         // max endpoint gap of the two geodesics
    long long worst = 0;     // max synchronous distance over the whole range
    long long worst_mid = 0; // max over positions in [L, len - L]
};

Rat gromov_product(const SpacePtr& sp, const Point& x, const Point& y, const Point& o);

// exhaustive=true scans all vertices of an enumerable space; otherwise the
// given sample is used as-is
HyperReport hyperbolicity_estimate(const SpacePtr& sp, const std::vector<Point>& sample,
                                   bool exhaustive);

// exact Hausdorff distance between the vertex sets of two paths sharing endpoints
Rat morse_gap(const SpacePtr& sp, const std::vector<Point>& q,
              const std::vector<Point>& geo);

bool is_unit_path(const SpacePtr& sp, const std::vector<Point>& path);
bool is_quasigeodesic(const SpacePtr& sp, const std::vector<Point>& path, const Rat& lam,
                      const Rat& c);

// largest morse_gap over a deterministic family of detoured geodesics between
// the given pairs, each detour validated as a (lam, c)-quasigeodesic first
Rat measure_morse_gap(const SpacePtr& sp, const std::vector<std::pair<Point, Point>>& pairs,
                      const Rat& lam, const Rat& c);

// Gromov tree approximation rooted at pts[0]: subdominant products by
// max-min closure, then d_T(x,y) = d(o,x) + d(o,y) - 2<x,y>'
TreeApproxReport tree_approx(const SpacePtr& sp, const std::vector<Point>& pts);

// synchronous gaps between two equal-length unit geodesics
ThinQuadReport thin_quad(const SpacePtr& sp, const std::vector<Point>& a,
                         const std::vector<Point>& b);

// distance from p to the nearest vertex of the path
Rat path_projection_distance(const SpacePtr& sp, const std::vector<Point>& path,
                             const Point& p);

} // namespace coarse
