#pragma once

#include "coarse/isometry.hpp"
#include "coarse/point.hpp"
#include "coarse/space.hpp"

#include <string>
#include <vector>

namespace coarse {

// A finitely generated group of isometries given by named generators. The
// generating set is closed under inverses on construction: a generator named
// NAME whose inverse is not already present gets a companion NAME'. Elements
// are deduplicated by Isometry::key(), the complete normal form, so equality
// is exact and independent of the truncation radius. The probe set stays
// around as a cheap diagnostic (see probe_faithful) and for kernel checks.
struct NamedIso {
    std::string name;
    Isometry iso;
};

struct MarkedGroup {
    SpacePtr sp;
    std::vector<NamedIso> gens; // closed under inverses
    std::vector<Point> probe;   // nonempty; defaults to ball(base, 2)
    long long horizon = 8;      // max word length any ball may request

    // Declared internal factors for the product-decomposition checks: each
    // entry lists generator indices (into gens, pre-closure names included).
    // Empty means no declaration.
    std::vector<std::vector<int>> internal_factors;
};

// Validates that all generators act on sp, names are unique and nonempty, and
// closes the list under inverses. BadArgument on violations.
MarkedGroup make_marked_group(const SpacePtr& sp, std::vector<NamedIso> gens,
                              long long horizon = 8, std::vector<Point> probe = {});

struct GroupElement {
    std::string word; // dot-joined generator names, "e" for the identity
    Isometry iso;
    long long length = 0;
};

// All elements of word length <= n, one representative per normal form, in
// breadth-first shortlex order (identity first). Symmetric because the
// generating set is. HorizonExceeded when n exceeds the group's horizon.
std::vector<GroupElement> group_ball(const MarkedGroup& G, long long n);

// {g in group_ball(G, n) : d(g x, x) <= eps for every x in pts}. An element
// whose image of some x leaves the truncated model is excluded: the image
// crossed the frontier, so its displacement exceeds frontier_depth(x); keep
// eps below the frontier depth of every probe point for an exact answer.
std::vector<GroupElement> coarse_stabilizer(const MarkedGroup& G,
                                            const std::vector<Point>& pts, const Rat& eps,
                                            long long n);

// Evaluation signature of g on the probe set ("~" marks an image beyond the
// truncation). Distinct keys imply distinct elements; the converse is what
// probe_faithful reports.
std::string probe_signature(const MarkedGroup& G, const Isometry& g);

// True when probe signatures separate every pair of ball elements, i.e. the
// probe would have been a faithful equality test at this horizon.
bool probe_faithful(const MarkedGroup& G, long long n);

} // namespace coarse
