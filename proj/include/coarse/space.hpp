#pragma once

#include <climits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "coarse/point.hpp"
#include "coarse/rational.hpp"

namespace coarse {

class Space;
using SpacePtr = std::shared_ptr<const Space>;

// Truncated models of the spaces the workbench knows how to build.
//
//   FiniteGraph  - explicit unit-weight graph (cycles, grids, user edge lists)
//   BoundedGraph - finite graph carrying its exact diameter; factors of
//                  products that should count as "bounded" use this kind
//   RegularTree  - reduced words over the valence alphabet, truncated at a
//                  radius. Even valence v uses v/2 free letter pairs (a/A,
//                  b/B, ...); odd valence uses v involutive letters, so both
//                  cases give a v-regular tree with left multiplication as a
//                  genuine isometry. Valence 2 is the line. With leaves=true
//                  every word vertex also carries one pendant leaf.
//   Horoball     - base segment [-width, width] (or a cycle) with one copy of
//                  the base per level 0..depth; horizontal edges at level k
//                  join base points at distance <= 2^k, vertical edges join
//                  consecutive copies of the same base point. Shifting the
//                  base is an isometry of the untruncated object, which is
//                  what the parabolic corpus needs.
//   BinTree      - levels 0..height, level l holding the residues mod 2^l,
//                  with the two refinements of each residue as children: the
//                  coset tree on which dyadic affine maps u -> 2^s u + b act.
//   Product      - finite list of non-product factors with the l^1 or l^infty
//                  combination of the factor metrics.
enum class SpaceKind { FiniteGraph, BoundedGraph, RegularTree, Horoball, BinTree, Product };

const char* space_kind_name(SpaceKind k);

class Space : public std::enable_shared_from_this<Space> {
  public:
    SpaceKind kind;
    int id;            // stamped into points; unique per constructed space
    std::string label;

    // regular tree
    int valence = 0;
    int radius = 0;
    bool leaves = false;

    // horoball
    long long width = 0;
    int depth = 0;
    bool cycle_base = false;
    long long cycle_len = 0;

    // binary residue tree
    int height = 0;

    // product
    int pnorm = 1; // 1 or 0 (0 encodes l^infinity)
    std::vector<SpacePtr> factors;

    // finite/bounded graph
    std::vector<std::string> names;
    std::vector<std::vector<int>> adj; // neighbor lists sorted by neighbor name
    long long diameter = -1;           // exact for BoundedGraph, else computed lazily

    // --- queries -----------------------------------------------------------

    bool contains(const Point& p) const;
    void check_point(const Point& p) const; // InvalidPoint / MismatchedSpace

    Rat dist(const Point& a, const Point& b) const { return Rat(idist(a, b)); }
    long long idist(const Point& a, const Point& b) const;

    // The tie-break geodesic: unique path in trees; in graphs the vertex
    // sequence that is lexicographically least under point names; in products
    // the factor-ordered (l^1) or synchronized (l^infty) combination.
    std::vector<Point> geodesic(const Point& a, const Point& b) const;

    std::vector<Point> neighbors(const Point& p) const; // deterministic order

    // Full vertex enumeration; throws BadArgument beyond enum_guard vertices.
    std::vector<Point> vertices() const;
    bool enumerable(long long guard = kEnumGuard) const;
    long long vertex_count() const; // may exceed the guard; exact count

    std::vector<Point> ball(const Point& center, long long r) const; // BFS ball

    // Hops to the nearest truncation cut; LLONG_MAX when the model is the
    // whole object (finite graphs, cycle-based horoball x-direction, ...).
    long long frontier_depth(const Point& p) const;
    bool has_frontier() const;

    Point base() const;
    Point vertex_named(const std::string& name) const; // graph kinds only
    std::vector<Point> default_probe() const;

    long long diameter_now() const; // exact diameter of the truncated model

    // --- word helpers (RegularTree only) ------------------------------------

    int nletters() const { return valence; }
    bool letter_ok(char c) const;
    int letter_index(char c) const;
    char letter_at(int i) const;
    char letter_inv(char c) const;
    std::string word_reduce(const std::string& raw) const; // cancels, validates letters
    std::string word_inverse(const std::string& w) const;
    std::string word_mul(const std::string& u, const std::string& v) const;

    static constexpr long long kEnumGuard = 300000;

  private:
    friend SpacePtr finish_space(std::shared_ptr<Space> s);

    // lazy per-source BFS rows for graph-like kinds that have no formula
    mutable std::mutex cache_mu_;
    mutable std::map<std::string, std::vector<long long>> bfs_cache_;
    mutable std::vector<long long> frontier_cache_;
    mutable long long diameter_cache_ = -1;

    const std::vector<long long>& bfs_row(const Point& src) const;
    int graph_index(const Point& p) const;
    std::vector<Point> graph_points() const;
};

// --- constructors ------------------------------------------------------------

SpacePtr make_finite_graph(const std::vector<std::pair<std::string, std::string>>& edges,
                           const std::string& label = "graph");
SpacePtr make_bounded_graph(const std::vector<std::pair<std::string, std::string>>& edges,
                            const std::string& label = "bounded");
SpacePtr make_cycle(int n, const std::string& label = "");
SpacePtr make_path_graph(int n, const std::string& label = "");
SpacePtr make_grid(int w, int h, const std::string& label = "");
SpacePtr make_regular_tree(int valence, int radius, bool leaves = false,
                           const std::string& label = "");
SpacePtr make_horoball_line(long long width, int depth, const std::string& label = "");
SpacePtr make_horoball_cycle(long long cycle_len, int depth, const std::string& label = "");
SpacePtr make_bin_tree(int height, const std::string& label = "");
SpacePtr make_product(const std::vector<SpacePtr>& factors, int pnorm,
                      const std::string& label = "");

} // namespace coarse
