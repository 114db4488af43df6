#pragma once

#include "coarse/action.hpp"
#include "coarse/group.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coarse {

// A finite refutation of a uniform joint-stabilizer bound at one eps: pairs
// marching toward the model's frontier whose joint coarse stabilizers inside
// the scanned ball strictly grow. counts[k] is the number of ball elements
// moving both points of pairs[k] by at most eps; members[k] lists their
// words in ball order, so the growth can be re-counted from scratch.
struct AcylWitness {
    Rat eps{0};
    std::vector<std::pair<Point, Point>> pairs;
    std::vector<long long> counts;
    std::vector<std::vector<std::string>> members;
    long long ball = 0; // word length the counts were taken at
};

// Joint-stabilizer size table over an eps grid and a separation grid. Entry
// table[e][r] is the largest count of ball elements moving both points of a
// scanned pair at distance >= R_grid[r] by at most eps_grid[e]. trend[e]
// repeats the R_min column at word lengths n-2, n-1 and n; a row that has
// stopped growing is the bounded-evidence signal, a witness trumps it.
struct AcylProfile {
    std::vector<Rat> eps_grid;     // ascending, deduplicated
    std::vector<long long> R_grid; // ascending, deduplicated
    std::vector<std::vector<long long>> table;
    std::vector<std::array<long long, 3>> trend;
    long long n = 0;
    long long pairs_scanned = 0;
    std::string verdict; // "violation", "bounded-evidence", "inconclusive"
    std::optional<AcylWitness> witness;
};

// Scans every eps against all pairs of a deterministic net: a breadth-first
// crawl from the base point keeps every second vertex whose frontier depth
// exceeds max(eps_grid), pairs are ordered by decreasing separation and cut
// at pair_budget. Counts are exact over group_ball(G, n); an element whose
// image of a net point leaves the truncated model is excluded, which cannot
// overstate a count because the net keeps eps below every point's frontier
// depth. Empty grids, eps < 0, R < 1, n < 2 or pair_budget < 1 are
// BadArgument; n beyond the group's horizon is HorizonExceeded. When no pair
// qualifies the verdict falls back to "inconclusive" rather than a vacuous
// bound.
AcylProfile acyl_profile(const MarkedGroup& G, std::vector<Rat> eps_grid,
                         std::vector<long long> R_grid, long long n,
                         long long pair_budget = 128);

// Walks model-specific ladders of pairs toward the frontier (down the
// horoball, toward the dyadic model's root, out along a tree ray, per factor
// in a product) and returns the first run of at least three strictly
// increasing joint-stabilizer counts, or nullopt when every ladder stays
// flat; free actions and bounded models have no growth to find.
std::optional<AcylWitness> acyl_witness(const MarkedGroup& G, const Rat& eps, long long n);

// Result of projecting a product action off one factor. projection is the
// dropped factor's action classification, the gate for dropping it; before
// and after hold profiles on the same grids so the caller can check the
// verdict survived the surgery.
struct DropReport {
    MarkedGroup reduced;
    ActionClass projection;
    AcylProfile before;
    AcylProfile after;
};

// Removes factor (1-based) from a product-model group by projecting every
// generator off it. Only a factor whose projected action classifies as
// elliptic or parabolic at this horizon may go; anything else carries large
// scale geometry and raises FactorNotDroppable. NotAProduct on non-product
// models, BadArgument for a bad index or a factor-permuting generator. Empty
// grids default to eps {0, 1, 2, 4} and R {1, 2, 4}.
DropReport drop_factor(const MarkedGroup& G, int factor, long long n,
                       std::vector<Rat> eps_grid = {}, std::vector<long long> R_grid = {},
                       long long pair_budget = 128);

} // namespace coarse
