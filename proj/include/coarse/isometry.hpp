#pragma once

#include <string>
#include <vector>

#include "coarse/point.hpp"
#include "coarse/space.hpp"

namespace coarse {

// Finitely described isometries, one shape per space kind:
//   TreeIso      - pair (w, pi): left multiplication by the reduced word w
//                  composed with the rooted automorphism applying the letter
//                  permutation pi letterwise. Closed under composition via
//                  (w1,p1)(w2,p2) = (w1 * p1(w2), p1 p2), so the pair is a
//                  normal form and doubles as the equality key.
//   GraphPerm    - adjacency-preserving vertex bijection of a finite graph.
//   BaseShift    - horoball base translation (k,x) -> (k, x+s); an
//                  automorphism of the untruncated model, partial near the
//                  line-base edges of the truncation.
//   DyadicAffine - y -> 2^s y + b acting on the binary residue tree by
//                  mapping the class (level l, r mod 2^l) to
//                  (l+s, 2^s r + b mod 2^(l+s)); partial where the image
//                  leaves the window (level out of range, or 2^s r + b not
//                  an integer class).
//   TupleIso     - factor permutation sigma composed with per-factor
//                  isometries: the image's sigma(i)-th coordinate is
//                  parts[i] applied to the i-th coordinate.
enum class IsoKind { TreeIso, GraphPerm, BaseShift, DyadicAffine, TupleIso };

struct Isometry {
    IsoKind kind = IsoKind::TreeIso;
    SpacePtr space;

    std::string word;            // TreeIso left factor, reduced
    std::vector<char> perm;      // TreeIso letter images, indexed by letter_index
    std::vector<int> vperm;      // GraphPerm vertex images
    long long shift = 0;         // BaseShift amount
    int s = 0;                   // DyadicAffine scale exponent
    Rat b{0};                    // DyadicAffine offset (dyadic rational)
    std::vector<Isometry> parts; // TupleIso factor isometries
    std::vector<int> sigma;      // TupleIso factor permutation, image per index

    Point apply(const Point& p) const;          // HorizonExceeded off the window
    Dir transport(const Dir& d) const;          // image direction at infinity
    bool moves(const Point& p) const { return apply(p) != p; }

    bool is_identity() const;
    std::string key() const;  // complete invariant of the untruncated isometry
    std::string desc() const; // short display form

    long long root_displacement() const; // d(base, g base)

    bool operator==(const Isometry& o) const { return key() == o.key(); }
    bool operator!=(const Isometry& o) const { return !(*this == o); }
};

Isometry compose(const Isometry& g, const Isometry& h); // x -> g(h(x))
Isometry invert(const Isometry& g);
Isometry power(const Isometry& g, long long n);

Isometry make_identity(const SpacePtr& sp);
Isometry make_left_mult(const SpacePtr& sp, const std::string& w);
// images[i] = image of letter_at(i); must be a bijection with
// images(inverse letter) = inverse(image letter)
Isometry make_letter_perm(const SpacePtr& sp, const std::string& images,
                          const std::string& left_word = "");
// fixes the axis letter pair of `axis`, swaps every other pair x <-> X
Isometry make_reflection(const SpacePtr& sp, char axis);
Isometry make_graph_perm(const SpacePtr& sp,
                         const std::vector<std::pair<std::string, std::string>>& images);
Isometry make_cycle_rotation(const SpacePtr& sp, int step);
Isometry make_cycle_reflection(const SpacePtr& sp, int fixed_vertex);
Isometry make_base_shift(const SpacePtr& sp, long long s);
Isometry make_dyadic_affine(const SpacePtr& sp, int s, const Rat& b);
Isometry make_tuple_iso(const SpacePtr& sp, std::vector<Isometry> parts,
                        std::vector<int> sigma = {});

} // namespace coarse
