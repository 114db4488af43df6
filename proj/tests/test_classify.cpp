#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "coarse/classify.hpp"
#include "coarse/errors.hpp"
#include "coarse/isometry.hpp"
#include "coarse/space.hpp"

using namespace coarse;

namespace {

ErrKind thrown_kind(const std::function<void()>& f) {
    try {
        f();
    } catch (const CoarseError& e) {
        return e.kind;
    }
    return ErrKind::SyntaxError; // placeholder meaning "did not throw"
}

// two-point factor space and its swap, the smallest bounded ingredient
SpacePtr make_c2() { return make_path_graph(2, "C2"); }

Isometry c2_swap(const SpacePtr& c2) {
    return make_graph_perm(c2, {{"0", "1"}, {"1", "0"}});
}

} // namespace

TEST_CASE("translation lengths on trees") {
    auto t4 = make_regular_tree(4, 6);

    auto idr = translation_length_report(t4, make_identity(t4), 8);
    CHECK(idr.tau == Rat(0));
    CHECK(idr.exact);
    CHECK(idr.error_bar == Rat(0));

    auto ra = translation_length_report(t4, make_left_mult(t4, "a"), 8);
    CHECK(ra.tau == Rat(1));
    CHECK(ra.exact);
    CHECK(translation_length(t4, make_left_mult(t4, "a"), 8) == Rat(1));

    auto rab = translation_length_report(t4, make_left_mult(t4, "ab"), 8);
    CHECK(rab.tau == Rat(2));
    CHECK(rab.exact);

    // conjugate of left_mult("b"): same translation length, axis off the root
    auto rconj = translation_length_report(t4, make_left_mult(t4, "abA"), 8);
    CHECK(rconj.tau == Rat(1));
    CHECK(rconj.exact);
    CHECK(rconj.witness == Point::make_word(t4->id, "a"));

    // the root rotation and the axis flip both fix a point
    CHECK(translation_length(t4, make_letter_perm(t4, "bBAa"), 8) == Rat(0));
    CHECK(translation_length(t4, make_reflection(t4, 'a'), 8) == Rat(0));

    CHECK(thrown_kind([&] { translation_length(t4, make_left_mult(t4, "a"), 1); }) ==
          ErrKind::BadArgument);
}

TEST_CASE("translation length scales along powers and survives conjugation") {
    auto t4 = make_regular_tree(4, 12);

    for (const char* w : {"a", "ab"}) {
        auto g = make_left_mult(t4, w);
        Rat tau = translation_length(t4, g, 6);
        CHECK(tau == Rat(static_cast<long long>(std::string(w).size())));
        for (long long n = 1; n <= 5; ++n) {
            auto rn = translation_length_report(t4, power(g, n), 6);
            CHECK(rn.exact);
            CHECK(rn.tau == Rat(n) * tau);
        }
    }

    for (const char* h : {"b", "ba", "bab", "BA"}) {
        auto conj = [&](const Isometry& g) {
            auto hh = make_left_mult(t4, h);
            return compose(hh, compose(g, invert(hh)));
        };
        for (const char* w : {"a", "ab", "abb"}) {
            auto g = make_left_mult(t4, w);
            auto rg = translation_length_report(t4, g, 6);
            auto rc = translation_length_report(t4, conj(g), 6);
            CHECK(rg.exact);
            CHECK(rc.exact);
            CHECK(rc.tau == rg.tau);
        }
    }
}

TEST_CASE("fekete estimates on graphs") {
    auto c12 = make_cycle(12);
    auto rot = make_cycle_rotation(c12, 1);
    auto v = [&](int i) { return c12->vertex_named(std::to_string(i)); };

    // no fixed vertex, so only the orbit quotient is available
    auto r10 = translation_length_report(c12, rot, 10);
    CHECK(r10.tau == Rat(1, 5)); // d(rot^10(0), 0) = 2
    CHECK(!r10.exact);
    CHECK(r10.error_bar == Rat(0)); // the base point already has minimal displacement
    CHECK(r10.witness == v(0));

    auto r12 = translation_length_report(c12, rot, 12);
    CHECK(r12.tau == Rat(0)); // full turn
    CHECK(!r12.exact);

    // a reflection fixes a vertex, which certifies zero
    auto refl = translation_length_report(c12, make_cycle_reflection(c12, 0), 12);
    CHECK(refl.tau == Rat(0));
    CHECK(refl.exact);
    CHECK(refl.witness == v(0));
}

TEST_CASE("tuple translation lengths combine factorwise") {
    auto t4 = make_regular_tree(4, 6);
    auto la = make_left_mult(t4, "a");
    auto lab = make_left_mult(t4, "ab");

    auto p1 = make_product({t4, t4}, 1);
    auto r1 = translation_length_report(p1, make_tuple_iso(p1, {la, lab}), 8);
    CHECK(r1.tau == Rat(3));
    CHECK(r1.exact);

    auto pinf = make_product({t4, t4}, 0);
    auto rinf = translation_length_report(pinf, make_tuple_iso(pinf, {la, lab}), 8);
    CHECK(rinf.tau == Rat(2));
    CHECK(rinf.exact);

    // swapping the factors squares to a diagonal translation
    auto sw = make_tuple_iso(p1, {la, invert(la)}, {1, 0});
    auto rsw = translation_length_report(p1, sw, 8);
    CHECK(power(sw, 2).is_identity());
    CHECK(rsw.tau == Rat(0));
    CHECK(rsw.exact);

    auto swab = make_tuple_iso(p1, {la, la}, {1, 0});
    auto rswab = translation_length_report(p1, swab, 8);
    CHECK(rswab.tau == Rat(2)); // square translates by (aa, aa)
    CHECK(rswab.exact);
}

TEST_CASE("the five-label corpus classifies identically at two radii") {
    for (int radius : {6, 8}) {
        CAPTURE(radius);
        auto t4 = make_regular_tree(4, radius);
        auto c2 = make_c2();
        auto prod = make_product({t4, c2}, 1);
        auto hb = make_horoball_line(radius, radius);

        auto rot = classify_isometry(t4, make_letter_perm(t4, "bBAa"), 12);
        CHECK(rot.kind == IsoVerdict::Elliptic);
        CHECK(rot.sub == EllipticSub::Rotation);
        CHECK(rot.tau == Rat(0));

        auto flip = classify_isometry(t4, make_reflection(t4, 'a'), 12);
        CHECK(flip.kind == IsoVerdict::Elliptic);
        CHECK(flip.sub == EllipticSub::Rift);
        CHECK(flip.tau == Rat(0));

        auto swap = make_tuple_iso(prod, {make_identity(t4), c2_swap(c2)});
        auto trm = classify_isometry(prod, swap, 12);
        CHECK(trm.kind == IsoVerdict::Elliptic);
        CHECK(trm.sub == EllipticSub::Tremble);
        CHECK(trm.tau == Rat(0));
        REQUIRE(!trm.evidence.empty());
        CHECK(trm.evidence[0] == Rat(1));

        auto lox = classify_isometry(t4, make_left_mult(t4, "a"), 12);
        CHECK(lox.kind == IsoVerdict::Loxodromic);
        CHECK(lox.tau == Rat(1));
        CHECK(lox.tau_exact);

        auto par = classify_isometry(hb, make_base_shift(hb, 1), 12);
        CHECK(par.kind == IsoVerdict::Parabolic);
        CHECK(par.tau == Rat(0));
    }
}

TEST_CASE("census verdicts on bounded and dyadic models") {
    auto c12 = make_cycle(12);

    // on a finite space a fixed-point-free rotation still has uniformly
    // bounded displacement, which is exactly the tremble condition
    auto rot = classify_isometry(c12, make_cycle_rotation(c12, 1), 12);
    CHECK(rot.kind == IsoVerdict::Elliptic);
    CHECK(rot.sub == EllipticSub::Tremble);

    auto refl = classify_isometry(c12, make_cycle_reflection(c12, 0), 12);
    CHECK(refl.kind == IsoVerdict::Elliptic);
    CHECK(refl.sub == EllipticSub::Tremble);

    auto ident = classify_isometry(c12, make_identity(c12), 12);
    CHECK(ident.kind == IsoVerdict::Elliptic);
    CHECK(ident.sub == EllipticSub::Tremble);

    // adding one fixes the root residue, which certifies elliptic, but it
    // displaces the mid-height base by the full window height, so the census
    // collar swallows every row and the fine type stays open
    auto bt = make_bin_tree(6);
    auto add1 = classify_isometry(bt, make_dyadic_affine(bt, 0, Rat(1)), 12);
    CHECK(add1.kind == IsoVerdict::Elliptic);
    CHECK(add1.sub == EllipticSub::Unresolved);
    CHECK(add1.tau_exact);

    // doubling translates down the residue tree
    auto dbl = classify_isometry(bt, make_dyadic_affine(bt, 1, Rat(0)), 12);
    CHECK(dbl.kind == IsoVerdict::Loxodromic);
    CHECK(dbl.tau == Rat(1));

    // a shear around a cycle-based horoball wraps: bounded orbits hugging the
    // frontier collar leave nothing to census
    auto hc = make_horoball_cycle(12, 3);
    auto shear3 = classify_isometry(hc, make_base_shift(hc, 3), 12);
    CHECK(shear3.kind == IsoVerdict::Unresolved);

    // with more depth the orbit clears the collar and the bounded model makes
    // every displacement small, a tremble
    auto hc6 = make_horoball_cycle(12, 6);
    REQUIRE(hc6->diameter_now() <= 8); // forces the census to fill up at the top threshold
    auto shear6 = classify_isometry(hc6, make_base_shift(hc6, 3), 12);
    CHECK(shear6.kind == IsoVerdict::Elliptic);
    CHECK(shear6.sub == EllipticSub::Tremble);
}

TEST_CASE("axes of tree isometries") {
    auto t4 = make_regular_tree(4, 6);
    auto w = [&](const char* s) { return Point::make_word(t4->id, s); };

    auto ax = axis(t4, make_left_mult(t4, "a"), 12);
    CHECK(ax.forward == Dir::tree_end("", "a"));
    CHECK(ax.backward == Dir::tree_end("", "A"));
    CHECK(ax.path.front() == w("AAAAAA"));
    CHECK(ax.path.back() == w("aaaaaa"));
    CHECK(std::find(ax.path.begin(), ax.path.end(), w("")) != ax.path.end());
    // the segment is carried along itself
    auto g = make_left_mult(t4, "a");
    for (size_t i = 0; i + 1 < ax.path.size(); ++i)
        CHECK(g.apply(ax.path[i]) == ax.path[i + 1]);

    auto ab = axis(t4, make_left_mult(t4, "ab"), 12);
    CHECK(ab.forward == Dir::tree_end("", "ab"));
    CHECK(ab.backward == Dir::tree_end("", "BA"));

    // conjugating slides the axis off the root
    auto conj = axis(t4, make_left_mult(t4, "abA"), 12);
    CHECK(conj.forward == Dir::tree_end("a", "b"));
    CHECK(conj.backward == Dir::tree_end("a", "B"));

    CHECK(thrown_kind([&] { axis(t4, make_identity(t4), 12); }) == ErrKind::NotLoxodromic);
    CHECK(thrown_kind([&] { axis(t4, make_letter_perm(t4, "bBAa"), 12); }) ==
          ErrKind::NotLoxodromic);
    CHECK(thrown_kind([&] { axis(t4, make_reflection(t4, 'a'), 12); }) == ErrKind::NotLoxodromic);
}

TEST_CASE("axes of dyadic and product isometries") {
    auto bt = make_bin_tree(6);

    auto dbl = axis(bt, make_dyadic_affine(bt, 1, Rat(0)), 12);
    CHECK(dbl.forward == Dir::bin_end(Rat(0)));
    CHECK(dbl.backward == Dir::cusp());
    CHECK(dbl.path.front() == Point::make_levelpos(bt->id, 0, 0));
    CHECK(dbl.path.back() == Point::make_levelpos(bt->id, 6, 0));

    // u -> 2u - 1 is doubling conjugated by adding one; it fixes the ray of 1
    auto a = make_dyadic_affine(bt, 0, Rat(1));
    auto t = make_dyadic_affine(bt, 1, Rat(0));
    auto conj = compose(a, compose(t, invert(a)));
    auto cx = axis(bt, conj, 12);
    CHECK(cx.forward == Dir::bin_end(Rat(1)));
    CHECK(cx.backward == Dir::cusp());

    // halving runs the same axis toward the cusp
    auto half = axis(bt, make_dyadic_affine(bt, -1, Rat(0)), 12);
    CHECK(half.forward == Dir::cusp());
    CHECK(half.backward == Dir::bin_end(Rat(0)));

    auto t4 = make_regular_tree(4, 6);
    auto prod = make_product({t4, t4}, 1);
    auto diag = make_tuple_iso(prod, {make_left_mult(t4, "a"), make_left_mult(t4, "b")});
    auto dx = axis(prod, diag, 12);
    CHECK(dx.forward == Dir::tuple({Dir::tree_end("", "a"), Dir::tree_end("", "b")}));
    CHECK(dx.backward == Dir::tuple({Dir::tree_end("", "A"), Dir::tree_end("", "B")}));
    CHECK(!dx.path.empty());

    auto sw = make_tuple_iso(prod, {make_left_mult(t4, "a"), make_left_mult(t4, "a")}, {1, 0});
    CHECK(thrown_kind([&] { axis(prod, sw, 12); }) == ErrKind::NotLoxodromic);

    auto hb = make_horoball_line(6, 6);
    CHECK(thrown_kind([&] { axis(hb, make_base_shift(hb, 1), 12); }) == ErrKind::NotLoxodromic);
}

TEST_CASE("bounded displacement sets are quasiconvex") {
    // every geodesic between two points of a displacement level set stays in
    // its (L + 2 delta)-neighborhood; delta is the four-point constant of the
    // ambient space (0 on trees, 2 on the grid, 3 on C12)
    struct Case {
        SpacePtr sp;
        Isometry g;
        long long two_delta;
    };
    std::vector<Case> cases;

    auto c12 = make_cycle(12);
    cases.push_back(Case{c12, make_cycle_rotation(c12, 1), 6});
    cases.push_back(Case{c12, make_cycle_reflection(c12, 0), 6});

    auto grid = make_grid(3, 3);
    std::vector<std::pair<std::string, std::string>> transpose;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            transpose.push_back({std::to_string(x) + "_" + std::to_string(y),
                                 std::to_string(y) + "_" + std::to_string(x)});
    cases.push_back(Case{grid, make_graph_perm(grid, transpose), 4});

    auto t4 = make_regular_tree(4, 3);
    cases.push_back(Case{t4, make_letter_perm(t4, "bBAa"), 0});
    cases.push_back(Case{t4, make_reflection(t4, 'a'), 0});

    auto c2 = make_c2();
    auto prod = make_product({t4, c2}, 1);
    cases.push_back(Case{prod, make_tuple_iso(prod, {make_identity(t4), c2_swap(c2)}), 0});

    for (size_t ci = 0; ci < cases.size(); ++ci) {
        CAPTURE(ci);
        const auto& [sp, g, two_delta] = cases[ci];
        auto verts = sp->vertices();

        std::vector<Isometry> pows;
        Isometry cur = g;
        for (int n = 1; n <= 12; ++n) {
            pows.push_back(cur);
            cur = compose(g, cur);
        }
        std::vector<long long> worst(verts.size(), 0);
        for (size_t i = 0; i < verts.size(); ++i)
            for (const auto& pw : pows)
                worst[i] = std::max(worst[i], sp->idist(verts[i], pw.apply(verts[i])));

        for (long long L : {0, 1, 2, 4, 8}) {
            std::vector<Point> members;
            for (size_t i = 0; i < verts.size(); ++i)
                if (worst[i] <= L) members.push_back(verts[i]);
            if (members.size() < 2 || members.size() == verts.size()) continue;
            for (size_t i = 0; i < members.size(); ++i)
                for (size_t j = i + 1; j < members.size(); ++j)
                    for (const Point& q : sp->geodesic(members[i], members[j])) {
                        long long near = LLONG_MAX;
                        for (const Point& m : members) near = std::min(near, sp->idist(q, m));
                        CHECK(near <= L + two_delta);
                    }
        }
    }
}

TEST_CASE("argument guards") {
    auto t4 = make_regular_tree(4, 4);
    auto other = make_regular_tree(4, 4);
    auto g = make_left_mult(t4, "a");

    CHECK(thrown_kind([&] { classify_isometry(t4, g, 1); }) == ErrKind::BadArgument);
    CHECK(thrown_kind([&] { axis(t4, g, 1); }) == ErrKind::BadArgument);
    CHECK(thrown_kind([&] { classify_isometry(other, g, 8); }) == ErrKind::MismatchedSpace);
    CHECK(thrown_kind([&] { axis(other, g, 8); }) == ErrKind::MismatchedSpace);
}
