#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coarse/space.hpp"
#include "coarse/errors.hpp"

using namespace coarse;

TEST_CASE("regular tree words and distances") {
    auto t4 = make_regular_tree(4, 6);
    CHECK(t4->word_reduce("aA") == "");
    CHECK(t4->word_reduce("abBA") == "");
    CHECK(t4->word_reduce("abA") == "abA");
    CHECK(t4->word_inverse("ab") == "BA");
    CHECK(t4->word_mul("ab", "Ba") == "aa");

    auto e = Point::make_word(t4->id, "");
    auto a = Point::make_word(t4->id, "a");
    auto b = Point::make_word(t4->id, "b");
    auto ab = Point::make_word(t4->id, "ab");
    auto ac = Point::make_word(t4->id, "aB");
    CHECK(t4->idist(e, a) == 1);
    CHECK(t4->idist(a, b) == 2);
    CHECK(t4->idist(e, ab) == 2);
    CHECK(t4->idist(ab, ac) == 2);

    auto path = t4->geodesic(ab, ac);
    REQUIRE(path.size() == 3);
    CHECK(path[0] == ab);
    CHECK(path[1] == a);
    CHECK(path[2] == ac);

    // involutive alphabet for odd valence
    auto t3 = make_regular_tree(3, 5);
    CHECK(t3->word_reduce("aa") == "");
    CHECK(t3->word_reduce("abba") == "");
    CHECK(t3->word_inverse("abc") == "cba");

    // the line
    auto line = make_regular_tree(2, 8);
    CHECK(line->idist(Point::make_word(line->id, "aaa"), Point::make_word(line->id, "")) == 3);
    CHECK(line->idist(Point::make_word(line->id, "a"), Point::make_word(line->id, "AA")) == 3);

    CHECK_THROWS_AS(t4->word_reduce("ax"), CoarseError);
}

TEST_CASE("regular tree truncation sizes and frontier") {
    CHECK(make_regular_tree(4, 1)->vertex_count() == 5);
    CHECK(make_regular_tree(4, 2)->vertex_count() == 17);
    CHECK(make_regular_tree(3, 2)->vertex_count() == 10);
    CHECK(make_regular_tree(4, 6)->vertex_count() == 1457);

    auto t4 = make_regular_tree(4, 6);
    CHECK(t4->vertices().size() == 1457);
    CHECK(t4->frontier_depth(t4->base()) == 6);
    CHECK(t4->frontier_depth(Point::make_word(t4->id, "abab")) == 2);
    CHECK(t4->has_frontier());

    auto leafy = make_regular_tree(3, 2, true);
    CHECK(leafy->vertex_count() == 20);
    auto le = Point::make_word(leafy->id, "", true);
    auto la = Point::make_word(leafy->id, "a", true);
    CHECK(leafy->idist(le, la) == 3);
    CHECK(leafy->idist(le, leafy->base()) == 1);
    CHECK(leafy->frontier_depth(le) == 3);

    CHECK_THROWS_AS(make_regular_tree(1, 3), CoarseError);
    CHECK_THROWS_AS(make_regular_tree(4, 0), CoarseError);
}

TEST_CASE("cycles, grids, tie-break geodesics") {
    auto c12 = make_cycle(12);
    auto p = [&](int v) { return Point::make_vertex(c12->id, v); };
    CHECK(c12->idist(p(0), p(6)) == 6);
    CHECK(c12->idist(p(0), p(9)) == 3);
    CHECK(c12->diameter_now() == 6);
    CHECK(c12->ball(p(0), 2).size() == 5);
    CHECK_FALSE(c12->has_frontier());
    CHECK(c12->frontier_depth(p(0)) == LLONG_MAX);

    // antipodal tie resolved toward the lexicographically least neighbor
    auto c6 = make_cycle(6);
    auto path = c6->geodesic(Point::make_vertex(c6->id, 0), Point::make_vertex(c6->id, 3));
    REQUIRE(path.size() == 4);
    CHECK(path[0].vertex == 0);
    CHECK(path[1].vertex == 1);
    CHECK(path[2].vertex == 2);
    CHECK(path[3].vertex == 3);

    auto grid = make_grid(3, 3);
    CHECK(grid->vertex_count() == 9);
    CHECK(grid->diameter_now() == 4);

    CHECK_THROWS_AS(make_cycle(2), CoarseError);

    // points cannot cross spaces
    CHECK_THROWS_AS(c12->idist(p(0), Point::make_vertex(c6->id, 0)), CoarseError);
}

TEST_CASE("horoball model") {
    auto h = make_horoball_line(6, 3);
    CHECK(h->vertex_count() == 52);
    CHECK(h->vertices().size() == 52);
    auto q = [&](long long k, long long x) { return Point::make_levelpos(h->id, k, x); };

    // deep horizontal edges shortcut the base
    CHECK(h->idist(q(0, -4), q(0, 4)) == 6);
    CHECK(h->idist(q(0, 0), q(3, 0)) == 3);
    CHECK(h->idist(q(0, -6), q(0, 6)) == 7);

    // neighbor reach doubles per level
    CHECK(h->neighbors(q(0, 0)).size() == 3);  // up plus two base steps
    CHECK(h->neighbors(q(2, 0)).size() == 10); // up, down, and |dx| <= 4

    CHECK(h->has_frontier());
    CHECK(h->frontier_depth(q(0, 0)) == 3);
    CHECK(h->frontier_depth(q(0, 6)) == 0);
    CHECK(h->frontier_depth(q(3, 0)) == 0);

    CHECK_FALSE(h->contains(Point::make_levelpos(h->id, 4, 0)));
    CHECK_FALSE(h->contains(Point::make_levelpos(h->id, 0, 7)));

    auto hc = make_horoball_cycle(12, 3);
    CHECK(hc->vertex_count() == 48);
    auto r = [&](long long k, long long x) { return Point::make_levelpos(hc->id, k, x); };
    CHECK(hc->idist(r(0, 0), r(0, 6)) == 5); // up, three reach-2 hops, down
    CHECK(hc->idist(r(0, 1), r(0, 11)) == 2);

    CHECK_THROWS_AS(make_horoball_line(6, 0), CoarseError);
    CHECK_THROWS_AS(make_horoball_line(0, 3), CoarseError);
}

TEST_CASE("binary residue tree") {
    auto b = make_bin_tree(6);
    auto q = [&](long long l, long long r) { return Point::make_levelpos(b->id, l, r); };
    CHECK(b->vertex_count() == 127);
    CHECK(b->idist(q(0, 0), q(6, 0)) == 6);
    CHECK(b->idist(q(3, 1), q(3, 3)) == 4);
    CHECK(b->idist(q(3, 5), q(5, 21)) == 2); // 21 = 5 mod 8: refinement of the same class
    CHECK(b->idist(q(1, 0), q(1, 1)) == 2);

    auto path = b->geodesic(q(3, 1), q(3, 3));
    REQUIRE(path.size() == 5);
    CHECK(path[2] == q(1, 1)); // meet at the residue 1 mod 2 class

    CHECK(b->neighbors(q(0, 0)).size() == 2);
    CHECK(b->neighbors(q(3, 1)).size() == 3);
    CHECK(b->neighbors(q(6, 0)).size() == 1);

    CHECK(b->frontier_depth(q(3, 1)) == 3);
    CHECK(b->frontier_depth(q(0, 0)) == 0);
    CHECK(b->base() == q(3, 0));

    CHECK_FALSE(b->contains(Point::make_levelpos(b->id, 1, 5)));
    CHECK_THROWS_AS(make_bin_tree(1), CoarseError);
}

TEST_CASE("products") {
    std::vector<std::pair<std::string, std::string>> edge{{"0", "1"}};
    auto e1 = make_bounded_graph(edge, "edge");
    auto e2 = make_bounded_graph(edge, "edge");

    auto prod1 = make_product({e1, e2}, 1);
    auto prodoo = make_product({e1, e2}, 0);
    CHECK(prod1->vertex_count() == 4);
    CHECK(prod1->diameter_now() == 2);
    CHECK(prodoo->diameter_now() == 1);

    auto pt = [&](const SpacePtr& s, int u, int v) {
        return Point::make_tuple(s->id, {Point::make_vertex(e1->id, u), Point::make_vertex(e2->id, v)});
    };
    CHECK(prod1->idist(pt(prod1, 0, 0), pt(prod1, 1, 1)) == 2);
    CHECK(prodoo->idist(pt(prodoo, 0, 0), pt(prodoo, 1, 1)) == 1);

    // l1 neighbors move one factor; linf neighbors may move several
    CHECK(prod1->neighbors(pt(prod1, 0, 0)).size() == 2);
    CHECK(prodoo->neighbors(pt(prodoo, 0, 0)).size() == 3);

    auto g1 = prod1->geodesic(pt(prod1, 0, 0), pt(prod1, 1, 1));
    CHECK(g1.size() == 3);
    auto goo = prodoo->geodesic(pt(prodoo, 0, 0), pt(prodoo, 1, 1));
    CHECK(goo.size() == 2);

    // frontier passes through to the factors
    auto t4 = make_regular_tree(4, 5);
    auto mix = make_product({t4, e1}, 1);
    CHECK(mix->has_frontier());
    auto mixpt = Point::make_tuple(mix->id, {Point::make_word(t4->id, "ab"), Point::make_vertex(e1->id, 0)});
    CHECK(mix->frontier_depth(mixpt) == 3);
    CHECK_FALSE(prod1->has_frontier());

    CHECK_THROWS_AS(make_product({}, 1), CoarseError);
    CHECK_THROWS_AS(make_product({e1, prod1}, 1), CoarseError);
    CHECK_THROWS_AS(make_product({e1, e2}, 2), CoarseError);
}

TEST_CASE("enumeration guard") {
    auto big = make_regular_tree(4, 20);
    CHECK_FALSE(big->enumerable());
    CHECK_THROWS_AS(big->vertices(), CoarseError);
    // distances still fine out there
    std::string far1(20, 'a'), far2(20, 'b');
    CHECK(big->idist(Point::make_word(big->id, far1), Point::make_word(big->id, far2)) == 40);
}
