#include "grauth/gray.hpp"

#include <doctest.h>

#include <set>

using namespace grauth;

TEST_CASE("classical Z_4 Gray table") {
    GrayMap g(Ring::make(2, 2, 1));
    const Ring& a = *g.ring();
    auto row = [&](i64 v) { return g.to_string(g.image(a.from_int(v))); };
    CHECK(row(0) == "0:0");
    CHECK(row(1) == "0:1");
    CHECK(row(2) == "1:1");
    CHECK(row(3) == "1:0");
}

TEST_CASE("GR(4,2) Gray values") {
    GrayMap g(Ring::make(2, 2, 2));
    const Ring& a = *g.ring();
    CHECK(g.width() == 4);
    CHECK(g.q() == 4);
    // digits of 2 are (0, 1): every coordinate is rho(1) = 1 in F_4
    CHECK(g.to_string(g.image(a.from_int(2))) == "1,0:1,0:1,0:1,0");
    // socle multiples are constant vectors
    for (i64 j = 0; j < a.teich_order(); ++j) {
        Elem c = a.teich(j);
        GrayVec v = g.image(a.socle_elem(c));
        for (i64 k = 1; k < g.width(); ++k) REQUIRE(v[k] == v[0]);
        REQUIRE(v[0] == a.rho(c));
    }
}

TEST_CASE("Gray injectivity and coordinate surjectivity") {
    for (auto ring : {Ring::make(2, 2, 1), Ring::make(2, 2, 2),
                      Ring::make(3, 2, 1), Ring::make(5, 2, 1)}) {
        GrayMap g(ring);
        std::set<std::string> images;
        for (i64 i = 0; i < ring->size(); ++i)
            images.insert(g.to_string(g.image(ring->element(i))));
        REQUIRE(i64(images.size()) == ring->size());

        REQUIRE(g.to_string(g.image(ring->zero())) ==
                g.to_string(GrayVec(g.width(), g.field()->zero())));
        for (i64 k = 0; k < g.width(); ++k) {
            std::set<i64> hit;
            for (i64 i = 0; i < ring->size(); ++i)
                hit.insert(g.field()->index_of(g.coord(ring->element(i), k)));
            REQUIRE(i64(hit.size()) == g.q());
        }
    }
}

TEST_CASE("socle additivity") {
    // add_socle internally asserts Phi(a + c p^{r-1}) = Phi(a) + rho(c) * 1
    for (auto ring : {Ring::make(2, 2, 1), Ring::make(2, 2, 2),
                      Ring::make(5, 2, 1)}) {
        GrayMap g(ring);
        for (i64 i = 0; i < ring->size(); ++i) {
            Elem a = ring->element(i);
            CHECK_NOTHROW(g.add_socle(a, ring->zero()));
            for (i64 j = 0; j < ring->teich_order(); ++j)
                REQUIRE_NOTHROW(g.add_socle(a, ring->teich(j)));
        }
    }

    GrayMap g4(Ring::make(2, 2, 1));
    const Ring& z4 = *g4.ring();
    // a = 1, c = 1: Phi(3) = Phi(1) + (1,1) = (1,0)
    CHECK(g4.to_string(g4.add_socle(z4.one(), z4.one())) == "1:0");
    // c = 0 and a = 0 edge cases
    CHECK(g4.add_socle(z4.from_int(3), z4.zero()) == g4.image(z4.from_int(3)));
    CHECK(g4.to_string(g4.add_socle(z4.zero(), z4.one())) == "1:1");
}

TEST_CASE("lazy coordinate equals materialized image") {
    auto ring = Ring::make(2, 2, 2);
    GrayMap g(ring);
    for (i64 i = 0; i < ring->size(); ++i) {
        GrayVec v = g.image(ring->element(i));
        for (i64 k = 0; k < g.width(); ++k)
            REQUIRE(g.coord(ring->element(i), k) == v[k]);
    }
}
