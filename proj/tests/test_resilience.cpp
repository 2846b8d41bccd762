#include "grauth/resilience.hpp"

#include <doctest.h>

using namespace grauth;

namespace {

ResilientMap linear_map(const Ring& b, std::vector<i64> coeff_ints, int t) {
    ResilientMap f;
    f.kind = ResilientMap::Kind::Linear;
    for (i64 c : coeff_ints) f.coeffs.push_back(b.from_int(c));
    f.claimed_t = t;
    return f;
}

} // namespace

TEST_CASE("identity on B^1 is balanced") {
    auto b = Ring::make(2, 2, 2);
    auto rep = check_resilient(*b, 1, linear_map(*b, {1}, 1), 1);
    CHECK(rep.ok);
    CHECK(rep.fixings_checked == 1); // only J = {}
}

TEST_CASE("sum of two coordinates is 1-resilient on GR(4,2)^2") {
    auto b = Ring::make(2, 2, 2);
    auto rep = check_resilient(*b, 2, linear_map(*b, {1, 1}, 1), 1);
    CHECK(rep.ok);
    // J = {} plus two singleton subsets with 16 fixings each
    CHECK(rep.fixings_checked == 1 + 2 * 16);
}

TEST_CASE("constant table map fails at the empty fixing") {
    auto b = Ring::make(2, 2, 1);
    ResilientMap f;
    f.kind = ResilientMap::Kind::Table;
    for (i64 i = 0; i < b->size(); ++i) f.table[i] = b->one();
    auto rep = check_resilient(*b, 1, f, 0);
    CHECK(!rep.ok);
    CHECK(!rep.failure.empty());
}

TEST_CASE("resiliency is monotone downward") {
    auto b = Ring::make(2, 2, 1);
    auto f = linear_map(*b, {1, 1, 1}, 2);
    for (int t = 2; t >= 0; --t) CHECK(check_resilient(*b, 3, f, t).ok);
}

TEST_CASE("non-unit linear coefficient breaks balance") {
    auto b = Ring::make(2, 2, 1);
    auto rep = check_resilient(*b, 1, linear_map(*b, {2}, 0), 0);
    CHECK(!rep.ok); // x -> 2x only hits {0, 2}
}

TEST_CASE("evaluation matches the linear formula") {
    auto b = Ring::make(2, 2, 2);
    auto f = linear_map(*b, {1, 3}, 1);
    std::vector<Elem> x{b->make_elem({0, 1}), b->make_elem({1, 1})};
    Elem want = b->add(x[0], b->mul(b->from_int(3), x[1]));
    CHECK(f.eval(*b, x, 0) == want);
}

TEST_CASE("table map evaluates by x index") {
    auto b = Ring::make(2, 2, 1);
    ResilientMap f;
    f.kind = ResilientMap::Kind::Table;
    for (i64 i = 0; i < b->size(); ++i) f.table[i] = b->element((i + 1) % 4);
    auto rep = check_resilient(*b, 1, f, 0);
    CHECK(rep.ok); // a permutation is balanced
    std::vector<Elem> x{b->from_int(2)};
    CHECK(f.eval(*b, x, 2) == b->element(3));
}
