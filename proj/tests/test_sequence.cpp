#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "zerosum/sequence.hpp"

using namespace zerosum;

namespace {

Sequence seq(const FiniteAbelianGroup& g, std::map<std::vector<Int>, Int> raw) {
    std::map<GroupElement, Int> m;
    for (auto& [coords, v] : raw) m.emplace(g.make(coords), v);
    return Sequence::from_multiplicities(g, std::move(m));
}

Sequence random_sequence(const FiniteAbelianGroup& g, std::mt19937_64& rng) {
    auto elems = g.enumerate_elements();
    std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
    std::uniform_int_distribution<Int> len(0, 6);
    Sequence s(g);
    Int l = len(rng);
    for (Int i = 0; i < l; ++i) s = s.with(elems[pick(rng)]);
    return s;
}

}  // namespace

TEST_CASE("sigma") {
    auto c4 = parse_group("C4");
    CHECK(seq(c4, {{{1}, 1}, {{3}, 1}}).sigma() == c4.make({0}));
    CHECK(seq(c4, {{{1}, 2}}).sigma() == c4.make({2}));
    auto v4 = parse_group("C2xC2");
    CHECK(seq(v4, {{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}}).sigma() == v4.zero());
    CHECK(Sequence(c4).sigma() == c4.zero());
}

TEST_CASE("cross number is exact") {
    auto c4 = parse_group("C4");
    CHECK(seq(c4, {{{1}, 1}, {{3}, 1}}).cross_number() == Rational(1, 2));
    CHECK(seq(c4, {{{1}, 2}, {{2}, 1}}).cross_number() == Rational(1));
    CHECK(Sequence(c4).cross_number() == Rational(0));
    // the zero element contributes v/1
    CHECK(seq(c4, {{{0}, 3}}).cross_number() == Rational(3));
}

TEST_CASE("zero-sum, divisibility, quotient, max multiplicity") {
    auto c4 = parse_group("C4");
    CHECK(seq(c4, {{{1}, 1}, {{3}, 1}}).is_zero_sum());
    CHECK(!seq(c4, {{{1}, 1}}).is_zero_sum());

    auto g2 = seq(c4, {{{1}, 2}});
    auto g4 = seq(c4, {{{1}, 4}});
    CHECK(g2.divides(g4));
    CHECK(*g4.quotient_by(g2) == g2);
    CHECK(!g4.divides(g2));
    CHECK(!g2.quotient_by(g4).has_value());

    CHECK(seq(c4, {{{1}, 3}, {{2}, 1}}).max_multiplicity() == 3);
    CHECK(Sequence(c4).max_multiplicity() == 0);
    CHECK(Sequence(c4).length() == 0);
}

TEST_CASE("length, sum and cross number are monoid homomorphisms") {
    std::mt19937_64 rng(11);
    for (const auto& g : {parse_group("C6"), parse_group("C2xC4"), parse_group("C3^2")}) {
        for (int trial = 0; trial < 100; ++trial) {
            auto s = random_sequence(g, rng);
            auto t = random_sequence(g, rng);
            auto st = s.mul(t);
            CHECK(st.length() == s.length() + t.length());
            CHECK(st.sigma() == g.add(s.sigma(), t.sigma()));
            CHECK(st.cross_number() == s.cross_number() + t.cross_number());
            CHECK(st.quotient_by(t).has_value());
            auto q = *st.quotient_by(t);
            CHECK(q == s);
            for (auto& [e, v] : st.multiplicities())
                CHECK(q.v(e) == st.v(e) - t.v(e));
        }
    }
}

TEST_CASE("single-support zero-sum sequences have ord(g) | length") {
    for (const auto& g : {parse_group("C12"), parse_group("C2xC8")}) {
        for (const auto& e : g.enumerate_elements()) {
            if (e.is_zero()) continue;
            Int ord = g.element_order(e);
            for (Int c = 1; c <= 2 * ord; ++c) {
                Sequence s = Sequence(g).with(e, c);
                if (s.is_zero_sum()) CHECK(c % ord == 0);
                if (c % ord == 0) CHECK(s.is_zero_sum());
            }
        }
    }
}

TEST_CASE("rendering") {
    auto c4 = parse_group("C4");
    CHECK(Sequence(c4).str() == "1");
    CHECK(seq(c4, {{{1}, 2}, {{3}, 1}}).str() == "(1)^2·(3)^1");
    auto v4 = parse_group("C2xC2");
    CHECK(seq(v4, {{{1, 0}, 1}}).str() == "(1,0)^1");
}

TEST_CASE("rational arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) + Rational(1, 2) == Rational(1));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(7, 7).is_integer());
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(5, 2).str() == "5/2");
    CHECK_THROWS(Rational(1, 0));
}
