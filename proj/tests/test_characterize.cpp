#include <catch2/catch_amalgamated.hpp>

#include "zerosum/characterize.hpp"

using namespace zerosum;

TEST_CASE("invariant tuples of small groups") {
    auto c5 = invariants(parse_group("C5"));
    CHECK(c5.exponent == 5);
    CHECK(c5.rank == 1);
    CHECK(c5.exp_multiplicity == 1);
    CHECK(c5.davenport == 5);
    CHECK(c5.max_delta_star == 3);
    CHECK(c5.delta_star == std::set<Int>{1, 3});
    CHECK(c5.hypotheses_ok());

    auto v4 = invariants(parse_group("C2xC2"));
    CHECK(v4.exponent == 2);
    CHECK(v4.rank == 2);
    CHECK(v4.exp_multiplicity == 2);
    CHECK(v4.davenport == 3);
    CHECK(v4.max_delta_star == 1);
    CHECK(!v4.hypotheses_ok());

    auto c3 = invariants(parse_group("C3"));
    CHECK(c3.davenport == 3);
    CHECK(c3.max_delta_star == 1);
    CHECK(!c3.hypotheses_ok());  // r + k = 2 > n - 2 = 1

    auto c4 = invariants(parse_group("C4"));
    CHECK(!c4.hyp_not_exceptional);  // C_4 = C_{2r+2}^r for r = 1
}

TEST_CASE("self facts hold for hypothesis-satisfying groups") {
    for (const char* name : {"C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C2xC6"}) {
        auto t = invariants(parse_group(name));
        INFO(name);
        REQUIRE(t.hypotheses_ok());
        CHECK(chain_self_facts(t));
    }
}

TEST_CASE("distinguish: self-comparison recovers everything") {
    auto c5 = invariants(parse_group("C5"));
    auto v = distinguish(c5, c5);
    CHECK(!v.distinguished);
    CHECK(!v.undecidable);
    CHECK(v.exp_k_recovered);
    CHECK(v.exp_matches);
    CHECK(v.k_matches);
    CHECK(v.iso_recovery_applicable);
    CHECK(v.iso_concluded);
}

TEST_CASE("distinguish: separations and guard rails") {
    auto c5 = invariants(parse_group("C5"));
    auto v4 = invariants(parse_group("C2xC2"));
    auto v = distinguish(c5, v4);
    CHECK(v.distinguished);  // maxima 3 vs 1

    CHECK_THROWS_AS(distinguish(v4, c5), std::invalid_argument);

    // same exponent and multiplicity; Davenport separates the cyclic form
    auto c6 = invariants(parse_group("C6"));
    auto c2c6 = invariants(parse_group("C2xC6"));
    auto w = distinguish(c6, c2c6);
    CHECK(w.distinguished);
    CHECK(w.reason == "Davenport constant differs");

    // the other direction lacks the cyclic-form clause and stays unseparated
    auto w2 = distinguish(c2c6, c6);
    CHECK(!w2.distinguished);
    CHECK(w2.exp_k_recovered);
    CHECK(w2.exp_matches);
    CHECK(w2.k_matches);
}

TEST_CASE("census over order <= 8") {
    auto table = census(8);
    CHECK(table.all_ok);
    bool saw_c4_excluded = false;
    for (const auto& row : table.rows)
        if (row.left == "C4" && !row.left_hypotheses_ok) saw_c4_excluded = true;
    CHECK(saw_c4_excluded);
    // every cyclic G with 5 <= n <= 8 distinguishes every other group of order <= 8
    for (const auto& row : table.rows) {
        if (!row.left_hypotheses_ok) continue;
        INFO(row.left << " vs " << row.right);
        CHECK(row.ok);
        if (row.differing_exp_or_mult) CHECK(row.separated());
        CHECK(!row.verdict.undecidable);
    }
}

TEST_CASE("census over order <= 12 separates every differing pair") {
    auto table = census(12, {}, 2);
    CHECK(table.all_ok);
    Int hypothesis_rows = 0;
    for (const auto& row : table.rows) {
        if (!row.left_hypotheses_ok) continue;
        ++hypothesis_rows;
        INFO(row.left << " vs " << row.right);
        if (row.differing_exp_or_mult) CHECK(row.separated());
        CHECK(row.ok);
    }
    // 9 hypothesis groups, each against the 14 other groups of order 3..12
    CHECK(hypothesis_rows == 9 * 14);
}
