#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "zerosum/analysis.hpp"

using namespace zerosum;

namespace {

std::vector<GroupElement> elems_of(const FiniteAbelianGroup& g,
                                   std::vector<std::vector<Int>> coords) {
    std::vector<GroupElement> out;
    for (auto& c : coords) out.push_back(g.make(c));
    return out;
}

struct FullEnumeration {
    FiniteAbelianGroup group;
    GroupTables tables;
    AtomSet atoms;  // over every element including zero
    explicit FullEnumeration(const FiniteAbelianGroup& g)
        : group(g), tables(g),
          atoms(enumerate_atoms(tables, (uint64_t(1) << g.order()) - 1)) {}
};

}  // namespace

TEST_CASE("classification of the worked subsets") {
    auto c4 = parse_group("C4");

    auto hf = classify(c4, elems_of(c4, {{1}, {2}}));
    CHECK(hf.half_factorial);
    CHECK(hf.lcn);
    CHECK(!hf.minimal_non_half_factorial);
    CHECK(!hf.min_delta.has_value());
    CHECK(hf.atom_count == 3);

    auto bad = classify(c4, elems_of(c4, {{1}, {3}}));
    CHECK(!bad.half_factorial);
    CHECK(!bad.lcn);  // k(g*3g) = 1/2
    REQUIRE(bad.min_delta.has_value());
    CHECK(*bad.min_delta == 2);
    CHECK(bad.minimal_non_half_factorial);  // {g} and {3g} are half-factorial

    auto single = classify(c4, elems_of(c4, {{1}}));
    CHECK(single.half_factorial);
    CHECK(single.davenport == 4);
}

TEST_CASE("classification invariants on all subsets of small groups") {
    for (const auto& g : all_abelian_groups(9)) {
        FullEnumeration fe(g);
        for (uint64_t mask = 1; mask < (uint64_t(1) << g.order()); ++mask) {
            auto c = classify(fe.atoms, mask);
            if (c.half_factorial) {
                CHECK(!c.min_delta.has_value());
                CHECK(c.lcn);
                CHECK(!c.minimal_non_half_factorial);
            } else {
                CHECK(c.min_delta.has_value());
            }
            if (c.minimal_non_half_factorial) {
                // every proper subset, not only the maximal ones, is half-factorial
                for (uint64_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask)
                    CHECK(classify(fe.atoms, sub).half_factorial);
            }
        }
    }
}

TEST_CASE("classification is constant on symmetry orbits") {
    std::mt19937_64 rng(41);
    for (const auto& g : {parse_group("C8"), parse_group("C2xC4"), parse_group("C3^2")}) {
        FullEnumeration fe(g);
        auto maps = symmetry_maps(g);
        std::uniform_int_distribution<uint64_t> pick(1, (uint64_t(1) << g.order()) - 1);
        for (int trial = 0; trial < 60; ++trial) {
            uint64_t mask = pick(rng);
            auto base = classify(fe.atoms, mask);
            for (const auto& f : maps) {
                auto image = classify(fe.atoms, apply_to_mask(f, mask));
                CHECK(base.half_factorial == image.half_factorial);
                CHECK(base.lcn == image.lcn);
                CHECK(base.min_delta == image.min_delta);
                CHECK(base.atom_count == image.atom_count);
                CHECK(base.davenport == image.davenport);
                CHECK(base.minimal_non_half_factorial == image.minimal_non_half_factorial);
            }
        }
    }
}

TEST_CASE("adjoining the zero element changes no classification substance") {
    // the zero atom is prime with cross number 1: it never affects
    // half-factoriality, LCN status or the minimal distance
    for (const auto& g : all_abelian_groups(8)) {
        FullEnumeration fe(g);
        uint64_t universe = ((uint64_t(1) << g.order()) - 1) & ~uint64_t(1);
        for (uint64_t mask = universe; mask; mask = (mask - 1) & universe) {
            auto bare = classify(fe.atoms, mask);
            auto with_zero = classify(fe.atoms, mask | 1);
            CHECK(bare.half_factorial == with_zero.half_factorial);
            CHECK(bare.lcn == with_zero.lcn);
            CHECK(bare.min_delta == with_zero.min_delta);
            CHECK(with_zero.atom_count == bare.atom_count + 1);
        }
    }
}

TEST_CASE("m of small p-groups follows rank - 1") {
    CHECK(m_of_group(parse_group("C2xC2")) == MValue{1, true});
    CHECK(m_of_group(parse_group("C4")) == MValue{0, false});
    CHECK(m_of_group(parse_group("C3^2")) == MValue{1, true});
    CHECK(m_of_group(parse_group("C2^3")) == MValue{2, true});
    CHECK(m_of_group(parse_group("C2xC4")) == MValue{1, true});
    CHECK(m_of_group(parse_group("C9")) == MValue{0, false});
    CHECK_THROWS_AS(m_of_group(parse_group("C2")), std::invalid_argument);
}

TEST_CASE("m respects the general upper bound") {
    for (const auto& g : all_abelian_groups(10)) {
        if (g.order() < 3) continue;
        auto m = m_of_group(g);
        Int bound = std::max(g.rank() - 1, g.exponent() / 2 - 1);
        CHECK(m.value <= bound);
        if (!m.witness) CHECK(m.value == 0);
    }
}

TEST_CASE("cross-integrality audit on worked subsets") {
    auto c4 = parse_group("C4");
    FullEnumeration fe(c4);

    // half-factorial subset: not applicable
    uint64_t hf_mask = (1u << 1) | (1u << 2);  // {g, 2g}
    auto a1 = audit_cross_integrality(fe.tables, fe.atoms, hf_mask);
    CHECK(!a1.main.applicable);

    // {g, 3g}: {g} is half-factorial, and g*3g has k = 1/2, g^4 has k = 1
    // with v_g = 4 = ord(g); condition (b) needs gcd(v_g, 4) = 1, so the
    // only candidate pair fails and the audit stays not applicable.
    uint64_t mask13 = (1u << 1) | (1u << 3);
    auto a2 = audit_cross_integrality(fe.tables, fe.atoms, mask13);
    CHECK(!a2.main.applicable);
    CHECK(a2.note_implies_conditions);
}

TEST_CASE("cross-integrality audit fires and holds on a known order-16 subset") {
    // smallest configuration where the hypotheses are satisfiable at all
    auto g = parse_group("C2xC2xC4");
    FullEnumeration fe(g);
    uint64_t mask = 0x338;  // {(0,0,3),(0,1,0),(0,1,1),(1,0,0),(1,0,1)}
    auto a = audit_cross_integrality(fe.tables, fe.atoms, mask);
    CHECK(a.main.applicable);
    CHECK(a.main.holds);
}

TEST_CASE("audits hold on every subset of groups up to order 9") {
    for (const auto& g : all_abelian_groups(9)) {
        if (g.order() < 3) continue;
        FullEnumeration fe(g);
        uint64_t universe = ((uint64_t(1) << g.order()) - 1) & ~uint64_t(1);
        for (uint64_t mask = universe; mask; mask = (mask - 1) & universe) {
            INFO(g.name() << " mask=" << mask);
            auto ci = audit_cross_integrality(fe.tables, fe.atoms, mask);
            if (ci.main.applicable) CHECK(ci.main.holds);
            CHECK(ci.note_implies_conditions);

            auto mb = audit_min_delta_bounds(fe.tables, fe.atoms, mask);
            if (mb.strict_bound.applicable) CHECK(mb.strict_bound.holds);
            if (mb.relaxed_bound.applicable) CHECK(mb.relaxed_bound.holds);
            if (mb.lcn_bound.applicable) CHECK(mb.lcn_bound.holds);

            auto rs = audit_restricted_support_valuations(fe.tables, fe.atoms, mask);
            if (rs.applicable) CHECK(rs.holds);
        }
    }
}

TEST_CASE("small-support atom audit over small groups") {
    for (const auto& g : all_abelian_groups(8)) {
        if (g.order() < 3) continue;
        FullEnumeration fe(g);
        uint64_t universe = ((uint64_t(1) << g.order()) - 1) & ~uint64_t(1);
        for (uint64_t mask = universe; mask; mask = (mask - 1) & universe) {
            for (uint64_t rest = mask; rest; rest &= rest - 1) {
                size_t gi = static_cast<size_t>(__builtin_ctzll(rest & ~(rest - 1)));
                for (Int p : {2, 3, 5, 7}) {
                    auto rec = audit_small_support_atom(fe.tables, fe.atoms, mask, gi, p);
                    INFO(g.name() << " mask=" << mask << " g=" << gi << " p=" << p);
                    if (rec.applicable) CHECK(rec.holds);
                }
            }
        }
    }
}

TEST_CASE("valuation chain equalities over every subset and element, |G| <= 8") {
    for (const auto& g : all_abelian_groups(8)) {
        FullEnumeration fe(g);
        uint64_t universe = ((uint64_t(1) << g.order()) - 1) & ~uint64_t(1);
        for (uint64_t mask = universe; mask; mask = (mask - 1) & universe) {
            AtomSet atoms = restrict_atoms(fe.atoms, mask);
            for (uint64_t rest = mask; rest; rest &= rest - 1) {
                size_t gi = static_cast<size_t>(__builtin_ctzll(rest & ~(rest - 1)));
                auto c = valuation_chain(atoms, fe.tables.elements[gi]);
                INFO(g.name() << " mask=" << mask << " g=" << gi);
                CHECK(c.all_equal());
                CHECK(c.divides_order());
            }
        }
    }
}
