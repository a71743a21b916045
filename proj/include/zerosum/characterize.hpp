#pragma once

#include <map>

#include "zerosum/delta_star.hpp"

namespace zerosum {

/// The computable invariants that sets of lengths determine: exponent-level
/// data, the Davenport constant, the set of minimal distances and the
/// sandwich bounding the asymptotic distance set.
struct InvariantTuple {
    FiniteAbelianGroup group;
    Int exponent = 1;
    Int rank = 0;
    Int exp_multiplicity = 0;
    Int davenport = 0;
    Int max_delta_star = 0;
    std::set<Int> delta_star;
    std::set<Int> delta1_inner, delta1_outer;
    MValue m;
    bool hyp_rank_plus_mult_small = false;  // r + k <= n - 2
    bool hyp_not_exceptional = false;       // not of the form C_{2r+2}^r

    bool hypotheses_ok() const { return hyp_rank_plus_mult_small && hyp_not_exceptional; }
};

inline InvariantTuple invariants(const FiniteAbelianGroup& g, const SweepOptions& opts = {}) {
    SweepOptions o = opts;
    o.keep_subset_table = false;
    DeltaStarReport rep = delta_star_report(g, o);
    InvariantTuple t;
    t.group = g;
    t.exponent = g.exponent();
    t.rank = g.rank();
    t.exp_multiplicity = g.exponent_multiplicity();
    t.davenport = rep.davenport_full;
    t.delta_star = rep.delta_star;
    t.max_delta_star = rep.delta_star.empty() ? 0 : *rep.delta_star.rbegin();
    t.delta1_inner = rep.delta1_inner;
    t.delta1_outer = rep.delta1_outer;
    t.m = rep.m;
    t.hyp_rank_plus_mult_small = t.rank + t.exp_multiplicity <= t.exponent - 2;
    t.hyp_not_exceptional = !is_exceptional_interval_form(g);

    if (t.max_delta_star != (t.delta1_inner.empty() ? 0 : *t.delta1_inner.rbegin()))
        throw std::logic_error("invariants: sandwich inner maximum mismatch");

    // Davenport lower bound 1 + sum(n_i - 1), certified by its witness atom:
    // the basis elements to full multiplicity plus their sum.
    GroupTables tables(g);
    std::vector<size_t> idx;
    std::vector<Int> mult;
    GroupElement diag = g.zero();
    Int expected = 1;
    for (Int i = 0; i < g.rank(); ++i) {
        std::vector<Int> c(g.rank(), 0);
        c[i] = 1;
        GroupElement e = g.make(c);
        diag = g.add(diag, e);
        if (g.invariant_factors()[i] >= 2) {
            idx.push_back(static_cast<size_t>(g.index_of(e)));
            mult.push_back(g.invariant_factors()[i] - 1);
            expected += g.invariant_factors()[i] - 1;
        }
    }
    if (g.rank() >= 1) {
        idx.push_back(static_cast<size_t>(g.index_of(diag)));
        mult.push_back(1);
        GroupElement sum = g.zero();
        for (size_t j = 0; j < idx.size(); ++j)
            sum = g.add(sum, g.scalar_mul(mult[j], tables.elements[idx[j]]));
        if (!sum.is_zero() || detail::has_proper_zero_subsum(tables, idx, mult))
            throw std::logic_error("invariants: davenport witness is not an atom");
        if (t.davenport < expected)
            throw std::logic_error("invariants: davenport below the witness length");
    }
    return t;
}

/// The facts the recovery chain asserts about any group sharing the system
/// of sets of lengths with a hypothesis-satisfying one.
inline bool chain_self_facts(const InvariantTuple& t) {
    const Int n = t.exponent, k = t.exp_multiplicity;
    if (t.max_delta_star != n - 2) return false;
    if (sandwich_membership(n - k - 1, t.delta1_inner, t.delta1_outer) != Trivalent::in)
        return false;
    if (sandwich_membership(n - k - 2, t.delta1_inner, t.delta1_outer) != Trivalent::out)
        return false;
    return true;
}

struct DistinguishVerdict {
    bool distinguished = false;
    std::string reason;
    bool undecidable = false;       // a sandwich membership stayed open
    bool exp_k_recovered = false;   // chain concludes exp and k transfer
    bool exp_matches = false;       // ground truth on the candidate
    bool k_matches = false;
    bool rank_recovery_applicable = false;
    bool rank_matches = false;
    bool iso_recovery_applicable = false;
    bool iso_concluded = false;     // chain concludes full isomorphism
};

/// Replay of the recovery chain on computed data: assuming the two groups
/// share their system of sets of lengths, their sandwich data and Davenport
/// constants must agree with the facts forced for the first group; any
/// failed fact separates the pair. When every fact is consistent the chain
/// concludes that exponent and exponent multiplicity transfer, plus rank or
/// the full isomorphism class in the in-particular regimes.
inline DistinguishVerdict distinguish(const InvariantTuple& a, const InvariantTuple& b) {
    if (!a.hypotheses_ok())
        throw std::invalid_argument("distinguish: first group violates the chain hypotheses");
    const Int n = a.exponent, k = a.exp_multiplicity;
    DistinguishVerdict v;
    v.rank_recovery_applicable = a.rank >= n / 2 + 1;
    v.iso_recovery_applicable = a.rank == a.exp_multiplicity;

    if (b.max_delta_star != n - 2) {
        v.distinguished = true;
        v.reason = "max of the minimal-distance set differs from " + std::to_string(n - 2);
        return v;
    }
    auto need_in = sandwich_membership(n - k - 1, b.delta1_inner, b.delta1_outer);
    if (need_in == Trivalent::out) {
        v.distinguished = true;
        v.reason = std::to_string(n - k - 1) + " provably missing from the candidate";
        return v;
    }
    auto need_out = sandwich_membership(n - k - 2, b.delta1_inner, b.delta1_outer);
    if (need_out == Trivalent::in) {
        v.distinguished = true;
        v.reason = std::to_string(n - k - 2) + " provably present in the candidate";
        return v;
    }
    if (need_in == Trivalent::unknown || need_out == Trivalent::unknown) {
        v.undecidable = true;
        v.reason = "sandwich leaves a membership open";
        return v;
    }

    v.exp_k_recovered = true;
    v.exp_matches = b.exponent == n;
    v.k_matches = b.exp_multiplicity == k;
    if (v.rank_recovery_applicable) v.rank_matches = b.rank == a.rank;
    if (v.iso_recovery_applicable) {
        if (b.davenport != a.davenport) {
            v.distinguished = true;
            v.reason = "Davenport constant differs";
        } else {
            v.iso_concluded = true;
        }
    }
    return v;
}

struct CensusRow {
    std::string left, right;
    bool left_hypotheses_ok = false;  // excluded (and flagged) when false
    bool differing_exp_or_mult = false;
    DistinguishVerdict verdict;
    bool ok = true;

    bool separated() const { return verdict.distinguished; }
};

struct CensusTable {
    Int max_order = 0;
    std::vector<CensusRow> rows;
    Int separated_count = 0;
    Int unseparated_count = 0;  // same exp and multiplicity; beyond the chain's reach
    Int excluded_count = 0;
    bool all_ok = true;
};

/// Every ordered pair of non-isomorphic groups of order 3..max_order with a
/// hypothesis-satisfying left side. A row is red when a pair with
/// differing exponent or exponent multiplicity is not separated, or the
/// chain draws a conclusion the ground truth refutes.
inline CensusTable census(Int max_order, const SweepOptions& opts = {}, int jobs = 1) {
    CensusTable table;
    table.max_order = max_order;
    std::vector<FiniteAbelianGroup> groups;
    for (const auto& g : all_abelian_groups(max_order))
        if (g.order() >= 3) groups.push_back(g);

    std::vector<InvariantTuple> tuples(groups.size());
    parallel_for(groups.size(), jobs, [&](size_t i) { tuples[i] = invariants(groups[i], opts); });

    for (size_t i = 0; i < groups.size(); ++i) {
        if (!tuples[i].hypotheses_ok()) {
            CensusRow row;
            row.left = groups[i].name();
            row.right = "*";
            row.left_hypotheses_ok = false;
            table.rows.push_back(row);
            ++table.excluded_count;
            continue;
        }
        if (!chain_self_facts(tuples[i]))
            throw std::logic_error("census: self facts fail for " + groups[i].name());
        for (size_t j = 0; j < groups.size(); ++j) {
            if (i == j) continue;
            CensusRow row;
            row.left = groups[i].name();
            row.right = groups[j].name();
            row.left_hypotheses_ok = true;
            row.differing_exp_or_mult =
                tuples[j].exponent != tuples[i].exponent ||
                tuples[j].exp_multiplicity != tuples[i].exp_multiplicity;
            row.verdict = distinguish(tuples[i], tuples[j]);
            row.ok = true;
            if (row.differing_exp_or_mult && !row.verdict.distinguished) row.ok = false;
            if (row.verdict.exp_k_recovered &&
                !(row.verdict.exp_matches && row.verdict.k_matches))
                row.ok = false;  // false merge
            if (row.verdict.iso_concluded) row.ok = false;  // non-isomorphic by construction
            if (row.verdict.rank_recovery_applicable && row.verdict.exp_k_recovered &&
                !row.verdict.distinguished && !row.verdict.rank_matches)
                row.ok = false;
            if (row.verdict.distinguished)
                ++table.separated_count;
            else
                ++table.unseparated_count;
            if (!row.ok) table.all_ok = false;
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace zerosum
