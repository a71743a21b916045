#pragma once

#include <random>
#include <set>

#include "zerosum/analysis.hpp"
#include "zerosum/parallel.hpp"

namespace zerosum {

struct sweep_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepOptions {
    Int max_group_order = 16;   // full verification stays interactive up to here
    Int max_cyclic_order = 20;  // cyclic groups dedup harder, so a bit further
    uint64_t node_budget = 100'000'000;
    int jobs = 1;
    bool keep_subset_table = true;
};

/// { a, a+1, ..., b }, empty when a > b.
inline std::set<Int> interval_set(Int a, Int b) {
    std::set<Int> s;
    for (Int x = a; x <= b; ++x) s.insert(x);
    return s;
}

inline bool is_contiguous(const std::set<Int>& s) {
    if (s.empty()) return true;
    return static_cast<Int>(s.size()) == *s.rbegin() - *s.begin() + 1;
}

/// The displayed lower and upper sets bounding the set of minimal
/// distances: with n the exponent, r the rank and k the exponent
/// multiplicity,
///   lower = [1, r-1] u {max(1, n/2-1)} u [max(1, n-k-1), n-2]
///   upper = [1, max(r-1, n/2-1)]       u [max(1, n-k-1), n-2]
/// (floor division; empty-interval convention for a > b).
inline std::pair<std::set<Int>, std::set<Int>> delta_star_bounds(const FiniteAbelianGroup& g) {
    const Int n = g.exponent(), r = g.rank(), k = g.exponent_multiplicity();
    std::set<Int> lower = interval_set(1, r - 1);
    lower.insert(std::max<Int>(1, n / 2 - 1));
    for (Int x : interval_set(std::max<Int>(1, n - k - 1), n - 2)) lower.insert(x);
    std::set<Int> upper = interval_set(1, std::max(r - 1, n / 2 - 1));
    for (Int x : interval_set(std::max<Int>(1, n - k - 1), n - 2)) upper.insert(x);
    return {std::move(lower), std::move(upper)};
}

/// True when the group is the exceptional interval case C_{2r+2}^r.
inline bool is_exceptional_interval_form(const FiniteAbelianGroup& g) {
    const Int r = g.rank();
    if (r == 0) return false;
    for (Int f : g.invariant_factors())
        if (f != 2 * r + 2) return false;
    return true;
}

/// Per-group verdicts for the structural claims about the set of minimal
/// distances. The interval predicates (a)-(d) are evaluated independently
/// and their pairwise equivalence is itself a verdict.
struct DeltaStarVerdicts {
    bool lower_inclusion = false;
    bool upper_inclusion = false;
    bool part1_applicable = false;
    bool part1_holds = true;
    bool interval_a = false;  // the computed set is an interval
    bool interval_b = false;  // max(1, n-k-2) belongs to it
    bool interval_c = false;  // n-k-2 <= max(r-1, n/2-1)
    bool interval_d = false;  // r+k >= n-1, or r+k = n-2 with the exceptional form
    bool equivalence_holds = false;
    bool one_present = false;            // 1 is always a minimal distance
    bool element_order_gaps = true;      // ord(g)-2 present for every ord(g) >= 3
    bool rank_interval_present = true;   // [1, r-1] present when r >= 2
    bool max_formula_m = false;          // max = max(n-2, m)
    bool max_formula_rank = false;       // max = max(n-2, r-1)
    bool m_bound = false;                // m <= max(r-1, n/2-1)
    bool m_pgroup_identity = true;       // p-groups: m = r-1 under the empty-max encoding

    bool all_green() const {
        return lower_inclusion && upper_inclusion && part1_holds && equivalence_holds &&
               one_present && element_order_gaps && rank_interval_present && max_formula_m &&
               max_formula_rank && m_bound && m_pgroup_identity;
    }
};

struct SubsetRow {
    SubsetClassification cls;
    Int orbit_size = 1;
};

struct DeltaStarReport {
    FiniteAbelianGroup group;
    std::set<Int> delta_star;
    MValue m;
    Int davenport_full = 0;  // over the nonzero elements; the zero atom never exceeds it
    std::set<Int> lower_bound_set, upper_bound_set;
    DeltaStarVerdicts verdicts;
    std::set<Int> delta1_inner, delta1_outer;
    std::vector<SubsetRow> table;  // orbit representatives, ascending mask
    Int orbit_rep_count = 0;
    Int subset_count = 0;
};

inline bool is_p_group(const FiniteAbelianGroup& g) {
    Int n = g.order();
    if (n < 2) return false;
    Int p = 2;
    while (n % p != 0) ++p;
    while (n % p == 0) n /= p;
    return n == 1;
}

inline std::set<Int> divisor_closure(const std::set<Int>& s) {
    std::set<Int> out;
    for (Int d : s)
        for (Int x = 1; x <= d; ++x)
            if (d % x == 0) out.insert(x);
    return out;
}

/// Membership of a value in a set sandwiched between inner and outer.
enum class Trivalent { in, out, unknown };

inline Trivalent sandwich_membership(Int d, const std::set<Int>& inner,
                                     const std::set<Int>& outer) {
    if (inner.count(d)) return Trivalent::in;
    if (!outer.count(d)) return Trivalent::out;
    return Trivalent::unknown;
}

/// Full orbit-reduced sweep: the set of minimal distances over all
/// subsets, m, the Davenport constant, structural verdicts, and the
/// divisor/bound sandwich for the asymptotic distance set. Subsets
/// containing 0 are equivalent to their 0-free counterparts (the zero atom
/// is prime and length-neutral), so only 0-free subsets are enumerated.
inline DeltaStarReport delta_star_report(const FiniteAbelianGroup& g,
                                         const SweepOptions& opts = {}) {
    if (g.order() < 3)
        throw std::invalid_argument("delta_star: group must have order >= 3");
    const Int limit = g.rank() <= 1 ? std::max(opts.max_cyclic_order, opts.max_group_order)
                                    : opts.max_group_order;
    if (g.order() > limit)
        throw sweep_limit_error("delta_star: |" + g.name() + "| = " +
                                std::to_string(g.order()) + " exceeds the sweep limit " +
                                std::to_string(limit));

    DeltaStarReport rep;
    rep.group = g;
    GroupTables tables(g);
    const uint64_t universe =
        ((g.order() == 64 ? ~uint64_t(0) : (uint64_t(1) << g.order()) - 1)) &
        ~(uint64_t(1) << tables.zero_index);
    AtomSet full = enumerate_atoms(tables, universe, EnumerationConfig{opts.node_budget});
    rep.davenport_full = full.davenport;

    auto maps = symmetry_maps(g);
    auto reps = orbit_representatives(maps, universe);
    rep.orbit_rep_count = static_cast<Int>(reps.size());
    rep.subset_count = static_cast<Int>(universe == ~uint64_t(0)
                                            ? 0
                                            : (uint64_t(1) << __builtin_popcountll(universe)) - 1);

    std::vector<SubsetRow> rows(reps.size());
    parallel_for(reps.size(), opts.jobs, [&](size_t i) {
        rows[i].cls = classify(full, reps[i]);
        std::set<uint64_t> orbit;
        for (const auto& f : maps) orbit.insert(apply_to_mask(f, reps[i]));
        rows[i].orbit_size = static_cast<Int>(orbit.size());
    });

    for (const auto& row : rows) {
        if (row.cls.min_delta) {
            rep.delta_star.insert(*row.cls.min_delta);
            if (row.cls.lcn) {
                rep.m.witness = true;
                rep.m.value = std::max(rep.m.value, *row.cls.min_delta);
            }
        }
    }
    if (opts.keep_subset_table) rep.table = std::move(rows);

    const Int n = g.exponent(), r = g.rank(), k = g.exponent_multiplicity();
    auto [lower, upper] = delta_star_bounds(g);
    rep.lower_bound_set = lower;
    rep.upper_bound_set = upper;

    DeltaStarVerdicts& v = rep.verdicts;
    v.lower_inclusion = std::includes(rep.delta_star.begin(), rep.delta_star.end(),
                                      lower.begin(), lower.end());
    v.upper_inclusion = std::includes(upper.begin(), upper.end(), rep.delta_star.begin(),
                                      rep.delta_star.end());
    v.part1_applicable = r >= n / 2 - 1;
    if (v.part1_applicable) v.part1_holds = (rep.delta_star == upper);

    v.interval_a = is_contiguous(rep.delta_star) && rep.delta_star.count(1) > 0;
    v.interval_b = rep.delta_star.count(std::max<Int>(1, n - k - 2)) > 0;
    v.interval_c = n - k - 2 <= std::max(r - 1, n / 2 - 1);
    v.interval_d = (r + k >= n - 1) || (r + k == n - 2 && is_exceptional_interval_form(g));
    v.equivalence_holds = (v.interval_a == v.interval_b) && (v.interval_b == v.interval_c) &&
                          (v.interval_c == v.interval_d);

    v.one_present = rep.delta_star.count(1) > 0;
    std::set<Int> orders;
    for (const auto& e : tables.elements) orders.insert(g.element_order(e));
    for (Int d : orders)
        if (d >= 3 && rep.delta_star.count(d - 2) == 0) v.element_order_gaps = false;
    if (r >= 2)
        for (Int x = 1; x <= r - 1; ++x)
            if (rep.delta_star.count(x) == 0) v.rank_interval_present = false;

    Int max_ds = rep.delta_star.empty() ? 0 : *rep.delta_star.rbegin();
    v.max_formula_m = max_ds == std::max(n - 2, rep.m.value);
    v.max_formula_rank = max_ds == std::max(n - 2, r - 1);
    v.m_bound = rep.m.value <= std::max(r - 1, n / 2 - 1);
    if (is_p_group(g))
        v.m_pgroup_identity = rep.m.witness ? rep.m.value == r - 1 : r - 1 == 0;

    rep.delta1_inner = rep.delta_star;
    std::set<Int> bound233 = interval_set(1, std::max(rep.m.value, n / 2 - 1));
    for (Int x : interval_set(std::max<Int>(1, n - k - 1), n - 2)) bound233.insert(x);
    std::set<Int> closure = divisor_closure(rep.delta_star);
    for (Int d : closure)
        if (bound233.count(d)) rep.delta1_outer.insert(d);
    return rep;
}

inline std::set<Int> delta_star(const FiniteAbelianGroup& g, const SweepOptions& opts = {}) {
    SweepOptions o = opts;
    o.keep_subset_table = false;
    return delta_star_report(g, o).delta_star;
}

/// Inner and outer bounds for the set of differences realized by
/// arbitrarily long almost-arithmetical progressions: the set of minimal
/// distances from below, and from above its divisor closure intersected
/// with the m-dependent interval bound.
inline std::pair<std::set<Int>, std::set<Int>> delta_1_sandwich(const FiniteAbelianGroup& g,
                                                                const SweepOptions& opts = {}) {
    SweepOptions o = opts;
    o.keep_subset_table = false;
    auto rep = delta_star_report(g, o);
    return {rep.delta1_inner, rep.delta1_outer};
}

/// Random sample check that classification is constant on symmetry orbits.
inline bool orbit_soundness_check(const FiniteAbelianGroup& g, uint64_t seed, int trials,
                                  const EnumerationConfig& cfg = {}) {
    GroupTables tables(g);
    const uint64_t universe =
        ((uint64_t(1) << g.order()) - 1) & ~(uint64_t(1) << tables.zero_index);
    AtomSet full = enumerate_atoms(tables, universe, cfg);
    auto maps = symmetry_maps(g);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> pick(1, universe);
    std::uniform_int_distribution<size_t> pick_map(0, maps.size() - 1);
    for (int i = 0; i < trials; ++i) {
        uint64_t mask = pick(rng) & universe;
        if (!mask) continue;
        auto a = classify(full, mask);
        auto b = classify(full, apply_to_mask(maps[pick_map(rng)], mask));
        if (a.half_factorial != b.half_factorial || a.lcn != b.lcn ||
            a.min_delta != b.min_delta || a.atom_count != b.atom_count ||
            a.davenport != b.davenport ||
            a.minimal_non_half_factorial != b.minimal_non_half_factorial)
            return false;
    }
    return true;
}

}  // namespace zerosum
