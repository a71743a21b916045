#pragma once

#include "zerosum/characterize.hpp"
#include "zerosum/report.hpp"

namespace zerosum {

struct VerifyOptions {
    Int max_order = 8;
    int jobs = 1;
    uint64_t node_budget = 100'000'000;
    uint64_t seed = 0;

    SweepOptions sweep() const {
        SweepOptions s;
        s.max_group_order = std::max<Int>(s.max_group_order, max_order);
        s.max_cyclic_order = std::max<Int>(s.max_cyclic_order, max_order);
        s.node_budget = node_budget;
        s.jobs = 1;  // drivers parallelize over groups instead
        s.keep_subset_table = false;
        return s;
    }
};

namespace detail {

struct GroupScan {
    FiniteAbelianGroup group;
    GroupTables tables;
    AtomSet full;  // over every element, zero included
    uint64_t all_mask;

    explicit GroupScan(const FiniteAbelianGroup& g, uint64_t budget)
        : group(g), tables(g),
          full(enumerate_atoms(tables, (uint64_t(1) << g.order()) - 1,
                               EnumerationConfig{budget})),
          all_mask((uint64_t(1) << g.order()) - 1) {}
};

inline std::vector<FiniteAbelianGroup> groups_up_to(Int max_order, Int min_order) {
    std::vector<FiniteAbelianGroup> out;
    if (min_order <= 1) out.push_back(FiniteAbelianGroup());
    for (const auto& g : all_abelian_groups(max_order))
        if (g.order() >= min_order) out.push_back(g);
    return out;
}

template <class Fn>
std::vector<VerdictRecord> per_group(const std::vector<FiniteAbelianGroup>& groups, int jobs,
                                     Fn&& fn) {
    std::vector<std::vector<VerdictRecord>> slots(groups.size());
    parallel_for(groups.size(), jobs, [&](size_t i) { slots[i] = fn(groups[i]); });
    std::vector<VerdictRecord> out;
    for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
    return out;
}

}  // namespace detail

/// Half-factoriality criterion (check id lemma2.2) together with the
/// lattice/enumeration cross-validation: for every nonempty subset, the
/// lattice minimal distance is absent exactly when every atom has cross
/// number 1, the bounded factorization scan returns the same value, and
/// half-factorial subsets have L(B) = {k(B)} for every product tested.
inline std::vector<VerdictRecord> verify_half_factorial_criterion(const VerifyOptions& opts) {
    return detail::per_group(
        detail::groups_up_to(opts.max_order, 1), opts.jobs,
        [&](const FiniteAbelianGroup& g) {
            detail::GroupScan scan(g, opts.node_budget);
            Int checked = 0;
            json failures = json::array();
            for (uint64_t mask = 1; mask <= scan.all_mask; ++mask) {
                AtomSet atoms = restrict_atoms(scan.full, mask);
                bool all_one = detail::all_cross_one(atoms);
                auto lat = min_delta_lattice(atoms);
                Int budget = 3 * std::max<Int>(atoms.davenport, 1);
                auto obs = observed_min_delta(atoms, budget);
                bool ok = (lat.has_value() == !all_one) && (lat == obs);
                if (ok && all_one) {
                    scan_length_sets(atoms, budget,
                                     [&](const std::vector<Int>& expvec, uint64_t lmask) {
                                         Rational k;
                                         for (size_t j = 0; j < expvec.size(); ++j)
                                             k += Rational(expvec[j],
                                                           g.element_order(atoms.elements[j]));
                                         if (!k.is_integer() ||
                                             lmask != (uint64_t(1) << k.num))
                                             ok = false;
                                         return ok;
                                     });
                }
                ++checked;
                if (!ok && failures.size() < 5) failures.push_back(detail::hex64(mask));
            }
            VerdictRecord v;
            v.check = "lemma2.2";
            v.subject = g.name();
            v.ok = failures.empty();
            v.detail["subsets"] = checked;
            if (!failures.empty()) v.detail["failing_masks"] = failures;
            return std::vector<VerdictRecord>{v};
        });
}

/// Valuation chain equalities (check id lemma3.1): the gcd and minimal
/// positive multiplicity of g over the atoms coincide with the minimal and
/// gcd multiple of g landing in the span of the rest, divide ord(g); and
/// under the pairwise non-generation hypothesis, atoms with proper support
/// have non-unit valuations.
inline std::vector<VerdictRecord> verify_valuation_chain(const VerifyOptions& opts) {
    return detail::per_group(
        detail::groups_up_to(opts.max_order, 2), opts.jobs,
        [&](const FiniteAbelianGroup& g) {
            detail::GroupScan scan(g, opts.node_budget);
            Int pairs = 0, applicable = 0;
            bool ok = true;
            for (uint64_t mask = 1; mask <= scan.all_mask && ok; ++mask) {
                AtomSet atoms = restrict_atoms(scan.full, mask);
                for (uint64_t rest = mask; rest; rest &= rest - 1) {
                    size_t gi = static_cast<size_t>(__builtin_ctzll(rest & ~(rest - 1)));
                    if (gi == scan.tables.zero_index) continue;
                    auto c = valuation_chain(atoms, scan.tables.elements[gi]);
                    ++pairs;
                    if (!c.all_equal() || !c.divides_order()) {
                        ok = false;
                        break;
                    }
                }
                auto rs = audit_restricted_support_valuations(scan.tables, scan.full, mask);
                if (rs.applicable) {
                    ++applicable;
                    if (!rs.holds) ok = false;
                }
            }
            VerdictRecord v;
            v.check = "lemma3.1";
            v.subject = g.name();
            v.ok = ok;
            v.detail["element_pairs"] = pairs;
            v.detail["restricted_support_cases"] = applicable;
            return std::vector<VerdictRecord>{v};
        });
}

/// Small-support witness atoms (check id lemma3.3).
inline std::vector<VerdictRecord> verify_small_support_atoms(const VerifyOptions& opts) {
    return detail::per_group(
        detail::groups_up_to(opts.max_order, 3), opts.jobs,
        [&](const FiniteAbelianGroup& g) {
            detail::GroupScan scan(g, opts.node_budget);
            std::set<Int> primes;
            for (auto& [p, q] : detail::prime_power_decomposition({g.exponent()}))
                primes.insert(p);
            Int applicable = 0;
            bool ok = true;
            for (uint64_t mask = 1; mask <= scan.all_mask && ok; ++mask)
                for (uint64_t rest = mask; rest && ok; rest &= rest - 1) {
                    size_t gi = static_cast<size_t>(__builtin_ctzll(rest & ~(rest - 1)));
                    for (Int p : primes) {
                        auto rec = audit_small_support_atom(scan.tables, scan.full, mask, gi, p);
                        if (!rec.applicable) continue;
                        ++applicable;
                        if (!rec.holds) {
                            ok = false;
                            break;
                        }
                    }
                }
            VerdictRecord v;
            v.check = "lemma3.3";
            v.subject = g.name();
            v.ok = ok;
            v.detail["witness_cases"] = applicable;
            return std::vector<VerdictRecord>{v};
        });
}

/// Integral-cross-number divisibility audits (check id lemma3.5).
inline std::vector<VerdictRecord> verify_cross_integrality(const VerifyOptions& opts) {
    return detail::per_group(
        detail::groups_up_to(opts.max_order, 3), opts.jobs,
        [&](const FiniteAbelianGroup& g) {
            detail::GroupScan scan(g, opts.node_budget);
            auto maps = symmetry_maps(g);
            uint64_t universe = scan.all_mask & ~(uint64_t(1) << scan.tables.zero_index);
            Int applicable = 0, notes = 0;
            bool ok = true;
            for (uint64_t mask : orbit_representatives(maps, universe)) {
                auto a = audit_cross_integrality(scan.tables, scan.full, mask);
                if (a.main.applicable) {
                    ++applicable;
                    if (!a.main.holds) ok = false;
                }
                if (a.note_applicable) {
                    ++notes;
                    if (!a.note_implies_conditions) ok = false;
                }
            }
            VerdictRecord v;
            v.check = "lemma3.5";
            v.subject = g.name();
            v.ok = ok;
            v.detail["applicable_subsets"] = applicable;
            v.detail["note_cases"] = notes;
            return std::vector<VerdictRecord>{v};
        });
}

/// Minimal-distance upper-bound audits (check id audit3.4-3.6), plus the
/// blanket bound for LCN subsets.
inline std::vector<VerdictRecord> verify_bound_audits(const VerifyOptions& opts) {
    return detail::per_group(
        detail::groups_up_to(opts.max_order, 3), opts.jobs,
        [&](const FiniteAbelianGroup& g) {
            detail::GroupScan scan(g, opts.node_budget);
            auto maps = symmetry_maps(g);
            uint64_t universe = scan.all_mask & ~(uint64_t(1) << scan.tables.zero_index);
            Int strict = 0, relaxed = 0, lcn = 0;
            bool ok = true;
            for (uint64_t mask : orbit_representatives(maps, universe)) {
                auto a = audit_min_delta_bounds(scan.tables, scan.full, mask);
                if (a.strict_bound.applicable) {
                    ++strict;
                    if (!a.strict_bound.holds) ok = false;
                }
                if (a.relaxed_bound.applicable) {
                    ++relaxed;
                    if (!a.relaxed_bound.holds) ok = false;
                }
                if (a.lcn_bound.applicable) {
                    ++lcn;
                    if (!a.lcn_bound.holds) ok = false;
                }
            }
            VerdictRecord v;
            v.check = "audit3.4-3.6";
            v.subject = g.name();
            v.ok = ok;
            v.detail["strict_cases"] = strict;
            v.detail["relaxed_cases"] = relaxed;
            v.detail["lcn_subsets"] = lcn;
            return std::vector<VerdictRecord>{v};
        });
}

/// Maximum and sandwich identities (check id prop2.3): the maximum of the
/// minimal-distance set equals max(exp-2, m) and max(exp-2, rank-1); the
/// p-group value of m; inner/outer sandwich containment.
inline std::vector<VerdictRecord> verify_max_identities(const VerifyOptions& opts) {
    return detail::per_group(
        detail::groups_up_to(opts.max_order, 3), opts.jobs,
        [&](const FiniteAbelianGroup& g) {
            auto rep = delta_star_report(g, opts.sweep());
            std::vector<VerdictRecord> out;
            VerdictRecord max_v;
            max_v.check = "prop2.3.max";
            max_v.subject = g.name();
            max_v.ok = rep.verdicts.max_formula_m && rep.verdicts.max_formula_rank;
            max_v.source = source::formula;
            max_v.detail["max"] = rep.delta_star.empty() ? 0 : *rep.delta_star.rbegin();
            out.push_back(max_v);

            VerdictRecord pg;
            pg.check = "prop2.3.pgroup-m";
            pg.subject = g.name();
            pg.applicable = is_p_group(g);
            pg.ok = rep.verdicts.m_pgroup_identity;
            pg.source = source::formula;
            pg.detail["m"] = rep.m.value;
            pg.detail["witness"] = rep.m.witness;
            out.push_back(pg);

            VerdictRecord sw;
            sw.check = "prop2.3.sandwich";
            sw.subject = g.name();
            sw.source = source::sandwich;
            sw.ok = std::includes(rep.delta1_outer.begin(), rep.delta1_outer.end(),
                                  rep.delta1_inner.begin(), rep.delta1_inner.end());
            sw.detail["inner"] = to_json(rep.delta1_inner);
            sw.detail["outer"] = to_json(rep.delta1_outer);
            out.push_back(sw);
            return out;
        });
}

/// m upper bound (check id prop3.7).
inline std::vector<VerdictRecord> verify_m_bound(const VerifyOptions& opts) {
    return detail::per_group(
        detail::groups_up_to(opts.max_order, 3), opts.jobs,
        [&](const FiniteAbelianGroup& g) {
            auto rep = delta_star_report(g, opts.sweep());
            VerdictRecord v;
            v.check = "prop3.7";
            v.subject = g.name();
            v.ok = rep.verdicts.m_bound;
            v.detail["m"] = rep.m.value;
            v.detail["bound"] = std::max(g.rank() - 1, g.exponent() / 2 - 1);
            return std::vector<VerdictRecord>{v};
        });
}

/// Structure of the minimal-distance set (check id thm1.1): bound-set
/// inclusions, the exact formula where it applies, the four-way interval
/// equivalence, and the membership side facts; plus a seeded orbit
/// soundness sample.
inline std::vector<VerdictRecord> verify_structure(const VerifyOptions& opts) {
    return detail::per_group(
        detail::groups_up_to(opts.max_order, 3), opts.jobs,
        [&](const FiniteAbelianGroup& g) {
            auto rep = delta_star_report(g, opts.sweep());
            std::vector<VerdictRecord> out;
            auto add = [&](const char* check, bool ok, bool applicable = true,
                           const char* src = source::computed) {
                VerdictRecord v;
                v.check = check;
                v.subject = g.name();
                v.ok = ok;
                v.applicable = applicable;
                v.source = src;
                out.push_back(v);
            };
            add("thm1.1.lower", rep.verdicts.lower_inclusion, true, source::formula);
            add("thm1.1.upper", rep.verdicts.upper_inclusion, true, source::formula);
            add("thm1.1.part1", rep.verdicts.part1_holds, rep.verdicts.part1_applicable,
                source::formula);
            add("thm1.1.equivalence", rep.verdicts.equivalence_holds);
            add("thm1.1.one-present", rep.verdicts.one_present);
            add("thm1.1.order-gaps", rep.verdicts.element_order_gaps);
            add("thm1.1.rank-interval", rep.verdicts.rank_interval_present,
                g.rank() >= 2);
            add("thm1.1.orbit-sample",
                orbit_soundness_check(g, opts.seed, 50, EnumerationConfig{opts.node_budget}));
            out.front().detail["delta_star"] = to_json(rep.delta_star);
            return out;
        });
}

/// Recovery-chain census (check id thm1.2-chain), aggregated per
/// hypothesis-satisfying group.
inline std::vector<VerdictRecord> verify_recovery_census(const VerifyOptions& opts) {
    auto table = census(opts.max_order, opts.sweep(), opts.jobs);
    std::map<std::string, std::pair<Int, Int>> per_left;  // name -> (rows, bad)
    std::map<std::string, Int> separated;
    Int excluded = 0;
    for (const auto& row : table.rows) {
        if (!row.left_hypotheses_ok) {
            ++excluded;
            continue;
        }
        auto& slot = per_left[row.left];
        ++slot.first;
        if (!row.ok) ++slot.second;
        if (row.separated()) ++separated[row.left];
    }
    std::vector<VerdictRecord> out;
    for (const auto& [name, slot] : per_left) {
        VerdictRecord v;
        v.check = "thm1.2-chain";
        v.subject = name;
        v.ok = slot.second == 0;
        v.detail["pairs"] = slot.first;
        v.detail["separated"] = separated[name];
        out.push_back(v);
    }
    VerdictRecord s;
    s.check = "thm1.2-chain.summary";
    s.subject = "order<=" + std::to_string(opts.max_order);
    s.ok = table.all_ok;
    s.detail["excluded_groups"] = excluded;
    s.detail["separated_pairs"] = table.separated_count;
    s.detail["unseparated_pairs"] = table.unseparated_count;
    out.push_back(s);
    return out;
}

}  // namespace zerosum
