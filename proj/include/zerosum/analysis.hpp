#pragma once

#include <optional>

#include "zerosum/factorization.hpp"
#include "zerosum/lattice.hpp"
#include "zerosum/orbits.hpp"

namespace zerosum {

/// Classification of one subset: half-factorial (every atom has cross
/// number 1), LCN (every atom has cross number >= 1), minimal
/// non-half-factorial (non-half-factorial with every proper subset
/// half-factorial), and its minimal distance when one exists.
struct SubsetClassification {
    uint64_t mask = 0;
    bool half_factorial = false;
    bool lcn = false;
    bool minimal_non_half_factorial = false;
    std::optional<Int> min_delta;
    Int atom_count = 0;
    Int davenport = 0;
};

namespace detail {

inline bool all_cross_one(const AtomSet& a) {
    for (const auto& k : a.cross_numbers)
        if (!(k == Rational(1))) return false;
    return true;
}

inline bool all_cross_at_least_one(const AtomSet& a) {
    for (const auto& k : a.cross_numbers)
        if (k < Rational(1)) return false;
    return true;
}

}  // namespace detail

/// Fast path over a shared enumeration: atoms of the subset are the atoms
/// of the superset supported inside it. Single scan; the subset is minimal
/// non-half-factorial iff every cross-number-violating atom has full
/// support in it, i.e. the union of complements of their supports is empty.
inline SubsetClassification classify(const AtomSet& full, uint64_t mask) {
    SubsetClassification c;
    c.mask = mask;
    std::vector<size_t> sel;
    uint64_t droppable = 0;  // elements whose removal keeps a violating atom
    bool hf = true, lcn = true;
    for (size_t i = 0; i < full.size(); ++i) {
        if (full.support_masks[i] & ~mask) continue;
        sel.push_back(i);
        c.davenport = std::max(c.davenport, full.lengths[i]);
        const Rational& k = full.cross_numbers[i];
        if (!(k == Rational(1))) {
            hf = false;
            droppable |= mask & ~full.support_masks[i];
            if (k < Rational(1)) lcn = false;
        }
    }
    c.atom_count = static_cast<Int>(sel.size());
    c.half_factorial = hf;
    c.lcn = lcn;
    if (!hf) {
        c.min_delta = min_delta_lattice(full, sel);
        if (!c.min_delta)
            throw std::logic_error("subset with cross number != 1 but no minimal distance");
        c.minimal_non_half_factorial = (droppable == 0);
    }
    return c;
}

inline SubsetClassification classify(const FiniteAbelianGroup& g,
                                     const std::vector<GroupElement>& subset,
                                     const EnumerationConfig& cfg = {}) {
    if (subset.empty()) throw std::invalid_argument("classify: empty subset");
    auto atoms = enumerate_atoms(g, subset, cfg);
    return classify(atoms, atoms.subset_mask());
}

/// m(G): the largest minimal distance over LCN subsets that are not
/// half-factorial. The maximum over an empty family is reported as
/// (0, witness=false) rather than a genuine value.
struct MValue {
    Int value = 0;
    bool witness = false;

    friend bool operator==(const MValue&, const MValue&) = default;
};

/// Sweep over orbit representatives only; automorphisms preserve atoms and
/// cross numbers, hence the classification of a subset.
inline MValue m_of_group(const FiniteAbelianGroup& g, const EnumerationConfig& cfg = {}) {
    if (g.order() < 3) throw std::invalid_argument("m_of_group: |G| < 3");
    GroupTables t(g);
    uint64_t universe = ((uint64_t(1) << g.order()) - 1) & ~(uint64_t(1) << t.zero_index);
    AtomSet full = enumerate_atoms(t, universe, cfg);
    auto maps = symmetry_maps(g);
    MValue m;
    for (uint64_t mask : orbit_representatives(maps, universe)) {
        AtomSet atoms = restrict_atoms(full, mask);
        if (detail::all_cross_one(atoms)) continue;
        if (!detail::all_cross_at_least_one(atoms)) continue;
        auto d = min_delta_lattice(atoms);
        if (!d) throw std::logic_error("non-half-factorial subset without minimal distance");
        m.witness = true;
        m.value = std::max(m.value, *d);
    }
    return m;
}

/// Outcome of one hypothesis->conclusion audit.
struct AuditRecord {
    bool applicable = false;
    bool holds = true;  // meaningful only when applicable
    std::string detail;
};

/// Integral-cross-number audit. Hypotheses: the subset is not
/// half-factorial and for some g both (a) the subset minus g is
/// half-factorial and (b) some atom has cross number 1 and multiplicity of
/// g coprime to ord(g). Conclusions checked: every atom has integral cross
/// number, and the minimal distance divides gcd{ k(A) - 1 }.
///
/// The side condition ("note") is also audited: if every proper subset is
/// half-factorial and some generating subset is smaller by two, the
/// hypotheses above must hold.
struct CrossIntegralityAudit {
    AuditRecord main;
    bool note_applicable = false;
    bool note_implies_conditions = true;
};

inline CrossIntegralityAudit audit_cross_integrality(const GroupTables& t,
                                                     const AtomSet& full, uint64_t mask) {
    CrossIntegralityAudit out;
    std::vector<size_t> sel;
    uint64_t droppable = 0;  // g such that the subset minus g keeps a violating atom
    for (size_t i = 0; i < full.size(); ++i) {
        if (full.support_masks[i] & ~mask) continue;
        sel.push_back(i);
        if (!(full.cross_numbers[i] == Rational(1)))
            droppable |= mask & ~full.support_masks[i];
    }
    bool half_factorial = true;
    for (size_t i : sel)
        if (!(full.cross_numbers[i] == Rational(1))) half_factorial = false;
    if (half_factorial) return out;  // not applicable

    // (a) holds for g exactly when g is not droppable; (b) needs an atom of
    // cross number 1 whose multiplicity at that g is coprime to ord(g).
    bool conditions = false;
    uint64_t candidates = mask & ~droppable;
    if (candidates) {
        std::vector<size_t> pos_of(t.size(), SIZE_MAX);
        for (size_t j = 0; j < full.elements.size(); ++j)
            pos_of[static_cast<size_t>(t.group.index_of(full.elements[j]))] = j;
        for (size_t i : sel) {
            if (!(full.cross_numbers[i] == Rational(1))) continue;
            const auto& v = full.atoms[i];
            for (uint64_t rest = candidates; rest; rest &= rest - 1) {
                size_t gi = static_cast<size_t>(__builtin_ctzll(rest & ~(rest - 1)));
                if (pos_of[gi] != SIZE_MAX &&
                    std::gcd(v[pos_of[gi]], t.orders[gi]) == 1) {
                    conditions = true;
                    break;
                }
            }
            if (conditions) break;
        }
    }

    if (conditions) {
        out.main.applicable = true;
        auto d = min_delta_lattice(full, sel);
        Int gcd_k_minus_one = 0;
        for (size_t i : sel) {
            const auto& k = full.cross_numbers[i];
            if (!k.is_integer()) {
                out.main.holds = false;
                out.main.detail = "non-integral cross number";
                break;
            }
            gcd_k_minus_one = std::gcd(gcd_k_minus_one, k.num - 1);
        }
        if (out.main.holds && (!d || gcd_k_minus_one % *d != 0)) {
            out.main.holds = false;
            out.main.detail = "min delta does not divide gcd of (cross number - 1)";
        }
    }

    // note: all proper subsets half-factorial + a generating subset smaller by two
    if (droppable == 0) {
        uint64_t span = subgroup_mask(t, mask);
        Int size = __builtin_popcountll(mask);
        for (uint64_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
            if (__builtin_popcountll(sub) > size - 2) continue;
            if (subgroup_mask(t, sub) == span) {
                out.note_applicable = true;
                break;
            }
        }
    }
    if (out.note_applicable && !conditions) out.note_implies_conditions = false;
    return out;
}

/// Upper-bound audits for minimal distances of minimal non-half-factorial
/// LCN subsets that are large (size >= rank + 2) and have every element
/// generated by the others. Two hypothesis families:
///  - strict: no element lies in the span of the subset minus two elements,
///    and every full-support atom has cross number > 1; bound floor(n/2)-1.
///  - relaxed: either the strict span condition plus a full-support atom of
///    cross number exactly 1, or a generating subset smaller by two; bound
///    max{r-1, floor(n/2)-1}.
/// Also audits the blanket bound min delta <= max{r-1, floor(n/2)-1} for
/// every LCN non-half-factorial subset.
struct MinDeltaBoundAudits {
    AuditRecord strict_bound;
    AuditRecord relaxed_bound;
    AuditRecord lcn_bound;
};

inline MinDeltaBoundAudits audit_min_delta_bounds(const GroupTables& t,
                                                  const AtomSet& full, uint64_t mask) {
    MinDeltaBoundAudits out;
    const FiniteAbelianGroup& g = t.group;
    const Int r = g.rank();
    const Int half_n_minus_one = g.exponent() / 2 - 1;
    SubsetClassification c = classify(full, mask);

    if (!c.half_factorial && c.lcn) {
        out.lcn_bound.applicable = true;
        out.lcn_bound.holds = *c.min_delta <= std::max(r - 1, half_n_minus_one);
    }

    if (!(c.minimal_non_half_factorial && c.lcn)) return out;
    Int size = __builtin_popcountll(mask);
    if (size < r + 2) return out;

    for (uint64_t rest = mask; rest; rest &= rest - 1) {
        uint64_t bit = rest & ~(rest - 1);
        size_t h = static_cast<size_t>(__builtin_ctzll(bit));
        if (!((subgroup_mask(t, mask & ~bit) >> h) & 1)) return out;  // h not generated
    }

    bool pairwise_non_generation = true;
    for (uint64_t r1 = mask; r1 && pairwise_non_generation; r1 &= r1 - 1) {
        uint64_t bit1 = r1 & ~(r1 - 1);
        size_t h = static_cast<size_t>(__builtin_ctzll(bit1));
        for (uint64_t r2 = mask; r2; r2 &= r2 - 1) {
            uint64_t bit2 = r2 & ~(r2 - 1);
            if (bit1 == bit2) continue;
            if ((subgroup_mask(t, mask & ~bit1 & ~bit2) >> h) & 1) {
                pairwise_non_generation = false;
                break;
            }
        }
    }

    AtomSet atoms = restrict_atoms(full, mask);
    bool all_full_support_above_one = true, some_full_support_exactly_one = false;
    for (size_t a = 0; a < atoms.size(); ++a) {
        if (atoms.support_masks[a] != mask) continue;
        if (!(Rational(1) < atoms.cross_numbers[a])) all_full_support_above_one = false;
        if (atoms.cross_numbers[a] == Rational(1)) some_full_support_exactly_one = true;
    }

    bool small_generating_subset = false;
    uint64_t span = subgroup_mask(t, mask);
    for (uint64_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
        if (__builtin_popcountll(sub) > size - 2) continue;
        if (subgroup_mask(t, sub) == span) {
            small_generating_subset = true;
            break;
        }
    }

    if (pairwise_non_generation && all_full_support_above_one) {
        out.strict_bound.applicable = true;
        out.strict_bound.holds = *c.min_delta <= half_n_minus_one;
    }
    if ((pairwise_non_generation && some_full_support_exactly_one) || small_generating_subset) {
        out.relaxed_bound.applicable = true;
        out.relaxed_bound.holds = *c.min_delta <= std::max(r - 1, half_n_minus_one);
    }
    return out;
}

/// Restricted-support valuation audit: when no element of the subset lies
/// in the span of the subset minus two elements, every atom with proper
/// support has gcd(v_h, ord(h)) > 1 at each h of its support.
inline AuditRecord audit_restricted_support_valuations(const GroupTables& t,
                                                       const AtomSet& full, uint64_t mask) {
    AuditRecord out;
    for (uint64_t r1 = mask; r1; r1 &= r1 - 1) {
        uint64_t bit1 = r1 & ~(r1 - 1);
        size_t h = static_cast<size_t>(__builtin_ctzll(bit1));
        for (uint64_t r2 = mask; r2; r2 &= r2 - 1) {
            uint64_t bit2 = r2 & ~(r2 - 1);
            if (bit1 == bit2) continue;
            if ((subgroup_mask(t, mask & ~bit1 & ~bit2) >> h) & 1) return out;
        }
    }
    out.applicable = true;
    AtomSet atoms = restrict_atoms(full, mask);
    for (size_t a = 0; a < atoms.size(); ++a) {
        if (atoms.support_masks[a] == mask) continue;
        for (size_t j = 0; j < atoms.elements.size(); ++j) {
            Int v = atoms.atoms[a][j];
            if (v == 0) continue;
            Int ord = atoms.group.element_order(atoms.elements[j]);
            if (std::gcd(v, ord) <= 1) {
                out.holds = false;
                out.detail = "atom " + atoms.atom_sequence(a).str() +
                             " has a unit valuation at " + atoms.elements[j].str();
                return out;
            }
        }
    }
    return out;
}

/// Small-support atom audit: for g nonzero in the subset and generated by
/// the rest, and any prime p dividing ord(g), some atom has support size in
/// [2, r+1] and multiplicity of g dividing ord(g), at most ord(g)/2, and
/// not divisible by p.
inline AuditRecord audit_small_support_atom(const GroupTables& t, const AtomSet& full,
                                            uint64_t mask, size_t g_index, Int prime) {
    AuditRecord out;
    if (g_index == t.zero_index) return out;
    uint64_t bit = uint64_t(1) << g_index;
    if (!(mask & bit)) return out;
    if (!((subgroup_mask(t, mask & ~bit) >> g_index) & 1)) return out;
    if (t.orders[g_index] % prime != 0) return out;
    out.applicable = true;

    AtomSet atoms = restrict_atoms(full, mask);
    AtomQuery q;
    q.supp_min = 2;
    q.supp_max = t.group.rank() + 1;
    q.focus = t.elements[g_index];
    q.v_max = t.orders[g_index] / 2;
    q.v_divides_order = true;
    q.v_not_divisible_by = prime;
    if (!find_atom_index(atoms, q)) {
        out.holds = false;
        out.detail = "no qualifying atom for g=" + t.elements[g_index].str() +
                     " p=" + std::to_string(prime);
    }
    return out;
}

}  // namespace zerosum
