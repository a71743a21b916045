#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "zerosum/sequence.hpp"

namespace zerosum {

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Addition tables for a group of order <= 64, so that sets of group
/// elements and sets of achievable subsequence sums fit in one word.
struct GroupTables {
    FiniteAbelianGroup group;
    std::vector<GroupElement> elements;  // enumerate_elements order
    std::vector<std::vector<uint8_t>> add;
    std::vector<uint8_t> neg;
    std::vector<Int> orders;
    size_t zero_index = 0;

    explicit GroupTables(const FiniteAbelianGroup& g) : group(g) {
        if (g.order() > 64)
            throw std::invalid_argument("GroupTables: group order exceeds 64");
        elements = g.enumerate_elements();
        size_t n = elements.size();
        add.assign(n, std::vector<uint8_t>(n));
        neg.resize(n);
        orders.resize(n);
        for (size_t i = 0; i < n; ++i) {
            orders[i] = g.element_order(elements[i]);
            neg[i] = static_cast<uint8_t>(g.index_of(g.negate(elements[i])));
            for (size_t j = 0; j < n; ++j)
                add[i][j] = static_cast<uint8_t>(g.index_of(g.add(elements[i], elements[j])));
        }
        zero_index = static_cast<size_t>(g.index_of(g.zero()));
    }

    size_t size() const { return elements.size(); }

    /// { s + e : s in bits }
    uint64_t shifted(uint64_t bits, size_t e) const {
        uint64_t out = 0;
        const uint8_t* row = add[e].data();
        while (bits) {
            size_t s = static_cast<size_t>(__builtin_ctzll(bits));
            bits &= bits - 1;
            out |= uint64_t(1) << row[s];
        }
        return out;
    }
};

struct EnumerationConfig {
    uint64_t node_budget = 100'000'000;  // DFS extension attempts
};

/// The complete set of minimal zero-sum sequences with support inside a
/// fixed subset, stored as exponent vectors over the subset's elements.
///
/// Element order: by (element order, coordinates). Atom order: by
/// (length, lexicographic exponent vector). Both orders are part of the
/// cache and report contracts, so output is reproducible bit for bit.
struct AtomSet {
    FiniteAbelianGroup group;
    std::vector<GroupElement> elements;
    std::vector<std::vector<Int>> atoms;
    std::vector<Int> lengths;
    std::vector<Rational> cross_numbers;
    std::vector<uint64_t> support_masks;  // over group element indices
    Int davenport = 0;

    size_t size() const { return atoms.size(); }

    Sequence atom_sequence(size_t i) const {
        std::map<GroupElement, Int> m;
        for (size_t j = 0; j < elements.size(); ++j)
            if (atoms[i][j] > 0) m.emplace(elements[j], atoms[i][j]);
        return Sequence::from_multiplicities(group, std::move(m));
    }

    std::optional<size_t> element_pos(const GroupElement& g) const {
        auto it = std::find(elements.begin(), elements.end(), g);
        if (it == elements.end()) return std::nullopt;
        return static_cast<size_t>(it - elements.begin());
    }

    /// Bitmask of the subset over group element indices.
    uint64_t subset_mask() const {
        uint64_t m = 0;
        for (const auto& e : elements)
            m |= uint64_t(1) << group.index_of(e);
        return m;
    }
};

namespace detail {

/// Independent minimality certificate: a fresh subset-sum pass deciding
/// whether the multiset has a proper nonempty zero-sum submultiset.
/// Submultisets are classified as empty-so-far / full-so-far / mixed, with
/// one achievable-sum bitset per class; a proper nonempty zero-sum exists
/// iff 0 is achievable in the mixed class.
inline bool has_proper_zero_subsum(const GroupTables& t,
                                   const std::vector<size_t>& elem_idx,
                                   const std::vector<Int>& mult) {
    const uint64_t zero_bit = uint64_t(1) << t.zero_index;
    uint64_t cls_empty = 0, cls_full = 0, cls_mixed = 0;
    bool first = true;
    for (size_t j = 0; j < elem_idx.size(); ++j) {
        size_t e = elem_idx[j];
        Int m = mult[j];
        if (m == 0) continue;
        if (first) {
            cls_empty = zero_bit;
            uint64_t cur = zero_bit;
            for (Int c = 1; c < m; ++c) {
                cur = t.shifted(cur, e);
                cls_mixed |= cur;
            }
            cls_full = t.shifted(m == 1 ? zero_bit : cur, e);
            first = false;
            continue;
        }
        uint64_t mixed_next = 0;
        uint64_t cur = cls_mixed;  // counts 0..m from mixed
        mixed_next |= cur;
        for (Int c = 1; c <= m; ++c) { cur = t.shifted(cur, e); mixed_next |= cur; }
        cur = cls_empty;           // counts 1..m from empty
        for (Int c = 1; c <= m; ++c) { cur = t.shifted(cur, e); mixed_next |= cur; }
        cur = cls_full;            // counts 0..m-1 from full
        mixed_next |= cur;
        for (Int c = 1; c < m; ++c) { cur = t.shifted(cur, e); mixed_next |= cur; }
        for (Int c = 0; c < m; ++c) cls_full = t.shifted(cls_full, e);
        cls_mixed = mixed_next;
    }
    return (cls_mixed & zero_bit) != 0;
}

/// Subset element positions in canonical order: by (order, coordinates).
/// Coordinate order coincides with enumerate_elements index order.
inline std::vector<size_t> canonical_subset_order(const GroupTables& t, uint64_t mask) {
    std::vector<size_t> idx;
    uint64_t m = mask;
    while (m) {
        idx.push_back(static_cast<size_t>(__builtin_ctzll(m)));
        m &= m - 1;
    }
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return std::pair(t.orders[a], a) < std::pair(t.orders[b], b);
    });
    return idx;
}

}  // namespace detail

/// Enumerate all minimal zero-sum sequences with support inside the subset
/// given as a bitmask over enumerate_elements order.
///
/// Depth-first search over exponent vectors in colex order: at each step
/// the candidate element index never decreases, so each multiset is built
/// exactly once through its chain of submultisets. A one-word bitset of
/// achievable nonempty subsequence sums is extended incrementally; as soon
/// as some nonempty subsequence sums to zero the branch cannot produce any
/// further atom and is cut, emitting the current multiset when it is itself
/// zero-sum and certified minimal by an independent subset-sum check.
inline AtomSet enumerate_atoms(const GroupTables& t, uint64_t subset_mask,
                               const EnumerationConfig& cfg = {}) {
    AtomSet out;
    out.group = t.group;
    std::vector<size_t> idx = detail::canonical_subset_order(t, subset_mask);
    for (size_t e : idx) out.elements.push_back(t.elements[e]);

    const size_t m = idx.size();
    std::vector<Int> expvec(m, 0);
    uint64_t nodes = 0;
    const uint64_t budget = cfg.node_budget;

    auto emit = [&](const std::vector<Int>& v) {
        if (detail::has_proper_zero_subsum(t, idx, v)) return;
        out.atoms.push_back(v);
    };

    // B: sums of nonempty submultisets of the current (zero-sum-free) stack.
    auto rec = [&](auto&& self, size_t lo, uint64_t B, size_t sum) -> void {
        for (size_t i = lo; i < m; ++i) {
            if (++nodes > budget)
                throw budget_error("atom enumeration exceeded node budget of " +
                                   std::to_string(budget));
            size_t e = idx[i];
            bool closes = (e == t.zero_index) || ((B >> t.neg[e]) & 1);
            if (closes) {
                // S*e contains a nonempty zero-sum subsequence; no extension
                // can be an atom. S*e itself is a candidate iff it sums to 0.
                if (t.add[sum][e] == t.zero_index) {
                    ++expvec[i];
                    emit(expvec);
                    --expvec[i];
                }
            } else {
                ++expvec[i];
                uint64_t B2 = B | t.shifted(B, e) | (uint64_t(1) << e);
                self(self, i, B2, t.add[sum][e]);
                --expvec[i];
            }
        }
    };
    rec(rec, 0, 0, t.zero_index);

    std::sort(out.atoms.begin(), out.atoms.end(), [](const auto& a, const auto& b) {
        Int la = std::accumulate(a.begin(), a.end(), Int(0));
        Int lb = std::accumulate(b.begin(), b.end(), Int(0));
        if (la != lb) return la < lb;
        return a < b;
    });

    out.lengths.reserve(out.atoms.size());
    out.cross_numbers.reserve(out.atoms.size());
    out.support_masks.reserve(out.atoms.size());
    for (const auto& a : out.atoms) {
        Int len = 0;
        Rational k;
        uint64_t sup = 0;
        for (size_t j = 0; j < m; ++j) {
            if (a[j] == 0) continue;
            len += a[j];
            k += Rational(a[j], t.orders[idx[j]]);
            sup |= uint64_t(1) << idx[j];
        }
        out.lengths.push_back(len);
        out.cross_numbers.push_back(k);
        out.support_masks.push_back(sup);
        out.davenport = std::max(out.davenport, len);
    }
    if (out.davenport > t.group.order())
        throw std::logic_error("atom longer than |G|: enumeration is broken");
    return out;
}

inline AtomSet enumerate_atoms(const FiniteAbelianGroup& g,
                               const std::vector<GroupElement>& subset,
                               const EnumerationConfig& cfg = {}) {
    GroupTables t(g);
    uint64_t mask = 0;
    for (const auto& e : subset) mask |= uint64_t(1) << g.index_of(e);
    return enumerate_atoms(t, mask, cfg);
}

/// Atoms over a sub-subset, filtered out of a larger enumeration. A minimal
/// zero-sum sequence over the subset is exactly a minimal zero-sum sequence
/// over the superset whose support lies in the subset, and the canonical
/// orders agree, so this is equivalent to a direct enumeration.
inline AtomSet restrict_atoms(const AtomSet& full, uint64_t subset_mask) {
    AtomSet out;
    out.group = full.group;
    std::vector<size_t> keep;
    for (size_t j = 0; j < full.elements.size(); ++j) {
        uint64_t bit = uint64_t(1) << full.group.index_of(full.elements[j]);
        if (subset_mask & bit) {
            keep.push_back(j);
            out.elements.push_back(full.elements[j]);
        }
    }
    for (size_t i = 0; i < full.size(); ++i) {
        if ((full.support_masks[i] & ~subset_mask) != 0) continue;
        std::vector<Int> v(keep.size());
        for (size_t j = 0; j < keep.size(); ++j) v[j] = full.atoms[i][keep[j]];
        out.atoms.push_back(std::move(v));
        out.lengths.push_back(full.lengths[i]);
        out.cross_numbers.push_back(full.cross_numbers[i]);
        out.support_masks.push_back(full.support_masks[i]);
        out.davenport = std::max(out.davenport, full.lengths[i]);
    }
    return out;
}

inline Int davenport(const FiniteAbelianGroup& g,
                     const std::vector<GroupElement>& subset,
                     const EnumerationConfig& cfg = {}) {
    return enumerate_atoms(g, subset, cfg).davenport;
}

/// Constraints for an atom search. `focus` names the element whose
/// multiplicity the v-constraints talk about.
struct AtomQuery {
    std::optional<Int> supp_min;
    std::optional<Int> supp_max;
    std::optional<GroupElement> focus;
    std::optional<Int> v_exact;
    std::optional<Int> v_max;
    bool v_positive = false;
    bool v_divides_order = false;
    std::optional<Int> v_not_divisible_by;
    std::optional<Rational> cross_number;
};

inline std::optional<size_t> find_atom_index(const AtomSet& atoms, const AtomQuery& q) {
    std::optional<size_t> pos;
    if (q.focus) {
        pos = atoms.element_pos(*q.focus);
        if (!pos) return std::nullopt;  // focus not in the subset
    }
    for (size_t i = 0; i < atoms.size(); ++i) {
        Int supp = 0;
        for (Int v : atoms.atoms[i])
            if (v > 0) ++supp;
        if (q.supp_min && supp < *q.supp_min) continue;
        if (q.supp_max && supp > *q.supp_max) continue;
        if (q.cross_number && !(atoms.cross_numbers[i] == *q.cross_number)) continue;
        if (pos) {
            Int v = atoms.atoms[i][*pos];
            Int ord = atoms.group.element_order(*q.focus);
            if (q.v_exact && v != *q.v_exact) continue;
            if (q.v_max && v > *q.v_max) continue;
            if (q.v_positive && v == 0) continue;
            if (q.v_divides_order && (v == 0 || ord % v != 0)) continue;
            if (q.v_not_divisible_by && v % *q.v_not_divisible_by == 0) continue;
        }
        return i;
    }
    return std::nullopt;
}

/// First atom (in canonical order) matching the query, if any.
inline std::optional<Sequence> find_atom(const AtomSet& atoms, const AtomQuery& q) {
    auto i = find_atom_index(atoms, q);
    if (!i) return std::nullopt;
    return atoms.atom_sequence(*i);
}

/// The four computable quantities that agree for every g in a subset:
/// gcd and minimal positive value of v_g over the atoms, and min and gcd of
/// { k >= 1 : k g in <subset minus g> }. Values over all zero-sum sequences
/// reduce to the atom side, since v_g is additive over atom products.
struct ValuationChain {
    Int gcd_over_atoms = 0;
    Int min_positive_over_atoms = 0;
    Int min_multiple_in_rest = 0;
    Int gcd_multiple_in_rest = 0;
    Int order = 0;

    bool all_equal() const {
        return gcd_over_atoms == min_positive_over_atoms &&
               gcd_over_atoms == min_multiple_in_rest &&
               gcd_over_atoms == gcd_multiple_in_rest;
    }
    bool divides_order() const {
        return min_multiple_in_rest > 0 && order % min_multiple_in_rest == 0;
    }
};

inline ValuationChain valuation_chain(const AtomSet& atoms, const GroupElement& g) {
    auto pos = atoms.element_pos(g);
    if (!pos) throw std::invalid_argument("valuation_chain: g not in the subset");
    ValuationChain c;
    c.order = atoms.group.element_order(g);
    for (const auto& a : atoms.atoms) {
        Int v = a[*pos];
        if (v == 0) continue;
        c.gcd_over_atoms = std::gcd(c.gcd_over_atoms, v);
        c.min_positive_over_atoms =
            c.min_positive_over_atoms == 0 ? v : std::min(c.min_positive_over_atoms, v);
    }
    std::set<GroupElement> rest;
    for (const auto& e : atoms.elements)
        if (!(e == g)) rest.insert(e);
    auto sub = atoms.group.subgroup_generated(rest);
    GroupElement acc = atoms.group.zero();
    for (Int k = 1; k <= c.order; ++k) {
        acc = atoms.group.add(acc, g);
        if (sub.count(acc)) {
            if (c.min_multiple_in_rest == 0) c.min_multiple_in_rest = k;
            c.gcd_multiple_in_rest = std::gcd(c.gcd_multiple_in_rest, k);
        }
    }
    return c;
}

}  // namespace zerosum
