#pragma once

#include <array>
#include <set>
#include <unordered_map>
#include <vector>

#include "zerosum/atoms.hpp"

namespace zerosum {

/// One factorization of a zero-sum sequence into atoms: a multiset of
/// indices into an AtomSet. The length is the number of atoms counted with
/// multiplicity.
struct Factorization {
    std::vector<std::pair<size_t, Int>> atom_multiplicities;  // ascending index
    Int length = 0;
};

namespace detail {

inline std::vector<Int> exponent_vector(const Sequence& b, const AtomSet& atoms) {
    if (!b.is_zero_sum())
        throw std::invalid_argument("factorizations: sequence is not zero-sum");
    std::vector<Int> v(atoms.elements.size(), 0);
    for (auto& [e, mult] : b.multiplicities()) {
        auto pos = atoms.element_pos(e);
        if (!pos)
            throw std::invalid_argument("factorizations: support not inside the atom set's subset");
        v[*pos] = mult;
    }
    return v;
}

}  // namespace detail

/// All factorizations of a zero-sum sequence over the subset of the given
/// complete atom set. Atoms are divided out in canonical order with
/// non-decreasing indices, so every factorization is produced exactly once;
/// completeness holds because every nonempty zero-sum sequence is divisible
/// by some atom. Each returned factorization is re-verified against B.
inline std::vector<Factorization> factorizations(const Sequence& b, const AtomSet& atoms,
                                                 const EnumerationConfig& cfg = {}) {
    std::vector<Int> target = detail::exponent_vector(b, atoms);
    const size_t m = target.size(), na = atoms.size();
    std::vector<Factorization> out;
    std::vector<std::pair<size_t, Int>> stack;
    uint64_t nodes = 0;

    auto rec = [&](auto&& self, size_t jmin, std::vector<Int>& rem, Int rem_len, Int len) -> void {
        if (rem_len == 0) {
            Factorization f;
            f.atom_multiplicities = stack;
            f.length = len;
            std::vector<Int> check(m, 0);
            for (auto& [j, c] : f.atom_multiplicities)
                for (size_t i = 0; i < m; ++i) check[i] += c * atoms.atoms[j][i];
            if (check != target)
                throw std::logic_error("factorization does not multiply back to B");
            out.push_back(std::move(f));
            return;
        }
        for (size_t j = jmin; j < na; ++j) {
            if (++nodes > cfg.node_budget)
                throw budget_error("factorization search exceeded node budget");
            if (atoms.lengths[j] > rem_len) break;  // atoms sorted by length
            bool fits = true;
            for (size_t i = 0; i < m && fits; ++i)
                fits = atoms.atoms[j][i] <= rem[i];
            if (!fits) continue;
            for (size_t i = 0; i < m; ++i) rem[i] -= atoms.atoms[j][i];
            if (!stack.empty() && stack.back().first == j)
                ++stack.back().second;
            else
                stack.emplace_back(j, 1);
            self(self, j, rem, rem_len - atoms.lengths[j], len + 1);
            if (stack.back().second == 1)
                stack.pop_back();
            else
                --stack.back().second;
            for (size_t i = 0; i < m; ++i) rem[i] += atoms.atoms[j][i];
        }
    };
    Int total = std::accumulate(target.begin(), target.end(), Int(0));
    std::vector<Int> work = target;  // rec mutates its remainder in place
    rec(rec, 0, work, total, 0);
    return out;
}

/// L(B): the set of factorization lengths, via a memoized divide-out-any-atom
/// recursion keyed on the remainder's exponent vector.
inline std::set<Int> length_set(const Sequence& b, const AtomSet& atoms) {
    std::vector<Int> target = detail::exponent_vector(b, atoms);
    std::map<std::vector<Int>, std::set<Int>> memo;
    const size_t m = target.size(), na = atoms.size();

    auto rec = [&](auto&& self, const std::vector<Int>& rem, Int rem_len) -> const std::set<Int>& {
        auto it = memo.find(rem);
        if (it != memo.end()) return it->second;
        std::set<Int> ls;
        if (rem_len == 0) {
            ls.insert(0);
        } else {
            for (size_t j = 0; j < na; ++j) {
                if (atoms.lengths[j] > rem_len) break;
                bool fits = true;
                for (size_t i = 0; i < m && fits; ++i)
                    fits = atoms.atoms[j][i] <= rem[i];
                if (!fits) continue;
                std::vector<Int> next(rem);
                for (size_t i = 0; i < m; ++i) next[i] -= atoms.atoms[j][i];
                for (Int l : self(self, next, rem_len - atoms.lengths[j])) ls.insert(l + 1);
            }
        }
        return memo.emplace(rem, std::move(ls)).first->second;
    };
    Int total = std::accumulate(target.begin(), target.end(), Int(0));
    return rec(rec, target, total);
}

/// Successive gaps of a finite set of integers.
inline std::set<Int> distance_set(const std::set<Int>& lengths) {
    std::set<Int> d;
    Int prev = 0;
    bool have = false;
    for (Int l : lengths) {
        if (have) d.insert(l - prev);
        prev = l;
        have = true;
    }
    return d;
}

namespace detail {

// Exponent vectors packed 6 bits per element (products of length <= 63 over
// at most 20 elements), reversible so states need no side storage.
struct PackedKey {
    std::array<uint64_t, 2> w{0, 0};
    friend bool operator==(const PackedKey&, const PackedKey&) = default;
};

struct PackedKeyHash {
    size_t operator()(const PackedKey& k) const {
        uint64_t h = k.w[0] * 0x9e3779b97f4a7c15ULL;
        h ^= k.w[1] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<size_t>(h);
    }
};

inline void pack_add(PackedKey& k, size_t pos, Int delta) {
    k.w[pos / 10] += static_cast<uint64_t>(delta) << (6 * (pos % 10));
}

}  // namespace detail

/// Visit every zero-sum sequence B with |B| <= budget over the subset of a
/// complete atom set (these are exactly the products of atoms), together
/// with its full set of factorization lengths as a bitmask. Visiting order
/// is by increasing |B|; the visitor returns false to stop the scan early.
template <class Visit>
void scan_length_sets(const AtomSet& atoms, Int budget, Visit&& visit) {
    if (budget < 0 || budget > 63)
        throw std::invalid_argument("scan_length_sets: budget must be in [0, 63]");
    if (atoms.elements.size() > 20)
        throw std::invalid_argument("scan_length_sets: more than 20 subset elements");
    using detail::PackedKey;
    std::vector<std::unordered_map<PackedKey, uint64_t, detail::PackedKeyHash>> layers(
        static_cast<size_t>(budget) + 1);
    layers[0][PackedKey{}] = 1;  // empty product, length set {0}

    std::vector<Int> expvec(atoms.elements.size());
    for (Int l = 0; l <= budget; ++l) {
        for (auto& [key, mask] : layers[l]) {
            for (size_t p = 0; p < expvec.size(); ++p)
                expvec[p] = static_cast<Int>((key.w[p / 10] >> (6 * (p % 10))) & 63);
            if (!visit(static_cast<const std::vector<Int>&>(expvec), mask)) return;
            for (size_t j = 0; j < atoms.size(); ++j) {
                Int l2 = l + atoms.lengths[j];
                if (l2 > budget) break;  // atoms sorted by length
                PackedKey k2 = key;
                for (size_t i = 0; i < expvec.size(); ++i)
                    if (atoms.atoms[j][i]) detail::pack_add(k2, i, atoms.atoms[j][i]);
                layers[l2][k2] |= mask << 1;
            }
        }
        layers[l].clear();
    }
}

/// gcd of all observed distances between adjacent factorization lengths,
/// over every zero-sum B with |B| <= length_budget; absent when every
/// tested length set is a singleton. Stops as soon as the running gcd hits
/// 1, which the remaining observations could only confirm.
inline std::optional<Int> observed_min_delta(const AtomSet& atoms, Int length_budget) {
    if (length_budget < atoms.davenport)
        throw std::invalid_argument("observed_min_delta: budget below the Davenport constant");
    Int g = 0;
    scan_length_sets(atoms, length_budget, [&](const std::vector<Int>&, uint64_t mask) {
        if (mask & (mask - 1)) {  // at least two lengths
            int prev = __builtin_ctzll(mask);
            uint64_t rest = mask & (mask - 1);
            while (rest) {
                int cur = __builtin_ctzll(rest);
                rest &= rest - 1;
                g = std::gcd(g, static_cast<Int>(cur - prev));
                prev = cur;
            }
        }
        return g != 1;
    });
    if (g == 0) return std::nullopt;
    return g;
}

}  // namespace zerosum
