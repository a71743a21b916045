#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zerosum/rational.hpp"

namespace zerosum {

struct parse_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Element of a finite abelian group in coordinate form: one residue per
/// invariant factor, each reduced into [0, n_i).
struct GroupElement {
    std::vector<Int> coords;

    GroupElement() = default;
    explicit GroupElement(std::vector<Int> c) : coords(std::move(c)) {}

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
        return a.coords <=> b.coords;
    }

    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(),
                           [](Int c) { return c == 0; });
    }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < coords.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(coords[i]);
        }
        s += ")";
        return s;
    }
};

/// Finite abelian group presented by its invariant factors
/// n_1 | n_2 | ... | n_r (each >= 2; the empty chain is the trivial group).
///
/// Values are immutable after construction and safe to share across threads.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;

    explicit FiniteAbelianGroup(std::vector<Int> invariant_factors)
        : factors_(std::move(invariant_factors)) {
        for (size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i] < 2)
                throw parse_error("invariant factor < 2");
            if (i + 1 < factors_.size() && factors_[i + 1] % factors_[i] != 0)
                throw parse_error("invariant factors violate divisibility chain");
        }
        order_ = 1;
        for (Int n : factors_) order_ *= n;
        exponent_ = factors_.empty() ? 1 : factors_.back();
        exp_multiplicity_ = 0;
        for (Int n : factors_)
            if (n == exponent_) ++exp_multiplicity_;
    }

    const std::vector<Int>& invariant_factors() const { return factors_; }
    Int order() const { return order_; }
    Int exponent() const { return exponent_; }
    Int rank() const { return static_cast<Int>(factors_.size()); }
    /// Multiplicity of the exponent in the invariant-factor chain; equals the
    /// largest k with C_exp^k embedding into the group.
    Int exponent_multiplicity() const { return exp_multiplicity_; }
    bool is_trivial() const { return factors_.empty(); }

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.factors_ == b.factors_;
    }

    GroupElement zero() const {
        return GroupElement(std::vector<Int>(factors_.size(), 0));
    }

    GroupElement make(std::vector<Int> coords) const {
        if (coords.size() != factors_.size())
            throw std::invalid_argument("coordinate count does not match rank");
        for (size_t i = 0; i < coords.size(); ++i) {
            coords[i] %= factors_[i];
            if (coords[i] < 0) coords[i] += factors_[i];
        }
        return GroupElement(std::move(coords));
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        check(a); check(b);
        std::vector<Int> c(factors_.size());
        for (size_t i = 0; i < factors_.size(); ++i) {
            c[i] = a.coords[i] + b.coords[i];
            if (c[i] >= factors_[i]) c[i] -= factors_[i];
        }
        return GroupElement(std::move(c));
    }

    GroupElement negate(const GroupElement& a) const {
        check(a);
        std::vector<Int> c(factors_.size());
        for (size_t i = 0; i < factors_.size(); ++i)
            c[i] = a.coords[i] == 0 ? 0 : factors_[i] - a.coords[i];
        return GroupElement(std::move(c));
    }

    GroupElement scalar_mul(Int m, const GroupElement& a) const {
        check(a);
        std::vector<Int> c(factors_.size());
        for (size_t i = 0; i < factors_.size(); ++i) {
            Int v = (m % factors_[i]) * a.coords[i] % factors_[i];
            if (v < 0) v += factors_[i];
            c[i] = v;
        }
        return GroupElement(std::move(c));
    }

    /// Least m >= 1 with m*a = 0; the lcm of the coordinate orders.
    Int element_order(const GroupElement& a) const {
        check(a);
        Int ord = 1;
        for (size_t i = 0; i < factors_.size(); ++i)
            ord = std::lcm(ord, factors_[i] / std::gcd(factors_[i], a.coords[i]));
        return ord;
    }

    /// All |G| elements in lexicographic coordinate order.
    std::vector<GroupElement> enumerate_elements() const {
        std::vector<GroupElement> out;
        out.reserve(static_cast<size_t>(order_));
        std::vector<Int> cur(factors_.size(), 0);
        for (Int i = 0; i < order_; ++i) {
            out.emplace_back(cur);
            for (size_t j = factors_.size(); j-- > 0;) {
                if (++cur[j] < factors_[j]) break;
                cur[j] = 0;
            }
        }
        return out;
    }

    /// Position of an element in enumerate_elements() order (mixed radix,
    /// first coordinate most significant).
    Int index_of(const GroupElement& a) const {
        check(a);
        Int idx = 0;
        for (size_t i = 0; i < factors_.size(); ++i)
            idx = idx * factors_[i] + a.coords[i];
        return idx;
    }

    GroupElement element_at(Int idx) const {
        std::vector<Int> c(factors_.size());
        for (size_t i = factors_.size(); i-- > 0;) {
            c[i] = idx % factors_[i];
            idx /= factors_[i];
        }
        return GroupElement(std::move(c));
    }

    /// Closure of S (plus 0) under addition.
    std::set<GroupElement> subgroup_generated(const std::set<GroupElement>& gens) const {
        std::set<GroupElement> closed;
        closed.insert(zero());
        std::vector<GroupElement> frontier(closed.begin(), closed.end());
        while (!frontier.empty()) {
            std::vector<GroupElement> next;
            for (const auto& x : frontier)
                for (const auto& g : gens) {
                    GroupElement y = add(x, g);
                    if (closed.insert(y).second) next.push_back(y);
                }
            frontier = std::move(next);
        }
        return closed;
    }

    /// Canonical rendering "C{n_1}x...xC{n_r}"; the trivial group prints "C1".
    std::string name() const {
        if (factors_.empty()) return "C1";
        std::string s;
        for (size_t i = 0; i < factors_.size(); ++i) {
            if (i) s += "x";
            s += "C" + std::to_string(factors_[i]);
        }
        return s;
    }

private:
    void check(const GroupElement& a) const {
        if (a.coords.size() != factors_.size())
            throw std::invalid_argument("element does not belong to this group");
    }

    std::vector<Int> factors_;
    Int order_ = 1;
    Int exponent_ = 1;
    Int exp_multiplicity_ = 0;
};

namespace detail {

inline std::map<Int, std::vector<Int>> prime_power_decomposition(std::vector<Int> ns) {
    std::map<Int, std::vector<Int>> by_prime;  // prime -> prime powers
    for (Int n : ns) {
        for (Int p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            Int q = 1;
            while (n % p == 0) { q *= p; n /= p; }
            by_prime[p].push_back(q);
        }
        if (n > 1) by_prime[n].push_back(n);
    }
    return by_prime;
}

}  // namespace detail

/// Normalize an arbitrary direct sum of cyclic groups to invariant-factor
/// form: split every factor into prime powers, then greedily recombine the
/// largest remaining power of each prime into one invariant factor.
inline FiniteAbelianGroup group_from_cyclic_factors(const std::vector<Int>& cyclic) {
    for (Int n : cyclic)
        if (n < 2) throw parse_error("cyclic factor < 2");
    auto by_prime = detail::prime_power_decomposition(cyclic);
    size_t layers = 0;
    for (auto& [p, qs] : by_prime) {
        std::sort(qs.begin(), qs.end(), std::greater<>());
        layers = std::max(layers, qs.size());
    }
    std::vector<Int> inv(layers, 1);
    for (auto& [p, qs] : by_prime)
        for (size_t j = 0; j < qs.size(); ++j) inv[j] *= qs[j];
    std::reverse(inv.begin(), inv.end());  // ascending divisibility chain
    return FiniteAbelianGroup(std::move(inv));
}

/// Parse a group spec: `C<k>` | `C<k>^<e>`, terms joined by `x`,
/// e.g. "C2xC4" or "C3^2". The result is always in invariant-factor form.
inline FiniteAbelianGroup parse_group(const std::string& spec) {
    std::vector<Int> cyclic;
    size_t i = 0;
    auto read_int = [&](const char* what) {
        size_t start = i;
        while (i < spec.size() && std::isdigit(static_cast<unsigned char>(spec[i]))) ++i;
        if (i == start) throw parse_error(std::string("expected ") + what +
                                          " in group spec '" + spec + "'");
        return static_cast<Int>(std::stoll(spec.substr(start, i - start)));
    };
    while (true) {
        if (i >= spec.size() || (spec[i] != 'C' && spec[i] != 'c'))
            throw parse_error("expected 'C' in group spec '" + spec + "'");
        ++i;
        Int n = read_int("factor size");
        Int e = 1;
        if (i < spec.size() && spec[i] == '^') {
            ++i;
            e = read_int("exponent");
            if (e < 1) throw parse_error("exponent < 1 in group spec");
        }
        if (n < 2) throw parse_error("cyclic factor < 2 in group spec '" + spec + "'");
        for (Int j = 0; j < e; ++j) cyclic.push_back(n);
        if (i == spec.size()) break;
        if (spec[i] != 'x' && spec[i] != 'X')
            throw parse_error("expected 'x' in group spec '" + spec + "'");
        ++i;
    }
    return group_from_cyclic_factors(cyclic);
}

namespace detail {

inline void partitions_of(Int n, std::vector<Int>& cur, Int max_part,
                          std::vector<std::vector<Int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (Int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_of(n - p, cur, p, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// Every abelian group of order 2..max_order, one per isomorphism class,
/// ordered by (order, invariant factors).
inline std::vector<FiniteAbelianGroup> all_abelian_groups(Int max_order) {
    std::vector<FiniteAbelianGroup> out;
    for (Int n = 2; n <= max_order; ++n) {
        auto by_prime = detail::prime_power_decomposition({n});
        // one exponent partition per prime, combined in all ways
        std::vector<std::vector<std::vector<Int>>> choices;  // per prime: cyclic factor lists
        for (auto& [p, qs] : by_prime) {
            Int e = 0;
            for (Int q = qs[0]; q > 1; q /= p) ++e;
            std::vector<std::vector<Int>> parts;
            std::vector<Int> cur;
            detail::partitions_of(e, cur, e, parts);
            std::vector<std::vector<Int>> lists;
            for (auto& part : parts) {
                std::vector<Int> l;
                for (Int a : part) {
                    Int q = 1;
                    for (Int i = 0; i < a; ++i) q *= p;
                    l.push_back(q);
                }
                lists.push_back(std::move(l));
            }
            choices.push_back(std::move(lists));
        }
        std::vector<std::vector<Int>> combos{{}};
        for (auto& lists : choices) {
            std::vector<std::vector<Int>> next;
            for (auto& c : combos)
                for (auto& l : lists) {
                    auto c2 = c;
                    c2.insert(c2.end(), l.begin(), l.end());
                    next.push_back(std::move(c2));
                }
            combos = std::move(next);
        }
        std::vector<FiniteAbelianGroup> here;
        for (auto& c : combos) here.push_back(group_from_cyclic_factors(c));
        std::sort(here.begin(), here.end(), [](const auto& a, const auto& b) {
            return a.invariant_factors() < b.invariant_factors();
        });
        out.insert(out.end(), here.begin(), here.end());
    }
    return out;
}

/// Automorphism stored as a permutation of element indices in
/// enumerate_elements() order.
struct Automorphism {
    std::vector<Int> image;  // image[index_of(x)] = index_of(f(x))

    friend bool operator==(const Automorphism&, const Automorphism&) = default;
    friend auto operator<=>(const Automorphism& a, const Automorphism& b) {
        return a.image <=> b.image;
    }
};

namespace detail {

inline bool is_additive_bijection(const FiniteAbelianGroup& g,
                                  const std::vector<GroupElement>& elems,
                                  const Automorphism& f) {
    Int n = g.order();
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (Int i = 0; i < n; ++i) {
        if (f.image[i] < 0 || f.image[i] >= n) return false;
        if (seen[f.image[i]]) return false;
        seen[f.image[i]] = 1;
    }
    for (Int i = 0; i < n; ++i)
        for (Int j = i; j < n; ++j) {
            Int sum = g.index_of(g.add(elems[i], elems[j]));
            if (f.image[sum] != g.index_of(g.add(elems[f.image[i]], elems[f.image[j]])))
                return false;
        }
    return true;
}

}  // namespace detail

/// A verified subgroup of Aut(G): the closure under composition of all
/// coordinate permutations between equal invariant factors and all
/// unit-scalar multiplications per coordinate. Not all of Aut(G) in
/// general, which is sound for orbit deduplication.
inline std::vector<Automorphism> symmetry_maps(const FiniteAbelianGroup& g) {
    if (g.order() > 4096)
        throw std::invalid_argument("symmetry_maps: group too large to tabulate");
    auto elems = g.enumerate_elements();
    Int n = g.order();
    Int r = g.rank();
    const auto& inv = g.invariant_factors();

    auto map_from = [&](auto&& coord_map) {
        Automorphism f;
        f.image.resize(static_cast<size_t>(n));
        for (Int i = 0; i < n; ++i)
            f.image[i] = g.index_of(coord_map(elems[i]));
        return f;
    };

    std::vector<Automorphism> gens;
    // Swaps of adjacent equal invariant factors generate all block permutations.
    for (Int i = 0; i + 1 < r; ++i) {
        if (inv[i] != inv[i + 1]) continue;
        gens.push_back(map_from([&](const GroupElement& x) {
            auto c = x.coords;
            std::swap(c[i], c[i + 1]);
            return GroupElement(std::move(c));
        }));
    }
    // Every unit-scalar multiplication per coordinate.
    for (Int i = 0; i < r; ++i)
        for (Int u = 1; u < inv[i]; ++u) {
            if (std::gcd(u, inv[i]) != 1 || u == 1) continue;
            gens.push_back(map_from([&](const GroupElement& x) {
                auto c = x.coords;
                c[i] = c[i] * u % inv[i];
                return GroupElement(std::move(c));
            }));
        }

    Automorphism id;
    id.image.resize(static_cast<size_t>(n));
    for (Int i = 0; i < n; ++i) id.image[i] = i;

    std::set<Automorphism> closed{id};
    std::vector<Automorphism> frontier{id};
    while (!frontier.empty()) {
        std::vector<Automorphism> next;
        for (const auto& f : frontier)
            for (const auto& s : gens) {
                Automorphism fs;
                fs.image.resize(static_cast<size_t>(n));
                for (Int i = 0; i < n; ++i) fs.image[i] = s.image[f.image[i]];
                if (closed.insert(fs).second) next.push_back(std::move(fs));
            }
        frontier = std::move(next);
    }

    std::vector<Automorphism> out(closed.begin(), closed.end());
    for (const auto& f : out)
        if (!detail::is_additive_bijection(g, elems, f))
            throw std::logic_error("symmetry_maps produced a non-automorphism");
    return out;
}

}  // namespace zerosum
