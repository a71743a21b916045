#pragma once

#include <map>
#include <optional>
#include <string>

#include "zerosum/group.hpp"
#include "zerosum/rational.hpp"

namespace zerosum {

/// Finite multiset over a group, written multiplicatively: S = prod g^{v_g}.
/// The empty sequence is the identity. Immutable value semantics.
class Sequence {
public:
    Sequence() = default;
    explicit Sequence(FiniteAbelianGroup g) : group_(std::move(g)) {}

    static Sequence from_multiplicities(FiniteAbelianGroup g,
                                        std::map<GroupElement, Int> mult) {
        Sequence s(std::move(g));
        for (auto& [e, v] : mult) {
            if (v < 0) throw std::invalid_argument("negative multiplicity");
            if (v > 0) s.mult_.emplace(e, v);
        }
        return s;
    }

    const FiniteAbelianGroup& group() const { return group_; }
    const std::map<GroupElement, Int>& multiplicities() const { return mult_; }

    Int v(const GroupElement& g) const {
        auto it = mult_.find(g);
        return it == mult_.end() ? 0 : it->second;
    }

    Int length() const {
        Int l = 0;
        for (auto& [e, v] : mult_) l += v;
        return l;
    }

    bool empty() const { return mult_.empty(); }

    std::vector<GroupElement> support() const {
        std::vector<GroupElement> s;
        s.reserve(mult_.size());
        for (auto& [e, v] : mult_) s.push_back(e);
        return s;
    }

    /// h(S): the largest multiplicity, 0 for the empty sequence.
    Int max_multiplicity() const {
        Int h = 0;
        for (auto& [e, v] : mult_) h = std::max(h, v);
        return h;
    }

    GroupElement sigma() const {
        GroupElement s = group_.zero();
        for (auto& [e, v] : mult_)
            s = group_.add(s, group_.scalar_mul(v, e));
        return s;
    }

    bool is_zero_sum() const { return sigma().is_zero(); }

    /// k(S) = sum of v_g / ord(g), exact.
    Rational cross_number() const {
        Rational k;
        for (auto& [e, v] : mult_) k += Rational(v, group_.element_order(e));
        return k;
    }

    Sequence mul(const Sequence& other) const {
        Sequence s = *this;
        for (auto& [e, v] : other.mult_) s.mult_[e] += v;
        return s;
    }

    Sequence with(const GroupElement& g, Int count = 1) const {
        Sequence s = *this;
        s.mult_[g] += count;
        return s;
    }

    /// True when this divides S in the free monoid (componentwise <=).
    bool divides(const Sequence& s) const {
        for (auto& [e, v] : mult_)
            if (s.v(e) < v) return false;
        return true;
    }

    /// S / T, absent when T does not divide S.
    std::optional<Sequence> quotient_by(const Sequence& t) const {
        if (!t.divides(*this)) return std::nullopt;
        Sequence q(group_);
        for (auto& [e, v] : mult_) {
            Int w = v - t.v(e);
            if (w > 0) q.mult_.emplace(e, w);
        }
        return q;
    }

    friend bool operator==(const Sequence& a, const Sequence& b) {
        return a.group_ == b.group_ && a.mult_ == b.mult_;
    }
    friend auto operator<=>(const Sequence& a, const Sequence& b) {
        return a.mult_ <=> b.mult_;
    }

    /// Rendering "g^v · h^w" with elements in coordinate form; "1" if empty.
    std::string str() const {
        if (mult_.empty()) return "1";
        std::string s;
        for (auto& [e, v] : mult_) {
            if (!s.empty()) s += "·";
            s += e.str() + "^" + std::to_string(v);
        }
        return s;
    }

private:
    FiniteAbelianGroup group_;
    std::map<GroupElement, Int> mult_;
};

}  // namespace zerosum
