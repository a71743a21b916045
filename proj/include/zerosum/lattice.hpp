#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "zerosum/atoms.hpp"

namespace zerosum {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

struct overflow_signal {};

/// int64 with overflow detection. The normal-form computation runs on this
/// type first and escalates to arbitrary precision when a computation
/// would overflow, so results never wrap silently.
struct CheckedInt {
    long long v = 0;
    CheckedInt() = default;
    CheckedInt(long long x) : v(x) {}

    friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
        long long r;
        if (__builtin_add_overflow(a.v, b.v, &r)) throw overflow_signal{};
        return r;
    }
    friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
        long long r;
        if (__builtin_sub_overflow(a.v, b.v, &r)) throw overflow_signal{};
        return r;
    }
    friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
        long long r;
        if (__builtin_mul_overflow(a.v, b.v, &r)) throw overflow_signal{};
        return r;
    }
    friend CheckedInt operator/(CheckedInt a, CheckedInt b) {  // exact divisions only
        if (b.v == -1 && a.v == std::numeric_limits<long long>::min()) throw overflow_signal{};
        return a.v / b.v;
    }
    friend CheckedInt operator%(CheckedInt a, CheckedInt b) {
        if (b.v == -1 && a.v == std::numeric_limits<long long>::min()) throw overflow_signal{};
        return a.v % b.v;
    }
    CheckedInt operator-() const {
        if (v == std::numeric_limits<long long>::min()) throw overflow_signal{};
        return -v;
    }
    friend bool operator==(CheckedInt a, CheckedInt b) { return a.v == b.v; }
    friend bool operator<(CheckedInt a, CheckedInt b) { return a.v < b.v; }
};

template <class T>
T xgcd(T a, T b, T& x, T& y) {
    // returns g >= 0 with a*x + b*y = g
    T x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (!(b == T(0))) {
        T q = a / b;
        T t = a - q * b;
        a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (a < T(0)) { a = -a; x0 = -x0; y0 = -y0; }
    x = x0; y = y0;
    return a;
}

/// Column echelon basis of a growing integer lattice in Z^dim. Columns are
/// kept with strictly increasing pivot rows; inserting a vector applies
/// unimodular two-column transforms, so the generated lattice is preserved.
template <class T>
struct Echelon {
    size_t dim;
    std::vector<std::vector<T>> cols;
    std::vector<size_t> pivots;  // strictly increasing

    explicit Echelon(size_t d) : dim(d) {}

    static size_t first_nonzero(const std::vector<T>& v) {
        for (size_t i = 0; i < v.size(); ++i)
            if (!(v[i] == T(0))) return i;
        return v.size();
    }

    void insert(std::vector<T> v) {
        while (true) {
            size_t q = first_nonzero(v);
            if (q == dim) return;
            size_t j = 0;
            while (j < pivots.size() && pivots[j] < q) ++j;
            if (j == pivots.size() || pivots[j] != q) {
                cols.insert(cols.begin() + j, std::move(v));
                pivots.insert(pivots.begin() + j, q);
                return;
            }
            T h = cols[j][q], w = v[q];
            T x, y;
            T g = xgcd(h, w, x, y);
            T hg = h / g, wg = w / g;
            std::vector<T> merged(dim);
            for (size_t i = q; i < dim; ++i) {
                merged[i] = x * cols[j][i] + y * v[i];
                v[i] = hg * v[i] - wg * cols[j][i];
            }
            cols[j] = std::move(merged);
        }
    }

    /// Pivot value in the last row, 0 when no column reaches it.
    T last_row_pivot() const {
        if (!pivots.empty() && pivots.back() == dim - 1) {
            T p = cols.back()[dim - 1];
            return p < T(0) ? -p : p;
        }
        return T(0);
    }
};

template <class T>
std::optional<Int> ones_functional_gcd_impl(size_t nrows,
                                            const std::vector<const std::vector<Int>*>& columns) {
    Echelon<T> ech(nrows + 1);
    for (const auto* col : columns) {
        std::vector<T> v(nrows + 1);
        for (size_t i = 0; i < nrows; ++i) v[i] = T((*col)[i]);
        v[nrows] = T(1);
        ech.insert(std::move(v));
        T d = ech.last_row_pivot();
        if (d == T(1)) return 1;  // gcd can only divide further; 1 is final
    }
    T d = ech.last_row_pivot();
    if (d == T(0)) return std::nullopt;
    if constexpr (std::is_same_v<T, CheckedInt>)
        return d.v;
    else
        return static_cast<Int>(d);
}

}  // namespace detail

/// gcd of the factorization-length functional over the integer kernel of
/// the matrix whose columns are the given vectors; absent when the
/// functional vanishes on the whole kernel.
///
/// Why this equals min of the distance set of the subset: a kernel vector z
/// splits as z+ - z- with M z+ = M z-, i.e. two factorizations of one
/// zero-sum sequence whose lengths differ by sum(z); conversely two
/// factorizations of the same sequence give a kernel vector. So the image
/// of the kernel under the all-ones functional is exactly the group
/// generated by all achievable length differences, its positive generator
/// is gcd of the distance set, and that gcd equals the minimal distance.
/// The functional vanishes identically iff all factorizations of every
/// sequence share one length, i.e. iff the subset is half-factorial.
inline std::optional<Int> ones_functional_gcd(size_t nrows,
                                              const std::vector<const std::vector<Int>*>& columns) {
    try {
        return detail::ones_functional_gcd_impl<detail::CheckedInt>(nrows, columns);
    } catch (const detail::overflow_signal&) {
        return detail::ones_functional_gcd_impl<BigInt>(nrows, columns);
    }
}

/// min of the distance set of the subset underlying `atoms`, or absent when
/// the subset is half-factorial. See ones_functional_gcd for the method.
inline std::optional<Int> min_delta_lattice(const AtomSet& atoms) {
    std::vector<const std::vector<Int>*> cols;
    cols.reserve(atoms.size());
    for (const auto& a : atoms.atoms) cols.push_back(&a);
    return ones_functional_gcd(atoms.elements.size(), cols);
}

/// Same, over a subset of the atoms of a larger enumeration (columns are
/// picked by index; rows of elements outside every picked atom are zero and
/// do not disturb the computation).
inline std::optional<Int> min_delta_lattice(const AtomSet& full,
                                            const std::vector<size_t>& atom_indices) {
    std::vector<const std::vector<Int>*> cols;
    cols.reserve(atom_indices.size());
    for (size_t j : atom_indices) cols.push_back(&full.atoms[j]);
    return ones_functional_gcd(full.elements.size(), cols);
}

/// Integer matrix with rows indexed by the subset's elements and columns by
/// its atoms; entry (g, A) = v_g(A).
struct ValuationMatrix {
    std::vector<std::vector<Int>> entries;  // row major

    size_t rows() const { return entries.size(); }
    size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
};

inline ValuationMatrix valuation_matrix(const AtomSet& atoms) {
    ValuationMatrix m;
    m.entries.assign(atoms.elements.size(), std::vector<Int>(atoms.size(), 0));
    for (size_t j = 0; j < atoms.size(); ++j) {
        Int colsum = 0;
        for (size_t i = 0; i < atoms.elements.size(); ++i) {
            m.entries[i][j] = atoms.atoms[j][i];
            colsum += atoms.atoms[j][i];
        }
        if (colsum != atoms.lengths[j])
            throw std::logic_error("valuation matrix column sum != atom length");
        if (colsum == 0)
            throw std::logic_error("valuation matrix has a zero column");
    }
    return m;
}

/// Basis of the integer lattice { z : M z = 0 }, via a column-operations
/// Hermite normal form with the transformation matrix carried along.
/// Arbitrary-precision throughout; the returned vectors are verified to be
/// in the kernel and to number cols - rank.
inline std::vector<std::vector<BigInt>> kernel_basis(const ValuationMatrix& m) {
    const size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<BigInt>> a(cols, std::vector<BigInt>(rows));
    std::vector<std::vector<BigInt>> u(cols, std::vector<BigInt>(cols, 0));
    for (size_t j = 0; j < cols; ++j) {
        u[j][j] = 1;
        for (size_t i = 0; i < rows; ++i) a[j][i] = m.entries[i][j];
    }
    size_t piv = 0;
    for (size_t r = 0; r < rows && piv < cols; ++r) {
        size_t j0 = piv;
        while (j0 < cols && a[j0][r] == 0) ++j0;
        if (j0 == cols) continue;
        for (size_t j = j0 + 1; j < cols; ++j) {
            if (a[j][r] == 0) continue;
            BigInt h = a[j0][r], w = a[j][r];
            BigInt x, y;
            BigInt g = detail::xgcd(h, w, x, y);
            BigInt hg = h / g, wg = w / g;
            for (size_t i = 0; i < rows; ++i) {
                BigInt n0 = x * a[j0][i] + y * a[j][i];
                a[j][i] = hg * a[j][i] - wg * a[j0][i];
                a[j0][i] = n0;
            }
            for (size_t i = 0; i < cols; ++i) {
                BigInt n0 = x * u[j0][i] + y * u[j][i];
                u[j][i] = hg * u[j][i] - wg * u[j0][i];
                u[j0][i] = n0;
            }
        }
        std::swap(a[j0], a[piv]);
        std::swap(u[j0], u[piv]);
        ++piv;
    }
    std::vector<std::vector<BigInt>> kernel(u.begin() + piv, u.end());
    for (const auto& z : kernel)
        for (size_t i = 0; i < rows; ++i) {
            BigInt s = 0;
            for (size_t j = 0; j < cols; ++j) s += BigInt(m.entries[i][j]) * z[j];
            if (s != 0) throw std::logic_error("kernel_basis: M z != 0");
        }
    if (kernel.size() != cols - piv)
        throw std::logic_error("kernel_basis: rank bookkeeping broken");
    return kernel;
}

/// gcd of the length functional over kernel_basis vectors. Same value as
/// ones_functional_gcd (the functional is linear, so basis images generate
/// its image); kept as an independently-coded route for cross-checking.
inline std::optional<Int> min_delta_via_kernel(const ValuationMatrix& m) {
    BigInt g = 0;
    for (const auto& z : kernel_basis(m)) {
        BigInt s = 0;
        for (const auto& zi : z) s += zi;
        if (s < 0) s = -s;
        g = boost::multiprecision::gcd(g, s);
    }
    if (g == 0) return std::nullopt;
    return static_cast<Int>(g);
}

}  // namespace zerosum
