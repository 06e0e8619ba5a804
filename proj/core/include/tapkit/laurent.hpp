#pragma once

#include "tapkit/errors.hpp"
#include "tapkit/mat2.hpp"

#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace tapkit {

// Laurent polynomial in t with coefficients in T (a scalar field or Mat2).
// Zero coefficients are never stored.
template <class T>
class Laurent {
public:
    Laurent() = default;
    explicit Laurent(const T& c, int exp = 0) {
        if (!c.is_zero()) coeffs_[exp] = c;
    }

    static Laurent zero() { return {}; }

    const std::map<int, T>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    int min_exp() const {
        if (is_zero()) throw zero_polynomial("min_exp of zero polynomial");
        return coeffs_.begin()->first;
    }
    int max_exp() const {
        if (is_zero()) throw zero_polynomial("max_exp of zero polynomial");
        return coeffs_.rbegin()->first;
    }
    int span() const { return is_zero() ? -1 : max_exp() - min_exp(); }

    T coeff(int exp) const {
        auto it = coeffs_.find(exp);
        return it == coeffs_.end() ? T{} : it->second;
    }

    Laurent& add_term(int exp, const T& c) {
        if (c.is_zero()) return *this;
        auto it = coeffs_.find(exp);
        if (it == coeffs_.end()) {
            coeffs_.emplace(exp, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
        return *this;
    }

    Laurent operator+(const Laurent& o) const {
        Laurent r = *this;
        for (const auto& [e, c] : o.coeffs_) r.add_term(e, c);
        return r;
    }
    Laurent operator-(const Laurent& o) const {
        Laurent r = *this;
        for (const auto& [e, c] : o.coeffs_) r.add_term(e, -c);
        return r;
    }
    Laurent operator-() const {
        Laurent r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
        return r;
    }
    Laurent operator*(const Laurent& o) const {
        Laurent r;
        for (const auto& [e1, c1] : coeffs_)
            for (const auto& [e2, c2] : o.coeffs_) r.add_term(e1 + e2, c1 * c2);
        return r;
    }

    Laurent shifted(int s) const {
        Laurent r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e + s] = c;
        return r;
    }

    bool operator==(const Laurent& o) const { return coeffs_ == o.coeffs_; }

    double max_coeff_norm() const {
        double m = 0;
        for (const auto& [e, c] : coeffs_) m = std::max(m, c.norm());
        return m;
    }

    // Drop coefficients with norm below tol * (largest coefficient norm).
    // Only meaningful for float backends; exact backends never need it.
    Laurent pruned(double tol) const {
        double cutoff = tol * max_coeff_norm();
        Laurent r;
        for (const auto& [e, c] : coeffs_)
            if (c.norm() > cutoff) r.coeffs_[e] = c;
        return r;
    }

private:
    std::map<int, T> coeffs_;
};

template <class F>
using LaurentScalar = Laurent<F>;
template <class F>
using LaurentMat = Laurent<Mat2<F>>;

template <class F>
Laurent<F> laurent_unit(int exp = 0) {
    return Laurent<F>(F::one(), exp);
}

template <class F>
LaurentMat<F> laurent_mat_term(const Mat2<F>& m, int exp) {
    return LaurentMat<F>(m, exp);
}

// Evaluate a scalar Laurent polynomial at a nonzero complex point.
template <class F>
std::complex<double> eval_at(const Laurent<F>& p, std::complex<double> t) {
    std::complex<double> acc = 0;
    for (const auto& [e, c] : p.coeffs()) acc += c.to_complex() * std::pow(t, e);
    return acc;
}

// Coefficient-wise closeness after aligning supports; both sides compared
// against the larger of the two coefficient scales.
template <class F>
bool laurent_close(const Laurent<F>& a, const Laurent<F>& b, double tol) {
    if constexpr (F::exact) {
        (void)tol;
        return a == b;
    } else {
        double scale = std::max({1.0, a.max_coeff_norm(), b.max_coeff_norm()});
        Laurent<F> d = a - b;
        return d.is_zero() || d.max_coeff_norm() <= tol * scale;
    }
}

template <class F>
std::string laurent_to_string(const Laurent<F>& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.coeffs()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (e != 0) os << "*t^" << e;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Matrices of Laurent polynomials and determinants
// ---------------------------------------------------------------------------

template <class F>
using LaurentMatrix = std::vector<std::vector<Laurent<F>>>;

// Rectangular grid of 2x2-matrix Laurent blocks.
template <class F>
struct BlockMatrix {
    std::vector<std::vector<LaurentMat<F>>> blocks;

    size_t rows() const { return blocks.size(); }
    size_t cols() const { return blocks.empty() ? 0 : blocks[0].size(); }

    // Expand each 2x2 block into scalar entries.
    LaurentMatrix<F> flatten() const {
        LaurentMatrix<F> m(2 * rows(), std::vector<Laurent<F>>(2 * cols()));
        for (size_t i = 0; i < rows(); ++i)
            for (size_t j = 0; j < cols(); ++j)
                for (const auto& [e, blk] : blocks[i][j].coeffs()) {
                    m[2 * i][2 * j].add_term(e, blk.a);
                    m[2 * i][2 * j + 1].add_term(e, blk.b);
                    m[2 * i + 1][2 * j].add_term(e, blk.c);
                    m[2 * i + 1][2 * j + 1].add_term(e, blk.d);
                }
        return m;
    }
};

namespace detail {

// Dense ascending-degree view of a Laurent polynomial: (shift, coeffs) with
// p = t^shift * sum coeffs[i] t^i.
template <class F>
std::pair<int, std::vector<F>> to_dense(const Laurent<F>& p) {
    if (p.is_zero()) return {0, {}};
    int lo = p.min_exp();
    std::vector<F> c(p.max_exp() - lo + 1, F::zero());
    for (const auto& [e, v] : p.coeffs()) c[e - lo] = v;
    return {lo, c};
}

template <class F>
Laurent<F> from_dense(int shift, const std::vector<F>& c) {
    Laurent<F> p;
    for (size_t i = 0; i < c.size(); ++i) p.add_term(shift + static_cast<int>(i), c[i]);
    return p;
}

// Exact polynomial long division in the dense representation.
template <class F>
std::pair<std::vector<F>, std::vector<F>> dense_divmod(std::vector<F> num,
                                                       const std::vector<F>& den) {
    if (den.empty()) throw division_by_zero("polynomial division by zero polynomial");
    if (num.size() < den.size()) return {{}, num};
    std::vector<F> quot(num.size() - den.size() + 1, F::zero());
    F lead_inv = den.back().invert();
    for (int i = static_cast<int>(num.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
        if (num[i].is_zero()) continue;
        F q = num[i] * lead_inv;
        quot[i - (den.size() - 1)] = q;
        for (size_t j = 0; j < den.size(); ++j) {
            size_t k = i - (den.size() - 1) + j;
            num[k] = num[k] - q * den[j];
        }
    }
    while (!num.empty() && num.back().is_zero()) num.pop_back();
    while (!quot.empty() && quot.back().is_zero()) quot.pop_back();
    return {quot, num};
}

} // namespace detail

// Quotient and remainder with num = quot * den + rem. For exact fields the
// caller decides whether a nonzero remainder is an error; for floats the
// remainder's largest coefficient norm is the "remainder norm" diagnostic.
template <class F>
std::pair<Laurent<F>, Laurent<F>> divide_with_remainder(const Laurent<F>& num,
                                                        const Laurent<F>& den) {
    if (den.is_zero()) throw division_by_zero("division by zero Laurent polynomial");
    if (num.is_zero()) return {Laurent<F>{}, Laurent<F>{}};
    auto [nlo, nc] = detail::to_dense(num);
    auto [dlo, dc] = detail::to_dense(den);
    auto [q, r] = detail::dense_divmod(nc, dc);
    return {detail::from_dense(nlo - dlo, q), detail::from_dense(nlo, r)};
}

// Exact division; throws InexactDivision on nonzero remainder.
template <class F>
Laurent<F> divide_exact(const Laurent<F>& num, const Laurent<F>& den) {
    auto [q, r] = divide_with_remainder(num, den);
    if (!r.is_zero()) throw inexact_division("nonzero remainder in exact Laurent division");
    return q;
}

// Shift exponents so the lowest is 0, then scale by +-1 so the lowest
// coefficient has canonical sign (positive real part, ties broken by positive
// imaginary part). Identifies results that differ by the unit group {+-t^s}.
template <class F>
Laurent<F> normalize_unit(const Laurent<F>& p) {
    if (p.is_zero()) throw zero_polynomial("normalize_unit of zero polynomial");
    Laurent<F> r = p.shifted(-p.min_exp());
    if (r.coeffs().begin()->second.canonical_sign() < 0) r = -r;
    return r;
}

// Equality up to units {+-t^s}; float backends compare at tolerance tol.
template <class F>
bool unit_equal(const Laurent<F>& a, const Laurent<F>& b, double tol = 0.0) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
    if constexpr (F::exact) {
        return normalize_unit(a) == normalize_unit(b);
    } else {
        Laurent<F> na = normalize_unit(a.pruned(tol > 0 ? tol : 1e-12));
        Laurent<F> nb = normalize_unit(b.pruned(tol > 0 ? tol : 1e-12));
        if (laurent_close(na, nb, tol)) return true;
        return laurent_close(na, -nb, tol); // sign rule can flip on near-zero real parts
    }
}

// ---------------------------------------------------------------------------
// Determinants
// ---------------------------------------------------------------------------

// Fraction-free Bareiss elimination over the Laurent ring; exact in exact
// backends. Rows are shifted to ordinary polynomials first and the total
// shift restored at the end.
template <class F>
Laurent<F> det_bareiss(const LaurentMatrix<F>& m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw non_square("det of non-square matrix");
    if (n == 0) return laurent_unit<F>();

    int total_shift = 0;
    std::vector<std::vector<Laurent<F>>> a = m;
    for (size_t i = 0; i < n; ++i) {
        int lo = 0;
        bool any = false;
        for (const auto& e : a[i])
            if (!e.is_zero()) {
                lo = any ? std::min(lo, e.min_exp()) : e.min_exp();
                any = true;
            }
        if (!any) return {}; // zero row
        total_shift += lo;
        for (auto& e : a[i]) e = e.shifted(-lo);
    }

    Laurent<F> prev = laurent_unit<F>();
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return {};
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Laurent<F> num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                a[i][j] = divide_exact(num, prev);
            }
            a[i][k] = Laurent<F>{};
        }
        prev = a[k][k];
    }
    Laurent<F> d = a[n - 1][n - 1].shifted(total_shift);
    return sign < 0 ? -d : d;
}

// Laplace cofactor expansion; exponential, used as an independent oracle on
// small matrices.
template <class F>
Laurent<F> det_cofactor(const LaurentMatrix<F>& m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw non_square("det of non-square matrix");
    if (n == 0) return laurent_unit<F>();
    if (n == 1) return m[0][0];
    Laurent<F> acc;
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        LaurentMatrix<F> sub(n - 1, std::vector<Laurent<F>>(n - 1));
        for (size_t i = 1; i < n; ++i) {
            size_t jj = 0;
            for (size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                sub[i - 1][jj++] = m[i][k];
            }
        }
        Laurent<F> term = m[0][j] * det_cofactor(sub);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

namespace detail {

inline std::complex<double> lu_det(std::vector<std::vector<std::complex<double>>> a) {
    const size_t n = a.size();
    std::complex<double> det = 1.0;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        for (size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (std::abs(a[piv][k]) == 0.0) return 0.0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            std::complex<double> f = a[i][k] / a[k][k];
            for (size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

} // namespace detail

// Float-mode determinant by evaluation at roots of unity and inverse DFT.
template <class F>
Laurent<F> det_interpolate(const LaurentMatrix<F>& m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw non_square("det of non-square matrix");
    if (n == 0) return laurent_unit<F>();

    int lo = 0, hi = 0;
    for (size_t i = 0; i < n; ++i) {
        int rlo = 0, rhi = 0;
        bool any = false;
        for (const auto& e : m[i]) {
            if (e.is_zero()) continue;
            rlo = any ? std::min(rlo, e.min_exp()) : e.min_exp();
            rhi = any ? std::max(rhi, e.max_exp()) : e.max_exp();
            any = true;
        }
        if (!any) return {};
        lo += rlo;
        hi += rhi;
    }
    const int width = hi - lo + 1;
    const double pi = 3.14159265358979323846;
    std::vector<std::complex<double>> vals(width);
    for (int s = 0; s < width; ++s) {
        std::complex<double> t = std::polar(1.0, 2.0 * pi * s / width);
        std::vector<std::vector<std::complex<double>>> num(
            n, std::vector<std::complex<double>>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) num[i][j] = eval_at(m[i][j], t);
        vals[s] = detail::lu_det(std::move(num)) * std::pow(t, -lo);
    }
    Laurent<F> out;
    for (int u = 0; u < width; ++u) {
        std::complex<double> c = 0;
        for (int s = 0; s < width; ++s)
            c += vals[s] * std::polar(1.0, -2.0 * pi * s * u / width);
        c /= static_cast<double>(width);
        out.add_term(lo + u, F(c.real(), c.imag()));
    }
    // Interpolation noise shows up as spurious tiny coefficients.
    return out.is_zero() ? out : out.pruned(1e-11);
}

template <class F>
Laurent<F> det_laurent(const LaurentMatrix<F>& m) {
    if constexpr (F::exact)
        return det_bareiss(m);
    else
        return det_interpolate(m);
}

// Determinant of the flattened 2r x 2c block matrix.
template <class F>
Laurent<F> det_block(const BlockMatrix<F>& m) {
    if (m.rows() != m.cols()) throw non_square("det of non-square block matrix");
    return det_laurent(m.flatten());
}

} // namespace tapkit
