#pragma once

#include "tapkit/errors.hpp"
#include "tapkit/unipoly.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace tapkit {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// GaussianRational: exact complex rationals, the base field Q(i).
// ---------------------------------------------------------------------------

class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit GaussianRational(long n) : re_(n) {}

    static constexpr bool exact = true;
    static GaussianRational zero() { return GaussianRational(); }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational from_int(long n) { return GaussianRational(n); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }

    GaussianRational operator+(const GaussianRational& o) const {
        return {re_ + o.re_, im_ + o.im_};
    }
    GaussianRational operator-(const GaussianRational& o) const {
        return {re_ - o.re_, im_ - o.im_};
    }
    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
    }
    GaussianRational invert() const {
        Rational n = re_ * re_ + im_ * im_;
        if (n == 0) throw division_by_zero("invert(0) over Q(i)");
        return {re_ / n, -im_ / n};
    }
    bool operator==(const GaussianRational& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    // +1 / -1 / 0: sign of the leading part, used by unit normalization.
    int canonical_sign() const {
        if (re_ > 0) return 1;
        if (re_ < 0) return -1;
        if (im_ > 0) return 1;
        if (im_ < 0) return -1;
        return 0;
    }

    double norm() const {
        return std::abs(re_.convert_to<double>()) + std::abs(im_.convert_to<double>());
    }

    std::complex<double> to_complex() const {
        return {re_.convert_to<double>(), im_.convert_to<double>()};
    }

    std::string str() const {
        std::ostringstream os;
        os << re_;
        if (im_ != 0) os << (im_ > 0 ? "+" : "") << im_ << "i";
        return os.str();
    }

private:
    Rational re_{0};
    Rational im_{0};
};

// ---------------------------------------------------------------------------
// AlgebraicExt: Q(i)[w]/(p(w)) for a monic modulus p. Elements with a null
// modulus are plain Q(i) constants and lift automatically when they meet a
// modulus-carrying operand. Irreducibility of p is not checked up front;
// inversion fails lazily with NonInvertibleResidue when gcd(elem, p) != 1.
// ---------------------------------------------------------------------------

class AlgebraicExt {
public:
    using Modulus = std::vector<GaussianRational>; // monic, ascending degree

    AlgebraicExt() = default;
    explicit AlgebraicExt(GaussianRational c) {
        if (!c.is_zero()) coeffs_.push_back(std::move(c));
    }
    AlgebraicExt(std::shared_ptr<const Modulus> mod, std::vector<GaussianRational> coeffs)
        : mod_(std::move(mod)), coeffs_(std::move(coeffs)) {
        reduce();
    }

    static constexpr bool exact = true;
    static AlgebraicExt zero() { return AlgebraicExt(); }
    static AlgebraicExt one() { return AlgebraicExt(GaussianRational::one()); }
    static AlgebraicExt from_int(long n) { return AlgebraicExt(GaussianRational(n)); }

    // The residue class of w itself.
    static AlgebraicExt generator(std::shared_ptr<const Modulus> mod) {
        return AlgebraicExt(std::move(mod),
                            {GaussianRational::zero(), GaussianRational::one()});
    }

    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
    const std::shared_ptr<const Modulus>& modulus() const { return mod_; }

    bool is_zero() const { return coeffs_.empty(); }

    AlgebraicExt operator+(const AlgebraicExt& o) const {
        auto m = unify(o);
        return AlgebraicExt(m, unipoly::add(coeffs_, o.coeffs_));
    }
    AlgebraicExt operator-(const AlgebraicExt& o) const {
        auto m = unify(o);
        return AlgebraicExt(m, unipoly::sub(coeffs_, o.coeffs_));
    }
    AlgebraicExt operator-() const { return AlgebraicExt(mod_, unipoly::neg(coeffs_)); }
    AlgebraicExt operator*(const AlgebraicExt& o) const {
        auto m = unify(o);
        return AlgebraicExt(m, unipoly::mul(coeffs_, o.coeffs_));
    }
    AlgebraicExt invert() const {
        if (is_zero()) throw division_by_zero("invert(0) in algebraic extension");
        if (!mod_) return AlgebraicExt(coeffs_[0].invert());
        unipoly::Poly<GaussianRational> u, v;
        auto g = unipoly::extended_gcd(coeffs_, *mod_, u, v);
        if (unipoly::degree(g) != 0)
            throw non_invertible_residue("residue shares a factor with the modulus");
        // g == 1 after normalization, so u * coeffs == 1 (mod p)
        return AlgebraicExt(mod_, u);
    }
    bool operator==(const AlgebraicExt& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const AlgebraicExt& o) const { return !(*this == o); }

    int canonical_sign() const {
        for (const auto& c : coeffs_)
            if (int s = c.canonical_sign()) return s;
        return 0;
    }

    double norm() const {
        double n = 0;
        for (const auto& c : coeffs_) n += c.norm();
        return n;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) os << " + ";
            os << "(" << coeffs_[i].str() << ")w^" << i;
        }
        return os.str();
    }

private:
    std::shared_ptr<const Modulus> unify(const AlgebraicExt& o) const {
        if (mod_ && o.mod_ && *mod_ != *o.mod_)
            throw ComputationError("ModulusMismatch", "mixed algebraic extensions");
        return mod_ ? mod_ : o.mod_;
    }
    void reduce() {
        unipoly::trim(coeffs_);
        if (mod_ && coeffs_.size() >= mod_->size()) {
            coeffs_ = unipoly::divmod(coeffs_, *mod_).second;
        }
    }

    std::shared_ptr<const Modulus> mod_; // null = plain Q(i) constant
    std::vector<GaussianRational> coeffs_;
};

// ---------------------------------------------------------------------------
// ComplexFloat: double-precision complex numbers. The closeness tolerance is
// passed explicitly wherever it matters; there is no global state.
// ---------------------------------------------------------------------------

class ComplexFloat {
public:
    ComplexFloat() = default;
    ComplexFloat(double re, double im) : v_(re, im) {}
    explicit ComplexFloat(std::complex<double> v) : v_(v) {}

    static constexpr bool exact = false;
    static ComplexFloat zero() { return ComplexFloat(); }
    static ComplexFloat one() { return ComplexFloat(1.0, 0.0); }
    static ComplexFloat from_int(long n) { return ComplexFloat(static_cast<double>(n), 0.0); }

    std::complex<double> value() const { return v_; }

    bool is_zero() const { return v_ == std::complex<double>(0.0, 0.0); }

    ComplexFloat operator+(const ComplexFloat& o) const { return ComplexFloat(v_ + o.v_); }
    ComplexFloat operator-(const ComplexFloat& o) const { return ComplexFloat(v_ - o.v_); }
    ComplexFloat operator-() const { return ComplexFloat(-v_); }
    ComplexFloat operator*(const ComplexFloat& o) const { return ComplexFloat(v_ * o.v_); }
    ComplexFloat invert() const {
        if (std::abs(v_) == 0.0) throw division_by_zero("invert(0) over C");
        return ComplexFloat(1.0 / v_);
    }
    bool operator==(const ComplexFloat& o) const { return v_ == o.v_; }
    bool operator!=(const ComplexFloat& o) const { return !(*this == o); }

    int canonical_sign() const {
        if (v_.real() > 0) return 1;
        if (v_.real() < 0) return -1;
        if (v_.imag() > 0) return 1;
        if (v_.imag() < 0) return -1;
        return 0;
    }

    double norm() const { return std::abs(v_); }

    std::complex<double> to_complex() const { return v_; }

    std::string str() const {
        std::ostringstream os;
        os << v_.real();
        if (v_.imag() != 0) os << (v_.imag() > 0 ? "+" : "") << v_.imag() << "i";
        return os.str();
    }

private:
    std::complex<double> v_{0.0, 0.0};
};

// |a-b| <= tol * max(1, |a|, |b|) for floats; exact equality otherwise.
template <class F>
bool close(const F& a, const F& b, double tol) {
    if constexpr (F::exact) {
        (void)tol;
        return a == b;
    } else {
        double m = std::max({1.0, a.norm(), b.norm()});
        return (a - b).norm() <= tol * m;
    }
}

template <class F>
F field_div(const F& a, const F& b) {
    return a * b.invert();
}

} // namespace tapkit
