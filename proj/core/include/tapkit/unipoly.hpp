#pragma once

#include "tapkit/errors.hpp"

#include <utility>
#include <vector>

namespace tapkit {

// Dense univariate polynomials over a field, coefficients in ascending degree
// order with no trailing zeros. Small utility layer shared by the algebraic
// scalar backend (extended Euclid) and the Riley-polynomial machinery.
namespace unipoly {

template <class F>
using Poly = std::vector<F>;

template <class F>
void trim(Poly<F>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

template <class F>
bool is_zero(const Poly<F>& p) {
    return p.empty();
}

template <class F>
int degree(const Poly<F>& p) {
    return static_cast<int>(p.size()) - 1; // -1 for the zero polynomial
}

template <class F>
Poly<F> add(const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r(std::max(a.size(), b.size()), F::zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    trim(r);
    return r;
}

template <class F>
Poly<F> neg(const Poly<F>& a) {
    Poly<F> r = a;
    for (auto& c : r) c = -c;
    return r;
}

template <class F>
Poly<F> sub(const Poly<F>& a, const Poly<F>& b) {
    return add(a, neg(b));
}

template <class F>
Poly<F> mul(const Poly<F>& a, const Poly<F>& b) {
    if (a.empty() || b.empty()) return {};
    Poly<F> r(a.size() + b.size() - 1, F::zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    trim(r);
    return r;
}

template <class F>
Poly<F> scale(const Poly<F>& a, const F& s) {
    Poly<F> r = a;
    for (auto& c : r) c = c * s;
    trim(r);
    return r;
}

// Quotient/remainder of a by b. Requires b nonzero.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
    if (b.empty()) throw division_by_zero("polynomial division by zero");
    Poly<F> rem = a;
    if (a.size() < b.size()) return {Poly<F>{}, rem};
    Poly<F> quot(a.size() - b.size() + 1, F::zero());
    const F lead_inv = b.back().invert();
    for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
        if (rem[i].is_zero()) continue;
        F q = rem[i] * lead_inv;
        quot[i - (b.size() - 1)] = q;
        for (size_t j = 0; j < b.size(); ++j) {
            size_t k = i - (b.size() - 1) + j;
            rem[k] = rem[k] - q * b[j];
        }
    }
    trim(rem);
    trim(quot);
    return {quot, rem};
}

template <class F>
Poly<F> monic(const Poly<F>& a) {
    if (a.empty()) return a;
    return scale(a, a.back().invert());
}

template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// g = gcd(a, b) = u*a + v*b, g monic. Used for inversion modulo a modulus.
template <class F>
Poly<F> extended_gcd(Poly<F> a, Poly<F> b, Poly<F>& u, Poly<F>& v) {
    Poly<F> u0{F::one()}, v0{}, u1{}, v1{F::one()};
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
        Poly<F> u2 = sub(u0, mul(q, u1));
        Poly<F> v2 = sub(v0, mul(q, v1));
        u0 = std::move(u1);
        v0 = std::move(v1);
        u1 = std::move(u2);
        v1 = std::move(v2);
    }
    if (!a.empty()) {
        F s = a.back().invert();
        a = scale(a, s);
        u0 = scale(u0, s);
        v0 = scale(v0, s);
    }
    u = std::move(u0);
    v = std::move(v0);
    return a;
}

template <class F>
Poly<F> derivative(const Poly<F>& a) {
    if (a.size() <= 1) return {};
    Poly<F> r(a.size() - 1, F::zero());
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * F::from_int(static_cast<long>(i));
    trim(r);
    return r;
}

template <class F>
F eval(const Poly<F>& a, const F& x) {
    F acc = F::zero();
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
    return acc;
}

} // namespace unipoly
} // namespace tapkit
