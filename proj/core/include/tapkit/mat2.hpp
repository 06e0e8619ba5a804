#pragma once

#include "tapkit/errors.hpp"

#include <array>

namespace tapkit {

// 2x2 matrix over a scalar field, row-major.
template <class F>
struct Mat2 {
    F a = F::zero(), b = F::zero(), c = F::zero(), d = F::zero();

    static Mat2 zero() { return {}; }
    static Mat2 identity() { return {F::one(), F::zero(), F::zero(), F::one()}; }
    static Mat2 scalar(const F& s) { return {s, F::zero(), F::zero(), s}; }

    bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }

    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator*(const F& s) const { return {a * s, b * s, c * s, d * s}; }

    F det() const { return a * d - b * c; }
    F trace() const { return a + d; }

    // Adjugate B*: B B* = det(B) E.
    Mat2 adjugate() const { return {d, -b, -c, a}; }

    Mat2 inverse() const {
        F dt = det();
        if (dt.is_zero()) throw division_by_zero("inverse of singular 2x2 matrix");
        F i = dt.invert();
        return {d * i, -b * i, -c * i, a * i};
    }

    Mat2 pow(int n) const {
        Mat2 base = n >= 0 ? *this : inverse();
        Mat2 acc = identity();
        for (int i = 0; i < (n >= 0 ? n : -n); ++i) acc = acc * base;
        return acc;
    }

    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

    double norm() const { return a.norm() + b.norm() + c.norm() + d.norm(); }
};

template <class F>
Mat2<F> operator*(const F& s, const Mat2<F>& m) {
    return m * s;
}

// Sum_{j=1..|m|} M^j, with the negative-range convention used throughout the
// closed forms: for m < 0 the sum runs over j = m+1..0 instead.
template <class F>
Mat2<F> power_sum(const Mat2<F>& m, int count_signed) {
    Mat2<F> acc = Mat2<F>::zero();
    if (count_signed > 0) {
        Mat2<F> p = Mat2<F>::identity();
        for (int j = 1; j <= count_signed; ++j) {
            p = p * m;
            acc = acc + p;
        }
    } else if (count_signed < 0) {
        Mat2<F> inv = m.inverse();
        Mat2<F> p = Mat2<F>::identity();
        acc = acc + p; // j = 0
        for (int j = -1; j > count_signed; --j) {
            p = p * inv;
            acc = acc + p;
        }
    }
    return acc;
}

} // namespace tapkit
