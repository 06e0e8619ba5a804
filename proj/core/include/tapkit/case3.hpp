#pragma once

#include "tapkit/builders.hpp"
#include "tapkit/laurent.hpp"
#include "tapkit/representation.hpp"
#include "tapkit/wada.hpp"

#include <map>
#include <type_traits>
#include <vector>

namespace tapkit {

// The two tabulated conventions for the A factor inside Phi(dy/dx): the
// sources disagree on which sign of n gets A = E for even n. The
// oracle-equivalence tests pick the winner (LeadingPower); the loser is kept
// selectable for the record.
enum class Case3Convention {
    LeadingPower, // A = E when the twist power p > 0, -W^p when p < 0
    Alternate,    // even n: A = E when n < 0, -Y when n > 0 (odd unchanged)
};

template <class F>
struct Case3Blocks {
    bool even = true;
    int n = 0;
    int power = 0; // n/2 (even) or (n+1)/2 (odd)
    Mat2<F> X, Z, Y, W, A, B;
    std::map<int, Mat2<F>> coeff; // t-exponent -> block
};

template <class F>
Case3Blocks<F> case3_blocks(const Case3Spec& spec, const Representation<F>& rep,
                            Case3Convention conv = Case3Convention::LeadingPower) {
    Case3Blocks<F> out;
    out.even = spec.n % 2 == 0;
    out.n = spec.n;
    out.power = out.even ? spec.n / 2 : (spec.n + 1) / 2;

    const Mat2<F> X = rep.image(0);
    const Mat2<F> Z = rep.image(1);
    auto comm = [](const Mat2<F>& u, const Mat2<F>& v) {
        return u * v * u.inverse() * v.inverse();
    };
    out.X = X;
    out.Z = Z;
    out.W = out.even ? X.inverse() * comm(X, Z) * comm(X.inverse(), Z.inverse()) * X
                     : comm(Z, X.inverse()) * comm(Z.inverse(), X);
    out.Y = out.W.pow(out.power);
    out.B = Mat2<F>::zero();
    {
        Mat2<F> p = Mat2<F>::identity();
        for (int i = 1; i <= std::abs(out.power); ++i) {
            p = p * out.W;
            out.B = out.B + p;
        }
    }
    if (conv == Case3Convention::LeadingPower) {
        out.A = out.power >= 0 ? Mat2<F>::identity() : -out.W.pow(out.power);
    } else {
        if (out.even)
            out.A = out.power <= 0 ? Mat2<F>::identity() : -out.Y;
        else
            out.A = out.power >= 0 ? Mat2<F>::identity() : -out.Y;
    }

    const Mat2<F> E = Mat2<F>::identity();
    const Mat2<F> Xi = X.inverse();
    const Mat2<F> Zi = Z.inverse();
    const Mat2<F> AB = out.A * out.B;
    const Mat2<F> Y = out.Y;
    const Mat2<F> Yi = Y.inverse();
    const Mat2<F> ZXZ = Z * X * Zi;     // z x z^-1
    const Mat2<F> XZX = X * Z * Xi;     // x z x^-1
    const Mat2<F> cXiZi = comm(Xi, Zi); // [x^-1, z^-1]
    const Mat2<F> cZiXi = comm(Zi, Xi); // [z^-1, x^-1]

    if (out.even) {
        const Mat2<F> XiZiXi = Xi * Zi * Xi;
        const Mat2<F> front = cXiZi * X * Y * X * ZXZ * Yi; // [x-1,z-1] x y x (zxz-1) y-1
        const Mat2<F> yzx = Y * Z * X * ZXZ * Yi;           // y z x (zxz-1) y-1
        // The tabulated t^-4 block reads A B X^-1 Z^-1 X^-1, but the only
        // source of that exponent is the degree-0 bracket term -1 times the
        // t^-4 part of Phi(dy/dx), so the sign is negative. The Fox-engine
        // oracle confirms (all other nine blocks match as printed).
        out.coeff[-4] = -(AB * XiZiXi);
        out.coeff[-3] = Xi * Zi + cXiZi * X * AB * XiZiXi;
        out.coeff[-2] = AB * XiZiXi * Z;
        out.coeff[-1] = -Xi - AB * Xi - cXiZi * X * AB * XiZiXi * Z - front * AB * XiZiXi;
        out.coeff[0] = cXiZi + cXiZi * X * AB * Xi + yzx * AB * XiZiXi;
        out.coeff[1] = cXiZi * X * Y + AB * XiZiXi * Z * X * Z + front * AB * XiZiXi * Z;
        out.coeff[2] =
            -(Y * Z) - yzx * AB * XiZiXi * Z - cXiZi * X * AB * Xi * cZiXi * Z - front * AB * Xi;
        out.coeff[3] = yzx * AB * Xi;
        out.coeff[4] = cXiZi * X * Y * X * Z + front * AB * Xi * cZiXi * Z;
        out.coeff[5] = -(Y * Z * X * Z) + yzx * Z * Xi - yzx * AB * XiZiXi * Z * X * Z;
    } else {
        const Mat2<F> Wi = out.W.inverse();
        const Mat2<F> ZXZi = ZXZ.inverse();
        const Mat2<F> XZXi = XZX.inverse();
        const Mat2<F> head = XZX * Wi * Y * ZXZi * Yi; // (xzx-1) w-1 y (zxz-1)-1 y-1
        const Mat2<F> tailY = X * ZXZ * Y * ZXZ * Yi;  // x (zxz-1) y (zxz-1) y-1
        out.coeff[-1] = head * AB * XZXi;
        out.coeff[0] =
            E + head * AB * Wi * ZXZi + X * ZXZ * AB * XZXi - XZX * Wi * AB * XZXi;
        out.coeff[1] = Z * Xi - Z * Xi * comm(ZXZ, Y) - head * AB + X * ZXZ * AB * Wi * ZXZi -
                       XZX * Wi * AB * Wi * ZXZi - tailY * AB * XZXi;
        out.coeff[2] = -(head * AB * Wi * Z * Xi) - X * ZXZ * AB + XZX * Wi * AB -
                       tailY * AB * Wi * ZXZi;
        out.coeff[3] = X * Z - Z * Xi * Z + XZX * Wi * Y * Z * Xi - X * ZXZ * AB * Wi * Z * Xi +
                       XZX * Wi * AB * Wi * Z * Xi + tailY * AB;
        out.coeff[4] = X * ZXZ * Y * Z - tailY * Z * Xi + tailY * AB * Wi * Z * Xi;
    }
    // Zero blocks drop out of the determinant expansion naturally.
    for (auto it = out.coeff.begin(); it != out.coeff.end();) {
        if (it->second.is_zero())
            it = out.coeff.erase(it);
        else
            ++it;
    }
    return out;
}

// det(sum_i t^i C_i) expanded with |P+Q| = |P| + |Q| + tr(P Q*): the
// coefficient of t^s collects tr(C_i C_j*) over i < j with i + j = s plus
// det(C_{s/2}) when s is even.
template <class F>
Laurent<F> det_from_blocks(const std::map<int, Mat2<F>>& blocks) {
    Laurent<F> out;
    for (auto i = blocks.begin(); i != blocks.end(); ++i) {
        out.add_term(2 * i->first, i->second.det());
        for (auto j = std::next(i); j != blocks.end(); ++j)
            out.add_term(i->first + j->first, (i->second * j->second.adjugate()).trace());
    }
    return out;
}

// Per-coefficient report for the divided polynomial: each kappa_i/lambda_i
// has a bottom-route and a top-route expression that must agree.
template <class F>
struct Case3Report {
    bool even = true;
    Case3Convention convention = Case3Convention::LeadingPower;
    std::vector<F> coeff_bottom; // kappa_0..kappa_7 or lambda_0..lambda_3
    std::vector<F> coeff_top;
    std::vector<bool> pair_agrees;
    bool all_pairs_agree = true;
    bool reconstruction_exact = true; // (den * symmetric poly) == numerator
    bool symmetric = true;
};

// Symmetric half-degree of the divided polynomial: 14 for even n, 6 for odd.
inline int case3_full_degree(bool even) { return even ? 14 : 6; }

template <class F>
TapResult<F> case3_polynomial(const Case3Spec& spec, const Representation<F>& rep,
                              std::type_identity_t<Case3Report<F>*> report_out = nullptr,
                              Case3Convention conv = Case3Convention::LeadingPower,
                              DivisionPolicy policy = DivisionPolicy::RequireExact,
                              double tol = 1e-9) {
    Case3Blocks<F> blocks = case3_blocks(spec, rep, conv);
    Laurent<F> num = det_from_blocks(blocks.coeff);
    if constexpr (!F::exact) num = num.pruned(1e-11);
    Laurent<F> den;
    den.add_term(0, F::one());
    den.add_term(2, -blocks.Z.trace());
    den.add_term(4, F::one());

    Case3Report<F> report;
    report.even = blocks.even;
    report.convention = conv;
    const F trZ = blocks.Z.trace();
    const int D = case3_full_degree(blocks.even);
    const int lo = blocks.even ? -8 : -2;
    const int hi = blocks.even ? 10 : 8;
    auto kcoef = [&](int i) { return num.coeff(i); };

    // Bottom route: kappa_i = k_{lo+i} (+ recurrence corrections); top route
    // mirrors from k_{hi-i}. Division by t^4 - trZ t^2 + 1 peels two
    // coefficients per step.
    const int half = D / 2 + 1;
    std::vector<F> bot(half, F::zero()), top(half, F::zero());
    for (int i = 0; i < half; ++i) {
        F b = kcoef(lo + i);
        F t = kcoef(hi - i);
        if (i >= 2) {
            b = b + trZ * bot[i - 2];
            t = t + trZ * top[i - 2];
        }
        if (i >= 4) {
            b = b - bot[i - 4];
            t = t - top[i - 4];
        }
        bot[i] = b;
        top[i] = t;
    }
    report.coeff_bottom = bot;
    report.coeff_top = top;
    report.pair_agrees.resize(half);
    for (int i = 0; i < half; ++i) {
        report.pair_agrees[i] = close(bot[i], top[i], tol);
        report.all_pairs_agree = report.all_pairs_agree && report.pair_agrees[i];
    }

    // Symmetric candidate sum_i kappa_i (t^i + t^{D-i}) + kappa_{D/2} t^{D/2}.
    Laurent<F> sym;
    for (int i = 0; i < half; ++i) {
        sym.add_term(i, bot[i]);
        if (i != D - i) sym.add_term(D - i, bot[i]);
    }
    Laurent<F> recon = den * sym;
    Laurent<F> shifted_num = num.shifted(-lo);
    report.reconstruction_exact = laurent_close(recon, shifted_num, tol > 0 ? tol : 1e-9);
    report.symmetric = report.all_pairs_agree && report.reconstruction_exact;

    if (report_out) *report_out = report;
    if (!report.reconstruction_exact && policy == DivisionPolicy::RequireExact)
        throw inexact_division("coefficient recurrences are inconsistent: division by "
                               "t^4 - trZ t^2 + 1 is not exact");
    return make_tap_result<F>("closed-form", "z", num, den, policy, tol);
}

// ---------------------------------------------------------------------------
// Trace-formula layer: the tabulated explicit kappa/lambda expressions.
// Kept as a verification layer over the block route; disagreements are
// diagnostics, not failures.
// ---------------------------------------------------------------------------

template <class F>
std::vector<F> case3_trace_coeffs(const Case3Spec& spec, const Representation<F>& rep) {
    Case3Blocks<F> bl = case3_blocks(spec, rep, Case3Convention::LeadingPower);
    const Mat2<F>&X = bl.X, &Z = bl.Z, &W = bl.W, &A = bl.A;
    const int p = bl.power;
    const int s = std::abs(p);
    const Mat2<F> Xi = X.inverse();
    const Mat2<F> Zi = Z.inverse();
    const F detB = bl.B.det();
    auto tr = [](const Mat2<F>& m) { return m.trace(); };
    auto sum_tr = [&](auto&& factor) {
        F acc = F::zero();
        for (int i = 1; i <= s; ++i) acc = acc + tr(A * W.pow(i) * factor(i));
        return acc;
    };
    const Mat2<F> E = Mat2<F>::identity();

    std::vector<F> out;
    if (bl.even) {
        const Mat2<F> Wm = W.pow(-p); // W^{-n/2}
        const Mat2<F> Wp = W.pow(p);
        out.resize(8, F::zero());
        out[0] = detB;
        // tr(A W^i X^-1 [Z^-1, X^-1]) with [Z^-1, X^-1] = Z^-1 X^-1 Z X
        out[1] = -sum_tr([&](int) { return Xi * (Zi * Xi * Z * X); }) - detB * tr(X);
        out[2] = F::one() + sum_tr([&](int) { return E; }) - detB;
        out[3] = detB * (tr(X * Z) + tr(W * X * Z * X * Zi * Wm * Z * X * Zi * Wp));
        {
            F t1 = F::zero();
            for (int i = 1; i <= s; ++i)
                t1 = t1 + tr(X * Z) * tr(A * W.pow(i - 1) * Z * Xi * Zi) +
                     tr(A * W.pow(i) * X * Z * X * Zi);
            out[4] = -t1 - detB * (tr(Z) + (F::from_int(2) * tr(X * X * Z)) +
                                   tr(X * Z * X * Zi));
        }
        {
            F t1 = F::zero();
            for (int i = 1; i <= s; ++i)
                t1 = t1 + tr(X * Z) * tr(A * W.pow(i)) -
                     tr(X) * tr(A * W.pow(i - p) * Xi * Zi * Xi) +
                     F::from_int(2) * tr(A * W.pow(i + 1) * Xi * Zi * Xi * Wm * Z * X * Zi);
            out[5] = tr(X * Z) + t1 +
                     detB * (tr(X * Z) + tr(W * W * Xi * Zi * Xi * Wm * Z * X * Zi * Wp));
        }
        {
            F t1 = F::zero();
            for (int i = 1; i <= s; ++i)
                t1 = t1 + tr(A * W.pow(i - p) * (Xi * Zi) * (Xi * Zi)) -
                     tr(A * W.pow(i) * (Xi * Zi) * (Xi * Zi)) +
                     tr(A * W.pow(i - p) * Xi * Zi * Xi);
            out[6] = tr(Wp * X * Z * X) + t1 +
                     detB * (F::from_int(2) + tr(X * Z) * tr(W * X * Z * X * Zi * Wm * Z * X *
                                                             Zi * Wp));
        }
        {
            F t1 = F::zero();
            for (int i = 1; i <= s; ++i)
                t1 = t1 +
                     tr(X * Z) * (tr(A * W.pow(i - 1) * Z) + tr(A * W.pow(i) * X * Z * X * Zi)) +
                     tr(A * W.pow(i - 1) * Z * X * X * Z * X) - tr(A * W.pow(i) * Xi * Z * Z);
            out[7] = -t1 - detB * (tr(X) + tr(X * Z) * (tr(X * X * Z) + tr(X * Z * X * Zi)) +
                                   tr(W * Zi * Wm * Z * X * Zi * Wp));
        }
    } else {
        const Mat2<F> Wp = W.pow(p);        // W^{(n+1)/2}
        const Mat2<F> Wm = W.pow(-p);       // W^{-(n+1)/2}
        const Mat2<F> XZX = X * Z * Xi;
        const Mat2<F> ZXZ = Z * X * Zi;
        const Mat2<F> big = W * X * X * Zi * Wp * ZXZ * Wm; // W X^2 Z^-1 W^p (zxz^-1) W^-p
        out.resize(4, F::zero());
        out[0] = detB;
        {
            F t1 = F::zero();
            for (int i = 1; i <= s; ++i) t1 = t1 + tr(A * W.pow(i - 1) * Z * Xi * Zi);
            out[1] = t1 + detB * (tr(X * Zi) - tr(X) + tr(big));
        }
        {
            F t1 = F::zero();
            for (int i = 1; i <= s; ++i)
                t1 = t1 + tr(A * W.pow(i) * X * X * Zi) - tr(A * W.pow(i - 1)) +
                     tr(A * W.pow(i - 1) * Z * Xi * Xi);
            out[2] = F::one() + t1 +
                     detB * (F::from_int(3) - tr(X) * tr(big) +
                             tr(X * Zi) * (tr(big) - tr(X)));
        }
        {
            F t1 = F::zero();
            for (int i = 1; i <= s; ++i)
                t1 = t1 + tr(A * W.pow(i - 1) * ZXZ.inverse() * W * XZX.inverse()) -
                     tr(A * W.pow(i - p) * XZX * W.pow(p - 1) * ZXZ.inverse()) -
                     tr(A * W.pow(i) * XZX.inverse() * ZXZ) +
                     tr(A * W.pow(i - p) * XZX.inverse() * Wp * ZXZ) +
                     (tr(X * Zi) - tr(X)) * tr(A * W.pow(i) * X * X * Zi);
            out[3] = tr(X * Zi) - tr(X) + t1 +
                     detB * (F::from_int(2) * (tr(X * Zi) - tr(X) + tr(big)) -
                             tr(X * Zi) * tr(X) * tr(big));
        }
    }
    return out;
}

} // namespace tapkit
