#pragma once

#include "tapkit/builders.hpp"
#include "tapkit/laurent.hpp"
#include "tapkit/representation.hpp"
#include "tapkit/wada.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace tapkit {

// Family-specific evaluators. Every block below is a direct transcription of
// a printed formula; the Fox-calculus engine is the oracle that keeps the
// transcriptions honest, and the recursions feed the same TapResult type the
// engine produces so the two paths compare uniformly.

// A printed Fox block. `negated` records whether the printed expression is
// -Phi(dr/dx) (the recursions consume the negated forms directly).
template <class F>
struct PrintedBlock {
    LaurentMat<F> value;
    bool negated = false;
};

// Sum_{j=0}^{m-1} M^j for m > 0, Sum_{j=m}^{-1} M^j for m < 0, zero for m=0.
template <class F>
Mat2<F> power_sum0(const Mat2<F>& m, int count_signed) {
    Mat2<F> acc = Mat2<F>::zero();
    if (count_signed > 0) {
        Mat2<F> p = Mat2<F>::identity();
        for (int j = 0; j < count_signed; ++j) {
            acc = acc + p;
            p = p * m;
        }
    } else if (count_signed < 0) {
        Mat2<F> inv = m.inverse();
        Mat2<F> p = inv;
        for (int j = -1; j >= count_signed; --j) {
            acc = acc + p;
            p = p * inv;
        }
    }
    return acc;
}

namespace detail {

template <class F>
LaurentMat<F> lm2(int e1, const Mat2<F>& c1, int e2, const Mat2<F>& c2) {
    LaurentMat<F> p;
    p.add_term(e1, c1);
    p.add_term(e2, c2);
    return p;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Case (1): two-bridge knots
// ---------------------------------------------------------------------------

// Images of the x_i including the initial substitutions x_-4 = b, x_-3 = a,
// x_-2 = a^-1.
template <class F>
Mat2<F> twobridge_x_image(const Representation<F>& rep, int i) {
    return rep.evaluate(twobridge_ids::x_word(i));
}

// The printed block pair for relator r_j, j in [-1, 2k]. The first component
// differentiates along the chain's older generator, the second (absent for
// j = -1, 0) along the newer one.
template <class F>
std::pair<std::optional<PrintedBlock<F>>, std::optional<PrintedBlock<F>>>
appendixA_blocks(int j, const TwoBridgeSpec& spec, const Representation<F>& rep) {
    spec.validate();
    const int k = spec.k();
    if (j < -1 || j > 2 * k) throw index_out_of_range("appendix block index out of range");
    auto X = [&](int i) { return twobridge_x_image(rep, i); };
    using detail::lm2;

    // The tangle index i with j = 2i-1 (odd j) or j = 2i (even j).
    const int idx = (j % 2 != 0) ? (j + 1) / 2 : j / 2;
    const int m = spec.m[idx];

    if (j == -1) {
        Mat2<F> ab = X(-3) * X(-4);
        Mat2<F> ps0 = power_sum0(ab, m);
        Mat2<F> abm = ab.pow(m);
        PrintedBlock<F> r;
        r.negated = false;
        if (m > 0)
            r.value = lm2(-1, X(-1) * ps0, 0, -(ps0 + abm));
        else
            r.value = lm2(-1, -(X(-1) * ps0), 0, ps0 - abm);
        return {r, std::nullopt};
    }
    if (j == 0) {
        Mat2<F> ab = X(-3) * X(-4);
        Mat2<F> ps0 = power_sum0(ab, m);
        PrintedBlock<F> r;
        r.negated = false;
        if (m > 0)
            r.value = lm2(0, -ps0, 1, X(0) * ps0);
        else
            r.value = lm2(0, ps0, 1, -(X(0) * ps0));
        return {r, std::nullopt};
    }
    if (j == 1 || j == 2) {
        Mat2<F> base = X(-1).inverse() * X(-3); // X_{-1}^-1 A
        Mat2<F> ps = power_sum(base, m);
        Mat2<F> bm = base.pow(m);
        Mat2<F> bm1 = base.pow(m + 1);
        Mat2<F> Ainv = X(-3).inverse();
        PrintedBlock<F> r, rp;
        r.negated = false;
        rp.negated = true;
        if (j == 1) {
            if (m > 0) {
                r.value = lm2(0, X(1) * ps * Ainv, 1, -(ps * Ainv));
                rp.value = lm2(0, X(1) * (ps + bm1) * Ainv, 1, -(ps * Ainv));
            } else {
                r.value = lm2(0, -(X(1) * ps * Ainv), 1, ps * Ainv);
                rp.value = lm2(0, -(X(1) * (ps - bm1) * Ainv), 1, ps * Ainv);
            }
        } else {
            if (m > 0) {
                r.value = lm2(1, -((ps - bm) * Ainv), 2, X(2) * ps * Ainv);
                rp.value = lm2(1, -(ps * Ainv), 2, X(2) * ps * Ainv);
            } else {
                r.value = lm2(1, (ps + bm) * Ainv, 2, -(X(2) * ps * Ainv));
                rp.value = lm2(1, ps * Ainv, 2, -(X(2) * ps * Ainv));
            }
        }
        return {r, rp};
    }

    // j >= 3: indices r_{2i-1}, r_{2i} for i >= 2, split by the parity of i.
    PrintedBlock<F> r, rp;
    r.negated = true;
    rp.negated = true;
    const bool odd_relator = (j % 2 != 0);
    const int ii = idx; // the tangle index i
    if (ii % 2 == 0) {
        Mat2<F> base = X(2 * ii - 3) * X(2 * ii - 4);
        Mat2<F> ps = power_sum(base, m);
        Mat2<F> ps0 = power_sum0(base, m);
        Mat2<F> x4inv = X(2 * ii - 4).inverse();
        if (odd_relator) {
            if (m > 0) {
                r.value = lm2(-2, -(X(2 * ii - 1) * ps * x4inv), -1, ps * x4inv);
                // The tabulated X_{2i-3}^-1 (...) X_{2i-4}^-1 sandwich must
                // fold on the right ((...) X_{2i-4}^-1 X_{2i-3}^-1), which
                // telescopes the sum range down by one; the Fox oracle pins
                // this reading.
                rp.value = lm2(-1, -(X(2 * ii - 1) * ps0), 0, ps0 + base.pow(m));
            } else {
                r.value = lm2(-2, X(2 * ii - 1) * ps * x4inv, -1, -(ps * x4inv));
                rp.value = lm2(-1, X(2 * ii - 1) * ps0, 0, -(ps0 - base.pow(m)));
            }
        } else {
            if (m > 0) {
                r.value = lm2(-1, ps * x4inv, 0, -(X(2 * ii) * (ps - base.pow(m)) * x4inv));
                rp.value = lm2(0, ps0, 1, -(X(2 * ii) * ps0));
            } else {
                r.value = lm2(-1, -(ps * x4inv), 0, X(2 * ii) * (ps + base.pow(m)) * x4inv);
                rp.value = lm2(0, -ps0, 1, X(2 * ii) * ps0);
            }
        }
    } else {
        Mat2<F> base = X(2 * ii - 3).inverse() * X(2 * ii - 4).inverse();
        Mat2<F> ps = power_sum(base, m);
        Mat2<F> x4 = X(2 * ii - 4);
        if (odd_relator) {
            if (m > 0) {
                r.value = lm2(-1, X(2 * ii - 1) * ps, 0, -ps);
                rp.value = lm2(0, X(2 * ii - 1) * (ps + base.pow(m + 1)) * x4, 1, -(ps * x4));
            } else {
                r.value = lm2(-1, -(X(2 * ii - 1) * ps), 0, ps);
                rp.value = lm2(0, -(X(2 * ii - 1) * (ps - base.pow(m + 1)) * x4), 1, ps * x4);
            }
        } else {
            if (m > 0) {
                r.value = lm2(0, -(ps - base.pow(m)), 1, X(2 * ii) * ps);
                rp.value = lm2(1, -(ps * x4), 2, X(2 * ii) * ps * x4);
            } else {
                r.value = lm2(0, ps + base.pow(m), 1, -(X(2 * ii) * ps));
                rp.value = lm2(1, ps * x4, 2, -(X(2 * ii) * ps * x4));
            }
        }
    }
    return {r, rp};
}

namespace detail {

// Tabulated degree windows for the chain blocks, indexed by relator
// index j = 2i-1 or 2i.
inline std::pair<int, int> twobridge_window(int j) {
    const int i = (j % 2 != 0) ? (j + 1) / 2 : j / 2;
    const bool odd_relator = (j % 2 != 0);
    if (i % 2 == 0) {
        if (odd_relator) return {-i / 2 - 1, i / 2};
        return {-i / 2, i / 2 + 1};
    }
    int h = (i + 1) / 2;
    if (odd_relator) return {-h, h};
    return {-h + 1, h + 1};
}

template <class F>
void check_window(const LaurentMat<F>& p, int j, const char* what) {
    if (p.is_zero()) return;
    LaurentMat<F> q = p;
    if constexpr (!F::exact) q = q.pruned(1e-10);
    if (q.is_zero()) return;
    auto [lo, hi] = twobridge_window(j);
    if (q.min_exp() < lo || q.max_exp() > hi)
        throw ComputationError("DegreeWindowViolation",
                               std::string(what) + " block " + std::to_string(j) +
                                   " escapes its degree window");
}

} // namespace detail

// Two-bridge recursion: N_0 = R_0, N_1 = R_1 + (-R'_1) R_{-1},
// N_2 = R_2 + (-R'_2) R_{-1}, then
// N_j = (-R_j) N_{j-3 or j-4} pattern through the chain, ending with
// |N_{2k}| / (t^2 - tr(rho(b)) t + 1).
template <class F>
TapResult<F> recursion_two_bridge(const TwoBridgeSpec& spec, const Representation<F>& rep,
                                  DivisionPolicy policy = DivisionPolicy::RequireExact,
                                  double tol = 1e-9) {
    spec.validate();
    const int k = spec.k();
    auto blk = [&](int j) { return appendixA_blocks(j, spec, rep); };

    LaurentMat<F> r_m1 = blk(-1).first->value;
    std::map<int, LaurentMat<F>> N;
    N[0] = blk(0).first->value;
    {
        auto [r1, rp1] = blk(1);
        auto [r2, rp2] = blk(2);
        N[1] = r1->value + rp1->value * r_m1;
        N[2] = r2->value + rp2->value * r_m1;
    }
    detail::check_window(N[0], 0, "N");
    detail::check_window(N[1], 1, "N");
    detail::check_window(N[2], 2, "N");
    for (int i = 2; i <= k; ++i) {
        auto [nr_odd, nrp_odd] = blk(2 * i - 1);
        auto [nr_even, nrp_even] = blk(2 * i);
        N[2 * i - 1] = nr_odd->value * N[2 * i - 4] + nrp_odd->value * N[2 * i - 3];
        N[2 * i] = nr_even->value * N[2 * i - 4] + nrp_even->value * N[2 * i - 3];
        detail::check_window(N[2 * i - 1], 2 * i - 1, "N");
        detail::check_window(N[2 * i], 2 * i, "N");
    }

    // |N_{2k}| as a scalar Laurent polynomial.
    BlockMatrix<F> one_block;
    one_block.blocks = {{N[2 * k]}};
    Laurent<F> num = det_block(one_block);
    const Mat2<F> B = twobridge_x_image(rep, -4);
    Laurent<F> den;
    den.add_term(2, F::one());
    den.add_term(1, -B.trace());
    den.add_term(0, F::one());
    return make_tap_result<F>("closed-form", "b", num, den, policy, tol);
}

// Leading (= trailing) coefficient of the two-bridge invariant:
// prod_i det(sum_j (X_{2i-3}^{+-1} X_{2i-4}^{+-1})^j).
template <class F>
F leading_coeff_two_bridge(const TwoBridgeSpec& spec, const Representation<F>& rep) {
    spec.validate();
    F acc = F::one();
    for (int i = 0; i <= spec.k(); ++i) {
        int s = (i % 2 == 0) ? 1 : -1;
        Mat2<F> base =
            twobridge_x_image(rep, 2 * i - 3).pow(s) * twobridge_x_image(rep, 2 * i - 4).pow(s);
        acc = acc * power_sum(base, spec.m[i]).det();
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Case (2)
// ---------------------------------------------------------------------------

// R_{-4}: the block of the first tangle's defining relator.
template <class F>
PrintedBlock<F> appendixB_Rm4(const Case2Spec& spec, const Representation<F>& rep) {
    using detail::lm2;
    const int k = spec.k();
    const Mat2<F> A = rep.image(case2_ids::a());
    const Mat2<F> C = rep.image(case2_ids::c());
    const Mat2<F> Xm4 = rep.image(case2_ids::x(-4));
    (void)k;
    PrintedBlock<F> r;
    r.negated = false;
    if (spec.beta1_sign > 0) {
        r.value = LaurentMat<F>(Xm4 * C.inverse(), -2);
    } else {
        Mat2<F> Ainv = A.inverse();
        r.value = lm2(-2, -(Xm4 * Ainv), -1, Ainv * (Mat2<F>::identity() + C * Ainv));
    }
    return r;
}

// S_0 = Phi(ds_0/da) for the defining relator of y_0 (not tabulated in the
// appendix; both branches reduce to two terms).
template <class F>
LaurentMat<F> case2_S0(const Case2Spec& spec, const Representation<F>& rep) {
    using detail::lm2;
    const Mat2<F> A = rep.image(case2_ids::a());
    const Mat2<F> C = rep.image(case2_ids::c());
    if (spec.beta1_sign > 0) {
        Mat2<F> Cinv = C.inverse();
        return lm2(-2, Cinv * A * Cinv * A.inverse(), -1, -Cinv);
    }
    Mat2<F> Ainv = A.inverse();
    return lm2(-2, -(Ainv * C.inverse()), -1, Ainv);
}

// The x-chain block pair (-R_j, -R'_j) for relator r_j, j = 2i-1 or 2i with
// 0 <= i <= k.
template <class F>
std::pair<PrintedBlock<F>, PrintedBlock<F>> appendixB_R_blocks(int j, const Case2Spec& spec,
                                                               const Representation<F>& rep) {
    using detail::lm2;
    const int k = spec.k();
    const int idx = (j % 2 != 0) ? (j + 1) / 2 : j / 2;
    if (idx < 0 || idx > k) throw index_out_of_range("appendix R block index out of range");
    const int m = spec.m[idx];
    auto X = [&](int i) { return rep.image(case2_ids::x(i)); };
    const bool odd_relator = (((j % 2) + 2) % 2) != 0;

    PrintedBlock<F> r, rp;
    r.negated = true;
    rp.negated = true;
    if (idx % 2 == 0) {
        Mat2<F> base = X(2 * idx - 3) * X(2 * idx - 4);
        Mat2<F> ps = power_sum0(base, m);
        Mat2<F> x3 = X(2 * idx - 3);
        if (odd_relator) {
            if (m >= 0) {
                r.value = lm2(1, ps * x3, 2, -(X(2 * idx - 1) * ps * x3));
                rp.value = lm2(0, ps + base.pow(m), 1, -(X(2 * idx - 1) * ps));
            } else {
                r.value = lm2(1, -(ps * x3), 2, X(2 * idx - 1) * ps * x3);
                rp.value = lm2(0, -(ps - base.pow(m)), 1, X(2 * idx - 1) * ps);
            }
        } else {
            if (m >= 0) {
                r.value = lm2(0, -(X(2 * idx) * ps * x3 - base.pow(m)), 1, ps * x3);
                rp.value = lm2(-1, -(X(2 * idx) * ps), 0, ps);
            } else {
                r.value = lm2(0, X(2 * idx) * ps * x3 + base.pow(m), 1, -(ps * x3));
                rp.value = lm2(-1, X(2 * idx) * ps, 0, -ps);
            }
        }
    } else {
        Mat2<F> base = X(2 * idx - 3).inverse() * X(2 * idx - 4).inverse();
        Mat2<F> ps = power_sum(base, m);
        Mat2<F> x4 = X(2 * idx - 4);
        if (odd_relator) {
            if (m > 0) {
                r.value = lm2(0, -ps, 1, X(2 * idx - 1) * ps);
                rp.value = lm2(-1, -(ps * x4), 0, X(2 * idx - 1) * (ps + base.pow(m + 1)) * x4);
            } else {
                r.value = lm2(0, ps, 1, -(X(2 * idx - 1) * ps));
                rp.value = lm2(-1, ps * x4, 0, -(X(2 * idx - 1) * (ps - base.pow(m + 1)) * x4));
            }
        } else {
            if (m > 0) {
                r.value = lm2(-1, X(2 * idx) * ps, 0, -(ps - base.pow(m)));
                rp.value = lm2(-2, X(2 * idx) * ps * x4, -1, -(ps * x4));
            } else {
                r.value = lm2(-1, -(X(2 * idx) * ps), 0, ps + base.pow(m));
                rp.value = lm2(-2, -(X(2 * idx) * ps * x4), -1, ps * x4);
            }
        }
    }
    return {r, rp};
}

// The y-chain block pair (-S_j, -S'_j) for relator s_j, j = 2i-1 or 2i with
// 1 <= i <= l.
template <class F>
std::pair<PrintedBlock<F>, PrintedBlock<F>> appendixB_S_blocks(int j, const Case2Spec& spec,
                                                               const Representation<F>& rep) {
    using detail::lm2;
    const int k = spec.k();
    const int l = spec.l();
    const int idx = (j % 2 != 0) ? (j + 1) / 2 : j / 2;
    if (idx < 1 || idx > l) throw index_out_of_range("appendix S block index out of range");
    const int n = spec.n[idx - 1];
    auto Y = [&](int i) { return rep.image(case2_ids::y(i, k)); };
    const bool odd_relator = (j % 2) != 0;

    PrintedBlock<F> s, sp;
    s.negated = true;
    sp.negated = true;
    if (idx % 2 == 0) {
        Mat2<F> base = Y(2 * idx - 3) * Y(2 * idx - 4);
        Mat2<F> ps = power_sum0(base, -n);
        Mat2<F> y3 = Y(2 * idx - 3);
        if (odd_relator) {
            if (n > 0) {
                s.value = lm2(1, -(ps * y3), 2, Y(2 * idx - 1) * ps * y3);
                sp.value = lm2(0, -(ps - base.pow(-n)), 1, Y(2 * idx - 1) * ps);
            } else {
                s.value = lm2(1, ps * y3, 2, -(Y(2 * idx - 1) * ps * y3));
                sp.value = lm2(0, ps + base.pow(-n), 1, -(Y(2 * idx - 1) * ps));
            }
        } else {
            if (n > 0) {
                // The tabulated n_i > 0 branch subtracts the standalone
                // (Y_{2i-3} Y_{2i-4})^{-n_i} power; the Fox derivative of the
                // middle letter gives it a plus (the n_i < 0 branch is
                // printed with the matching sign). Oracle-pinned.
                s.value = lm2(0, Y(2 * idx) * ps * y3 + base.pow(-n), 1, -(ps * y3));
                sp.value = lm2(-1, Y(2 * idx) * ps, 0, -ps);
            } else {
                s.value = lm2(0, -(Y(2 * idx) * ps * y3 - base.pow(-n)), 1, ps * y3);
                sp.value = lm2(-1, -(Y(2 * idx) * ps), 0, ps);
            }
        }
    } else {
        Mat2<F> base = Y(2 * idx - 3).inverse() * Y(2 * idx - 4).inverse();
        Mat2<F> ps = power_sum(base, -n);
        Mat2<F> y4 = Y(2 * idx - 4);
        if (odd_relator) {
            if (n > 0) {
                s.value = lm2(0, ps, 1, -(Y(2 * idx - 1) * ps));
                sp.value = lm2(-1, ps * y4, 0, -(Y(2 * idx - 1) * ps * y4 - base.pow(-n)));
            } else {
                s.value = lm2(0, -ps, 1, Y(2 * idx - 1) * ps);
                sp.value = lm2(-1, -(ps * y4), 0, Y(2 * idx - 1) * ps * y4 + base.pow(-n));
            }
        } else {
            if (n > 0) {
                s.value = lm2(-1, -(Y(2 * idx) * ps), 0, ps + base.pow(-n));
                sp.value = lm2(-2, -(Y(2 * idx) * ps * y4), -1, ps * y4);
            } else {
                s.value = lm2(-1, Y(2 * idx) * ps, 0, -(ps - base.pow(-n)));
                sp.value = lm2(-2, Y(2 * idx) * ps * y4, -1, -(ps * y4));
            }
        }
    }
    return {s, sp};
}

// The four chain-top polynomials of the case-(2) elimination: the x-chain
// pair tracks the (a, b) columns through the r relators, the y-chain pair
// through the s relators.
template <class F>
struct Case2Chains {
    LaurentMat<F> M, Mp, N, Np;
};

template <class F>
Case2Chains<F> case2_chain_tops(const Case2Spec& spec, const Representation<F>& rep) {
    spec.validate();
    const int k = spec.k();
    const int l = spec.l();
    const Mat2<F> E = Mat2<F>::identity();

    std::map<int, LaurentMat<F>> M, Mp;
    M[-4] = appendixB_Rm4(spec, rep).value;
    M[-3] = LaurentMat<F>(-E, 0);
    M[-2] = LaurentMat<F>{};
    Mp[-4] = LaurentMat<F>{};
    Mp[-3] = LaurentMat<F>{};
    Mp[-2] = LaurentMat<F>(-E, 0);
    for (int i = 0; i <= k; ++i) {
        auto [nr1, nrp1] = appendixB_R_blocks(2 * i - 1, spec, rep);
        auto [nr2, nrp2] = appendixB_R_blocks(2 * i, spec, rep);
        M[2 * i - 1] = nr1.value * M[2 * i - 4] + nrp1.value * M[2 * i - 3];
        M[2 * i] = nr2.value * M[2 * i - 4] + nrp2.value * M[2 * i - 3];
        Mp[2 * i - 1] = nr1.value * Mp[2 * i - 4] + nrp1.value * Mp[2 * i - 3];
        Mp[2 * i] = nr2.value * Mp[2 * i - 4] + nrp2.value * Mp[2 * i - 3];
    }
    LaurentMat<F> tx = LaurentMat<F>(-rep.image(case2_ids::x(2 * k - 1)), 1);
    LaurentMat<F> negE = LaurentMat<F>(-E, 0);

    std::map<int, LaurentMat<F>> N, Np;
    N[-2] = LaurentMat<F>{};
    N[-1] = LaurentMat<F>{};
    N[0] = case2_S0(spec, rep);
    Np[-2] = LaurentMat<F>(-E, 0);
    Np[-1] = LaurentMat<F>{};
    Np[0] = LaurentMat<F>{};
    for (int i = 1; i <= l; ++i) {
        auto [ns1, nsp1] = appendixB_S_blocks(2 * i - 1, spec, rep);
        auto [ns2, nsp2] = appendixB_S_blocks(2 * i, spec, rep);
        N[2 * i - 1] = ns1.value * N[2 * i - 4] + nsp1.value * N[2 * i - 3];
        N[2 * i] = ns2.value * N[2 * i - 4] + nsp2.value * N[2 * i - 3];
        Np[2 * i - 1] = ns1.value * Np[2 * i - 4] + nsp1.value * Np[2 * i - 3];
        Np[2 * i] = ns2.value * Np[2 * i - 4] + nsp2.value * Np[2 * i - 3];
    }
    LaurentMat<F> ty = LaurentMat<F>(-rep.image(case2_ids::y(2 * l - 1, k)), 1);

    Case2Chains<F> out;
    out.M = tx * M[2 * k - 2] + negE * M[2 * k - 1];
    out.Mp = tx * Mp[2 * k - 2] + negE * Mp[2 * k - 1];
    out.N = ty * N[2 * l - 2] + negE * N[2 * l - 1];
    out.Np = ty * Np[2 * l - 2] + negE * Np[2 * l - 1];
    return out;
}

// Case-(2) recursion: two parallel elimination chains meeting in a
// 2x2-block determinant over the columns (a, b), divided by
// t^2 - tr(rho(c)) t + 1.
template <class F>
TapResult<F> recursion_case2(const Case2Spec& spec, const Representation<F>& rep,
                             DivisionPolicy policy = DivisionPolicy::RequireExact,
                             double tol = 1e-9) {
    Case2Chains<F> chains = case2_chain_tops(spec, rep);
    BlockMatrix<F> blockdet;
    blockdet.blocks = {{chains.M, chains.Mp}, {chains.N, chains.Np}};
    Laurent<F> num = det_block(blockdet);

    const Mat2<F> C = rep.image(case2_ids::c());
    Laurent<F> den;
    den.add_term(2, F::one());
    den.add_term(1, -C.trace());
    den.add_term(0, F::one());
    return make_tap_result<F>("closed-form", "c", num, den, policy, tol);
}

// Extreme coefficient and predicted degree of the case-(2) invariant.
template <class F>
struct Case2Coeffs {
    F value = F::zero();   // kappa_0 or lambda_0
    int degree = 0;        // 2(k+l+1) or 2(k+l)-2
    bool kappa_branch = true; // m_0 != 0
};

template <class F>
Case2Coeffs<F> coeffs_case2(const Case2Spec& spec, const Representation<F>& rep) {
    spec.validate();
    const int k = spec.k();
    const int l = spec.l();
    auto X = [&](int i) { return rep.image(case2_ids::x(i)); };
    auto Y = [&](int i) { return rep.image(case2_ids::y(i, k)); };
    auto x_factor = [&](int i) {
        int s = (i % 2 == 0) ? 1 : -1;
        return power_sum(X(2 * i - 3).pow(s) * X(2 * i - 4).pow(s), spec.m[i]).det();
    };
    auto y_factor = [&](int i) {
        int s = (i % 2 == 0) ? 1 : -1;
        return power_sum(Y(2 * i - 3).pow(s) * Y(2 * i - 4).pow(s), spec.n[i - 1]).det();
    };

    Case2Coeffs<F> out;
    if (spec.m[0] != 0) {
        out.kappa_branch = true;
        out.degree = 2 * (k + l + 1);
        F acc = F::one();
        for (int i = 0; i <= k; ++i) acc = acc * x_factor(i);
        for (int i = 1; i <= l; ++i) acc = acc * y_factor(i);
        out.value = acc;
        return out;
    }
    out.kappa_branch = false;
    out.degree = 2 * (k + l) - 2;
    // The m_0 = 0 extreme coefficient comes from the block determinant of
    // the chain tops. The tabulated lambda display leaves its sum ranges
    // ambiguous (no uniform reading reproduces both worked examples), so the
    // defining route is used; the worked trace formulas serve as the
    // verification layer.
    Case2Chains<F> chains = case2_chain_tops(spec, rep);
    BlockMatrix<F> blockdet;
    blockdet.blocks = {{chains.M, chains.Mp}, {chains.N, chains.Np}};
    Laurent<F> num = det_block(blockdet);
    if constexpr (!F::exact) num = num.pruned(1e-10);
    if (num.is_zero()) {
        out.value = F::zero();
        return out;
    }
    // Extremes agree up to the overall unit; report the trailing one.
    out.value = num.coeff(num.min_exp());
    if (num.span() != out.degree + 2) out.value = F::zero(); // degenerate extreme
    return out;
}

// Classical Alexander data straight from the remark-level formulas.
struct AlexClosedForm {
    long long leading = 0;
    int degree = 0;
};

inline AlexClosedForm alex_closed_form(const TwoBridgeSpec& spec) {
    spec.validate();
    long long prod = 1;
    for (int v : spec.m) prod *= v;
    return {std::abs(prod), spec.k() + 1};
}

inline AlexClosedForm alex_closed_form(const Case2Spec& spec) {
    spec.validate();
    const int k = spec.k();
    const int l = spec.l();
    if (spec.m[0] != 0) {
        long long prod = 1;
        for (int v : spec.m) prod *= v;
        for (int v : spec.n) prod *= v;
        return {std::abs(prod), k + l + 2};
    }
    long long prod = 1;
    for (size_t i = 2; i < spec.m.size(); ++i) prod *= spec.m[i];
    for (size_t i = 1; i < spec.n.size(); ++i) prod *= spec.n[i];
    long long m1 = spec.m[1], n1 = spec.n[0];
    long long lam = spec.beta1_sign > 0 ? m1 + n1 + m1 * n1 : m1 + n1 - m1 * n1;
    return {std::abs(prod * lam), k + l};
}

} // namespace tapkit
