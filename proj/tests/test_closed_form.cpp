#include "tapkit/builders.hpp"
#include "tapkit/case3.hpp"
#include "tapkit/closed_form.hpp"
#include "tapkit/newton.hpp"
#include "tapkit/riley.hpp"
#include "tapkit/wada.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <random>

using namespace tapkit;
using GR = GaussianRational;
using CF = ComplexFloat;

namespace {

// Largest coefficient norm of the difference between a printed block and the
// matching Fox-engine derivative.
template <class F>
double block_deviation(const PrintedBlock<F>& blk, const Word& relator, int var,
                       const Representation<F>& rep, const std::vector<int>& degrees) {
    LaurentMat<F> eng = phi_of(fox_derivative(relator, var), rep, degrees);
    LaurentMat<F> expect = blk.negated ? -blk.value : blk.value;
    LaurentMat<F> diff = eng - expect;
    double worst = 0;
    for (const auto& [e, c] : diff.coeffs()) worst = std::max(worst, c.norm());
    return worst;
}

template <class F>
void check_appendixA_blocks(const TwoBridgeSpec& spec, const Representation<F>& rep,
                            const Presentation& p, double tol) {
    for (int j = -1; j <= 2 * spec.k(); ++j) {
        auto [blkR, blkRp] = appendixA_blocks(j, spec, rep);
        const Word& r = p.relators[j + 1];
        const int i = (j % 2 != 0) ? (j + 1) / 2 : j / 2;
        int var1 = j <= 2 ? twobridge_ids::a() : twobridge_ids::x(2 * i - 4);
        CHECK(block_deviation(*blkR, r, var1, rep, p.degrees) <= tol);
        if (blkRp) {
            int var2 = j <= 2 ? twobridge_ids::x(-1) : twobridge_ids::x(2 * i - 3);
            CHECK(block_deviation(*blkRp, r, var2, rep, p.degrees) <= tol);
        }
    }
}

template <class F>
void check_appendixB_blocks(const Case2Spec& spec, const Representation<F>& rep,
                            const Presentation& p, double tol) {
    const int k = spec.k();
    const int l = spec.l();
    CHECK(block_deviation(appendixB_Rm4(spec, rep), p.relators[0], case2_ids::a(), rep,
                          p.degrees) <= tol);
    for (int j = -1; j <= 2 * k; ++j) {
        auto [r, rp] = appendixB_R_blocks(j, spec, rep);
        const Word& rel = p.relators[3 + (j + 1)];
        const int i = (j % 2 != 0) ? (j + 1) / 2 : j / 2;
        CHECK(block_deviation(r, rel, case2_ids::x(2 * i - 4), rep, p.degrees) <= tol);
        CHECK(block_deviation(rp, rel, case2_ids::x(2 * i - 3), rep, p.degrees) <= tol);
    }
    // S_0 is Phi(ds_0/da); the s-chain starts at relator index 2k+6.
    {
        PrintedBlock<F> s0{case2_S0(spec, rep), false};
        CHECK(block_deviation(s0, p.relators[2 * k + 8], case2_ids::a(), rep, p.degrees) <= tol);
    }
    for (int j = 1; j <= 2 * l; ++j) {
        auto [s, sp] = appendixB_S_blocks(j, spec, rep);
        const Word& rel = p.relators[2 * k + 8 + j];
        const int i = (j % 2 != 0) ? (j + 1) / 2 : j / 2;
        CHECK(block_deviation(s, rel, case2_ids::y(2 * i - 4, k), rep, p.degrees) <= tol);
        CHECK(block_deviation(sp, rel, case2_ids::y(2 * i - 3, k), rep, p.degrees) <= tol);
    }
}

} // namespace

TEST_CASE("appendix A blocks match the Fox engine") {
    std::mt19937_64 rng(71);
    // Signed magnitudes up to 3 cover every parity/sign branch at k = 3.
    for (int trial = 0; trial < 6; ++trial) {
        TwoBridgeSpec spec = testing::random_two_bridge(rng, 3, 3);
        Presentation p = build_two_bridge(spec);
        check_appendixA_blocks(spec, trivial_rep<GR>(p), p, 0.0);
        try {
            auto reps = riley_slice_search(spec, 100 + trial, 40);
            check_appendixA_blocks(spec, reps.front(), p, 1e-8);
        } catch (const Error&) {
            // a sporadic miss is fine; the trivial-rep check already ran
        }
    }
    TwoBridgeSpec fig8{{1, 1}};
    Presentation p8 = build_two_bridge(fig8);
    auto rep8 = riley_rep_exact(fig8, riley_polynomial(fig8), p8);
    check_appendixA_blocks(fig8, rep8, p8, 0.0);
}

TEST_CASE("appendix B blocks match the Fox engine") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 8; ++trial) {
        Case2Spec spec = testing::random_case2(rng, 2, 2, 2, true);
        Presentation p = build_case2(spec);
        check_appendixB_blocks(spec, trivial_rep<GR>(p), p, 0.0);
        auto out = search_nonabelian_rep(p, 200 + trial, 40);
        if (out.rep) check_appendixB_blocks(spec, *out.rep, p, 1e-8);
    }
}

TEST_CASE("two-bridge recursion equals the engine") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 6; ++trial) {
        TwoBridgeSpec spec = testing::random_two_bridge(rng, trial % 2 ? 3 : 1, 3);
        Presentation p = build_two_bridge(spec);
        auto triv = trivial_rep<GR>(p);
        CHECK(tap_equivalent(twisted_alexander(p, triv, std::nullopt, DivisionPolicy::AllowRational),
                             recursion_two_bridge(spec, triv, DivisionPolicy::AllowRational)));
        try {
            auto reps = riley_slice_search(spec, 300 + trial, 40);
            auto eng = twisted_alexander(p, reps.front(), std::nullopt,
                                         DivisionPolicy::AllowRational, 1e-8);
            auto rec = recursion_two_bridge(spec, reps.front(), DivisionPolicy::AllowRational, 1e-8);
            CHECK(tap_equivalent(eng, rec, 1e-7));
        } catch (const Error&) {
        }
    }
}

TEST_CASE("theorem coefficients: two-bridge extremes") {
    // trivial rep: leading coefficient is prod m_i^2
    TwoBridgeSpec spec{{2, -3}};
    Presentation p = build_two_bridge(spec);
    auto triv = trivial_rep<GR>(p);
    CHECK(leading_coeff_two_bridge(spec, triv) == GR(36));
    auto rec = recursion_two_bridge(spec, triv, DivisionPolicy::AllowRational);
    CHECK(rec.leading == GR(36));
    CHECK(rec.trailing == GR(36));

    // exact Riley rep on the figure-eight: formula equals both extremes
    TwoBridgeSpec fig8{{1, 1}};
    Presentation p8 = build_two_bridge(fig8);
    auto rep8 = riley_rep_exact(fig8, riley_polynomial(fig8), p8);
    auto res = recursion_two_bridge(fig8, rep8);
    AlgebraicExt formula = leading_coeff_two_bridge(fig8, rep8);
    bool plus = res.leading == formula && res.trailing == formula;
    bool minus = res.leading == -formula && res.trailing == -formula;
    CHECK((plus || minus)); // the normalized unit fixes the overall sign
    CHECK(res.degree_span == 2 * fig8.k());
}

TEST_CASE("alexander closed forms") {
    CHECK(alex_closed_form(TwoBridgeSpec{{2, -3}}).leading == 6);
    CHECK(alex_closed_form(TwoBridgeSpec{{2, -3}}).degree == 2);
    // monic nonfibered shape: |m1 + n1 + m1 n1| = |-2 - 3 + 6| = 1
    Case2Spec ex37{1, {0, -2, 1}, {-3, 1}};
    CHECK(alex_closed_form(ex37).leading == 1);
    CHECK(alex_closed_form(ex37).degree == 4);
    Case2Spec neg{-1, {0, -2, 1}, {-3, 1}};
    CHECK(alex_closed_form(neg).leading == std::abs(-2 - 3 - 6)); // beta1 < 0 branch
    CHECK(alex_closed_form(neg).degree == 4);

    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 10; ++trial) {
        TwoBridgeSpec tb = testing::random_two_bridge(rng, 1, 3);
        auto cf = alex_closed_form(tb);
        Laurent<GR> alex = alexander(build_two_bridge(tb));
        CHECK(alex.span() == cf.degree);
        CHECK(alex.coeff(alex.max_exp()) == GR(cf.leading));

        Case2Spec c2 = testing::random_case2(rng, 2, 2, 2, true);
        auto cf2 = alex_closed_form(c2);
        Laurent<GR> alex2 = alexander(build_case2(c2));
        if (cf2.leading != 0) {
            CHECK(alex2.span() == cf2.degree);
            CHECK(alex2.coeff(alex2.max_exp()) == GR(cf2.leading));
        } else {
            CHECK(alex2.span() < cf2.degree);
        }
    }
}

TEST_CASE("case2 recursion equals the engine on all branches") {
    std::mt19937_64 rng(89);
    for (int b1 : {1, -1})
        for (int m0 : {0, 1, -1}) {
            std::uniform_int_distribution<int> mag(1, 2);
            std::uniform_int_distribution<int> sgn(0, 1);
            auto pick = [&] { return sgn(rng) ? mag(rng) : -mag(rng); };
            Case2Spec spec{b1, {m0, pick(), pick()}, {pick(), pick()}};
            Presentation p = build_case2(spec);
            auto triv = trivial_rep<GR>(p);
            auto engt = twisted_alexander(p, triv, std::nullopt, DivisionPolicy::AllowRational);
            auto rect = recursion_case2(spec, triv, DivisionPolicy::AllowRational);
            CHECK(tap_equivalent(engt, rect));
            auto out = search_nonabelian_rep(p, 400 + b1 + m0, 50);
            if (!out.rep) continue;
            auto eng = twisted_alexander(p, *out.rep, std::nullopt,
                                         DivisionPolicy::AllowRational, 1e-7);
            auto rec = recursion_case2(spec, *out.rep, DivisionPolicy::AllowRational, 1e-7);
            CHECK(tap_equivalent(eng, rec, 1e-7));
            // theorem degree when the predicted extreme coefficient survives
            auto coeffs = coeffs_case2(spec, *out.rep);
            if (coeffs.value.norm() > 1e-6) {
                CHECK(rec.degree_span == coeffs.degree);
                bool plus = close(rec.leading, coeffs.value, 1e-6) &&
                            close(rec.trailing, coeffs.value, 1e-6);
                bool minus = close(rec.leading, -coeffs.value, 1e-6) &&
                             close(rec.trailing, -coeffs.value, 1e-6);
                CHECK((plus || minus));
            }
        }
}

TEST_CASE("case2 trivial-rep extreme coefficient is the squared product") {
    Case2Spec spec{1, {1, -2, 1}, {-2, 1}};
    Presentation p = build_case2(spec);
    auto triv = trivial_rep<GR>(p);
    auto coeffs = coeffs_case2(spec, triv);
    CHECK(coeffs.kappa_branch);
    CHECK(coeffs.value == GR(1 * 4 * 1 * 4 * 1)); // prod m_i^2 * prod n_i^2
    auto rec = recursion_case2(spec, triv, DivisionPolicy::AllowRational);
    CHECK(rec.leading == coeffs.value);
}

TEST_CASE("examples with (m1,n1) = (-2,-2) and (-2,-3)") {
    // lambda_0 = 2 - tr(BABC) and 1 - tr((BABC - E)(BC + E)) respectively.
    for (int variant : {2, 3}) {
        Case2Spec spec{1, {0, -2, 1}, {-variant, 1}};
        Presentation p = build_case2(spec);
        auto out = search_nonabelian_rep(p, 500 + variant, 60);
        REQUIRE(out.rep);
        const auto& rep = *out.rep;
        Mat2<CF> B = rep.image(case2_ids::b());
        Mat2<CF> A = rep.image(case2_ids::a());
        Mat2<CF> C = rep.image(case2_ids::c());
        Mat2<CF> babc = B * A * B * C;
        CF predicted;
        if (variant == 2) {
            predicted = CF(2, 0) - babc.trace();
        } else {
            Mat2<CF> bc = B * C;
            predicted = CF(1, 0) -
                        ((babc - Mat2<CF>::identity()) * (bc + Mat2<CF>::identity())).trace();
        }
        CF lambda0 = coeffs_case2(spec, rep).value;
        CHECK(close(lambda0, predicted, 1e-9));
    }
}

TEST_CASE("case3 blocks match the Fox engine and resolve the A convention") {
    for (int n = -4; n <= 4; ++n) {
        Case3Spec spec{n};
        Presentation p = build_case3(spec);
        auto check_blocks = [&](auto& rep, double tol) {
            auto blocks = case3_blocks(spec, rep, Case3Convention::LeadingPower);
            auto eng = phi_of(fox_derivative(p.relators[0], 0), rep, p.degrees);
            for (int e = -5; e <= 6; ++e) {
                auto it = blocks.coeff.find(e);
                auto blk = it == blocks.coeff.end()
                               ? Mat2<std::decay_t<decltype(rep.images[0].a)>>::zero()
                               : it->second;
                CHECK((eng.coeff(e) - blk).norm() <= tol);
            }
        };
        auto triv = trivial_rep<GR>(p);
        check_blocks(triv, 0.0);
        auto out = search_nonabelian_rep(p, 600 + n, 50);
        if (out.rep) {
            check_blocks(*out.rep, 1e-8);
            // the rejected convention must fail for even n with a twist
            if (n % 2 == 0 && n != 0) {
                auto alt = case3_blocks(spec, *out.rep, Case3Convention::Alternate);
                auto eng = phi_of(fox_derivative(p.relators[0], 0), *out.rep, p.degrees);
                double worst = 0;
                for (const auto& [e, blk] : alt.coeff)
                    worst = std::max(worst, (eng.coeff(e) - blk).norm());
                CHECK(worst > 1e-4);
            }
        }
    }
}

TEST_CASE("case3 polynomial equals the engine with consistent recurrences") {
    for (int n = -4; n <= 4; ++n) {
        Case3Spec spec{n};
        Presentation p = build_case3(spec);
        auto triv = trivial_rep<GR>(p);
        Case3Report<GR> rt;
        auto rect = case3_polynomial(spec, triv, &rt, Case3Convention::LeadingPower,
                                     DivisionPolicy::AllowRational);
        CHECK(tap_equivalent(twisted_alexander(p, triv, std::nullopt,
                                               DivisionPolicy::AllowRational),
                             rect));
        auto out = search_nonabelian_rep(p, 700 + n, 50);
        if (!out.rep) continue;
        Case3Report<CF> r;
        auto rec = case3_polynomial(spec, *out.rep, &r, Case3Convention::LeadingPower,
                                    DivisionPolicy::AllowRational, 1e-7);
        auto eng = twisted_alexander(p, *out.rep, std::nullopt, DivisionPolicy::AllowRational,
                                     1e-7);
        CHECK(tap_equivalent(eng, rec, 1e-6));
        CHECK(r.all_pairs_agree);
        CHECK(r.reconstruction_exact);
        // leading coefficient formula: kappa_0 / lambda_0 = |sum W^i|
        auto blocks = case3_blocks(spec, *out.rep, Case3Convention::LeadingPower);
        CHECK(close(r.coeff_bottom[0], blocks.B.det(), 1e-7));
    }
}

TEST_CASE("case3 trace-formula layer diagnostics") {
    // The theorem's explicit trace expressions agree with the block route for
    // odd n everywhere; for even n two of the printed coefficients disagree
    // (kappa_2, kappa_7), which the verification layer reports rather than
    // adopting either silently.
    for (int n : {-3, -1, 1, 3}) {
        Case3Spec spec{n};
        Presentation p = build_case3(spec);
        auto out = search_nonabelian_rep(p, 800 + n, 50);
        if (!out.rep) continue;
        Case3Report<CF> r;
        case3_polynomial(spec, *out.rep, &r, Case3Convention::LeadingPower,
                         DivisionPolicy::AllowRational, 1e-7);
        auto traces = case3_trace_coeffs(spec, *out.rep);
        REQUIRE(traces.size() == r.coeff_bottom.size());
        for (size_t i = 0; i < traces.size(); ++i)
            CHECK(close(traces[i], r.coeff_bottom[i], 1e-6));
    }
    for (int n : {-2, 2, 4}) {
        Case3Spec spec{n};
        Presentation p = build_case3(spec);
        auto out = search_nonabelian_rep(p, 900 + n, 50);
        if (!out.rep) continue;
        Case3Report<CF> r;
        case3_polynomial(spec, *out.rep, &r, Case3Convention::LeadingPower,
                         DivisionPolicy::AllowRational, 1e-7);
        auto traces = case3_trace_coeffs(spec, *out.rep);
        for (size_t i : {size_t(0), size_t(1), size_t(3), size_t(4), size_t(5), size_t(6)})
            CHECK(close(traces[i], r.coeff_bottom[i], 1e-6));
    }
}

TEST_CASE("palindromicity across all families") {
    std::mt19937_64 rng(97);
    auto palindromic = [](const Laurent<CF>& poly) {
        Laurent<CF> reversed;
        for (const auto& [e, c] : poly.coeffs()) reversed.add_term(-e, c);
        return unit_equal(poly, reversed, 1e-6);
    };
    {
        TwoBridgeSpec spec = testing::random_two_bridge(rng, 1, 2);
        auto reps = riley_slice_search(spec, 42, 40);
        auto res = recursion_two_bridge(spec, reps.front(), DivisionPolicy::AllowRational, 1e-8);
        CHECK(palindromic(res.exact_division ? res.polynomial : res.numerator));
    }
    {
        Case2Spec spec = testing::random_case2(rng, 2, 2, 2, true);
        Presentation p = build_case2(spec);
        auto out = search_nonabelian_rep(p, 43, 50);
        if (out.rep) {
            auto res = recursion_case2(spec, *out.rep, DivisionPolicy::AllowRational, 1e-7);
            CHECK(palindromic(res.exact_division ? res.polynomial : res.numerator));
        }
    }
    {
        Case3Spec spec{3};
        Presentation p = build_case3(spec);
        auto out = search_nonabelian_rep(p, 44, 50);
        if (out.rep) {
            Case3Report<CF> rr;
            auto res = case3_polynomial(spec, *out.rep, &rr, Case3Convention::LeadingPower,
                                        DivisionPolicy::AllowRational, 1e-7);
            CHECK(palindromic(res.exact_division ? res.polynomial : res.numerator));
        }
    }
}

TEST_CASE("long chains keep the recursions honest") {
    std::mt19937_64 rng(7777);
    std::uniform_int_distribution<int> mag(1, 2), sgn(0, 1);
    auto pick = [&] { return sgn(rng) ? mag(rng) : -mag(rng); };
    // the final even-index y block only enters the elimination for l >= 4
    for (int trial = 0; trial < 3; ++trial) {
        Case2Spec spec{sgn(rng) ? 1 : -1,
                       {trial == 0 ? 0 : pick(), pick(), pick(), pick(), pick()},
                       {pick(), pick(), pick(), pick()}};
        Presentation p = build_case2(spec);
        auto triv = trivial_rep<GR>(p);
        CHECK(tap_equivalent(twisted_alexander(p, triv, std::nullopt,
                                               DivisionPolicy::AllowRational),
                             recursion_case2(spec, triv, DivisionPolicy::AllowRational)));
        auto out = search_nonabelian_rep(p, 100 + trial, 48, 120, 1e-9);
        if (out.rep) {
            auto engf = twisted_alexander(p, *out.rep, std::nullopt,
                                          DivisionPolicy::AllowRational, 1e-7);
            auto recf = recursion_case2(spec, *out.rep, DivisionPolicy::AllowRational, 1e-7);
            CHECK(tap_equivalent(engf, recf, 1e-7));
        }
    }
    for (int k : {5, 7}) {
        TwoBridgeSpec spec;
        for (int i = 0; i <= k; ++i) spec.m.push_back(sgn(rng) ? mag(rng) : -mag(rng));
        Presentation p = build_two_bridge(spec);
        auto triv = trivial_rep<GR>(p);
        CHECK(tap_equivalent(twisted_alexander(p, triv, std::nullopt,
                                               DivisionPolicy::AllowRational),
                             recursion_two_bridge(spec, triv, DivisionPolicy::AllowRational)));
    }
}

TEST_CASE("small K_n anchors against classical knots") {
    // n = -1 collapses to the trefoil; n = 0 is the (-2,3,3)-pretzel, i.e.
    // the (3,4)-torus knot. Alexander polynomials pin both identifications.
    {
        Laurent<GR> alex = alexander(build_case3({-1}));
        Laurent<GR> trefoil;
        trefoil.add_term(0, GR(1));
        trefoil.add_term(1, GR(-1));
        trefoil.add_term(2, GR(1));
        CHECK(alex == trefoil);
    }
    {
        Laurent<GR> alex = alexander(build_case3({0}));
        Laurent<GR> t34; // (t^12-1)(t-1)/((t^3-1)(t^4-1))
        for (auto [e, c] : {std::pair{0, 1}, {1, -1}, {3, 1}, {5, -1}, {6, 1}})
            t34.add_term(e, GR(c));
        CHECK(alex == t34);
    }
    // T(3,4) is fibered of genus 3: every nonabelian SL2 twisted polynomial
    // is monic of degree 4g - 2 = 10.
    Presentation p = build_case3({0});
    int verified = 0;
    for (uint64_t s : {3, 9, 27}) {
        auto out = search_nonabelian_rep(p, s, 48, 120, 1e-9);
        if (!out.rep) continue;
        auto res = twisted_alexander(p, *out.rep, std::nullopt,
                                     DivisionPolicy::AllowRational, 1e-7);
        CHECK(res.exact_division);
        CHECK(res.degree_span == 10);
        CHECK(std::abs(res.leading.norm() - 1.0) < 1e-6);
        CHECK(std::abs(res.trailing.norm() - 1.0) < 1e-6);
        ++verified;
    }
    CHECK(verified >= 2);
}
