#include "tapkit/builders.hpp"
#include "tapkit/riley.hpp"
#include "tapkit/wada.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <random>

using namespace tapkit;
using GR = GaussianRational;

namespace {

Laurent<GR> poly_from(std::initializer_list<std::pair<int, long>> terms) {
    Laurent<GR> p;
    for (auto [e, c] : terms) p.add_term(e, GR(c));
    return p;
}

Presentation trefoil_presentation() {
    Presentation p;
    p.generators = {"x", "y"};
    p.meridian = 0;
    Word x = Word::generator(0), y = Word::generator(1);
    p.relators.push_back(x * y * x * y.inverse() * x.inverse() * y.inverse());
    compute_degrees(p);
    return p;
}

Representation<GR> trefoil_parabolic() {
    Presentation p = trefoil_presentation();
    std::vector<Mat2<GR>> images(2);
    images[0] = {GR(1), GR(1), GR(0), GR(1)};
    images[1] = {GR(1), GR(0), GR(-1), GR(1)};
    return validate_rep<GR>(p, images);
}

} // namespace

TEST_CASE("trefoil parabolic representation validates") {
    auto rep = trefoil_parabolic();
    CHECK(rep.nonabelian);
    std::vector<Mat2<GR>> bad(2, Mat2<GR>::scalar(GR(2))); // det = 4
    CHECK_THROWS_AS(validate_rep<GR>(trefoil_presentation(), bad), ComputationError);
}

TEST_CASE("trefoil twisted Alexander polynomial is t^2 + 1") {
    Presentation p = trefoil_presentation();
    auto rep = trefoil_parabolic();
    TapResult<GR> res = twisted_alexander(p, rep);
    CHECK(res.exact_division);
    CHECK(res.polynomial == poly_from({{0, 1}, {2, 1}}));
    CHECK(res.degree_span == 2);
    CHECK(res.leading == GR(1));   // monic: fibered genus-1, degree 4g-2 = 2
    CHECK(res.trailing == GR(1));

    // both columns are admissible and agree
    auto report = welldefinedness_report(p, rep);
    CHECK(report.results.size() == 2);
    CHECK(report.all_agree);
}

TEST_CASE("twisted Alexander with the trivial rep is the squared Alexander ratio") {
    Presentation p = trefoil_presentation();
    auto triv = trivial_rep<GR>(p);
    CHECK(!triv.nonabelian);
    CHECK_THROWS_AS(twisted_alexander(p, triv), ComputationError);
    TapResult<GR> res =
        twisted_alexander(p, triv, std::nullopt, DivisionPolicy::AllowRational);
    CHECK(!res.exact_division);
    // numerator ~ Alexander(trefoil)^2 = (t^2-t+1)^2 up to units
    Laurent<GR> alex2 = poly_from({{2, 1}, {1, -1}, {0, 1}}) * poly_from({{2, 1}, {1, -1}, {0, 1}});
    CHECK(unit_equal(res.numerator, alex2));
}

TEST_CASE("alexander polynomials of the smallest two-bridge knots") {
    // m = [1,1] realizes the figure-eight, m = [1,-1] the trefoil.
    CHECK(alexander(build_two_bridge({{1, 1}})) == poly_from({{0, 1}, {1, -3}, {2, 1}}));
    CHECK(alexander(build_two_bridge({{1, -1}})) == poly_from({{0, 1}, {1, -1}, {2, 1}}));
    // m = [2,-1]: degree 2 with leading coefficient |m_0 m_1| = 2.
    Laurent<GR> a21 = alexander(build_two_bridge({{2, -1}}));
    CHECK(a21.span() == 2);
    CHECK(a21.coeff(2) == GR(2));
}

TEST_CASE("alexander degrees and leading coefficients on small grid") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 12; ++trial) {
        TwoBridgeSpec spec = testing::random_two_bridge(rng, 1, 3);
        Presentation p = build_two_bridge(spec);
        Laurent<GR> alex = alexander(p);
        long long prod = 1;
        for (int v : spec.m) prod *= v;
        CHECK(alex.span() == spec.k() + 1);
        CHECK(alex.coeff(alex.max_exp()) == GR(std::abs(prod)));
        // palindromic up to units
        Laurent<GR> reversed;
        for (const auto& [e, c] : alex.coeffs()) reversed.add_term(-e, c);
        CHECK(unit_equal(alex, reversed));
    }
}

TEST_CASE("column independence and conjugation invariance, exact riley rep") {
    TwoBridgeSpec spec{{1, 1}}; // figure-eight: quadratic Riley polynomial
    Presentation p = build_two_bridge(spec);
    auto riley = riley_polynomial(spec);
    REQUIRE(unipoly::degree(riley) == 2);
    Representation<AlgebraicExt> rep = riley_rep_exact(spec, riley, p);
    CHECK(rep.nonabelian);

    TapResult<AlgebraicExt> base = twisted_alexander(p, rep);
    CHECK(base.exact_division);
    // every admissible column agrees
    auto report = welldefinedness_report(p, rep);
    CHECK(report.all_agree);
    CHECK(report.results.size() + report.skipped.size() == p.generators.size());

    // conjugation by a fixed invertible matrix leaves the result unchanged
    Mat2<AlgebraicExt> g{AlgebraicExt::from_int(2), AlgebraicExt::from_int(1),
                         AlgebraicExt::from_int(1), AlgebraicExt::from_int(1)};
    Mat2<AlgebraicExt> ginv = g.inverse();
    std::vector<Mat2<AlgebraicExt>> conj_images;
    for (const auto& im : rep.images) conj_images.push_back(g * im * ginv);
    Representation<AlgebraicExt> conj = validate_rep<AlgebraicExt>(p, conj_images);
    TapResult<AlgebraicExt> other = twisted_alexander(p, conj);
    CHECK(tap_equivalent(base, other));
}

TEST_CASE("deficiency precondition") {
    Presentation p = trefoil_presentation();
    p.relators.push_back(Word::generator(0) * Word::generator(0, -1)); // junk relator
    p.relators.push_back(p.relators[0]);
    auto rep = trivial_rep<GR>(p);
    CHECK_THROWS_AS(twisted_alexander(p, rep), InvalidInput);
}

TEST_CASE("degenerate denominator columns are skipped") {
    // <x, z | z^2>: deficiency one, deg(z) = 0, deg(x) = 1; with Z = E the
    // column z has det Phi(z - 1) identically zero and must be skipped.
    Presentation p;
    p.generators = {"x", "z"};
    p.meridian = 0;
    p.relators.push_back(Word::generator(1) * Word::generator(1));
    compute_degrees(p);
    CHECK(p.degrees == std::vector<int>{1, 0});
    auto rep = trivial_rep<GR>(p);
    auto report = welldefinedness_report(p, rep);
    REQUIRE(report.skipped.size() == 1);
    CHECK(report.skipped[0] == "z");
}

TEST_CASE("one-generator zero-relator presentation has degree one") {
    Presentation p;
    p.generators = {"x"};
    p.meridian = 0;
    compute_degrees(p);
    CHECK(p.degrees == std::vector<int>{1});
}

TEST_CASE("abelianization rejects non-cyclic systems") {
    Presentation p;
    p.generators = {"x", "y"};
    p.meridian = 0;
    // commutator relator: H_1 = Z^2, nullity two
    Word x = Word::generator(0), y = Word::generator(1);
    p.relators.push_back(x * y * x.inverse() * y.inverse());
    CHECK_THROWS_AS(compute_degrees(p), ComputationError);
}

TEST_CASE("float path is stable under representation noise") {
    // perturb the exact trefoil parabolic at 1e-10 and expect the clean
    // degree and coefficients after pruning
    Presentation p = trefoil_presentation();
    std::vector<Mat2<ComplexFloat>> images(2);
    images[0] = {ComplexFloat(1 + 1e-10, -1e-10), ComplexFloat(1, 1e-10),
                 ComplexFloat(1e-10, 0), ComplexFloat(1 - 1e-10, 0)};
    images[1] = {ComplexFloat(1, 1e-10), ComplexFloat(-1e-10, 0),
                 ComplexFloat(-1 - 1e-10, 1e-10), ComplexFloat(1, 0)};
    auto rep = validate_rep<ComplexFloat>(p, images, 1e-8);
    auto res = twisted_alexander(p, rep, std::nullopt, DivisionPolicy::AllowRational, 1e-8);
    CHECK(res.exact_division);
    CHECK(res.degree_span == 2);
    CHECK(close(res.leading, ComplexFloat::one(), 1e-7));
    CHECK(close(res.polynomial.coeff(1), ComplexFloat::zero(), 1e-7));
}

TEST_CASE("alexander polynomials are palindromic across families") {
    for (int n = -4; n <= 4; ++n) {
        Laurent<GR> alex = alexander(build_case3({n}));
        Laurent<GR> reversed;
        for (const auto& [e, c] : alex.coeffs()) reversed.add_term(-e, c);
        CHECK(unit_equal(alex, reversed));
    }
    Laurent<GR> alex2 = alexander(build_case2({-1, {1, -2, 2}, {-2, 1}}));
    Laurent<GR> rev2;
    for (const auto& [e, c] : alex2.coeffs()) rev2.add_term(-e, c);
    CHECK(unit_equal(alex2, rev2));
}
