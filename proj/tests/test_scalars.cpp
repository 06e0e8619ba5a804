#include "tapkit/scalars.hpp"

#include <doctest.h>

#include <random>

using namespace tapkit;

namespace {

template <class F>
F random_element(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 5);
    if constexpr (std::is_same_v<F, GaussianRational>) {
        return GaussianRational(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    } else if constexpr (std::is_same_v<F, ComplexFloat>) {
        return ComplexFloat(num(rng) / double(den(rng)), num(rng) / double(den(rng)));
    } else {
        static auto mod = std::make_shared<const AlgebraicExt::Modulus>(
            AlgebraicExt::Modulus{GaussianRational(1), GaussianRational(0),
                                  GaussianRational(1)}); // w^2 + 1
        return AlgebraicExt(mod, {GaussianRational(Rational(num(rng), den(rng)), 0),
                                  GaussianRational(Rational(num(rng), den(rng)), 0)});
    }
}

template <class F>
void field_axioms(uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 200; ++trial) {
        F a = random_element<F>(rng);
        F b = random_element<F>(rng);
        F c = random_element<F>(rng);
        CHECK(close((a + b) + c, a + (b + c), tol));
        CHECK(close(a * (b + c), a * b + a * c, tol));
        CHECK(close(a * b, b * a, tol));
        if (!a.is_zero() && a.norm() > 1e-9) CHECK(close(a * a.invert(), F::one(), tol));
    }
}

} // namespace

TEST_CASE("field axioms per backend") {
    field_axioms<GaussianRational>(1, 0);
    field_axioms<ComplexFloat>(2, 1e-12);
    field_axioms<AlgebraicExt>(3, 0);
}

TEST_CASE("inversion basics") {
    CHECK(GaussianRational(2).invert() == GaussianRational(Rational(1, 2), 0));
    CHECK_THROWS_AS(ComplexFloat::zero().invert(), ComputationError);
    CHECK_THROWS_AS(GaussianRational::zero().invert(), ComputationError);

    // w^2 + 1 = 0, so w * (-w) = 1.
    auto mod = std::make_shared<const AlgebraicExt::Modulus>(AlgebraicExt::Modulus{
        GaussianRational(1), GaussianRational(0), GaussianRational(1)});
    AlgebraicExt w = AlgebraicExt::generator(mod);
    CHECK(w.invert() == -w);
    CHECK(w * w == -AlgebraicExt::one());
}

TEST_CASE("reducible modulus fails lazily on non-invertible residues") {
    // w^2 - 1 factors; w - 1 is a zero divisor.
    auto mod = std::make_shared<const AlgebraicExt::Modulus>(AlgebraicExt::Modulus{
        GaussianRational(-1), GaussianRational(0), GaussianRational(1)});
    AlgebraicExt w = AlgebraicExt::generator(mod);
    AlgebraicExt zd = w - AlgebraicExt::one();
    CHECK_THROWS_AS(zd.invert(), ComputationError);
    CHECK((w + AlgebraicExt::one()) * zd == AlgebraicExt::zero()); // w^2 - 1 = 0
}

TEST_CASE("extension by w - c is evaluation at c") {
    // modulus w - 3/2: arithmetic must agree with plain rationals at w = 3/2.
    auto mod = std::make_shared<const AlgebraicExt::Modulus>(AlgebraicExt::Modulus{
        GaussianRational(Rational(-3, 2), 0), GaussianRational(1)});
    AlgebraicExt w = AlgebraicExt::generator(mod);
    GaussianRational c(Rational(3, 2), 0);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> num(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        GaussianRational p(num(rng)), q(num(rng));
        AlgebraicExt lhs = (AlgebraicExt(p) * w + AlgebraicExt(q)) * w;
        GaussianRational rhs = (p * c + q) * c;
        CHECK(lhs == AlgebraicExt(rhs));
    }
}

TEST_CASE("complex float closeness uses relative scale") {
    ComplexFloat a(1e9, 0), b(1e9 + 1, 0);
    CHECK(close(a, b, 1e-8));
    CHECK(!close(ComplexFloat(0, 0), ComplexFloat(1e-3, 0), 1e-6));
}
