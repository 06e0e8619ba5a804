#include "tapkit/builders.hpp"
#include "tapkit/newton.hpp"
#include "tapkit/riley.hpp"
#include "tapkit/wada.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <random>

using namespace tapkit;
using GR = GaussianRational;
using CF = ComplexFloat;

TEST_CASE("riley polynomial of the figure-eight is quadratic with valid roots") {
    TwoBridgeSpec fig8{{1, 1}};
    auto poly = riley_polynomial(fig8);
    REQUIRE(unipoly::degree(poly) == 2);
    // w^2 + w + 1: roots are the primitive cube roots of unity, the cusp
    // field of the knot.
    CHECK(poly[0] == GaussianRational(1));
    CHECK(poly[1] == GaussianRational(1));
    CHECK(poly[2] == GaussianRational(1));

    Presentation p = build_two_bridge(fig8);
    auto roots = polynomial_roots(poly);
    REQUIRE(roots.size() == 2);
    for (auto r : roots) {
        auto rep = riley_rep_float(p, r, 1e-9);
        CHECK(rep.nonabelian);
    }
    auto exact = riley_rep_exact(fig8, poly, p);
    CHECK(exact.nonabelian);
    CHECK(exact.backend == "algebraic");
}

TEST_CASE("riley root count matches distinct roots, multiplicity collapsed") {
    for (auto mv : {std::vector<int>{1, -1}, std::vector<int>{1, 1}, std::vector<int>{2, -1},
                    std::vector<int>{2, 1}, std::vector<int>{1, -2}}) {
        TwoBridgeSpec spec{mv};
        auto poly = riley_polynomial(spec);
        auto roots = polynomial_roots(poly);
        CHECK(roots.size() == size_t(unipoly::degree(poly)));
        Presentation p = build_two_bridge(spec);
        size_t valid = 0;
        for (auto r : roots)
            try {
                auto rep = riley_rep_float(p, r, 1e-7);
                CHECK(rep.nonabelian);
                ++valid;
            } catch (const Error&) {
            }
        CHECK(valid == roots.size());
    }
}

TEST_CASE("slice search agrees with the symbolic riley roots at small size") {
    TwoBridgeSpec spec{{2, -1}};
    auto poly = riley_polynomial(spec);
    auto roots = polynomial_roots(poly);
    auto reps = riley_slice_search(spec, 9, 80);
    // every searched rep sits at one of the polynomial's roots
    for (const auto& rep : reps) {
        std::complex<double> w = rep.image(twobridge_ids::b()).c.value();
        bool hit = false;
        for (auto r : roots)
            if (std::abs(r - w) < 1e-6) hit = true;
        CHECK(hit);
    }
    CHECK(reps.size() <= roots.size());
}

TEST_CASE("validation is conjugation invariant") {
    std::mt19937_64 rng(101);
    TwoBridgeSpec spec{{1, 1}};
    Presentation p = build_two_bridge(spec);
    auto reps = riley_slice_search(spec, 2, 40);
    const auto& rep = reps.front();
    for (int trial = 0; trial < 5; ++trial) {
        Mat2<CF> g{CF(rng() % 5 / 2.0 + 1, rng() % 3 / 3.0), CF(rng() % 3, -0.5),
                   CF(0.25, rng() % 2), CF(1.5, 0)};
        if (g.det().norm() < 1e-3) continue;
        Mat2<CF> gi = g.inverse();
        std::vector<Mat2<CF>> conj;
        for (const auto& im : rep.images) conj.push_back(g * im * gi);
        auto crep = validate_rep<CF>(p, conj, 1e-7);
        CHECK(crep.nonabelian);
    }
}

TEST_CASE("newton search fixed point and abelian flagging") {
    Presentation p = build_case3({2});
    // an abelian diagonal family satisfies every relator: g -> diag(u^deg)
    std::vector<Mat2<CF>> abelian(p.generators.size());
    std::complex<double> u(0.8, 0.6); // unit modulus
    for (size_t g = 0; g < p.generators.size(); ++g) {
        int d = p.degrees[g];
        abelian[g] = Mat2<CF>{CF(std::pow(u, d)), CF(0, 0), CF(0, 0), CF(std::pow(u, -d))};
    }
    auto arep = validate_rep<CF>(p, abelian, 1e-9);
    CHECK(!arep.nonabelian);

    // a valid seed is a fixed point: residual stays ~0 and the rep validates
    auto out = search_nonabelian_rep(p, 21, 30);
    REQUIRE(out.rep);
    CHECK(out.best_residual < 1e-9);
    CHECK(out.rep->nonabelian);

    // seeding from that valid rep returns it unchanged
    auto again = newton_search_rep(p, 0, 30, 1e-9, &*out.rep);
    REQUIRE(again.rep);
    CHECK(again.best_residual < 1e-10);
    for (size_t g = 0; g < p.generators.size(); ++g)
        CHECK(matrices_close(again.rep->images[g], out.rep->images[g], 1e-8));

    // seeding from the abelian family converges to an abelian rep, flagged
    auto from_abelian = newton_search_rep(p, 0, 30, 1e-9, &arep);
    REQUIRE(from_abelian.rep);
    CHECK(from_abelian.abelian);
}

TEST_CASE("newton search finds nonabelian reps for case 2 and case 3") {
    Case2Spec spec{1, {0, -2, 1}, {-2, 1}};
    Presentation p2 = build_case2(spec);
    auto o2 = search_nonabelian_rep(p2, 31, 60);
    REQUIRE(o2.rep);
    CHECK(o2.rep->nonabelian);
    CHECK(o2.rep->worst_relator_deviation < 1e-9);

    int found = 0;
    for (int n : {-3, 0, 3}) {
        Presentation p3 = build_case3({n});
        auto o3 = search_nonabelian_rep(p3, 37, 50);
        if (o3.rep && o3.rep->nonabelian) ++found;
    }
    CHECK(found == 3); // stochastic in principle; these seeds succeed
}
