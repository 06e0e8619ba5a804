#pragma once

#include "tapkit/builders.hpp"
#include "tapkit/representation.hpp"
#include "tapkit/scalars.hpp"
#include "tapkit/unipoly.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <random>
#include <vector>

namespace tapkit {

namespace detail {

// 2x2 matrices with polynomial entries; enough arithmetic to evaluate words
// whose letters all have determinant one (inverse = adjugate).
struct PolyMat {
    using P = unipoly::Poly<GaussianRational>;
    std::array<P, 4> e; // a b c d

    static PolyMat make(P a, P b, P c, P d) {
        PolyMat m;
        m.e = {std::move(a), std::move(b), std::move(c), std::move(d)};
        return m;
    }
    static PolyMat identity() {
        return make({GaussianRational::one()}, {}, {}, {GaussianRational::one()});
    }
    PolyMat operator*(const PolyMat& o) const {
        using namespace unipoly;
        return make(add(mul(e[0], o.e[0]), mul(e[1], o.e[2])),
                    add(mul(e[0], o.e[1]), mul(e[1], o.e[3])),
                    add(mul(e[2], o.e[0]), mul(e[3], o.e[2])),
                    add(mul(e[2], o.e[1]), mul(e[3], o.e[3])));
    }
    PolyMat sl2_inverse() const {
        using namespace unipoly;
        return make(e[3], neg(e[1]), neg(e[2]), e[0]);
    }
};

} // namespace detail

// Entry polynomials of (residual relator image - E) in the parabolic slice
// rho(a) = [[1,1],[0,1]], rho(b) = [[1,0],[w,1]]. Their common w != 0 roots
// parametrize the parabolic representations.
inline std::vector<unipoly::Poly<GaussianRational>>
riley_entry_polynomials(const TwoBridgeSpec& spec) {
    using namespace unipoly;
    spec.validate();
    Presentation p = build_two_bridge(spec);
    DefinitionalChain chain = definitional_chain(p);

    std::vector<detail::PolyMat> images(p.generators.size());
    const GaussianRational one = GaussianRational::one();
    images[twobridge_ids::b()] =
        detail::PolyMat::make({one}, {}, {GaussianRational::zero(), one}, {one});
    images[twobridge_ids::a()] = detail::PolyMat::make({one}, {one}, {}, {one});

    auto eval_word = [&](const Word& w) {
        detail::PolyMat acc = detail::PolyMat::identity();
        for (const Letter& l : w.letters())
            acc = acc * (l.sign > 0 ? images[l.gen] : images[l.gen].sl2_inverse());
        return acc;
    };
    for (const auto& [gen, def] : chain.defined) images[gen] = eval_word(def);

    std::vector<Poly<GaussianRational>> out;
    for (size_t r : chain.residual_relators) {
        detail::PolyMat img = eval_word(p.relators[r]);
        std::array<Poly<GaussianRational>, 4> diff = img.e;
        diff[0] = sub(diff[0], {one});
        diff[3] = sub(diff[3], {one});
        for (auto& d : diff)
            if (!is_zero(d)) out.push_back(std::move(d));
    }
    if (out.empty())
        throw no_nonabelian_root("residual relator vanished identically in the Riley slice");
    return out;
}

// The squarefree Riley polynomial: gcd of the entry polynomials with the
// abelian w = 0 root and multiplicities stripped. Exact Euclid over Q(i)
// suffers coefficient blowup at large degree, so this is for desk-scale
// parameters; the float path below avoids the gcd entirely.
inline unipoly::Poly<GaussianRational> riley_polynomial(const TwoBridgeSpec& spec) {
    using namespace unipoly;
    auto entries = riley_entry_polynomials(spec);
    Poly<GaussianRational> g;
    for (const auto& d : entries) g = is_zero(g) ? monic(d) : gcd(g, d);
    while (!g.empty() && g[0].is_zero()) g.erase(g.begin());
    if (degree(g) < 1) throw no_nonabelian_root("Riley polynomial has no nonabelian root");
    Poly<GaussianRational> sf = gcd(g, derivative(g));
    if (degree(sf) > 0) g = divmod(g, sf).first;
    return monic(g);
}

// Exact representation over Q(i)[w]/(riley polynomial). Fails lazily with
// NonInvertibleResidue if the modulus is reducible and a zero divisor shows
// up; callers fall back to numeric roots in that case.
inline Representation<AlgebraicExt>
riley_rep_exact(const TwoBridgeSpec& spec, const unipoly::Poly<GaussianRational>& modulus,
                const Presentation& p) {
    spec.validate();
    auto mod = std::make_shared<const AlgebraicExt::Modulus>(modulus);
    AlgebraicExt w = AlgebraicExt::generator(mod);
    AlgebraicExt zero = AlgebraicExt::zero();
    AlgebraicExt one = AlgebraicExt::one();
    std::vector<Mat2<AlgebraicExt>> images(p.generators.size(), Mat2<AlgebraicExt>::identity());
    images[twobridge_ids::a()] = {one, one, zero, one};
    images[twobridge_ids::b()] = {one, zero, w, one};
    DefinitionalChain chain = definitional_chain(p);
    Representation<AlgebraicExt> partial;
    partial.images = images;
    for (const auto& [gen, def] : chain.defined) partial.images[gen] = partial.evaluate(def);
    auto rep = validate_rep<AlgebraicExt>(p, partial.images);
    rep.backend = "algebraic";
    return rep;
}

// Simple simultaneous iteration with Newton polish; adequate for the
// Riley-polynomial degrees that appear at desk scale.
inline std::vector<std::complex<double>>
polynomial_roots(const unipoly::Poly<GaussianRational>& poly) {
    using C = std::complex<double>;
    const int deg = unipoly::degree(poly);
    if (deg < 1) return {};
    std::vector<C> c(deg + 1);
    for (int i = 0; i <= deg; ++i) c[i] = poly[i].to_complex();
    for (auto& x : c) x /= c[deg];

    auto eval = [&](C x) {
        C acc = 0;
        for (int i = deg; i >= 0; --i) acc = acc * x + c[i];
        return acc;
    };
    auto eval_d = [&](C x) {
        C acc = 0;
        for (int i = deg; i >= 1; --i) acc = acc * x + c[i] * static_cast<double>(i);
        return acc;
    };

    // Fujiwara root bound keeps the start circle sane even when the
    // normalized coefficients are astronomically large.
    double radius = 0.0;
    for (int i = 0; i < deg; ++i)
        radius = std::max(radius, std::pow(std::abs(c[i]), 1.0 / (deg - i)));
    radius = 2.0 * std::max(radius, 0.5);
    std::vector<C> roots(deg);
    C seed(0.4, 0.9);
    C acc = 1.0;
    for (int i = 0; i < deg; ++i) {
        acc *= seed;
        roots[i] = acc * radius / std::abs(acc);
        roots[i] *= 0.3 + 0.8 * (i + 1.0) / deg;
    }
    for (int iter = 0; iter < 600; ++iter) {
        double worst = 0;
        for (int i = 0; i < deg; ++i) {
            C denom = 1.0;
            for (int j = 0; j < deg; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            if (std::abs(denom) == 0.0) continue;
            C delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-14) break;
    }
    for (auto& r : roots)
        for (int it = 0; it < 8; ++it) {
            C d = eval_d(r);
            if (std::abs(d) < 1e-14) break;
            r -= eval(r) / d;
        }
    // Collapse numerically coincident roots.
    std::vector<C> out;
    for (const auto& r : roots) {
        bool dup = false;
        for (const auto& o : out)
            if (std::abs(r - o) < 1e-7 * std::max(1.0, std::abs(o))) dup = true;
        if (!dup) out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](C a, C b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

// Float representation at one numeric Riley root.
inline Representation<ComplexFloat> riley_rep_float(const Presentation& p,
                                                    std::complex<double> root, double tol) {
    std::vector<Mat2<ComplexFloat>> images(p.generators.size(),
                                           Mat2<ComplexFloat>::identity());
    ComplexFloat one = ComplexFloat::one(), zero = ComplexFloat::zero();
    images[twobridge_ids::a()] = {one, one, zero, one};
    images[twobridge_ids::b()] = {one, zero, ComplexFloat(root), one};
    DefinitionalChain chain = definitional_chain(p);
    Representation<ComplexFloat> partial;
    partial.images = images;
    for (const auto& [gen, def] : chain.defined) partial.images[gen] = partial.evaluate(def);
    return validate_rep<ComplexFloat>(p, partial.images, tol);
}

// Numeric Riley representations without the exact gcd: the common roots of
// the entry polynomials are among the roots of any single entry, so take the
// lowest-degree entry and let validation filter the spurious ones.
inline std::vector<Representation<ComplexFloat>> riley_reps_float(const TwoBridgeSpec& spec,
                                                                  double tol = 1e-8) {
    auto entries = riley_entry_polynomials(spec);
    const unipoly::Poly<GaussianRational>* best = nullptr;
    for (const auto& e : entries)
        if (!best || e.size() < best->size()) best = &e;
    Presentation p = build_two_bridge(spec);
    std::vector<Representation<ComplexFloat>> out;
    for (std::complex<double> root : polynomial_roots(*best)) {
        if (std::abs(root) < 1e-7) continue; // abelian specialization
        try {
            out.push_back(riley_rep_float(p, root, tol));
        } catch (const Error&) {
            // root of this entry but not of the system, or too inaccurate
        }
    }
    if (out.empty()) throw no_nonabelian_root("no numeric Riley root validated");
    return out;
}

// Numeric search in the parabolic slice: Newton in the single complex
// variable w on the residual-relator entries. Avoids the symbolic entry
// polynomials entirely, whose degrees grow exponentially with k. Returns the
// distinct parabolic representations found across the seed sweep.
inline std::vector<Representation<ComplexFloat>>
riley_slice_search(const TwoBridgeSpec& spec, uint64_t seed = 1, int attempts = 64,
                   double tol = 1e-9) {
    using C = std::complex<double>;
    Presentation p = build_two_bridge(spec);
    DefinitionalChain chain = definitional_chain(p);

    auto residual = [&](C w) -> std::array<C, 4> {
        try {
            Representation<ComplexFloat> rep;
            rep.images.assign(p.generators.size(), Mat2<ComplexFloat>::identity());
            ComplexFloat one = ComplexFloat::one(), zero = ComplexFloat::zero();
            rep.images[twobridge_ids::a()] = {one, one, zero, one};
            rep.images[twobridge_ids::b()] = {one, zero, ComplexFloat(w), one};
            for (const auto& [gen, def] : chain.defined) rep.images[gen] = rep.evaluate(def);
            std::array<C, 4> r{};
            for (size_t idx : chain.residual_relators) {
                Mat2<ComplexFloat> img = rep.evaluate(p.relators[idx]);
                r[0] += img.a.value() - 1.0;
                r[1] += img.b.value();
                r[2] += img.c.value();
                r[3] += img.d.value() - 1.0;
            }
            return r;
        } catch (const Error&) { // over/underflow made an image singular
            return {C(1e30, 0), C(1e30, 0), C(1e30, 0), C(1e30, 0)};
        }
    };
    auto cost = [&](C w) {
        auto r = residual(w);
        double s = 0;
        for (auto v : r) s += std::norm(v);
        return s;
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> radius(0.05, 1.0);
    std::vector<C> found;
    std::vector<Representation<ComplexFloat>> out;
    for (int att = 0; att < attempts; ++att) {
        // log-ish radial sweep: Riley roots spread over several octaves
        double r = 0.1 * std::pow(120.0, radius(rng));
        C w = std::polar(r, angle(rng));
        double c0 = cost(w);
        const double h = 1e-7;
        for (int it = 0; it < 80 && c0 > 1e-26; ++it) {
            auto r = residual(w);
            auto rh = residual(w + h);
            // scalar Gauss-Newton: one complex unknown, four residuals
            C num = 0, den = 0;
            for (int i = 0; i < 4; ++i) {
                C d = (rh[i] - r[i]) / h;
                num += std::conj(d) * r[i];
                den += std::conj(d) * d;
            }
            if (std::abs(den) < 1e-30) break;
            C step = num / den;
            double c1 = cost(w - step);
            int halvings = 0;
            while (c1 > c0 && halvings++ < 20) {
                step *= 0.5;
                c1 = cost(w - step);
            }
            if (c1 >= c0) break;
            w -= step;
            c0 = c1;
        }
        if (c0 > tol * tol || std::abs(w) < 1e-6) continue; // diverged or abelian
        bool dup = false;
        for (C f : found)
            if (std::abs(f - w) < 1e-6 * std::max(1.0, std::abs(f))) dup = true;
        if (dup) continue;
        try {
            out.push_back(riley_rep_float(p, w, tol > 1e-8 ? tol : 1e-8));
            found.push_back(w);
        } catch (const Error&) {
        }
    }
    if (out.empty()) throw no_nonabelian_root("slice search found no parabolic representation");
    return out;
}

} // namespace tapkit
