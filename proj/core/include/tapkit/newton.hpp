#pragma once

#include "tapkit/presentation.hpp"
#include "tapkit/representation.hpp"
#include "tapkit/scalars.hpp"

#include <complex>
#include <optional>
#include <random>
#include <vector>

namespace tapkit {

struct NewtonOutcome {
    std::optional<Representation<ComplexFloat>> rep;
    double best_residual = 1e300;
    int iterations = 0;
    bool abelian = false;
};

namespace detail {

using CD = std::complex<double>;

// Solve (A + lambda I) x = b for a small dense Hermitian-ish system by
// partial-pivot LU.
inline std::vector<CD> solve_damped(std::vector<std::vector<CD>> a, std::vector<CD> b,
                                    double lambda) {
    const size_t n = a.size();
    for (size_t i = 0; i < n; ++i) a[i][i] += lambda;
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        for (size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        if (std::abs(a[k][k]) < 1e-300) return {};
        for (size_t i = k + 1; i < n; ++i) {
            CD f = a[i][k] / a[k][k];
            for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<CD> x(n);
    for (size_t i = n; i-- > 0;) {
        CD s = b[i];
        for (size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

} // namespace detail

// Damped Gauss-Newton on the core generators of the presentation: residuals
// are the entries of (residual relator images - E) plus (det - 1) per core
// generator. Images of chain-defined generators are recomputed exactly from
// their defining words each step, so only the core entries are unknowns.
// Deterministic for a fixed seed. An explicit initial guess replaces the
// random seed; a valid one is a fixed point.
inline NewtonOutcome newton_search_rep(const Presentation& p, uint64_t seed, int max_iter = 120,
                                       double tol = 1e-9,
                                       const Representation<ComplexFloat>* init = nullptr) {
    using detail::CD;
    DefinitionalChain chain = definitional_chain(p);
    const size_t ncore = chain.core.size();
    const size_t nvars = 4 * ncore;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.2, 1.2);

    std::vector<CD> vars(nvars);
    if (init) {
        for (size_t g = 0; g < ncore; ++g) {
            const Mat2<ComplexFloat>& m = init->images.at(chain.core[g]);
            vars[4 * g] = m.a.value();
            vars[4 * g + 1] = m.b.value();
            vars[4 * g + 2] = m.c.value();
            vars[4 * g + 3] = m.d.value();
        }
    } else {
        for (auto& v : vars) v = CD(uni(rng), uni(rng));
        // Bias toward unimodular-ish matrices so det-1 residuals start small.
        for (size_t g = 0; g < ncore; ++g) {
            vars[4 * g] += 1.0;
            vars[4 * g + 3] += 1.0;
        }
    }

    auto build_rep = [&](const std::vector<CD>& v) {
        Representation<ComplexFloat> rep;
        rep.images.assign(p.generators.size(), Mat2<ComplexFloat>::identity());
        for (size_t g = 0; g < ncore; ++g)
            rep.images[chain.core[g]] = {ComplexFloat(v[4 * g]), ComplexFloat(v[4 * g + 1]),
                                         ComplexFloat(v[4 * g + 2]), ComplexFloat(v[4 * g + 3])};
        for (const auto& [gen, def] : chain.defined) rep.images[gen] = rep.evaluate(def);
        return rep;
    };
    const size_t nres = 4 * chain.residual_relators.size() + ncore;
    auto residuals = [&](const std::vector<CD>& v) -> std::vector<CD> {
        try {
            Representation<ComplexFloat> rep = build_rep(v);
            std::vector<CD> r;
            for (size_t idx : chain.residual_relators) {
                Mat2<ComplexFloat> img = rep.evaluate(p.relators[idx]);
                r.push_back(img.a.value() - 1.0);
                r.push_back(img.b.value());
                r.push_back(img.c.value());
                r.push_back(img.d.value() - 1.0);
            }
            for (size_t g = 0; g < ncore; ++g)
                r.push_back(rep.images[chain.core[g]].det().value() - 1.0);
            return r;
        } catch (const Error&) { // an iterate under/overflowed into a singular image
            return std::vector<CD>(nres, CD(1e30, 0));
        }
    };
    auto norm2 = [](const std::vector<CD>& r) {
        double s = 0;
        for (const auto& x : r) s += std::norm(x);
        return s;
    };

    std::vector<CD> r = residuals(vars);
    double cost = norm2(r);
    double lambda = 1e-3;
    NewtonOutcome out;
    const double h = 1e-7;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        if (cost < 1e-24) break;
        const size_t m = r.size();
        // Holomorphic residuals: a real-direction difference gives the
        // complex derivative.
        std::vector<std::vector<CD>> jac(m, std::vector<CD>(nvars));
        for (size_t j = 0; j < nvars; ++j) {
            std::vector<CD> vv = vars;
            vv[j] += h;
            std::vector<CD> rj = residuals(vv);
            for (size_t i = 0; i < m; ++i) jac[i][j] = (rj[i] - r[i]) / h;
        }
        std::vector<std::vector<CD>> jtj(nvars, std::vector<CD>(nvars, 0.0));
        std::vector<CD> jtr(nvars, 0.0);
        for (size_t i = 0; i < m; ++i)
            for (size_t a = 0; a < nvars; ++a) {
                CD ca = std::conj(jac[i][a]);
                jtr[a] += ca * r[i];
                for (size_t b = 0; b < nvars; ++b) jtj[a][b] += ca * jac[i][b];
            }
        bool stepped = false;
        for (int tries = 0; tries < 8 && !stepped; ++tries) {
            std::vector<CD> delta = detail::solve_damped(jtj, jtr, lambda);
            if (!delta.empty()) {
                std::vector<CD> cand = vars;
                for (size_t j = 0; j < nvars; ++j) cand[j] -= delta[j];
                std::vector<CD> rc = residuals(cand);
                double cc = norm2(rc);
                if (cc < cost) {
                    vars = std::move(cand);
                    r = std::move(rc);
                    cost = cc;
                    lambda = std::max(lambda * 0.3, 1e-12);
                    stepped = true;
                    break;
                }
            }
            lambda *= 10.0;
        }
        if (!stepped) break;
    }
    out.iterations = iter;
    out.best_residual = std::sqrt(cost);
    if (out.best_residual > tol) return out; // rep left empty: DidNotConverge territory
    try {
        auto rep = validate_rep<ComplexFloat>(p, build_rep(vars).images, tol);
        out.abelian = !rep.nonabelian;
        rep.backend = "float";
        out.rep = std::move(rep);
    } catch (const Error&) {
        // validation can still reject at a tighter tolerance; report residual
    }
    return out;
}

// Convenience: scan seeds until a nonabelian representation appears.
inline NewtonOutcome search_nonabelian_rep(const Presentation& p, uint64_t seed0, int attempts,
                                           int max_iter = 120, double tol = 1e-9) {
    NewtonOutcome best;
    for (int i = 0; i < attempts; ++i) {
        NewtonOutcome o = newton_search_rep(p, seed0 + static_cast<uint64_t>(i), max_iter, tol);
        if (o.rep && !o.abelian) return o;
        if (o.best_residual < best.best_residual) best = o;
    }
    return best;
}

} // namespace tapkit
