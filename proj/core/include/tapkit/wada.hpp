#pragma once

#include "tapkit/laurent.hpp"
#include "tapkit/presentation.hpp"
#include "tapkit/representation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tapkit {

// How to treat a nonzero remainder when dividing det A_k by det Phi(x_k - 1).
// Abelian representations legitimately produce rational (non-polynomial)
// invariants; comparisons then go through the numerator/denominator pair.
enum class DivisionPolicy { RequireExact, AllowRational };

template <class F>
struct TapResult {
    std::string method;
    std::string column; // removed generator
    Laurent<F> numerator;   // normalized det A_k
    Laurent<F> denominator; // normalized det Phi(x_k - 1)
    Laurent<F> polynomial;  // normalized quotient when division is exact
    bool exact_division = false;
    double remainder_norm = 0.0;
    int degree_span = 0; // span(numerator) - span(denominator)
    F leading = F::zero();
    F trailing = F::zero();
};

// Unit-equality of two results as rational functions: compares
// num_a * den_b against num_b * den_a, which covers both the polynomial and
// the abelian (inexact) cases uniformly.
template <class F>
bool tap_equivalent(const TapResult<F>& a, const TapResult<F>& b, double tol = 0.0) {
    return unit_equal(a.numerator * b.denominator, b.numerator * a.denominator, tol);
}

// Build the result from an explicit numerator/denominator pair.
template <class F>
TapResult<F> make_tap_result(std::string method, std::string column, const Laurent<F>& num,
                             const Laurent<F>& den, DivisionPolicy policy, double tol) {
    TapResult<F> res;
    res.method = std::move(method);
    res.column = std::move(column);
    if (num.is_zero()) throw zero_polynomial("vanishing twisted Alexander numerator");
    Laurent<F> n = num;
    if constexpr (!F::exact) n = n.pruned(1e-12);
    res.numerator = normalize_unit(n);
    res.denominator = normalize_unit(den);
    auto [q, r] = divide_with_remainder(res.numerator, res.denominator);
    if (r.is_zero()) {
        res.exact_division = true;
        res.remainder_norm = 0.0;
        res.polynomial = normalize_unit(q);
    } else if constexpr (!F::exact) {
        res.remainder_norm = r.max_coeff_norm();
        double scale = std::max(1.0, res.numerator.max_coeff_norm());
        if (res.remainder_norm <= (tol > 0 ? tol : 1e-9) * scale) {
            res.exact_division = true;
            res.polynomial = normalize_unit(q.pruned(1e-12));
        } else if (policy == DivisionPolicy::RequireExact) {
            throw inexact_division("remainder norm " + std::to_string(res.remainder_norm) +
                                   " dividing by det Phi(" + res.column + " - 1)");
        }
    } else {
        if (policy == DivisionPolicy::RequireExact)
            throw inexact_division("det A_k not divisible by det Phi(" + res.column +
                                   " - 1); representation abelian or invalid");
        res.remainder_norm = r.max_coeff_norm();
    }
    res.degree_span = res.numerator.span() - res.denominator.span();
    const Laurent<F>& lead_src = res.exact_division ? res.polynomial : res.numerator;
    res.leading = lead_src.coeff(lead_src.max_exp());
    res.trailing = lead_src.coeff(lead_src.min_exp());
    return res;
}

// The (n-1) x n matrix of Fox-derivative blocks A_ij = Phi(dr_i/dx_j).
template <class F>
BlockMatrix<F> fox_matrix(const Presentation& p, const Representation<F>& rep) {
    BlockMatrix<F> m;
    m.blocks.resize(p.relators.size());
    for (size_t i = 0; i < p.relators.size(); ++i) {
        m.blocks[i].resize(p.generators.size());
        for (size_t j = 0; j < p.generators.size(); ++j)
            m.blocks[i][j] =
                phi_of(fox_derivative(p.relators[i], static_cast<int>(j)), rep, p.degrees);
    }
    return m;
}

template <class F>
BlockMatrix<F> drop_column(const BlockMatrix<F>& m, size_t col) {
    BlockMatrix<F> out;
    out.blocks.resize(m.rows());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (j != col) out.blocks[i].push_back(m.blocks[i][j]);
    return out;
}

// Columns are tried meridian-first in auto mode; a column is admissible when
// det Phi(x_k - 1) is not identically zero.
inline std::vector<int> column_order(const Presentation& p) {
    std::vector<int> order;
    order.push_back(p.meridian);
    for (size_t j = 0; j < p.generators.size(); ++j)
        if (static_cast<int>(j) != p.meridian) order.push_back(static_cast<int>(j));
    return order;
}

// Wada's invariant det A_k / det Phi(x_k - 1) for a 2-dimensional
// representation, normalized up to {+-t^s}.
template <class F>
TapResult<F> twisted_alexander(const Presentation& p, const Representation<F>& rep,
                               std::optional<int> column = std::nullopt,
                               DivisionPolicy policy = DivisionPolicy::RequireExact,
                               double tol = 1e-9) {
    if (p.deficiency() != 1)
        throw deficiency_mismatch("presentation must have n generators and n-1 relators");
    BlockMatrix<F> fox = fox_matrix(p, rep);

    std::vector<int> order =
        column.has_value() ? std::vector<int>{*column} : column_order(p);
    for (int k : order) {
        Laurent<F> den = denominator_poly(rep, p.degrees, k);
        if constexpr (!F::exact) den = den.pruned(1e-12);
        if (den.is_zero()) continue;
        Laurent<F> num = det_block(drop_column(fox, static_cast<size_t>(k)));
        if (num.is_zero()) throw zero_polynomial("det A_k vanished for column " + p.generators[k]);
        return make_tap_result<F>("engine", p.generators[k], num, den, policy, tol);
    }
    throw all_denominators_zero("no admissible column: every det Phi(x_k - 1) vanished");
}

// ---------------------------------------------------------------------------
// Classical Alexander polynomial via the 1-dimensional abelian representation
// g -> t^{deg g}.
// ---------------------------------------------------------------------------

template <class F>
Laurent<F> abelian_scalar_phi(const GroupRingElement& x, const std::vector<int>& degrees) {
    Laurent<F> out;
    for (const auto& [w, c] : x.terms()) {
        int deg = 0;
        for (const Letter& l : w.letters()) deg += l.sign * degrees[l.gen];
        out.add_term(deg, F::from_int(c));
    }
    return out;
}

// (t^d - 1) / (t - 1) as a Laurent polynomial; a unit for d = -1, zero for
// d = 0 (inadmissible column).
template <class F>
Laurent<F> alexander_denominator(int d) {
    Laurent<F> out;
    if (d > 0) {
        for (int j = 0; j < d; ++j) out.add_term(j, F::one());
    } else if (d < 0) {
        for (int j = 0; j < -d; ++j) out.add_term(d + j, -F::one());
    }
    return out;
}

// det A_k divided by (t^{deg x_k} - 1)/(t - 1), normalized. The division is
// exact for every knot-group presentation; a failure signals a builder bug.
template <class F = GaussianRational>
Laurent<F> alexander(const Presentation& p) {
    if (p.deficiency() != 1)
        throw deficiency_mismatch("presentation must have n generators and n-1 relators");
    const size_t n = p.generators.size();
    LaurentMatrix<F> full(p.relators.size(), std::vector<Laurent<F>>(n));
    for (size_t i = 0; i < p.relators.size(); ++i)
        for (size_t j = 0; j < n; ++j)
            full[i][j] = abelian_scalar_phi<F>(fox_derivative(p.relators[i], static_cast<int>(j)),
                                               p.degrees);
    for (int k : column_order(p)) {
        Laurent<F> den = alexander_denominator<F>(p.degrees[k]);
        if (den.is_zero()) continue;
        LaurentMatrix<F> reduced(p.relators.size());
        for (size_t i = 0; i < p.relators.size(); ++i)
            for (size_t j = 0; j < n; ++j)
                if (static_cast<int>(j) != k) reduced[i].push_back(full[i][j]);
        Laurent<F> num = det_laurent(reduced);
        if (num.is_zero()) throw zero_polynomial("Alexander numerator vanished");
        return normalize_unit(divide_exact(num, den));
    }
    throw all_denominators_zero("every generator has abelianized degree 0");
}

// ---------------------------------------------------------------------------
// Well-definedness report: run every admissible column and compare.
// ---------------------------------------------------------------------------

template <class F>
struct WelldefinednessReport {
    std::vector<TapResult<F>> results;       // one per admissible column
    std::vector<std::string> skipped;        // columns with degenerate denominator
    std::vector<std::vector<bool>> agreement; // pairwise unit-equality
    bool all_agree = true;
};

template <class F>
WelldefinednessReport<F> welldefinedness_report(const Presentation& p,
                                                const Representation<F>& rep,
                                                double tol = 1e-9) {
    WelldefinednessReport<F> rep_out;
    BlockMatrix<F> fox = fox_matrix(p, rep);
    for (size_t k = 0; k < p.generators.size(); ++k) {
        Laurent<F> den = denominator_poly(rep, p.degrees, static_cast<int>(k));
        if constexpr (!F::exact) den = den.pruned(1e-12);
        if (den.is_zero()) {
            rep_out.skipped.push_back(p.generators[k]);
            continue;
        }
        Laurent<F> num = det_block(drop_column(fox, k));
        if (num.is_zero()) {
            rep_out.skipped.push_back(p.generators[k]);
            continue;
        }
        rep_out.results.push_back(make_tap_result<F>("engine", p.generators[k], num, den,
                                                     DivisionPolicy::AllowRational, tol));
    }
    const size_t m = rep_out.results.size();
    rep_out.agreement.assign(m, std::vector<bool>(m, true));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            bool eq = tap_equivalent(rep_out.results[i], rep_out.results[j], tol);
            rep_out.agreement[i][j] = rep_out.agreement[j][i] = eq;
            rep_out.all_agree = rep_out.all_agree && eq;
        }
    return rep_out;
}

} // namespace tapkit
