#pragma once

#include "tapkit/laurent.hpp"
#include "tapkit/mat2.hpp"
#include "tapkit/presentation.hpp"
#include "tapkit/scalars.hpp"
#include "tapkit/words.hpp"

#include <string>
#include <vector>

namespace tapkit {

// Validated SL2 representation of a presentation: one image per generator,
// det 1 and all relators mapping to the identity (exactly, or within tol for
// the float backend).
template <class F>
struct Representation {
    std::vector<Mat2<F>> images; // indexed by generator id
    std::string backend;
    double worst_det_deviation = 0.0;
    double worst_relator_deviation = 0.0;
    bool nonabelian = false;

    const Mat2<F>& image(int gen) const { return images.at(gen); }

    Mat2<F> evaluate(const Word& w) const {
        Mat2<F> acc = Mat2<F>::identity();
        for (const Letter& l : w.letters())
            acc = acc * (l.sign > 0 ? images[l.gen] : images[l.gen].inverse());
        return acc;
    }
};

template <class F>
double matrix_deviation(const Mat2<F>& m, const Mat2<F>& target) {
    return (m - target).norm();
}

template <class F>
bool matrices_close(const Mat2<F>& m, const Mat2<F>& target, double tol) {
    if constexpr (F::exact) {
        (void)tol;
        return m == target;
    } else {
        double scale = std::max({1.0, m.norm(), target.norm()});
        return (m - target).norm() <= tol * scale;
    }
}

// Checks det = 1 and relator images = E; throws NotSL2 / RelatorViolation
// with the worst offender. Also records whether some pair of images fails to
// commute (nonabelian), which is what makes Wada's invariant a polynomial.
template <class F>
Representation<F> validate_rep(const Presentation& p, std::vector<Mat2<F>> images,
                               double tol = 1e-9) {
    if (images.size() != p.generators.size())
        throw unknown_generator("representation must supply an image per generator");
    Representation<F> rep;
    rep.images = std::move(images);
    rep.backend = F::exact ? "exact" : "float";

    const Mat2<F> e = Mat2<F>::identity();
    for (size_t i = 0; i < rep.images.size(); ++i) {
        const F det = rep.images[i].det();
        double dev = (det - F::one()).norm();
        rep.worst_det_deviation = std::max(rep.worst_det_deviation, dev);
        bool ok = F::exact ? det == F::one() : dev <= tol;
        if (!ok)
            throw not_sl2("image of '" + p.generators[i] + "' has det deviating by " +
                          std::to_string(dev));
    }
    for (size_t r = 0; r < p.relators.size(); ++r) {
        Mat2<F> img = rep.evaluate(p.relators[r]);
        double dev = matrix_deviation(img, e);
        rep.worst_relator_deviation = std::max(rep.worst_relator_deviation, dev);
        if (!matrices_close(img, e, tol))
            throw relator_violation("relator #" + std::to_string(r) + " ('" +
                                    word_to_string(p.relators[r], p.generators) +
                                    "') deviates from E by " + std::to_string(dev));
    }
    for (size_t i = 0; i < rep.images.size() && !rep.nonabelian; ++i)
        for (size_t j = i + 1; j < rep.images.size() && !rep.nonabelian; ++j) {
            Mat2<F> comm = rep.images[i] * rep.images[j] - rep.images[j] * rep.images[i];
            if constexpr (F::exact) {
                rep.nonabelian = !comm.is_zero();
            } else {
                rep.nonabelian = comm.norm() > tol * std::max(1.0, rep.images[i].norm() *
                                                                       rep.images[j].norm());
            }
        }
    return rep;
}

template <class F>
Representation<F> trivial_rep(const Presentation& p) {
    std::vector<Mat2<F>> images(p.generators.size(), Mat2<F>::identity());
    return validate_rep<F>(p, std::move(images));
}

// Phi = (rho (x) a) o phi from the definition of the invariant: a single word
// w maps to t^{deg(w)} rho(w), extended linearly to the group ring.
template <class F>
LaurentMat<F> phi_of(const GroupRingElement& x, const Representation<F>& rep,
                     const std::vector<int>& degrees) {
    LaurentMat<F> out;
    for (const auto& [w, c] : x.terms()) {
        int deg = 0;
        for (const Letter& l : w.letters()) {
            if (l.gen < 0 || static_cast<size_t>(l.gen) >= degrees.size())
                throw unknown_generator("word letter outside the degree map");
            deg += l.sign * degrees[l.gen];
        }
        out.add_term(deg, rep.evaluate(w) * F::from_int(c));
    }
    return out;
}

// det Phi(g - 1) = t^{2d} - tr(rho(g)) t^d + 1 for an SL2 image of degree d.
template <class F>
Laurent<F> denominator_poly(const Representation<F>& rep, const std::vector<int>& degrees,
                            int gen) {
    const Mat2<F>& m = rep.image(gen);
    int d = degrees.at(gen);
    Laurent<F> out;
    out.add_term(2 * d, m.det());
    out.add_term(d, -m.trace());
    out.add_term(0, F::one());
    return out;
}

} // namespace tapkit
