#pragma once

#include "tapkit/builders.hpp"
#include "tapkit/laurent.hpp"
#include "tapkit/presentation.hpp"
#include "tapkit/representation.hpp"
#include "tapkit/scalars.hpp"
#include "tapkit/wada.hpp"

#include <json.hpp>

#include <string>

namespace tapkit {

using Json = nlohmann::json;

inline constexpr const char* kSchemaTag = "tapkit/v1";

// ---------------------------------------------------------------------------
// Presentations: { "generators": [...], "relators": ["a b^-1 a", ...],
//                  "meridian": "c" }
// ---------------------------------------------------------------------------

inline Json presentation_to_json(const Presentation& p) {
    Json j;
    j["generators"] = p.generators;
    Json rels = Json::array();
    for (const Word& r : p.relators) rels.push_back(word_to_string(r, p.generators));
    j["relators"] = rels;
    j["meridian"] = p.generators.at(p.meridian);
    return j;
}

inline Presentation presentation_from_json(const Json& j) {
    if (!j.contains("generators") || !j.contains("relators") || !j.contains("meridian"))
        throw parse_error("presentation JSON needs generators, relators, meridian");
    Presentation p;
    p.generators = j.at("generators").get<std::vector<std::string>>();
    for (const auto& r : j.at("relators"))
        p.relators.push_back(word_from_string(r.get<std::string>(), p.generators));
    p.meridian = p.gen_id(j.at("meridian").get<std::string>());
    compute_degrees(p);
    return p;
}

// ---------------------------------------------------------------------------
// Scalar literals.
//   exact:     {"re": "p/q", "im": "p/q"}
//   algebraic: {"poly": [exact...], "modulus": [exact...]}
//   float:     {"re": 1.25, "im": 0.0}
// ---------------------------------------------------------------------------

inline Json scalar_to_json(const GaussianRational& v) {
    std::ostringstream re, im;
    re << v.re();
    im << v.im();
    return Json{{"re", re.str()}, {"im", im.str()}};
}

inline Json scalar_to_json(const ComplexFloat& v) {
    return Json{{"re", v.value().real()}, {"im", v.value().imag()}};
}

inline Json scalar_to_json(const AlgebraicExt& v) {
    Json poly = Json::array();
    for (const auto& c : v.coeffs()) poly.push_back(scalar_to_json(c));
    Json modulus = Json::array();
    if (v.modulus())
        for (const auto& c : *v.modulus()) modulus.push_back(scalar_to_json(c));
    return Json{{"poly", poly}, {"modulus", modulus}};
}

template <class F>
F scalar_from_json(const Json& j);

template <>
inline GaussianRational scalar_from_json<GaussianRational>(const Json& j) {
    auto parse_rational = [](const Json& v) -> Rational {
        try {
            if (v.is_string()) return Rational(v.get<std::string>());
            if (v.is_number_integer()) return Rational(v.get<long long>());
        } catch (const std::exception&) {
            throw parse_error("bad rational literal '" + v.dump() + "'");
        }
        throw parse_error("exact scalar parts must be strings like \"3/4\"");
    };
    return GaussianRational(parse_rational(j.at("re")), parse_rational(j.at("im")));
}

template <>
inline ComplexFloat scalar_from_json<ComplexFloat>(const Json& j) {
    return ComplexFloat(j.at("re").get<double>(), j.at("im").get<double>());
}

template <>
inline AlgebraicExt scalar_from_json<AlgebraicExt>(const Json& j) {
    std::vector<GaussianRational> coeffs;
    for (const auto& c : j.at("poly")) coeffs.push_back(scalar_from_json<GaussianRational>(c));
    std::shared_ptr<const AlgebraicExt::Modulus> mod;
    if (j.contains("modulus") && !j.at("modulus").empty()) {
        AlgebraicExt::Modulus m;
        for (const auto& c : j.at("modulus")) m.push_back(scalar_from_json<GaussianRational>(c));
        mod = std::make_shared<const AlgebraicExt::Modulus>(std::move(m));
    }
    return AlgebraicExt(mod, std::move(coeffs));
}

enum class ScalarBackend { Exact, Algebraic, Float };

inline ScalarBackend detect_backend(const Json& scalar) {
    if (scalar.contains("poly")) return ScalarBackend::Algebraic;
    if (scalar.contains("re") && scalar.at("re").is_string()) return ScalarBackend::Exact;
    return ScalarBackend::Float;
}

// ---------------------------------------------------------------------------
// Polynomials: { "coeffs": { "<exponent>": scalar } }, exponent keys decimal.
// ---------------------------------------------------------------------------

template <class F>
Json laurent_to_json(const Laurent<F>& p) {
    Json coeffs = Json::object();
    for (const auto& [e, c] : p.coeffs()) coeffs[std::to_string(e)] = scalar_to_json(c);
    return Json{{"coeffs", coeffs}};
}

template <class F>
Laurent<F> laurent_from_json(const Json& j) {
    Laurent<F> p;
    for (const auto& [key, val] : j.at("coeffs").items()) {
        int exp = 0;
        try {
            exp = std::stoi(key);
        } catch (const std::exception&) {
            throw parse_error("bad exponent key '" + key + "'");
        }
        p.add_term(exp, scalar_from_json<F>(val));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Representations: { "<generator>": [[a, b], [c, d]], ... }
// ---------------------------------------------------------------------------

template <class F>
Json representation_to_json(const Presentation& p, const Representation<F>& rep) {
    Json j = Json::object();
    for (size_t g = 0; g < p.generators.size(); ++g) {
        const Mat2<F>& m = rep.images[g];
        j[p.generators[g]] = Json::array(
            {Json::array({scalar_to_json(m.a), scalar_to_json(m.b)}),
             Json::array({scalar_to_json(m.c), scalar_to_json(m.d)})});
    }
    return j;
}

template <class F>
Representation<F> representation_from_json(const Presentation& p, const Json& j,
                                           double tol = 1e-9) {
    const Json& images = j.contains("images") ? j.at("images") : j;
    std::vector<Mat2<F>> mats(p.generators.size());
    for (size_t g = 0; g < p.generators.size(); ++g) {
        const std::string& name = p.generators[g];
        if (!images.contains(name))
            throw unknown_generator("representation JSON lacks an image for '" + name + "'");
        const Json& m = images.at(name);
        mats[g] = Mat2<F>{scalar_from_json<F>(m.at(0).at(0)), scalar_from_json<F>(m.at(0).at(1)),
                          scalar_from_json<F>(m.at(1).at(0)), scalar_from_json<F>(m.at(1).at(1))};
    }
    return validate_rep<F>(p, std::move(mats), tol);
}

inline ScalarBackend detect_rep_backend(const Json& j) {
    const Json& images = j.contains("images") ? j.at("images") : j;
    for (const auto& [key, val] : images.items()) {
        (void)key;
        return detect_backend(val.at(0).at(0));
    }
    throw parse_error("empty representation JSON");
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

template <class F>
Json tap_result_to_json(const TapResult<F>& res) {
    Json j;
    j["schema"] = kSchemaTag;
    j["method"] = res.method;
    j["column"] = res.column;
    j["numerator"] = laurent_to_json(res.numerator);
    j["denominator"] = laurent_to_json(res.denominator);
    j["exact_division"] = res.exact_division;
    if (res.exact_division)
        j["polynomial"] = laurent_to_json(res.polynomial);
    else
        j["polynomial"] = nullptr;
    j["remainder_norm"] = res.remainder_norm;
    j["degree_span"] = res.degree_span;
    j["leading"] = scalar_to_json(res.leading);
    j["trailing"] = scalar_to_json(res.trailing);
    return j;
}

// Family specs for CLI round trips.
inline Json spec_to_json(const TwoBridgeSpec& s) {
    return Json{{"family", "two-bridge"}, {"m", s.m}};
}
inline Json spec_to_json(const Case2Spec& s) {
    return Json{{"family", "case2"}, {"beta1", s.beta1_sign}, {"m", s.m}, {"n", s.n}};
}
inline Json spec_to_json(const Case3Spec& s) { return Json{{"family", "case3"}, {"n", s.n}}; }

} // namespace tapkit
