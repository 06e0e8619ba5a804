// tapkit: twisted Alexander polynomials of tunnel-number-one Montesinos
// knots, by a generic Fox-calculus engine and by the family closed forms.

#include "tapkit/builders.hpp"
#include "tapkit/case3.hpp"
#include "tapkit/closed_form.hpp"
#include "tapkit/errors.hpp"
#include "tapkit/json_io.hpp"
#include "tapkit/newton.hpp"
#include "tapkit/riley.hpp"
#include "tapkit/wada.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

using namespace tapkit;
using GR = GaussianRational;
using CF = ComplexFloat;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitComputation = 3;

using FamilySpec = std::variant<TwoBridgeSpec, Case2Spec, Case3Spec>;

struct Options {
    std::string family;
    std::vector<int> m, n;
    std::string beta1 = "+";
    int case3_n = 0;
    std::string presentation_path;
    std::string rep_selector;
    std::string column;
    std::string method = "engine";
    std::string out_path;
    double tol = 1e-9;
    bool allow_rational = false;
    uint64_t seed = 1;
    int seeds = 50;
    // sweep controls
    int sweep_k = 1, sweep_l = 2;
    int max_abs = 3;
    int samples = 25;
    int jobs = 0;
};

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw InvalidInput("BadOutput", "cannot open '" + out_path + "' for writing");
    os << j.dump(2) << "\n";
}

Json read_json_file(const std::string& path) {
    if (path == "-") {
        Json j;
        try {
            std::cin >> j;
        } catch (const Json::exception& e) {
            throw parse_error(std::string("standard input is not valid JSON: ") + e.what());
        }
        return j;
    }
    std::ifstream is(path);
    if (!is) throw InvalidInput("MissingFile", "cannot read '" + path + "'");
    Json j;
    try {
        is >> j;
    } catch (const Json::exception& e) {
        throw parse_error("'" + path + "' is not valid JSON: " + e.what());
    }
    return j;
}

FamilySpec parse_family(const Options& opt) {
    if (opt.family == "two-bridge") {
        TwoBridgeSpec s{opt.m};
        s.validate();
        return s;
    }
    if (opt.family == "case2") {
        Case2Spec s{opt.beta1 == "-" ? -1 : 1, opt.m, opt.n};
        s.validate();
        return s;
    }
    if (opt.family == "case3") return Case3Spec{opt.case3_n};
    throw InvalidInput("UnknownFamily", "family must be two-bridge, case2 or case3");
}

Presentation build_presentation(const FamilySpec& spec) {
    return std::visit(
        [](const auto& s) -> Presentation {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TwoBridgeSpec>) return build_two_bridge(s);
            if constexpr (std::is_same_v<T, Case2Spec>) return build_case2(s);
            if constexpr (std::is_same_v<T, Case3Spec>) return build_case3(s);
        },
        spec);
}

Presentation load_presentation(const Options& opt, std::optional<FamilySpec>* spec_out) {
    if (!opt.presentation_path.empty()) {
        if (spec_out) *spec_out = std::nullopt;
        return presentation_from_json(read_json_file(opt.presentation_path));
    }
    if (opt.family.empty())
        throw InvalidInput("MissingInput", "need --presentation or --family flags");
    FamilySpec spec = parse_family(opt);
    if (spec_out) *spec_out = spec;
    return build_presentation(spec);
}

// Representation selectors: trivial | riley:N | search:SEED | a JSON path.
struct LoadedRep {
    std::optional<Representation<GR>> exact;
    std::optional<Representation<AlgebraicExt>> algebraic;
    std::optional<Representation<CF>> floating;
    std::string description;
};

LoadedRep load_rep(const std::string& selector, const Presentation& p,
                   const std::optional<FamilySpec>& spec, double tol) {
    LoadedRep out;
    if (selector.empty() || selector == "trivial") {
        out.exact = trivial_rep<GR>(p);
        out.description = "trivial";
        return out;
    }
    if (selector.rfind("riley:", 0) == 0) {
        size_t index = 0;
        try {
            index = std::stoul(selector.substr(6));
        } catch (const std::exception&) {
            throw InvalidInput("BadRepSelector", "expected riley:<index>");
        }
        if (!spec || !std::holds_alternative<TwoBridgeSpec>(*spec))
            throw InvalidInput("BadRepSelector", "riley:N needs a two-bridge family");
        const auto& tb = std::get<TwoBridgeSpec>(*spec);
        auto reps = riley_slice_search(tb, 1, 96, tol < 1e-8 ? 1e-9 : tol);
        if (index >= reps.size())
            throw InvalidInput("BadRepSelector",
                               "riley index " + std::to_string(index) + " out of range (" +
                                   std::to_string(reps.size()) + " found)");
        // exact backend when the Riley polynomial is quadratic
        try {
            auto poly = riley_polynomial(tb);
            if (unipoly::degree(poly) <= 2) {
                out.algebraic = riley_rep_exact(tb, poly, p);
                out.description = "riley (exact)";
                return out;
            }
        } catch (const Error&) {
            // fall through to the numeric representative
        }
        out.floating = reps[index];
        out.description = "riley (numeric root)";
        return out;
    }
    if (selector.rfind("search:", 0) == 0) {
        uint64_t seed = 0;
        try {
            seed = std::stoull(selector.substr(7));
        } catch (const std::exception&) {
            throw InvalidInput("BadRepSelector", "expected search:<seed>");
        }
        auto found = search_nonabelian_rep(p, seed, 64, 120, tol < 1e-8 ? 1e-9 : tol);
        if (!found.rep)
            throw did_not_converge("representation search stalled at residual " +
                                   std::to_string(found.best_residual));
        out.floating = *found.rep;
        out.description = "searched (seed " + std::to_string(seed) + ")";
        return out;
    }
    Json j = read_json_file(selector);
    switch (detect_rep_backend(j)) {
    case ScalarBackend::Exact:
        out.exact = representation_from_json<GR>(p, j, tol);
        out.description = "file (exact)";
        break;
    case ScalarBackend::Algebraic:
        out.algebraic = representation_from_json<AlgebraicExt>(p, j, tol);
        out.description = "file (algebraic)";
        break;
    case ScalarBackend::Float:
        out.floating = representation_from_json<CF>(p, j, tol);
        out.description = "file (float)";
        break;
    }
    return out;
}

template <class F>
TapResult<F> run_method(const std::string& method, const Presentation& p,
                        const std::optional<FamilySpec>& spec, const Representation<F>& rep,
                        std::optional<int> column, DivisionPolicy policy, double tol) {
    if (method == "engine") return twisted_alexander(p, rep, column, policy, tol);
    if (method != "closed-form")
        throw InvalidInput("UnknownMethod", "method must be engine or closed-form");
    if (!spec) throw InvalidInput("MissingInput", "closed-form needs --family flags");
    return std::visit(
        [&](const auto& s) -> TapResult<F> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TwoBridgeSpec>)
                return recursion_two_bridge(s, rep, policy, tol);
            else if constexpr (std::is_same_v<T, Case2Spec>)
                return recursion_case2(s, rep, policy, tol);
            else
                return case3_polynomial(s, rep, nullptr, Case3Convention::LeadingPower, policy,
                                        tol);
        },
        *spec);
}

template <class F>
Json run_tap_with(const Options& opt, const Presentation& p,
                  const std::optional<FamilySpec>& spec, const Representation<F>& rep) {
    std::optional<int> column;
    if (!opt.column.empty()) column = p.gen_id(opt.column);
    DivisionPolicy policy =
        opt.allow_rational ? DivisionPolicy::AllowRational : DivisionPolicy::RequireExact;
    TapResult<F> res = run_method(opt.method, p, spec, rep, column, policy, opt.tol);
    return tap_result_to_json(res);
}

Json dispatch_tap(const Options& opt, const Presentation& p,
                  const std::optional<FamilySpec>& spec, const LoadedRep& rep) {
    if (rep.exact) return run_tap_with(opt, p, spec, *rep.exact);
    if (rep.algebraic) return run_tap_with(opt, p, spec, *rep.algebraic);
    return run_tap_with(opt, p, spec, *rep.floating);
}

// compare: engine vs closed form vs coefficient predictions; returns the
// report and whether everything agreed.
template <class F>
std::pair<Json, bool> compare_methods(const Presentation& p, const FamilySpec& spec,
                                      const Representation<F>& rep, double tol) {
    Json report;
    bool ok = true;
    TapResult<F> eng =
        twisted_alexander(p, rep, std::nullopt, DivisionPolicy::AllowRational, tol);
    TapResult<F> closed = std::visit(
        [&](const auto& s) -> TapResult<F> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TwoBridgeSpec>)
                return recursion_two_bridge(s, rep, DivisionPolicy::AllowRational, tol);
            else if constexpr (std::is_same_v<T, Case2Spec>)
                return recursion_case2(s, rep, DivisionPolicy::AllowRational, tol);
            else
                return case3_polynomial(s, rep, nullptr, Case3Convention::LeadingPower,
                                        DivisionPolicy::AllowRational, tol);
        },
        spec);
    bool eq = tap_equivalent(eng, closed, tol);
    ok = ok && eq;
    report["engine"] = tap_result_to_json(eng);
    report["closed_form"] = tap_result_to_json(closed);
    report["methods_agree"] = eq;

    if (const auto* tb = std::get_if<TwoBridgeSpec>(&spec)) {
        F lead = leading_coeff_two_bridge(*tb, rep);
        report["predicted_extreme"] = scalar_to_json(lead);
        bool plus = close(closed.leading, lead, tol) && close(closed.trailing, lead, tol);
        bool minus = close(closed.leading, -lead, tol) && close(closed.trailing, -lead, tol);
        bool lead_ok = lead.is_zero() || plus || minus;
        if (!lead.is_zero() && closed.exact_division)
            lead_ok = lead_ok && closed.degree_span == 2 * tb->k();
        report["extremes_match"] = lead_ok;
        ok = ok && lead_ok;
    } else if (const auto* c2 = std::get_if<Case2Spec>(&spec)) {
        auto coeffs = coeffs_case2(*c2, rep);
        report["predicted_extreme"] = scalar_to_json(coeffs.value);
        report["predicted_degree"] = coeffs.degree;
        bool lead_ok = true;
        if (!coeffs.value.is_zero() && coeffs.value.norm() > tol) {
            bool plus = close(closed.leading, coeffs.value, std::max(tol, 1e-6)) &&
                        close(closed.trailing, coeffs.value, std::max(tol, 1e-6));
            bool minus = close(closed.leading, -coeffs.value, std::max(tol, 1e-6)) &&
                         close(closed.trailing, -coeffs.value, std::max(tol, 1e-6));
            lead_ok = (plus || minus) && closed.degree_span == coeffs.degree;
        }
        report["extremes_match"] = lead_ok;
        ok = ok && lead_ok;
    } else if (const auto* c3 = std::get_if<Case3Spec>(&spec)) {
        auto blocks = case3_blocks(*c3, rep, Case3Convention::LeadingPower);
        F kappa0 = blocks.B.det();
        report["predicted_extreme"] = scalar_to_json(kappa0);
        bool lead_ok = true;
        if (!kappa0.is_zero() && kappa0.norm() > tol && closed.exact_division) {
            bool plus = close(closed.leading, kappa0, std::max(tol, 1e-6)) &&
                        close(closed.trailing, kappa0, std::max(tol, 1e-6));
            bool minus = close(closed.leading, -kappa0, std::max(tol, 1e-6)) &&
                         close(closed.trailing, -kappa0, std::max(tol, 1e-6));
            lead_ok = plus || minus;
        }
        report["extremes_match"] = lead_ok;
        ok = ok && lead_ok;
    }
    return {report, ok};
}

std::pair<Json, bool> dispatch_compare(const Presentation& p, const FamilySpec& spec,
                                       const LoadedRep& rep, double tol) {
    if (rep.exact) return compare_methods(p, spec, *rep.exact, tol);
    if (rep.algebraic) return compare_methods(p, spec, *rep.algebraic, tol);
    return compare_methods(p, spec, *rep.floating, tol);
}

// One sweep record: alexander data, predictions, and (optionally) the
// engine/closed-form comparison on a searched representation.
Json sweep_record(const FamilySpec& spec, uint64_t seed, double tol, bool with_rep) {
    Json rec;
    Presentation p = build_presentation(spec);
    std::visit([&](const auto& s) { rec["spec"] = spec_to_json(s); }, spec);
    Laurent<GR> alex_poly = alexander(p);
    rec["alexander"] = laurent_to_json(alex_poly);
    if (const auto* tb = std::get_if<TwoBridgeSpec>(&spec)) {
        auto cf = alex_closed_form(*tb);
        rec["alex_leading"] = cf.leading;
        rec["alex_degree"] = cf.degree;
        rec["alex_match"] =
            alex_poly.span() == cf.degree &&
            alex_poly.coeff(alex_poly.max_exp()) == GR(cf.leading);
        rec["genus"] = genus(*tb);
    } else if (const auto* c2 = std::get_if<Case2Spec>(&spec)) {
        auto cf = alex_closed_form(*c2);
        rec["alex_leading"] = cf.leading;
        rec["alex_degree"] = cf.degree;
        rec["alex_match"] = cf.leading == 0
                                ? alex_poly.span() < cf.degree
                                : alex_poly.span() == cf.degree &&
                                      alex_poly.coeff(alex_poly.max_exp()) == GR(cf.leading);
        rec["genus"] = genus(*c2);
    }
    if (with_rep) {
        auto out = search_nonabelian_rep(p, seed, 40, 120, 1e-9);
        rec["rep_found"] = bool(out.rep);
        if (out.rep) {
            auto [cmp, ok] = compare_methods(p, spec, *out.rep, std::max(tol, 1e-7));
            rec["methods_agree"] = cmp["methods_agree"];
            rec["extremes_match"] = cmp["extremes_match"];
            if (cmp.contains("predicted_extreme"))
                rec["predicted_extreme"] = cmp["predicted_extreme"];
            if (cmp.contains("predicted_degree"))
                rec["predicted_degree"] = cmp["predicted_degree"];
            rec["degree_span"] = cmp["closed_form"]["degree_span"];
            rec["monic"] = [&] {
                double lead = std::abs(scalar_from_json<CF>(cmp["closed_form"]["leading"])
                                           .value());
                return std::abs(lead - 1.0) < 1e-6;
            }();
            rec["agree"] = ok;
            // degree = 4g - 2 cross-check where the prediction is nonzero
            if (rec.contains("genus") && cmp.contains("predicted_extreme")) {
                double pred = 0;
                if (cmp["predicted_extreme"].contains("poly")) {
                    pred = 1; // algebraic: treated as nonzero when present
                } else if (cmp["predicted_extreme"]["re"].is_string()) {
                    pred = scalar_from_json<GR>(cmp["predicted_extreme"]).norm();
                } else {
                    pred = scalar_from_json<CF>(cmp["predicted_extreme"]).norm();
                }
                if (pred > 1e-6) {
                    int g = rec["genus"].get<int>();
                    rec["degree_is_4g_minus_2"] =
                        cmp["closed_form"]["degree_span"].get<int>() == 4 * g - 2;
                }
            }
        }
    }
    return rec;
}

int cmd_build(const Options& opt) {
    FamilySpec spec = parse_family(opt);
    Presentation p = build_presentation(spec);
    Json j = presentation_to_json(p);
    j["schema"] = kSchemaTag;
    std::visit([&](const auto& s) { j["spec"] = spec_to_json(s); }, spec);
    emit(j, opt.out_path);
    return 0;
}

int cmd_normalize(const Options& opt, const MontesinosInput& input) {
    Case2Spec spec = normalize_case2(input);
    Json j = spec_to_json(spec);
    j["schema"] = kSchemaTag;
    emit(j, opt.out_path);
    return 0;
}

int cmd_reps_riley(const Options& opt) {
    TwoBridgeSpec spec{opt.m};
    spec.validate();
    Presentation p = build_two_bridge(spec);
    Json j;
    j["schema"] = kSchemaTag;
    Json arr = Json::array();
    bool exact_done = false;
    try {
        auto poly = riley_polynomial(spec);
        Json pc = Json::array();
        for (const auto& c : poly) pc.push_back(scalar_to_json(c));
        j["riley_polynomial"] = pc;
        if (unipoly::degree(poly) <= 2) {
            auto rep = riley_rep_exact(spec, poly, p);
            arr.push_back(representation_to_json(p, rep));
            exact_done = true;
        }
    } catch (const Error&) {
        // high-degree symbolic route unavailable; numeric roots below
    }
    if (!exact_done) {
        auto reps = riley_slice_search(spec, opt.seed, std::max(opt.seeds, 32),
                                       std::min(opt.tol, 1e-8));
        for (const auto& rep : reps) arr.push_back(representation_to_json(p, rep));
    }
    j["reps"] = arr;
    emit(j, opt.out_path);
    return 0;
}

int cmd_reps_search(const Options& opt) {
    std::optional<FamilySpec> spec;
    Presentation p = load_presentation(opt, &spec);
    auto out = search_nonabelian_rep(p, opt.seed, opt.seeds, 120, std::min(opt.tol, 1e-9));
    if (!out.rep)
        throw did_not_converge("no nonabelian representation found; best residual " +
                               std::to_string(out.best_residual));
    Json j = representation_to_json(p, *out.rep);
    j["schema"] = kSchemaTag;
    j["residual"] = out.best_residual;
    emit(j, opt.out_path);
    return 0;
}

int cmd_tap(const Options& opt) {
    std::optional<FamilySpec> spec;
    Presentation p = load_presentation(opt, &spec);
    LoadedRep rep = load_rep(opt.rep_selector, p, spec, opt.tol);
    Json j = dispatch_tap(opt, p, spec, rep);
    j["rep"] = rep.description;
    emit(j, opt.out_path);
    return 0;
}

int cmd_alex(const Options& opt) {
    std::optional<FamilySpec> spec;
    Presentation p;
    if (opt.presentation_path.empty() && opt.family.empty())
        p = presentation_from_json(read_json_file("-")); // pipe mode
    else
        p = load_presentation(opt, &spec);
    Laurent<GR> poly = alexander(p);
    Json j = laurent_to_json(poly);
    j["schema"] = kSchemaTag;
    j["degree"] = poly.span();
    emit(j, opt.out_path);
    return 0;
}

int cmd_compare(const Options& opt) {
    std::optional<FamilySpec> spec;
    Presentation p = load_presentation(opt, &spec);
    if (!spec) throw InvalidInput("MissingInput", "compare needs --family flags");
    LoadedRep rep = load_rep(opt.rep_selector, p, *spec, opt.tol);
    auto [report, ok] = dispatch_compare(p, *spec, rep, opt.tol);
    report["schema"] = kSchemaTag;
    report["rep"] = rep.description;
    report["agree"] = ok;
    emit(report, opt.out_path);
    return ok ? 0 : kExitMismatch;
}

int cmd_sweep(const Options& opt) {
    std::mt19937_64 rng(opt.seed);
    std::vector<FamilySpec> grid;
    if (opt.family == "two-bridge") {
        std::uniform_int_distribution<int> mag(1, opt.max_abs);
        std::uniform_int_distribution<int> sgn(0, 1);
        for (int s = 0; s < opt.samples; ++s) {
            TwoBridgeSpec tb;
            for (int i = 0; i <= opt.sweep_k; ++i)
                tb.m.push_back(sgn(rng) ? mag(rng) : -mag(rng));
            grid.emplace_back(tb);
        }
    } else if (opt.family == "case2") {
        std::uniform_int_distribution<int> mag(1, std::min(opt.max_abs, 2));
        std::uniform_int_distribution<int> sgn(0, 1);
        std::uniform_int_distribution<int> zero(0, 2);
        for (int s = 0; s < opt.samples; ++s) {
            Case2Spec c2;
            c2.beta1_sign = sgn(rng) ? 1 : -1;
            for (int i = 0; i <= opt.sweep_k; ++i)
                c2.m.push_back(sgn(rng) ? mag(rng) : -mag(rng));
            if (zero(rng) == 0) c2.m[0] = 0;
            for (int i = 0; i < opt.sweep_l; ++i)
                c2.n.push_back(sgn(rng) ? mag(rng) : -mag(rng));
            grid.emplace_back(c2);
        }
    } else if (opt.family == "case3") {
        for (int n = -opt.max_abs; n <= opt.max_abs; ++n) grid.emplace_back(Case3Spec{n});
    } else {
        throw InvalidInput("UnknownFamily", "sweep family must be two-bridge, case2 or case3");
    }

    const int jobs = opt.jobs > 0 ? opt.jobs
                                  : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<Json> records(grid.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= grid.size()) break;
            try {
                records[i] = sweep_record(grid[i], opt.seed + 1000 + i, opt.tol, true);
            } catch (const Error& e) {
                records[i] = Json{{"error", {{"type", e.code()}, {"message", e.what()}}}};
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ostringstream lines;
    bool all_ok = true;
    for (auto& rec : records) {
        rec["schema"] = kSchemaTag;
        lines << rec.dump() << "\n";
        if (rec.contains("agree") && !rec["agree"].get<bool>()) all_ok = false;
        if (rec.contains("alex_match") && !rec["alex_match"].get<bool>()) all_ok = false;
    }
    if (opt.out_path.empty() || opt.out_path == "-") {
        std::cout << lines.str();
    } else {
        std::ofstream os(opt.out_path);
        os << lines.str();
    }
    return all_ok ? 0 : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted Alexander polynomials of tunnel-number-one Montesinos knots"};
    app.require_subcommand(1);
    Options opt;
    if (const char* env_tol = std::getenv("TAPKIT_TOL")) opt.tol = std::atof(env_tol);

    auto add_family_flags = [&](CLI::App* cmd) {
        cmd->add_option("--family", opt.family, "two-bridge | case2 | case3");
        cmd->add_option("--m", opt.m, "m-vector (comma separated)")->delimiter(',');
        cmd->add_option("--n", opt.n, "n-vector (comma separated)")->delimiter(',');
        cmd->add_option("--beta1", opt.beta1, "+ or - (case2 first tangle sign)");
        cmd->add_option("--case3-n", opt.case3_n, "case3 twist parameter n");
    };

    auto* build = app.add_subcommand("build", "emit a knot group presentation as JSON");
    build->fallthrough();
    auto* b_tb = build->add_subcommand("two-bridge");
    b_tb->fallthrough();
    b_tb->add_option("--m", opt.m)->delimiter(',')->required();
    auto* b_c2 = build->add_subcommand("case2");
    b_c2->fallthrough();
    b_c2->add_option("--beta1", opt.beta1);
    b_c2->add_option("--m", opt.m)->delimiter(',')->required();
    b_c2->add_option("--n", opt.n)->delimiter(',')->required();
    auto* b_c3 = build->add_subcommand("case3");
    b_c3->fallthrough();
    b_c3->add_option("--n", opt.case3_n)->required();
    MontesinosInput minput;
    auto* b_mont = build->add_subcommand(
        "montesinos", "normalize M(b; (2,b1),(a2,b2),(a3,b3)) into a case2 spec");
    b_mont->fallthrough();
    b_mont->add_option("--b", minput.b);
    b_mont->add_option("--beta1", minput.beta1)->required();
    b_mont->add_option("--alpha2", minput.alpha2)->required();
    b_mont->add_option("--beta2", minput.beta2)->required();
    b_mont->add_option("--alpha3", minput.alpha3)->required();
    b_mont->add_option("--beta3", minput.beta3)->required();
    build->add_option("--out", opt.out_path);

    auto* reps = app.add_subcommand("reps", "find SL2 representations");
    reps->fallthrough();
    auto* r_riley = reps->add_subcommand("riley", "parabolic representations, two-bridge");
    r_riley->fallthrough();
    r_riley->add_option("--m", opt.m)->delimiter(',')->required();
    r_riley->add_option("--seed", opt.seed);
    r_riley->add_option("--seeds", opt.seeds);
    auto* r_search = reps->add_subcommand("search", "numeric nonabelian search");
    r_search->fallthrough();
    r_search->add_option("--presentation", opt.presentation_path);
    add_family_flags(r_search);
    r_search->add_option("--seed", opt.seed);
    r_search->add_option("--seeds", opt.seeds);
    reps->add_option("--tol", opt.tol);
    reps->add_option("--out", opt.out_path);

    auto* tap = app.add_subcommand("tap", "twisted Alexander polynomial");
    tap->add_option("--presentation", opt.presentation_path);
    add_family_flags(tap);
    tap->add_option("--rep", opt.rep_selector, "trivial | riley:N | search:SEED | file.json");
    tap->add_option("--column", opt.column, "removed generator (default: meridian)");
    tap->add_option("--method", opt.method, "engine | closed-form");
    tap->add_flag("--allow-rational", opt.allow_rational,
                  "return numerator/denominator when division is inexact");
    tap->add_option("--tol", opt.tol);
    tap->add_option("--out", opt.out_path);

    auto* alex = app.add_subcommand("alex", "classical Alexander polynomial");
    alex->add_option("--presentation", opt.presentation_path,
                     "presentation JSON (reads stdin when omitted)");
    add_family_flags(alex);
    alex->add_option("--out", opt.out_path);

    auto* compare = app.add_subcommand("compare", "engine vs closed form, exit 0 iff equal");
    add_family_flags(compare);
    compare->add_option("--rep", opt.rep_selector)->required();
    compare->add_option("--tol", opt.tol);
    compare->add_option("--out", opt.out_path);

    auto* sweep = app.add_subcommand("sweep", "parameter sweep, one JSON record per line");
    sweep->add_option("--family", opt.family)->required();
    sweep->add_option("--k", opt.sweep_k);
    sweep->add_option("--l", opt.sweep_l);
    sweep->add_option("--max-abs", opt.max_abs);
    sweep->add_option("--samples", opt.samples);
    sweep->add_option("--seed", opt.seed);
    sweep->add_option("--jobs", opt.jobs);
    sweep->add_option("--tol", opt.tol);
    sweep->add_option("--out", opt.out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            if (b_tb->parsed()) opt.family = "two-bridge";
            if (b_c2->parsed()) opt.family = "case2";
            if (b_c3->parsed()) opt.family = "case3";
            if (b_mont->parsed()) return cmd_normalize(opt, minput);
            return cmd_build(opt);
        }
        if (reps->parsed()) {
            if (r_riley->parsed()) return cmd_reps_riley(opt);
            return cmd_reps_search(opt);
        }
        if (tap->parsed()) return cmd_tap(opt);
        if (alex->parsed()) return cmd_alex(opt);
        if (compare->parsed()) return cmd_compare(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
    } catch (const InvalidInput& e) {
        std::cout << Json{{"schema", kSchemaTag},
                          {"error", {{"type", e.code()}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return kExitInvalidInput;
    } catch (const Json::exception& e) {
        std::cout << Json{{"schema", kSchemaTag},
                          {"error", {{"type", "ParseError"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return kExitInvalidInput;
    } catch (const ComputationError& e) {
        std::cout << Json{{"schema", kSchemaTag},
                          {"error", {{"type", e.code()}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return kExitComputation;
    } catch (const std::exception& e) {
        std::cout << Json{{"schema", kSchemaTag},
                          {"error", {{"type", "Internal"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return kExitComputation;
    }
    return 0;
}
