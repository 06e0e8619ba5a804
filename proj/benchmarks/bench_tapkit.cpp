#include "tapkit/builders.hpp"
#include "tapkit/closed_form.hpp"
#include "tapkit/riley.hpp"
#include "tapkit/wada.hpp"
#include "tapkit/words.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace tapkit;
using GR = GaussianRational;
using CF = ComplexFloat;

namespace {

Representation<CF> trivial_float(const Presentation& p) { return trivial_rep<CF>(p); }

void BM_fox_derivative(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> gen(0, 3), sgn(0, 1);
    std::vector<Letter> letters;
    for (int i = 0; i < state.range(0); ++i)
        letters.push_back(Letter{gen(rng), sgn(rng) ? 1 : -1});
    Word w(letters);
    for (auto _ : state) benchmark::DoNotOptimize(fox_derivative(w, 0));
}
BENCHMARK(BM_fox_derivative)->Arg(64)->Arg(256)->Arg(1024);

void BM_det_bareiss_exact(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> coeff(-3, 3), expo(-2, 2);
    const size_t n = state.range(0);
    LaurentMatrix<GR> m(n, std::vector<Laurent<GR>>(n));
    for (auto& row : m)
        for (auto& e : row)
            for (int t = 0; t < 2; ++t) e.add_term(expo(rng), GR(coeff(rng)));
    for (auto _ : state) benchmark::DoNotOptimize(det_bareiss(m));
}
BENCHMARK(BM_det_bareiss_exact)->Arg(4)->Arg(8)->Arg(12);

void BM_det_interpolate_float(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coeff(-2, 2);
    std::uniform_int_distribution<int> expo(-2, 2);
    const size_t n = state.range(0);
    LaurentMatrix<CF> m(n, std::vector<Laurent<CF>>(n));
    for (auto& row : m)
        for (auto& e : row)
            for (int t = 0; t < 2; ++t) e.add_term(expo(rng), CF(coeff(rng), coeff(rng)));
    for (auto _ : state) benchmark::DoNotOptimize(det_interpolate(m));
}
BENCHMARK(BM_det_interpolate_float)->Arg(8)->Arg(18)->Arg(36);

void BM_engine_two_bridge(benchmark::State& state) {
    TwoBridgeSpec spec{{2, -1, 3, -2}};
    Presentation p = build_two_bridge(spec);
    auto rep = trivial_float(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            twisted_alexander(p, rep, std::nullopt, DivisionPolicy::AllowRational, 1e-8));
}
BENCHMARK(BM_engine_two_bridge);

void BM_recursion_two_bridge(benchmark::State& state) {
    TwoBridgeSpec spec{{2, -1, 3, -2}};
    Presentation p = build_two_bridge(spec);
    auto rep = trivial_float(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            recursion_two_bridge(spec, rep, DivisionPolicy::AllowRational, 1e-8));
}
BENCHMARK(BM_recursion_two_bridge);

void BM_engine_case2(benchmark::State& state) {
    Case2Spec spec{1, {1, -2, 1}, {-2, 1}};
    Presentation p = build_case2(spec);
    auto rep = trivial_float(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            twisted_alexander(p, rep, std::nullopt, DivisionPolicy::AllowRational, 1e-8));
}
BENCHMARK(BM_engine_case2);

void BM_recursion_case2(benchmark::State& state) {
    Case2Spec spec{1, {1, -2, 1}, {-2, 1}};
    Presentation p = build_case2(spec);
    auto rep = trivial_float(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            recursion_case2(spec, rep, DivisionPolicy::AllowRational, 1e-8));
}
BENCHMARK(BM_recursion_case2);

void BM_riley_slice_search(benchmark::State& state) {
    TwoBridgeSpec spec{{2, -1}};
    for (auto _ : state) benchmark::DoNotOptimize(riley_slice_search(spec, 5, 32));
}
BENCHMARK(BM_riley_slice_search);

} // namespace

BENCHMARK_MAIN();
