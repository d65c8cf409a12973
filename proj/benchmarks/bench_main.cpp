#include <benchmark/benchmark.h>

#include "loopmass/correlators.hpp"
#include "loopmass/honeycomb_oracle.hpp"
#include "loopmass/mu_mass.hpp"
#include "loopmass/pde_check.hpp"
#include "loopmass/sle_drift.hpp"
#include "loopmass/specfun.hpp"

using namespace loopmass;

namespace {

const BulkConfig kSquare{{Complex(0, 0), Complex(1, 0), Complex(1, 1), Complex(0, 1)}};

void BM_hyp2f1(benchmark::State& s) {
    // inside the series disc, then continued far outside it
    Complex z = s.range(0) ? Complex(3.0, 2.0) : Complex(0.3, 0.2);
    for (auto _ : s) benchmark::DoNotOptimize(hyp2f1(1.0 / 3, 2.0 / 3, 4.0 / 3, z));
}
BENCHMARK(BM_hyp2f1)->Arg(0)->Arg(1);

void BM_four_point(benchmark::State& s) {
    auto p = params_from_n(0.7);
    for (auto _ : s) benchmark::DoNotOptimize(four_point(kSquare, p));
}
BENCHMARK(BM_four_point);

void BM_w_bulk(benchmark::State& s) {
    auto pat = SeparationPattern::parse_bulk("14|23");
    for (auto _ : s) benchmark::DoNotOptimize(w_bulk(pat, kSquare).value);
}
BENCHMARK(BM_w_bulk);

void BM_bpz_residual(benchmark::State& s) {
    auto p = params_from_n(0.7);
    for (auto _ : s) benchmark::DoNotOptimize(bpz_residual(1, kSquare, p).normalized);
}
BENCHMARK(BM_bpz_residual);

void BM_count_polygons(benchmark::State& s) {
    Lattice lat({12, 12});
    int lmax = int(s.range(0));
    std::uint64_t n = 0;
    for (auto _ : s) n = count_polygons(lat, lmax).polygons;
    s.counters["polygons"] = double(n);
}
BENCHMARK(BM_count_polygons)->Arg(14)->Arg(18)->Arg(22)->Unit(benchmark::kMillisecond);

void BM_drift(benchmark::State& s) {
    DriftOptions d;
    d.runs = int(s.range(0));
    for (auto _ : s) benchmark::DoNotOptimize(drift_estimate(kSquare, d).empirical_drift);
    s.SetItemsProcessed(s.iterations() * d.runs);
}
BENCHMARK(BM_drift)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
