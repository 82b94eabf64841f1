// Serial reference vs OpenMP kernels: replicate loops and histogram enumeration.

#include <benchmark/benchmark.h>

#include "gpas/estimator.hpp"
#include "gpas/ising.hpp"
#include "gpas/replicate.hpp"
#include "gpas/tpa.hpp"

namespace {

gpas::GpasResult one_gpas(std::size_t i, double mu, std::int64_t k) {
    gpas::SyntheticPoissonSource source(mu, gpas::replicate_stream(7, i, 0));
    gpas::RngStream aux = gpas::replicate_stream(7, i, 1);
    return gpas::gpas(source, k, aux);
}

void BM_GpasReplicatesSerial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto out = gpas::run_replicates_serial(n, [](std::size_t i) { return one_gpas(i, 3.0, 100); });
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GpasReplicatesParallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto out = gpas::run_replicates(n, [](std::size_t i) { return one_gpas(i, 3.0, 100); });
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TpaRunsSerial(benchmark::State& state) {
    const gpas::ising::IsingFamily family(
        gpas::ising::build_histogram(gpas::ising::Graph::lattice(4, 4)));
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto out = gpas::run_replicates_serial(n, [&](std::size_t i) {
            gpas::RngStream rng = gpas::replicate_stream(11, i, 0);
            return gpas::tpa_run(family, rng);
        });
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_TpaRunsParallel(benchmark::State& state) {
    const gpas::ising::IsingFamily family(
        gpas::ising::build_histogram(gpas::ising::Graph::lattice(4, 4)));
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto out = gpas::run_replicates(n, [&](std::size_t i) {
            gpas::RngStream rng = gpas::replicate_stream(11, i, 0);
            return gpas::tpa_run(family, rng);
        });
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_HistogramSerial(benchmark::State& state) {
    const auto g = gpas::ising::Graph::lattice(static_cast<std::size_t>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(gpas::ising::build_histogram_serial(g));
}

void BM_HistogramParallel(benchmark::State& state) {
    const auto g = gpas::ising::Graph::lattice(static_cast<std::size_t>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(gpas::ising::build_histogram(g));
}

}  // namespace

BENCHMARK(BM_GpasReplicatesSerial)->Arg(1000)->Arg(10000);
BENCHMARK(BM_GpasReplicatesParallel)->Arg(1000)->Arg(10000);
BENCHMARK(BM_TpaRunsSerial)->Arg(10000);
BENCHMARK(BM_TpaRunsParallel)->Arg(10000);
BENCHMARK(BM_HistogramSerial)->Arg(4)->Arg(5);
BENCHMARK(BM_HistogramParallel)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
