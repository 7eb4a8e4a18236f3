#include <benchmark/benchmark.h>

#include "gofpower/montecarlo.hpp"
#include "gofpower/power.hpp"
#include "gofpower/quadform.hpp"
#include "gofpower/spectrum.hpp"

using namespace gofpower;

namespace {

const SpectrumPair& spectra(int id) {
  static const SpectrumPair cache[] = {
      [] { auto e = reference_example(1); return compute_spectrum_pair(e.model, e.perturbation); }(),
      [] { auto e = reference_example(2); return compute_spectrum_pair(e.model, e.perturbation); }(),
      [] { auto e = reference_example(3); return compute_spectrum_pair(e.model, e.perturbation); }(),
      [] { auto e = reference_example(4); return compute_spectrum_pair(e.model, e.perturbation); }(),
  };
  return cache[id - 1];
}

void BM_CdfNull(benchmark::State& state) {
  const auto& s = spectra(static_cast<int>(state.range(0))).null;
  std::size_t nodes = 0;
  for (auto _ : state) {
    const auto e = cdf(s.mean(), s);
    nodes = e.nodes_used;
    benchmark::DoNotOptimize(e.value);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_CdfNull)->DenseRange(1, 4);

void BM_CdfAlternative(benchmark::State& state) {
  const auto& s = spectra(static_cast<int>(state.range(0))).alternative;
  std::size_t nodes = 0;
  for (auto _ : state) {
    const auto e = cdf(s.mean(), s);
    nodes = e.nodes_used;
    benchmark::DoNotOptimize(e.value);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_CdfAlternative)->DenseRange(1, 4);

void BM_Spectrum(benchmark::State& state) {
  const auto ex = reference_example(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_spectrum(ex.model, ex.perturbation).stability_rhs());
}
BENCHMARK(BM_Spectrum)->DenseRange(1, 4);

void BM_Multinomial(benchmark::State& state) {
  const auto ex = reference_example(static_cast<int>(state.range(0)));
  const auto probs = ex.model.probs();
  std::mt19937_64 rng(1);
  std::vector<std::uint64_t> counts(probs.size());
  for (auto _ : state) {
    sample_multinomial(rng, 1000000, probs, counts);
    benchmark::DoNotOptimize(counts.data());
  }
}
BENCHMARK(BM_Multinomial)->DenseRange(1, 4);

}  // namespace

BENCHMARK_MAIN();
