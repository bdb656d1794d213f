#include <benchmark/benchmark.h>

#include <qnblp/bounds.hpp>
#include <qnblp/gate_synth.hpp>
#include <qnblp/pipeline.hpp>
#include <qnblp/qram.hpp>
#include <qnblp/rng.hpp>
#include <qnblp/samples.hpp>
#include <qnblp/statevec.hpp>

#include <cstdint>

namespace {

using namespace qnblp;

SampleSet make_samples(int n, int q, std::uint64_t seed) {
  ProblemInstance instance;
  instance.n = n;
  instance.eta = 0.25;
  instance.master_seed = seed;
  instance.secret = BitString::from_index(0x2D & ((1u << n) - 1), n);
  RngStream stream(seed, {0});
  return generate_samples(instance, q, stream);
}

void BM_ApplyKernel(benchmark::State& state) {
  const int width = static_cast<int>(state.range(0));
  const Circuit kernel = synth_bv_kernel(width - 1);
  StateVector vec(width);
  for (auto _ : state) {
    apply_circuit(vec, kernel);
    benchmark::DoNotOptimize(vec.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * kernel.gate_count());
}
BENCHMARK(BM_ApplyKernel)->Arg(12)->Arg(16)->Arg(20);

void BM_ApplyCoupling(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const Circuit coupling = synth_coupling(q);
  StateVector vec(coupling.width());
  for (auto _ : state) {
    apply_circuit(vec, coupling);
    benchmark::DoNotOptimize(vec.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * coupling.gate_count());
}
BENCHMARK(BM_ApplyCoupling)->Arg(2)->Arg(3)->Arg(4);

void BM_SynthQram(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  MemoryTable memory;
  memory.n = 2;
  memory.q = q;
  for (std::size_t cell = 0; cell < (std::size_t{1} << q); ++cell) {
    memory.cells.push_back(BitString::from_index(cell % 8, 3));
  }
  for (auto _ : state) {
    Circuit loader = synth_qram(memory);
    benchmark::DoNotOptimize(loader.width());
  }
}
BENCHMARK(BM_SynthQram)->Arg(2)->Arg(4)->Arg(6);

void BM_EpisodeDistribution(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SampleSet samples = make_samples(n, 8, 99);
  for (auto _ : state) {
    benchmark::DoNotOptimize(episode_distribution(samples).data());
  }
}
BENCHMARK(BM_EpisodeDistribution)->Arg(8)->Arg(10)->Arg(12);

void BM_RunEpisodeFast(benchmark::State& state) {
  const SampleSet samples = make_samples(8, 8, 7);
  RngStream rng(7, {1, 2});
  for (auto _ : state) {
    EpisodeOutcome outcome = run_episode(samples, PrepMode::Fast, rng);
    benchmark::DoNotOptimize(outcome.k_star);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RunEpisodeFast);

void BM_ExactPs(benchmark::State& state) {
  const SampleSet samples = make_samples(10, 10, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_ps(samples));
  }
}
BENCHMARK(BM_ExactPs);

}  // namespace

BENCHMARK_MAIN();
