#include <benchmark/benchmark.h>

#include "cnmzk/extractor.hpp"
#include "cnmzk/scenarios.hpp"
#include "cnmzk/session.hpp"

using namespace cnmzk;

namespace {

void BM_Session(benchmark::State& state) {
  SessionOptions o;
  o.mode = state.range(0) == 0 ? commit::CommitMode::kPedersen : commit::CommitMode::kElGamal;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    o.seed = seed++;
    benchmark::DoNotOptimize(run_session(o).accepted);
  }
  state.SetLabel(state.range(0) == 0 ? "pedersen" : "elgamal");
}
BENCHMARK(BM_Session)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_Pow(benchmark::State& state) {
  SeededRng rng(1);
  const auto params = algebra::gen_schnorr_params(static_cast<unsigned>(state.range(0)), rng, {.use_table = false});
  const auto group = algebra::Group::residue(algebra::GroupTag::kG, params);
  const auto g = group->generator();
  const auto k = group->random_nonzero(rng);
  for (auto _ : state) benchmark::DoNotOptimize(g.pow(k));
}
BENCHMARK(BM_Pow)->Arg(64)->Arg(256)->Arg(1024);

void BM_Pairing(benchmark::State& state) {
  const auto kind = state.range(0) == 0 ? algebra::PairingBackend::Kind::kTransparent
                                        : algebra::PairingBackend::Kind::kSchnorr;
  const auto suite = algebra::Suite::make(algebra::test_params(), kind);
  const auto a = suite.pairing.g1()->generator().pow(suite.group->scalar(3));
  const auto b = suite.pairing.g2()->generator().pow(suite.group->scalar(5));
  for (auto _ : state) benchmark::DoNotOptimize(suite.pairing.pair(a, b));
  state.SetLabel(suite.pairing.name());
}
BENCHMARK(BM_Pairing)->Arg(0)->Arg(1);

void BM_Extractor(benchmark::State& state) {
  const auto adversary = harness::make_scenario("wrapped");
  harness::ExtractorConfig cfg;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    cfg.attack.seed = seed++;
    benchmark::DoNotOptimize(harness::run_extractor(*adversary, cfg).outcome);
  }
}
BENCHMARK(BM_Extractor)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
