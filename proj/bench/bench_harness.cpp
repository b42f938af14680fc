// Serial reference loop vs the OpenMP episode harness, plus per-step cost.

#include <benchmark/benchmark.h>

#include "twobridge/baselines.hpp"

using namespace twobridge;

namespace {

EnvConfig headless(const char* variant, Profile profile = Profile::Exp2) {
  EnvConfig c;
  c.variant = variant;
  c.profile = profile;
  c.spatial = false;
  return c;
}

// Both episode benchmarks replay the same seeds; run them once untimed so the
// grid's cached path fields are built before either is measured.
void warm(const EnvConfig& cfg, int n) {
  static const bool done = (run_episodes_serial(AgentKind::RandomMasked, cfg, n, 0), true);
  (void)done;
}

void BM_EpisodesSerial(benchmark::State& state) {
  const EnvConfig cfg = headless("V2_Base");
  warm(cfg, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_episodes_serial(AgentKind::RandomMasked, cfg, static_cast<int>(state.range(0)), 0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EpisodesOpenMP(benchmark::State& state) {
  const EnvConfig cfg = headless("V2_Base");
  warm(cfg, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_episodes(AgentKind::RandomMasked, cfg, static_cast<int>(state.range(0)), 0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void step_loop(benchmark::State& state, EnvConfig cfg) {
  Environment env;
  StepResult r = env.reset(cfg);
  Policy policy(AgentKind::RandomMasked, cfg.seed);
  for (auto _ : state) {
    if (r.done) {
      ++cfg.seed;
      r = env.reset(cfg);
      policy = Policy(AgentKind::RandomMasked, cfg.seed);
    }
    r = env.step(policy.act(env));
    benchmark::DoNotOptimize(r.reward.total);
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_StepExp2(benchmark::State& state) { step_loop(state, headless("V2_Base")); }
void BM_StepExp3Spatial(benchmark::State& state) {
  EnvConfig cfg = headless("V2_Base", Profile::Exp3);
  cfg.spatial = true;
  step_loop(state, cfg);
}
void BM_StepPilotV3(benchmark::State& state) { step_loop(state, headless("V3_Combat", Profile::PilotNsf)); }

}  // namespace

BENCHMARK(BM_EpisodesSerial)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EpisodesOpenMP)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_StepExp2);
BENCHMARK(BM_StepExp3Spatial);
BENCHMARK(BM_StepPilotV3);

BENCHMARK_MAIN();
