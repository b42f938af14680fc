#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "twobridge/baselines.hpp"

namespace twobridge {

void write_csv_header(std::ostream& out) {
  out << "variant,agent,seeds";
  for (Outcome o : kAllOutcomes) out << ',' << to_string(o);
  out << ",mean_steps,mean_reward\n";
}

void write_csv_row(std::ostream& out, const OutcomeDistribution& d) {
  out << d.variant << ',' << d.agent << ',' << d.n;
  for (Outcome o : kAllOutcomes) out << ',' << d.count(o);
  char buf[64];
  std::snprintf(buf, sizeof buf, ",%.3f,%.4f\n", d.mean_steps, d.mean_reward);
  out << buf;
}

std::string format_table(const std::vector<OutcomeDistribution>& rows) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-14s %-14s %-9s %6s", "variant", "agent", "profile", "seeds");
  out << buf;
  for (Outcome o : kAllOutcomes) {
    std::snprintf(buf, sizeof buf, " %15s", std::string(to_string(o)).c_str());
    out << buf;
  }
  out << "   steps    reward\n";
  for (const OutcomeDistribution& d : rows) {
    std::snprintf(buf, sizeof buf, "%-14s %-14s %-9s %6d", d.variant.c_str(), d.agent.c_str(), d.profile.c_str(), d.n);
    out << buf;
    for (Outcome o : kAllOutcomes) {
      std::snprintf(buf, sizeof buf, " %8d (%4.1f%%)", d.count(o), 100.0 * d.rate(o));
      out << buf;
    }
    std::snprintf(buf, sizeof buf, " %7.1f %9.3f\n", d.mean_steps, d.mean_reward);
    out << buf;
  }
  return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

// Steps one instance with the random agent until `deadline`, resetting with
// fresh seeds whenever an episode ends.
long long drive(EnvConfig config, Clock::time_point deadline) {
  Environment env;
  StepResult r = env.reset(config);
  Policy policy(AgentKind::RandomMasked, config.seed);
  long long steps = 0;
  while (true) {
    for (int i = 0; i < 64 && !r.done; ++i, ++steps) r = env.step(policy.act(env));
    if (Clock::now() >= deadline) break;
    if (r.done) {
      ++config.seed;
      r = env.reset(config);
      policy = Policy(AgentKind::RandomMasked, config.seed);
    }
  }
  return steps;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

ThroughputReport bench_throughput(const EnvConfig& config, double duration_seconds, int instances) {
  if (duration_seconds <= 0) throw ConfigError("duration must be positive");
  if (instances < 1) throw ConfigError("instances must be >= 1");
  config.validate();

  ThroughputReport rep;
  rep.variant = config.variant;
  rep.profile = std::string(to_string(config.profile));
  rep.duration_seconds = duration_seconds;
  rep.instances = instances;

  const auto budget = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(duration_seconds));
  // Unmeasured warm-up: path fields are cached on the shared grid, so
  // whichever phase runs first would otherwise pay for building them.
  auto start = Clock::now();
  drive(config, start + budget / 2);
  start = Clock::now();
  rep.single_steps = drive(config, start + budget);
  rep.single_steps_per_sec = static_cast<double>(rep.single_steps) / seconds_since(start);

  long long total = 0;
  int threads = 1;
  start = Clock::now();
  const auto deadline = start + budget;
#pragma omp parallel for num_threads(instances) schedule(static, 1) reduction(+ : total)
  for (int i = 0; i < instances; ++i) {
    EnvConfig c = config;
    c.seed = config.seed + 1000003ULL * static_cast<std::uint64_t>(i + 1);
    total += drive(c, deadline);
    if (i == 0) threads = omp_get_num_threads();
  }
  rep.parallel_steps = total;
  rep.parallel_steps_per_sec = static_cast<double>(total) / seconds_since(start);
  rep.threads = threads;
  return rep;
}

std::string format_report(const ThroughputReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "variant %s, profile %s, %.1f s per phase\n"
                "  single instance : %10lld steps  %10.0f steps/s\n"
                "  %2d instances    : %10lld steps  %10.0f steps/s  (%d threads, %.2fx)\n",
                r.variant.c_str(), r.profile.c_str(), r.duration_seconds, r.single_steps, r.single_steps_per_sec,
                r.instances, r.parallel_steps, r.parallel_steps_per_sec, r.threads,
                r.single_steps_per_sec > 0 ? r.parallel_steps_per_sec / r.single_steps_per_sec : 0.0);
  return buf;
}

}  // namespace twobridge
