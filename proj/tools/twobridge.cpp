// Command-line front end: environment server, evaluation harness,
// throughput benchmark and catalog/map/replay utilities.

#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "twobridge/baselines.hpp"
#include "twobridge/server.hpp"

using namespace twobridge;

namespace {

std::vector<std::string> expand_variants(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  for (const auto& v : requested) {
    if (v == "all") {
      for (const auto& c : variant_catalog()) out.push_back(c.id);
    } else {
      find_variant(v);
      out.push_back(v);
    }
  }
  return out;
}

int run_serve(const std::string& transport, const std::string& host, int port, const ServerOptions& options) {
  find_variant(options.variant);
  if (transport == "stdio") {
    std::ios::sync_with_stdio(false);
    serve_stream(std::cin, std::cout, options);
    return 0;
  }

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  TcpServer server(options, host, static_cast<std::uint16_t>(port));
  std::cout << "listening on " << host << ':' << server.port() << std::endl;
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    spdlog::info("signal {}, shutting down", sig);
    server.stop();
  });
  server.run();
  // Wake the waiter if run() ended some other way.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

int run_eval(const std::string& agent, const std::vector<std::string>& variants, const std::string& profile,
             int episodes, std::uint64_t seed0, bool serial, const std::string& csv_path,
             const std::string& replay_path) {
  const AgentKind kind = parse_agent(agent);
  std::vector<OutcomeDistribution> rows;
  for (const auto& v : expand_variants(variants)) {
    EnvConfig cfg;
    cfg.variant = v;
    cfg.profile = parse_profile(profile);
    cfg.spatial = false;
    rows.push_back(serial ? run_episodes_serial(kind, cfg, episodes, seed0) : run_episodes(kind, cfg, episodes, seed0));
  }
  std::cout << format_table(rows);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    write_csv_header(out);
    for (const auto& r : rows) write_csv_row(out, r);
  }
  if (!replay_path.empty()) {
    // Records the first episode of the first variant.
    EnvConfig cfg;
    cfg.variant = rows.front().variant;
    cfg.profile = parse_profile(profile);
    cfg.seed = seed0;
    Environment env;
    env.set_recording(true);
    StepResult r = env.reset(cfg);
    Policy policy(kind, cfg.seed);
    while (!r.done) r = env.step(policy.act(env));
    std::ofstream out(replay_path);
    if (!out) throw std::runtime_error("cannot write " + replay_path);
    write_replay(out, env.replay());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Two-bridge map suite: headless environment server and evaluation tools"};
  app.require_subcommand(1);

  // serve
  auto* serve = app.add_subcommand("serve", "Run the environment server");
  std::string transport = "stdio";
  std::string host = "127.0.0.1";
  int port = 0;
  ServerOptions options;
  std::string profile = "exp2";
  std::string seed_policy = "sequential";
  std::string encoding = "base64";
  serve->add_option("--transport", transport, "stdio or tcp")->check(CLI::IsMember({"stdio", "tcp"}));
  serve->add_option("--host", host, "TCP bind address");
  serve->add_option("--port", port, "TCP port, 0 picks a free one")->check(CLI::Range(0, 65535));
  serve->add_option("--variant", options.variant, "Default variant for resets");
  serve->add_option("--profile", profile, "Default profile for resets");
  serve->add_option("--seed", options.seed, "Base seed");
  serve->add_option("--seed-policy", seed_policy, "fixed or sequential")->check(CLI::IsMember({"fixed", "sequential"}));
  serve->add_option("--encoding", encoding, "Spatial plane encoding")->check(CLI::IsMember({"base64", "array"}));

  // run
  auto* run = app.add_subcommand("run", "Evaluate a scripted agent over a seed range");
  std::string agent = "random";
  std::vector<std::string> variants{"all"};
  std::string run_profile = "exp2";
  int episodes = 100;
  std::uint64_t seed0 = 0;
  bool serial = false;
  std::string csv_path;
  std::string replay_path;
  run->add_option("--agent", agent, "idle, random, beacon-greedy or focus-fire");
  run->add_option("--variant", variants, "Variant ids, or 'all'");
  run->add_option("--profile", run_profile, "Profile");
  run->add_option("--episodes", episodes, "Episodes per variant")->check(CLI::PositiveNumber);
  run->add_option("--seed0", seed0, "First seed");
  run->add_flag("--serial", serial, "Use the single-threaded reference loop");
  run->add_option("--csv", csv_path, "Write the outcome table as CSV");
  run->add_option("--replay", replay_path, "Record the first episode to a replay file");

  // bench
  auto* bench = app.add_subcommand("bench", "Measure agent steps per second");
  std::string bench_variant = "V2_Base";
  std::string bench_profile = "exp2";
  double duration = 3.0;
  int instances = 8;
  bool spatial = false;
  bench->add_option("--variant", bench_variant, "Variant id");
  bench->add_option("--profile", bench_profile, "Profile");
  bench->add_option("--duration", duration, "Seconds per phase")->check(CLI::PositiveNumber);
  bench->add_option("--instances", instances, "Concurrent instances in the second phase")->check(CLI::PositiveNumber);
  bench->add_flag("--spatial", spatial, "Render spatial planes");

  // list-variants
  auto* list = app.add_subcommand("list-variants", "Print the variant catalog");
  bool as_json = false;
  list->add_flag("--json", as_json, "Machine-readable catalog");

  // map
  auto* map = app.add_subcommand("map", "Print the terrain as text");

  // replay
  auto* replay = app.add_subcommand("replay", "Re-simulate a replay file and check every step");
  std::string replay_file;
  replay->add_option("file", replay_file, "Replay file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      options.profile = parse_profile(profile);
      options.seed_policy = parse_seed_policy(seed_policy);
      options.encoding = encoding == "array" ? PlaneEncoding::Array : PlaneEncoding::Base64;
      return run_serve(transport, host, port, options);
    }
    if (*run) return run_eval(agent, variants, run_profile, episodes, seed0, serial, csv_path, replay_path);
    if (*bench) {
      EnvConfig cfg;
      cfg.variant = bench_variant;
      cfg.profile = parse_profile(bench_profile);
      cfg.spatial = spatial;
      std::cout << format_report(bench_throughput(cfg, duration, instances));
      return 0;
    }
    if (*list) {
      if (as_json) {
        std::cout << variant_catalog_json().dump(2) << '\n';
      } else {
        std::printf("%-12s %-9s %8s %6s %10s\n", "id", "layout", "friendly", "enemy", "vector_len");
        for (const auto& v : variant_catalog()) {
          std::printf("%-12s %-9s %8d %6d %10d\n", v.id.c_str(), std::string(to_string(v.layout)).c_str(),
                      v.friendly_count, v.enemy_count, vector_length(v.friendly_count, v.enemy_count));
        }
      }
      return 0;
    }
    if (*map) {
      std::cout << dump_map(*two_bridge_grid(), two_bridge_regions());
      return 0;
    }
    if (*replay) {
      std::ifstream in(replay_file);
      const ReplayCheck check = verify_replay(read_replay(in));
      std::cout << (check.ok ? "ok: " : "mismatch: ") << check.message << '\n';
      return check.ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
