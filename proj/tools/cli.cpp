#include "cli.hpp"

#include <sys/utsname.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "png_writer.hpp"
#include "tilecaster/batch.hpp"
#include "tilecaster/registry.hpp"

namespace tilecaster::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string cpu_model() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) return line.substr(line.find_first_not_of(' ', colon + 1));
    }
  }
  return "unknown";
}

Json host_fingerprint() {
  utsname u{};
  std::string os = "unknown";
  if (uname(&u) == 0) os = std::string(u.sysname) + " " + u.release + " " + u.machine;
  return Json{{"hardware_threads", std::thread::hardware_concurrency()},
              {"cpu_model", cpu_model()},
              {"os", os},
              {"compiler", __VERSION__}};
}

EnvSpec lookup_env(const std::string& id, int width, int height) {
  EnvOverrides ov;
  ov.obs_width = width;
  ov.obs_height = height;
  try {
    return make_env(id, ov);
  } catch (const UnknownEnvError& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// --- bench -------------------------------------------------------------------

struct BenchOptions {
  std::string env = "my-way-home";
  int n = 1;
  int steps = 1000;
  std::uint64_t seed = 0;
  int width = 64;
  int height = 64;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string json_path;
};

int cmd_bench(const BenchOptions& o, std::ostream& out) {
  const auto spec = std::make_shared<const EnvSpec>(lookup_env(o.env, o.width, o.height));
  WorkerPool pool(o.threads);
  const ThroughputReport r = run_throughput(spec, o.n, o.steps, o.seed, &pool);
  const double frames_per_second = static_cast<double>(r.frames_rendered) / r.elapsed_seconds;
  Json report{
      {"schema_version", kBenchSchemaVersion},
      {"command", "bench"},
      {"config",
       {{"env", o.env},
        {"n", o.n},
        {"steps", o.steps},
        {"seed", o.seed},
        {"width", o.width},
        {"height", o.height},
        {"threads", o.threads},
        {"policy", "uniform-random"}}},
      {"results",
       {{"steps_per_second", r.steps_per_second},
        {"frames_per_second", frames_per_second},
        {"us_per_frame", 1e6 * r.elapsed_seconds / static_cast<double>(r.frames_rendered)},
        {"env_steps", r.env_steps},
        {"frames_rendered", r.frames_rendered},
        {"elapsed_seconds", r.elapsed_seconds},
        {"total_reward", r.total_reward},
        {"episodes_completed", r.episodes_completed}}},
      {"host", host_fingerprint()},
  };
  const std::string text = report.dump(2);
  out << text << '\n';
  if (!o.json_path.empty()) {
    std::ofstream f(o.json_path);
    if (!f || !(f << text << '\n')) throw std::runtime_error("cannot write report to '" + o.json_path + "'");
  }
  return 0;
}

// --- dump-episode ------------------------------------------------------------

struct DumpOptions {
  std::string env = "simple";
  std::uint64_t seed = 0;
  std::string policy = "random";
  std::string out_dir;
  std::string format = "png";
  int width = 64;
  int height = 64;
};

// One action name per line; '#' starts a comment.
std::vector<Action> read_action_script(const std::string& path, const EnvSpec& spec) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read action script '" + path + "'");
  std::vector<Action> actions;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string name = line.substr(first, last - first + 1);
    const auto action = parse_action(name);
    if (!action) {
      throw std::runtime_error(path + ":" + std::to_string(number) + ": unknown action '" + name + "'");
    }
    if (!spec.allows(*action)) {
      throw std::runtime_error(path + ":" + std::to_string(number) + ": action '" + name + "' is not legal in env '" +
                               spec.id + "'; legal actions: " + spec.action_set_description());
    }
    actions.push_back(*action);
  }
  return actions;
}

std::string frame_name(std::size_t i) {
  std::ostringstream os;
  os << "frame_" << std::setw(5) << std::setfill('0') << i << ".png";
  return os.str();
}

int cmd_dump_episode(const DumpOptions& o, std::ostream& out) {
  const EnvSpec spec = lookup_env(o.env, o.width, o.height);
  const bool random_policy = o.policy == "random";
  std::vector<Action> script;
  if (!random_policy) script = read_action_script(o.policy, spec);

  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec || !fs::is_directory(o.out_dir)) {
    throw std::runtime_error("cannot create output directory '" + o.out_dir + "'");
  }

  EnvState state = reset_state(spec, split(o.seed, 0));
  RngState policy = policy_stream(o.seed);
  std::vector<std::vector<std::uint8_t>> frames;
  Json steps = Json::array();
  double total_reward = 0.0;
  bool done = false;
  for (std::size_t t = 0; !done && (random_policy || t < script.size()); ++t) {
    Action a = Action::NoOp;
    if (random_policy) {
      sample_actions(spec, policy, std::span<Action>(&a, 1));
    } else {
      a = script[t];
    }
    StepResult r = step(spec, state, a);
    total_reward += r.reward;
    done = r.done;
    steps.push_back({{"t", t},
                     {"action", action_name(a)},
                     {"reward", r.reward},
                     {"done", r.done},
                     {"info", r.info.tags()},
                     {"frame", o.format == "png" ? frame_name(t) : "strip.png"}});
    frames.push_back(std::move(r.observation.pixels));
    state = std::move(r.state);
  }

  std::vector<std::string> written;
  if (o.format == "png") {
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const fs::path p = fs::path(o.out_dir) / frame_name(i);
      write_png(p, spec.obs_width, spec.obs_height, frames[i]);
      written.push_back(frame_name(i));
    }
  } else if (!frames.empty()) {
    const fs::path p = fs::path(o.out_dir) / "strip.png";
    const auto strip = hconcat_frames(frames, spec.obs_width, spec.obs_height);
    write_png(p, spec.obs_width * static_cast<int>(frames.size()), spec.obs_height, strip);
    written.push_back("strip.png");
  }

  Json summary{{"schema_version", kEpisodeSchemaVersion},
               {"command", "dump-episode"},
               {"env", o.env},
               {"seed", o.seed},
               {"policy", random_policy ? "random" : "script"},
               {"format", o.format},
               {"width", spec.obs_width},
               {"height", spec.obs_height},
               {"steps_taken", frames.size()},
               {"total_reward", total_reward},
               {"done", done},
               {"files", written},
               {"steps", steps}};
  const fs::path summary_path = fs::path(o.out_dir) / "episode.json";
  std::ofstream f(summary_path);
  if (!f || !(f << summary.dump(2) << '\n')) {
    throw std::runtime_error("cannot write '" + summary_path.string() + "'");
  }
  for (const auto& name : written) out << (fs::path(o.out_dir) / name).string() << '\n';
  out << summary_path.string() << '\n';
  return 0;
}

// --- validate-maps -------------------------------------------------------------

int cmd_validate_maps(const std::vector<std::string>& paths, std::ostream& out) {
  bool any_error = false;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      out << path << ": error: cannot read file\n";
      any_error = true;
      continue;
    }
    std::ostringstream text;
    text << in.rdbuf();
    const ParseResult r = parse_map(MapSource{text.str(), path});
    for (const auto& d : r.diagnostics) out << format_diagnostic(d, path) << '\n';
    if (!r.ok()) {
      any_error = true;
      continue;
    }
    const auto unreachable = check_goal_reachability(*r.map);
    for (const auto& msg : unreachable) out << path << ": warning: " << msg << " with keys collected\n";
    if (r.diagnostics.empty() && unreachable.empty()) {
      out << path << ": ok (" << r.map->width() << "x" << r.map->height() << ")\n";
    }
  }
  return any_error ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Headless ray-cast first-person environments: benchmarking, episode dumps and map checks", "tilecaster"};
  app.require_subcommand(1);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Measure steps/sec of a uniform-random batched rollout");
  bench_cmd->add_option("--env", bench.env, "Environment id")->capture_default_str();
  bench_cmd->add_option("--n", bench.n, "Number of parallel environments")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--steps", bench.steps, "Batched steps to time")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Seed")->capture_default_str();
  bench_cmd->add_option("--width", bench.width, "Observation width")->check(CLI::Range(8, 4096))->capture_default_str();
  bench_cmd->add_option("--height", bench.height, "Observation height")->check(CLI::Range(8, 4096))->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--json,--out", bench.json_path, "Also write the JSON report to this file");

  DumpOptions dump;
  auto* dump_cmd = app.add_subcommand("dump-episode", "Roll out one episode and write its frames as PNG");
  dump_cmd->add_option("--env", dump.env, "Environment id")->capture_default_str();
  dump_cmd->add_option("--seed", dump.seed, "Seed")->capture_default_str();
  dump_cmd->add_option("--policy", dump.policy, "'random' or a path to an action script")->capture_default_str();
  dump_cmd->add_option("--out", dump.out_dir, "Output directory")->required();
  dump_cmd->add_option("--format", dump.format, "png (one file per frame) or strip (one wide image)")
      ->check(CLI::IsMember({"png", "strip"}))
      ->capture_default_str();
  dump_cmd->add_option("--width", dump.width, "Observation width")->check(CLI::Range(8, 4096))->capture_default_str();
  dump_cmd->add_option("--height", dump.height, "Observation height")->check(CLI::Range(8, 4096))->capture_default_str();

  std::vector<std::string> map_paths;
  auto* validate_cmd = app.add_subcommand("validate-maps", "Parse and check map files");
  validate_cmd->add_option("paths", map_paths, "Map files")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (bench_cmd->parsed()) return cmd_bench(bench, out);
    if (dump_cmd->parsed()) return cmd_dump_episode(dump, out);
    if (validate_cmd->parsed()) return cmd_validate_maps(map_paths, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    err << app.help() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace tilecaster::cli
