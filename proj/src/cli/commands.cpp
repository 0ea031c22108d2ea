#include "polaris/cli/commands.hpp"

#include <CLI11.hpp>
#include <ostream>

#include "polaris/cli/backend_factory.hpp"
#include "polaris/cli/config_loader.hpp"
#include "polaris/cli/replay.hpp"
#include "polaris/cli/report.hpp"
#include "polaris/core/artifacts.hpp"
#include "polaris/core/error.hpp"
#include "polaris/core/rng.hpp"
#include "polaris/core/text.hpp"
#include "polaris/eval/cot_sc.hpp"

namespace polaris::cli {

namespace fs = std::filesystem;

agent::EngineInputs load_inputs(const RunConfig& config) {
  agent::EngineInputs in;
  in.validation = eval::load_dataset(config.validation_path, config.metric, eval::Split::validation);
  in.test = eval::load_dataset(config.test_path, config.metric, eval::Split::test);
  try {
    in.base_policy = read_file(config.policy_path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("cannot read base policy: ") + e.what());
  }
  return in;
}

agent::RunRecord execute_run(const RunConfig& config) {
  auto inputs = load_inputs(config);
  auto backend = make_backend(config);
  auto clock = make_clock(config);
  agent::Engine engine(config, std::move(inputs), *backend, *clock);
  return engine.run();
}

namespace {

std::string score_text(double s, const std::optional<eval::Interval>& ci) {
  std::string out = text::fixed(s, 4);
  if (ci) out += " [" + text::fixed(ci->lo, 4) + ", " + text::fixed(ci->hi, 4) + "]";
  return out;
}

/// Flags shared by every command that reads a config file.
struct ConfigFlags {
  std::string config;
  std::uint64_t seed = 0;
  int budget_iterations = 0;
  double budget_seconds = 0;
  int n_failures = 0;
  int memory_window = 0;
  int parallelism = 0;
  std::string backend, integration_mode, script, runs_dir, run_id;
  std::vector<CLI::Option*> opts;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "Run configuration (JSON)")->required();
    opts = {
        app->add_option("--seed", seed, "Master seed"),
        app->add_option("--budget-iterations", budget_iterations, "Improvement rounds"),
        app->add_option("--budget-seconds", budget_seconds, "Wall-clock budget"),
        app->add_option("--n-failures", n_failures, "Failures sampled per repair cycle (N)"),
        app->add_option("--memory-window", memory_window, "Ledger entries in the agent state (k)"),
        app->add_option("--parallelism", parallelism, "Concurrent evaluation workers"),
        app->add_option("--backend", backend, "scripted | http")->check(CLI::IsMember({"scripted", "http"})),
        app->add_option("--integration-mode", integration_mode, "anchored | llm_rewrite")
            ->check(CLI::IsMember({"anchored", "llm_rewrite"})),
        app->add_option("--script", script, "Scripted backend responses (NDJSON)"),
        app->add_option("--runs-dir", runs_dir, "Parent directory of run directories"),
        app->add_option("--run-id", run_id, "Run directory name (default: config file stem)"),
    };
    opts[1]->excludes(opts[2]);
  }

  Overrides overrides() const {
    Overrides o;
    if (opts[0]->count()) o.seed = seed;
    if (opts[1]->count()) o.budget_iterations = budget_iterations;
    if (opts[2]->count()) o.budget_seconds = budget_seconds;
    if (opts[3]->count()) o.n_failures = n_failures;
    if (opts[4]->count()) o.memory_window = memory_window;
    if (opts[5]->count()) o.parallelism = parallelism;
    if (opts[6]->count()) o.backend = backend;
    if (opts[7]->count()) o.integration_mode = integration_mode;
    if (opts[8]->count()) o.script = fs::absolute(script).string();
    if (opts[9]->count()) o.runs_dir = fs::absolute(runs_dir).string();
    if (opts[10]->count()) o.run_id = run_id;
    return o;
  }

  RunConfig load() const { return load_run_config(config, overrides()); }
};

int cmd_run(const ConfigFlags& f, std::ostream& out) {
  const RunConfig config = f.load();
  const auto rec = execute_run(config);
  out << "run_id: " << rec.run_id << "\n";
  out << "run directory: " << (config.runs_dir / config.run_id).string() << "\n";
  out << "category: " << agent::to_string(rec.category) << "\n";
  out << "iterations: " << rec.iterations_completed << "\n";
  out << "base: validation " << text::fixed(rec.base_validation_score, 4);
  if (rec.base_test_score) out << ", test " << text::fixed(*rec.base_test_score, 4);
  out << "\nchampion: v" << rec.champion.policy_version << ", validation "
      << text::fixed(rec.champion.validation_score, 4);
  if (rec.champion_test_score) out << ", test " << text::fixed(*rec.champion_test_score, 4);
  out << "\n";
  if (!rec.diagnostic.empty()) out << "diagnostic: " << rec.diagnostic << "\n";
  return rec.category == agent::RunCategory::unsuccessful ? kExitFailure : kExitOk;
}

eval::EvalOptions eval_options(const RunConfig& c, const std::string& label) {
  eval::EvalOptions o;
  o.metric = c.metric;
  o.parallelism = c.parallelism;
  o.model = c.backend.model;
  o.bootstrap_samples = c.bootstrap_samples;
  o.ci_level = c.ci_level;
  o.seed = derive_seed(c.seed, label);
  return o;
}

int cmd_baseline(const ConfigFlags& f, int paths, std::ostream& out) {
  const RunConfig config = f.load();
  if (paths < 1) throw ConfigError("--paths must be >= 1");
  const auto in = load_inputs(config);
  auto backend = make_backend(config);
  std::string csv = "split,paths,score,ci_lo,ci_hi\n";
  for (const auto* ds : {&in.validation, &in.test}) {
    const std::string split = eval::to_string(ds->split);
    const auto r = eval::evaluate_cot_sc(*ds, paths, *backend, eval_options(config, "baseline/" + split));
    csv += split + "," + std::to_string(paths) + "," + text::fixed(r.score) + "," +
           (r.ci ? text::fixed(r.ci->lo) : "") + "," + (r.ci ? text::fixed(r.ci->hi) : "") + "\n";
    out << "cot-sc " << split << ": " << score_text(r.score, r.ci) << "\n";
  }
  const fs::path dest = config.runs_dir / config.run_id / "baseline.csv";
  write_file(dest, csv);
  out << "wrote " << dest.string() << "\n";
  return kExitOk;
}

int cmd_evaluate(const ConfigFlags& f, const std::string& policy_path, const std::string& split_name,
                 std::ostream& out) {
  const RunConfig config = f.load();
  eval::Split split;
  if (split_name == "validation") {
    split = eval::Split::validation;
  } else if (split_name == "test") {
    split = eval::Split::test;
  } else {
    throw ConfigError("--split must be validation or test");
  }
  const fs::path path = split == eval::Split::validation ? config.validation_path : config.test_path;
  const auto ds = eval::load_dataset(path, config.metric, split);
  std::string source;
  try {
    source = read_file(policy_path.empty() ? config.policy_path : fs::path(policy_path));
  } catch (const IoError& e) {
    throw ConfigError(std::string("cannot read policy: ") + e.what());
  }
  auto backend = make_backend(config);
  const auto r = eval::evaluate(PolicyVersion::make_base(source, ""), ds, *backend,
                                eval_options(config, "evaluate/" + split_name));
  out << split_name << ": " << score_text(r.score, r.ci) << " (" << r.failures.size() << " failures of "
      << r.per_instance.size() << ")\n";
  return kExitOk;
}

int cmd_report(const std::string& run_dir, std::ostream& out, std::ostream& err) {
  const auto bundle = build_report(run_dir);
  write_report(run_dir, bundle);
  out << bundle.summary;
  for (const auto& w : bundle.warnings) err << "warning: " << w << "\n";
  out << "wrote " << (fs::path(run_dir) / "report").string() << "\n";
  return kExitOk;
}

int cmd_replay(const std::string& run_dir, std::optional<std::uint64_t> seed, std::ostream& out) {
  const auto r = replay_run(run_dir, seed);
  if (r.identical) {
    out << "replay: identical (" << r.detail << ")\n";
    return kExitOk;
  }
  out << "replay: divergence at " << r.first_divergence << " (" << r.detail << ")\n";
  return kExitFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Self-improving agent with experience-driven policy repair"};
  app.require_subcommand(1);

  ConfigFlags run_flags, base_flags, eval_flags;
  auto* run = app.add_subcommand("run", "Run the self-improvement loop");
  run_flags.attach(run);

  auto* baseline = app.add_subcommand("baseline", "Score the CoT-SC baseline on both splits");
  base_flags.attach(baseline);
  int paths = 5;
  auto* paths_opt = baseline->add_option("--paths", paths, "Reasoning paths per query");

  auto* evaluate = app.add_subcommand("evaluate", "Score one policy on one split");
  eval_flags.attach(evaluate);
  std::string policy_path, split = "validation";
  evaluate->add_option("--policy", policy_path, "Policy file (default: the config's base policy)");
  evaluate->add_option("--split", split, "validation | test");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "Curve, diffs and summary from a run directory");
  report->add_option("run_dir", report_dir, "Run directory")->required();

  std::string replay_dir;
  std::uint64_t replay_seed = 0;
  auto* replay = app.add_subcommand("replay", "Re-execute a scripted run and byte-compare its artifacts");
  replay->add_option("run_dir", replay_dir, "Run directory")->required();
  auto* replay_seed_opt = replay->add_option("--seed", replay_seed, "Replay with a different seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(run_flags, out);
    if (baseline->parsed()) {
      if (!paths_opt->count()) paths = base_flags.load().cot_sc_paths;
      return cmd_baseline(base_flags, paths, out);
    }
    if (evaluate->parsed()) return cmd_evaluate(eval_flags, policy_path, split, out);
    if (report->parsed()) return cmd_report(report_dir, out, err);
    if (replay->parsed()) {
      return cmd_replay(replay_dir, replay_seed_opt->count() ? std::optional(replay_seed) : std::nullopt, out);
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace polaris::cli
