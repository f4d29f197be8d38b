// mfcsim: train, evaluate and compare task-offloading policies on the
// vehicular fog simulator. See README.md for the config schema and outputs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mfc/harness/compare.hpp"
#include "mfc/harness/config.hpp"
#include "mfc/harness/runner.hpp"
#include "mfc/metrics/metrics.hpp"
#include "mfc/policies/factory.hpp"

namespace {

using mfc::harness::ConfigError;
using mfc::harness::ExperimentConfig;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig load_config(const std::string& path) {
  ExperimentConfig cfg = path.empty() ? ExperimentConfig{}
                                      : mfc::harness::parse_config(read_file(path));
  cfg.validate();
  return cfg;
}

// --out-dir wins; otherwise MFCSIM_OUT_DIR; otherwise ./out.
std::string resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("MFCSIM_OUT_DIR"); env && *env) return env;
  return "out";
}

void write_effective_config(const ExperimentConfig& cfg, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir + "/effective-config.json");
  if (!out) throw std::runtime_error("cannot write " + out_dir + "/effective-config.json");
  out << cfg.to_json_string() << '\n';
}

void write_single_record(const mfc::metrics::MetricsRecord& rec, const std::string& out_dir) {
  mfc::metrics::export_csv({rec}, out_dir + "/metrics.csv");
  std::cout << "policy=" << rec.policy << " seed=" << rec.seed
            << " completed=" << rec.completed << "/" << rec.generated
            << " success_rate=" << rec.success_rate << " avg_latency_s=" << rec.avg_latency_s
            << " jain=" << rec.jain_mean << '\n';
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = std::stoull(tok, &used);
    if (used != tok.size()) throw ConfigError("--seeds: bad entry '" + tok + "'");
    seeds.push_back(v);
  }
  if (seeds.empty()) throw ConfigError("--seeds: empty list");
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vehicular multi-fog offloading simulator"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path, out_dir_flag, policy_name, artifact_path, seeds_csv;
  std::uint64_t seed = 1;
  int jobs = 1;
  app.add_option("--config", config_path, "JSON config file (omit for defaults)");
  app.add_option("--seed", seed, "master seed")->capture_default_str();
  app.add_option("--out-dir", out_dir_flag, "output directory (env MFCSIM_OUT_DIR, then ./out)");
  app.add_option("--policy", policy_name,
                 "policy name: greedy, optimization, q-learning, dqn, actor-critic");

  CLI::App* cmd_run = app.add_subcommand("run", "train if needed, then evaluate one policy");
  CLI::App* cmd_train = app.add_subcommand("train", "train a learning policy, save the artifact");
  CLI::App* cmd_eval = app.add_subcommand("eval", "evaluate a policy or a saved artifact");
  cmd_eval->add_option("--artifact", artifact_path, "saved policy file to evaluate");
  CLI::App* cmd_compare =
      app.add_subcommand("compare", "train all learners and evaluate all policies across seeds");
  cmd_compare->add_option("--seeds", seeds_csv, "comma-separated seed list")
      ->default_val("1,2,3,4,5");
  cmd_compare->add_option("--jobs", jobs, "concurrent seeds")->capture_default_str();
  CLI::App* cmd_validate =
      app.add_subcommand("validate-config", "parse, validate and echo the effective config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    ExperimentConfig cfg = load_config(config_path);
    std::string out_dir = resolve_out_dir(out_dir_flag);

    if (cmd_validate->parsed()) {
      std::cout << cfg.to_json_string() << '\n';
      return 0;
    }

    write_effective_config(cfg, out_dir);

    if (cmd_train->parsed()) {
      if (policy_name.empty()) throw ConfigError("train: --policy is required");
      auto t = mfc::harness::run_training(cfg, policy_name, seed);
      std::string stem = out_dir + "/policy-" + policy_name + "-seed" + std::to_string(seed);
      mfc::policies::save_policy_file(*t.policy, stem + ".txt");
      mfc::harness::export_training_curve(
          t.episodes, out_dir + "/curve-" + policy_name + "-seed" + std::to_string(seed) + ".csv");
      std::cout << "trained " << policy_name << " over " << t.episodes.size()
                << " episodes; artifact " << stem << ".txt\n";
      return 0;
    }

    if (cmd_run->parsed()) {
      if (policy_name.empty()) throw ConfigError("run: --policy is required");
      std::unique_ptr<mfc::policies::Policy> policy;
      if (mfc::policies::is_learning_policy(policy_name)) {
        auto t = mfc::harness::run_training(cfg, policy_name, seed);
        policy = std::move(t.policy);
        mfc::policies::save_policy_file(
            *policy,
            out_dir + "/policy-" + policy_name + "-seed" + std::to_string(seed) + ".txt");
        mfc::harness::export_training_curve(
            t.episodes,
            out_dir + "/curve-" + policy_name + "-seed" + std::to_string(seed) + ".csv");
      } else {
        policy = mfc::policies::make_policy(policy_name, cfg, seed, 0);
      }
      write_single_record(mfc::harness::run_eval(cfg, *policy, seed), out_dir);
      return 0;
    }

    if (cmd_eval->parsed()) {
      std::unique_ptr<mfc::policies::Policy> policy;
      if (!artifact_path.empty()) {
        policy = mfc::policies::load_policy_file(artifact_path, cfg, seed);
      } else {
        if (policy_name.empty()) throw ConfigError("eval: --policy or --artifact is required");
        policy = mfc::policies::make_policy(policy_name, cfg, seed, 0);
      }
      write_single_record(mfc::harness::run_eval(cfg, *policy, seed), out_dir);
      return 0;
    }

    if (cmd_compare->parsed()) {
      auto seeds = parse_seed_list(seeds_csv);
      auto report = mfc::harness::run_compare(cfg, seeds, jobs, out_dir);
      std::cout << "policy            latency_ms  success_%  jain    balance\n";
      for (const auto& s : report.stats) {
        char line[160];
        std::snprintf(line, sizeof line, "%-17s %9.1f %9.1f  %.4f  %s\n", s.policy.c_str(),
                      s.latency_mean * 1e3, s.success_mean * 100.0, s.jain_mean,
                      mfc::harness::jain_category(s.jain_mean).c_str());
        std::cout << line;
      }
      std::cout << "best RL: " << report.best_rl_policy << " ("
                << report.best_rl_latency_improvement * 100.0 << "% latency reduction, +"
                << report.best_rl_success_gain_pp << "pp success vs greedy)\n"
                << "outputs in " << out_dir << "/\n";
      return 0;
    }

    throw ConfigError("no subcommand");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
