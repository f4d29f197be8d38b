#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mfc/env/state.hpp"
#include "mfc/harness/config.hpp"
#include "mfc/harness/runner.hpp"
#include "mfc/policies/factory.hpp"
#include "mfc/sim/rng.hpp"

using mfc::env::PolicyObservation;
using mfc::harness::ExperimentConfig;
using mfc::policies::all_policy_names;
using mfc::policies::load_policy_file;
using mfc::policies::make_policy;
using mfc::policies::Mode;
using mfc::policies::save_policy_file;

namespace {

// Random but reproducible observations spanning the whole input space.
std::vector<PolicyObservation> probe_observations(const ExperimentConfig& cfg, int n) {
  mfc::sim::RngStream rng(123, "persist/probe");
  const int dim = mfc::env::state_dim(cfg.topology.zones);
  std::vector<PolicyObservation> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    PolicyObservation obs;
    obs.state = Eigen::VectorXd::NullaryExpr(dim, [&](Eigen::Index) { return rng.uniform(); });
    obs.key = rng.uniform_int(static_cast<int>(mfc::env::key_space_size(cfg.topology.zones)));
    for (auto& p : obs.predicted_latency_s) p = rng.uniform(0.02, 0.6);
    int zone = rng.uniform_int(cfg.topology.zones);
    obs.action_node = {zone, (zone + cfg.topology.zones - 1) % cfg.topology.zones,
                       (zone + 1) % cfg.topology.zones, cfg.topology.zones};
    out.push_back(std::move(obs));
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Tiny world so trained artifacts carry real learned structure.
ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.fleet.vehicles = 10;
  cfg.fleet.arrival_rate_hz = 0.5;
  cfg.run.train_episodes = 2;
  cfg.run.episode_s = 20.0;
  cfg.dqn.hidden = {16};
  cfg.actor_critic.hidden = {16};
  return cfg;
}

}  // namespace

TEST_CASE("every policy artifact reproduces its evaluation decisions") {
  auto cfg = tiny_config();
  auto probes = probe_observations(cfg, 1000);
  for (const auto& name : all_policy_names()) {
    CAPTURE(name);
    std::unique_ptr<mfc::policies::Policy> trained;
    if (mfc::policies::is_learning_policy(name)) {
      trained = mfc::harness::run_training(cfg, name, 21).policy;
    } else {
      trained = make_policy(name, cfg, 21, 0);
    }
    trained->set_mode(Mode::Evaluation);

    const std::string path = "/tmp/mfc_persist_" + name + ".policy";
    save_policy_file(*trained, path);
    auto loaded = load_policy_file(path, cfg, 21);
    loaded->set_mode(Mode::Evaluation);
    CHECK(loaded->name() == trained->name());

    int mismatches = 0;
    for (const auto& obs : probes)
      if (loaded->decide(obs) != trained->decide(obs)) ++mismatches;
    CHECK(mismatches == 0);
  }
}

TEST_CASE("saving twice yields identical bytes") {
  auto cfg = tiny_config();
  auto out = mfc::harness::run_training(cfg, "q-learning", 33);
  save_policy_file(*out.policy, "/tmp/mfc_persist_a.policy");
  save_policy_file(*out.policy, "/tmp/mfc_persist_b.policy");
  CHECK(slurp("/tmp/mfc_persist_a.policy") == slurp("/tmp/mfc_persist_b.policy"));
}

TEST_CASE("the same training seed reproduces the artifact bytes") {
  auto cfg = tiny_config();
  auto first = mfc::harness::run_training(cfg, "dqn", 8);
  auto second = mfc::harness::run_training(cfg, "dqn", 8);
  save_policy_file(*first.policy, "/tmp/mfc_persist_s1.policy");
  save_policy_file(*second.policy, "/tmp/mfc_persist_s2.policy");
  CHECK(slurp("/tmp/mfc_persist_s1.policy") == slurp("/tmp/mfc_persist_s2.policy"));
}

TEST_CASE("loading rejects a header for a different kind") {
  auto cfg = tiny_config();
  auto greedy = make_policy("greedy", cfg, 1, 0);
  save_policy_file(*greedy, "/tmp/mfc_persist_kind.policy");
  auto loaded = load_policy_file("/tmp/mfc_persist_kind.policy", cfg, 1);
  CHECK(loaded->name() == "greedy");

  std::ofstream("/tmp/mfc_persist_junk.policy") << "policy warp-drive\nend\n";
  CHECK_THROWS_AS(load_policy_file("/tmp/mfc_persist_junk.policy", cfg, 1), std::runtime_error);
  CHECK_THROWS_AS(load_policy_file("/tmp/mfc_persist_missing.policy", cfg, 1),
                  std::runtime_error);
}

TEST_CASE("truncated network blobs are rejected") {
  auto cfg = tiny_config();
  auto out = mfc::harness::run_training(cfg, "dqn", 13);
  const std::string path = "/tmp/mfc_persist_trunc.policy";
  save_policy_file(*out.policy, path);
  std::string whole = slurp(path);
  std::ofstream(path, std::ios::binary) << whole.substr(0, whole.size() / 2);
  CHECK_THROWS_AS(load_policy_file(path, cfg, 13), std::runtime_error);
}
