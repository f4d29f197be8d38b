#include "mfc/policies/factory.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "mfc/env/state.hpp"
#include "mfc/policies/actor_critic.hpp"
#include "mfc/policies/dqn.hpp"
#include "mfc/policies/greedy.hpp"
#include "mfc/policies/optimization.hpp"
#include "mfc/policies/q_learning.hpp"

namespace mfc::policies {

const std::vector<std::string>& all_policy_names() {
  static const std::vector<std::string> names{"greedy", "optimization", "q-learning", "dqn",
                                              "actor-critic"};
  return names;
}

bool is_learning_policy(const std::string& name) {
  return name == "q-learning" || name == "dqn" || name == "actor-critic";
}

std::unique_ptr<Policy> make_policy(const std::string& name,
                                    const harness::ExperimentConfig& cfg,
                                    std::uint64_t master_seed,
                                    long training_decisions_estimate) {
  const int dim = env::state_dim(cfg.topology.zones);
  if (name == "greedy") return std::make_unique<GreedyPolicy>();
  if (name == "optimization")
    return std::make_unique<OptimizationPolicy>(cfg.topology.zones,
                                                cfg.optimization.slots_per_node);
  if (name == "q-learning") {
    long decay = std::lround(cfg.q_learning.epsilon_fraction *
                             static_cast<double>(training_decisions_estimate));
    return std::make_unique<QLearningPolicy>(cfg.q_learning, decay, master_seed);
  }
  if (name == "dqn") {
    long decay =
        std::lround(cfg.dqn.epsilon_fraction * static_cast<double>(training_decisions_estimate));
    return std::make_unique<DqnPolicy>(cfg.dqn, cfg.reward.gamma_discount, dim, decay,
                                       master_seed);
  }
  if (name == "actor-critic")
    return std::make_unique<ActorCriticPolicy>(cfg.actor_critic, cfg.reward.gamma_discount, dim,
                                               master_seed);
  throw harness::ConfigError("policy: unknown policy '" + name + "'");
}

std::unique_ptr<Policy> load_policy_file(const std::string& path,
                                         const harness::ExperimentConfig& cfg,
                                         std::uint64_t master_seed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("policy load: cannot open " + path);
  std::string tag, kind;
  if (!(in >> tag >> kind) || tag != "policy")
    throw std::runtime_error("policy load: missing 'policy <kind>' header in " + path);
  auto policy = make_policy(kind, cfg, master_seed, 0);
  policy->load(in);
  return policy;
}

void save_policy_file(const Policy& policy, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("policy save: cannot open " + path);
  policy.save(out);
  if (!out) throw std::runtime_error("policy save: write failed for " + path);
}

}  // namespace mfc::policies
