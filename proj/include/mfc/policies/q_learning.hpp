#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>

#include "mfc/policies/policy.hpp"

namespace mfc::policies {

// Tabular Q-learning over discretized state keys. Unvisited keys are
// implicit zeros. The base learning rate decays per state visit as
// eta / (1 + visits / eta_visit_scale); exploration follows a linear
// epsilon schedule over training decisions.
class QLearningPolicy : public Policy {
 public:
  QLearningPolicy(const harness::QLearningConfig& cfg, long epsilon_decay_steps,
                  std::uint64_t master_seed);

  std::string name() const override { return "q-learning"; }
  bool learns() const override { return true; }
  int decide(const env::PolicyObservation& obs) override;
  void learn(const env::Transition& t) override;

  // TD update; exposed separately so the Bellman arithmetic is testable.
  double q_update(const env::Transition& t);

  const std::array<double, world::kNumActions>& q_values(std::int64_t key) const;
  std::size_t table_size() const { return table_.size(); }

  void save(std::ostream& out) const override;
  void load(std::istream& in) override;

 private:
  harness::QLearningConfig cfg_;
  long decay_steps_;
  long decisions_ = 0;
  std::unordered_map<std::int64_t, std::array<double, world::kNumActions>> table_;
  std::unordered_map<std::int64_t, std::int64_t> visits_;
  sim::RngStream explore_;
};

}  // namespace mfc::policies
