#pragma once

#include "mfc/policies/policy.hpp"

namespace mfc::policies {

// Joint per-epoch assignment: tasks batched over a decision epoch are matched
// to node slots by exact minimum-cost assignment on predicted completion
// latencies. Each fog node offers slots_per_node assignments per epoch; the
// cloud absorbs any overflow. Never learns.
class OptimizationPolicy : public Policy {
 public:
  OptimizationPolicy(int fog_nodes, int slots_per_node)
      : fog_nodes_(fog_nodes), slots_per_node_(slots_per_node) {}

  std::string name() const override { return "optimization"; }
  bool batches() const override { return true; }
  int decide(const env::PolicyObservation& obs) override;
  std::vector<int> decide_batch(const std::vector<env::PolicyObservation>& batch) override;

 private:
  int fog_nodes_;
  int slots_per_node_;
};

}  // namespace mfc::policies
