#pragma once

#include "mfc/policies/policy.hpp"

namespace mfc::policies {

// Picks the action with the lowest predicted completion latency, computed
// from the queue state visible at decision time. Ties go to the lowest
// action index. Never learns.
class GreedyPolicy : public Policy {
 public:
  std::string name() const override { return "greedy"; }
  int decide(const env::PolicyObservation& obs) override;
};

}  // namespace mfc::policies
