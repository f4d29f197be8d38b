#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mfc/harness/config.hpp"
#include "mfc/policies/policy.hpp"

namespace mfc::policies {

// The comparison order used throughout the outputs.
const std::vector<std::string>& all_policy_names();
bool is_learning_policy(const std::string& name);

// training_decisions_estimate sizes the epsilon schedules; pass 0 when the
// policy will only ever evaluate.
std::unique_ptr<Policy> make_policy(const std::string& name,
                                    const harness::ExperimentConfig& cfg,
                                    std::uint64_t master_seed,
                                    long training_decisions_estimate);

// Reads the "policy <kind>" header, constructs that kind, loads its body.
std::unique_ptr<Policy> load_policy_file(const std::string& path,
                                         const harness::ExperimentConfig& cfg,
                                         std::uint64_t master_seed);

void save_policy_file(const Policy& policy, const std::string& path);

}  // namespace mfc::policies
