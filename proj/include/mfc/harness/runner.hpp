#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mfc/harness/config.hpp"
#include "mfc/metrics/metrics.hpp"
#include "mfc/policies/policy.hpp"

namespace mfc::harness {

struct EpisodeResult {
  metrics::MetricsRecord record;
  double mean_reward = 0;  // over outcomes resolved within the episode
  long decisions = 0;
};

// One seeded simulation run. The policy keeps whatever mode it is in; a
// learning policy in Training mode receives transitions as they resolve.
// stream_prefix isolates this run's randomness (e.g. "train/ep3", "eval").
EpisodeResult run_episode(const ExperimentConfig& cfg, policies::Policy& policy,
                          std::uint64_t master_seed, const std::string& stream_prefix,
                          double horizon_s, const std::string& label, std::uint64_t seed_label);

// Expected decision count of a full training run; sizes epsilon schedules.
long training_decisions_estimate(const ExperimentConfig& cfg);

struct TrainingOutput {
  std::unique_ptr<policies::Policy> policy;
  std::vector<EpisodeResult> episodes;
};

// The training loop: train_episodes fresh worlds, same infrastructure,
// episode-specific randomness, one persistent agent.
TrainingOutput run_training(const ExperimentConfig& cfg, const std::string& policy_name,
                            std::uint64_t seed);

// Single evaluation run; forces Evaluation mode.
metrics::MetricsRecord run_eval(const ExperimentConfig& cfg, policies::Policy& policy,
                                std::uint64_t seed);

// Writes "episode,mean_reward,decisions" rows.
void export_training_curve(const std::vector<EpisodeResult>& episodes, const std::string& path);

}  // namespace mfc::harness
