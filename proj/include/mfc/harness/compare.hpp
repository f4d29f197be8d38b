#pragma once

#include <string>
#include <vector>

#include "mfc/harness/config.hpp"
#include "mfc/metrics/metrics.hpp"

namespace mfc::harness {

struct PolicyStats {
  std::string policy;
  double latency_mean = 0, latency_sd = 0;
  double success_mean = 0, success_sd = 0;
  double jain_mean = 0, jain_sd = 0;
  double variance_mean = 0;
  double util_mean = 0;
};

struct ComparisonReport {
  std::vector<PolicyStats> stats;  // canonical policy order
  std::vector<metrics::MetricsRecord> records;

  // Mean latency: greedy > optimization > each trained RL policy.
  bool latency_ordering_strict = false;
  // actor-critic <= dqn <= q-learning within one pooled standard error.
  bool rl_latency_ordered_within_se = false;
  // Mean success rate: greedy < optimization < each trained RL policy.
  bool success_ordering_strict = false;
  bool rl_success_ordered_within_se = false;
  // Every RL policy's mean Jain index at least greedy's.
  bool rl_jain_at_least_greedy = false;

  std::string best_rl_policy;                 // lowest mean latency among RL
  double best_rl_latency_improvement = 0;     // fraction below greedy's mean
  double best_rl_success_gain_pp = 0;         // percentage points over greedy
};

// Trains each RL policy per seed, evaluates all five policies per seed on
// paired evaluation workloads, writes metrics.csv, comparison.json and the
// per-figure plot CSVs into out_dir. Seeds may run concurrently (jobs > 1)
// without changing any output byte.
ComparisonReport run_compare(const ExperimentConfig& cfg, const std::vector<std::uint64_t>& seeds,
                             int jobs, const std::string& out_dir);

// Human-readable bucket for a Jain index, used in comparison.json only.
std::string jain_category(double jain);

}  // namespace mfc::harness
