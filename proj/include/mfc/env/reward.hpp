#pragma once

#include <vector>

#include "mfc/harness/config.hpp"
#include "mfc/world/world.hpp"

namespace mfc::env {

// Jain's fairness index (sum x)^2 / (n * sum x^2) over non-negative loads.
// All-zero loads count as perfectly balanced (1.0).
double balance_index(const std::vector<double>& loads);

// Per-task reward ingredients. delay_norm is latency/deadline capped at
// delay_cap; a rejected task takes the full cap and success 0.
struct RewardTerms {
  double delay_norm = 0;
  double success = 0;  // 0 or 1
  double balance = 0;  // balance_index at resolution time
};

RewardTerms reward_terms(const world::Task& t, double balance, const harness::RewardConfig& rc);

// r = alpha * (-delay_norm) + beta * success + lambda_balance * balance.
double compute_reward(const RewardTerms& terms, const harness::RewardConfig& rc);

}  // namespace mfc::env
