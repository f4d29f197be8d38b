#include "mfc/env/reward.hpp"

#include <algorithm>
#include <stdexcept>

namespace mfc::env {

double balance_index(const std::vector<double>& loads) {
  if (loads.empty()) throw std::logic_error("balance_index: empty load vector");
  double sum = 0, sum_sq = 0;
  for (double x : loads) {
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq == 0) return 1.0;
  return sum * sum / (static_cast<double>(loads.size()) * sum_sq);
}

RewardTerms reward_terms(const world::Task& t, double balance,
                         const harness::RewardConfig& rc) {
  RewardTerms terms;
  terms.balance = balance;
  switch (t.outcome) {
    case world::Outcome::Completed:
      terms.delay_norm = std::min(t.latency_s / t.deadline_s, rc.delay_cap);
      terms.success = 1.0;
      break;
    case world::Outcome::DeadlineMiss:
      terms.delay_norm = std::min(t.latency_s / t.deadline_s, rc.delay_cap);
      terms.success = 0.0;
      break;
    case world::Outcome::Rejected:
      terms.delay_norm = rc.delay_cap;
      terms.success = 0.0;
      break;
    case world::Outcome::Pending:
      throw std::logic_error("reward_terms: task not terminal");
  }
  return terms;
}

double compute_reward(const RewardTerms& terms, const harness::RewardConfig& rc) {
  return rc.alpha * (-terms.delay_norm) + rc.beta * terms.success +
         rc.lambda_balance * terms.balance;
}

}  // namespace mfc::env
