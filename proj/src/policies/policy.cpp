#include "mfc/policies/policy.hpp"

#include <stdexcept>

namespace mfc::policies {

std::vector<int> Policy::decide_batch(const std::vector<env::PolicyObservation>& batch) {
  std::vector<int> actions;
  actions.reserve(batch.size());
  for (const auto& obs : batch) actions.push_back(decide(obs));
  return actions;
}

void Policy::save(std::ostream& out) const { out << "policy " << name() << "\n"; }

void Policy::load(std::istream&) {}

int argmax_lowest(const Eigen::VectorXd& values) {
  int best = 0;
  for (int i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

int epsilon_greedy_select(const Eigen::VectorXd& values, double epsilon, sim::RngStream& rng) {
  if (epsilon < 0 || epsilon > 1)
    throw std::logic_error("epsilon_greedy_select: epsilon must lie in [0,1]");
  if (epsilon > 0 && rng.uniform() < epsilon)
    return rng.uniform_int(static_cast<int>(values.size()));
  return argmax_lowest(values);
}

double epsilon_at(long step, double start, double end, long decay_steps) {
  if (decay_steps <= 0 || step >= decay_steps) return end;
  return start + (end - start) * static_cast<double>(step) / static_cast<double>(decay_steps);
}

}  // namespace mfc::policies
