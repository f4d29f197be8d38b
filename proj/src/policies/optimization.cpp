#include "mfc/policies/optimization.hpp"

#include "mfc/policies/hungarian.hpp"

namespace mfc::policies {

namespace {
// Non-candidate node slots must never be chosen; any finite latency is far
// below this.
constexpr double kForbidden = 1e9;
}  // namespace

int OptimizationPolicy::decide(const env::PolicyObservation& obs) {
  std::vector<env::PolicyObservation> one{obs};
  return decide_batch(one)[0];
}

std::vector<int> OptimizationPolicy::decide_batch(
    const std::vector<env::PolicyObservation>& batch) {
  const int tasks = static_cast<int>(batch.size());
  if (tasks == 0) return {};

  // Columns: slots_per_node per fog node, then one cloud column per task so
  // the assignment always has room for every row.
  const int fog_cols = fog_nodes_ * slots_per_node_;
  const int cols = fog_cols + tasks;
  Eigen::MatrixXd cost(tasks, cols);
  cost.setConstant(kForbidden);

  for (int i = 0; i < tasks; ++i) {
    const auto& obs = batch[static_cast<std::size_t>(i)];
    for (int a = 0; a < world::kActionCloud; ++a) {
      int node = obs.action_node[static_cast<std::size_t>(a)];
      double c = obs.predicted_latency_s[static_cast<std::size_t>(a)];
      for (int s = 0; s < slots_per_node_; ++s) {
        double& cell = cost(i, node * slots_per_node_ + s);
        // With one or two zones several actions alias one node; keep the
        // cheapest (= lowest action index on exact ties).
        if (c < cell) cell = c;
      }
    }
    for (int j = 0; j < tasks; ++j)
      cost(i, fog_cols + j) = obs.predicted_latency_s[world::kActionCloud];
  }

  AssignmentResult assignment = solve_assignment(cost);

  std::vector<int> actions(static_cast<std::size_t>(tasks), world::kActionCloud);
  for (int i = 0; i < tasks; ++i) {
    int col = assignment.col_of_row[static_cast<std::size_t>(i)];
    if (col >= fog_cols) continue;  // cloud
    int node = col / slots_per_node_;
    const auto& obs = batch[static_cast<std::size_t>(i)];
    for (int a = 0; a < world::kActionCloud; ++a) {
      if (obs.action_node[static_cast<std::size_t>(a)] == node) {
        actions[static_cast<std::size_t>(i)] = a;
        break;
      }
    }
  }
  return actions;
}

}  // namespace mfc::policies
