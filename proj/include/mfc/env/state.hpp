#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>

#include "mfc/harness/config.hpp"
#include "mfc/world/world.hpp"

namespace mfc::env {

// Observation layout for n zones (dimension 4n + 3):
//   [0, n)        per-fog-node available capacity, 1 - windowed utilization
//   [n, 2n)       vehicles per zone / max_vehicles_per_zone
//   [2n, 3n)      queue length per fog node / max_queue_tasks
//   [3n]          end-to-end latency EMA / max_delay_s
//   [3n+1]        task size, position within the configured range
//   [3n+2]        task deadline, position within the configured range
//   [3n+3, 4n+3)  origin zone one-hot
// Every component is clipped to [0, 1].
inline int state_dim(int zones) { return 4 * zones + 3; }

Eigen::VectorXd observe(world::World& w, const world::Task& t,
                        const harness::ExperimentConfig& cfg, double now);

// Tabular key: (origin zone, size class of 3, deadline class of 3, queue
// level of 4 for the local and both neighbor nodes). Flattened range is
// [0, zones * 3 * 3 * 64).
std::int64_t discretize(const Eigen::VectorXd& state, int zones);
inline std::int64_t key_space_size(int zones) { return static_cast<std::int64_t>(zones) * 576; }

// What a policy sees when asked to decide one task.
struct PolicyObservation {
  Eigen::VectorXd state;
  std::int64_t key = 0;
  std::array<double, world::kNumActions> predicted_latency_s{};
  std::array<int, world::kNumActions> action_node{};
};

struct Transition {
  Eigen::VectorXd state;
  std::int64_t key = 0;
  int action = 0;
  double reward = 0;
  Eigen::VectorXd next_state;
  std::int64_t next_key = 0;
  bool done = false;
};

}  // namespace mfc::env
