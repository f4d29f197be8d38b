#include "mfc/env/state.hpp"

#include <algorithm>

namespace mfc::env {

namespace {

double clip01(double x) { return std::clamp(x, 0.0, 1.0); }

// Queue-load level by quartile thresholds {0.25, 0.5, 0.75}.
int queue_level(double q) {
  if (q < 0.25) return 0;
  if (q < 0.5) return 1;
  if (q < 0.75) return 2;
  return 3;
}

// Thirds of the unit range; 1.0 folds into the top class.
int third_class(double x) { return std::min(2, static_cast<int>(x * 3.0)); }

}  // namespace

Eigen::VectorXd observe(world::World& w, const world::Task& t,
                        const harness::ExperimentConfig& cfg, double now) {
  const int n = w.zones();
  Eigen::VectorXd s = Eigen::VectorXd::Zero(state_dim(n));

  std::vector<double> shares = w.fog_window_shares(now);
  for (int i = 0; i < n; ++i) s[i] = clip01(1.0 - shares[static_cast<std::size_t>(i)]);

  const auto& veh = w.vehicles_per_zone();
  for (int i = 0; i < n; ++i)
    s[n + i] = clip01(static_cast<double>(veh[static_cast<std::size_t>(i)]) /
                      cfg.observe.max_vehicles_per_zone);

  const auto& nodes = w.nodes();
  for (int i = 0; i < n; ++i)
    s[2 * n + i] = clip01(static_cast<double>(nodes[static_cast<std::size_t>(i)].queue_len) /
                          cfg.observe.max_queue_tasks);

  s[3 * n] = clip01(w.delay_ema_s() / cfg.observe.max_delay_s);

  double size_mb = t.size_bytes / 1e6;
  double size_span = cfg.tasks.size_mb_max - cfg.tasks.size_mb_min;
  s[3 * n + 1] = size_span > 0 ? clip01((size_mb - cfg.tasks.size_mb_min) / size_span) : 0.0;
  double dl_span = cfg.tasks.deadline_s_max - cfg.tasks.deadline_s_min;
  s[3 * n + 2] = dl_span > 0 ? clip01((t.deadline_s - cfg.tasks.deadline_s_min) / dl_span) : 0.0;

  s[3 * n + 3 + t.origin_zone] = 1.0;
  return s;
}

std::int64_t discretize(const Eigen::VectorXd& state, int zones) {
  const int n = zones;
  int zone = 0;
  for (int i = 0; i < n; ++i)
    if (state[3 * n + 3 + i] == 1.0) zone = i;

  int size_c = third_class(state[3 * n + 1]);
  int dl_c = third_class(state[3 * n + 2]);

  int left = (zone + n - 1) % n;
  int right = (zone + 1) % n;
  int q_local = queue_level(state[2 * n + zone]);
  int q_left = queue_level(state[2 * n + left]);
  int q_right = queue_level(state[2 * n + right]);

  std::int64_t key = zone;
  key = key * 3 + size_c;
  key = key * 3 + dl_c;
  key = key * 4 + q_local;
  key = key * 4 + q_left;
  key = key * 4 + q_right;
  return key;
}

}  // namespace mfc::env
