#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mfc::harness {

// Invalid or malformed configuration. Messages name the offending key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A fog node hardware class; compute-dense nodes trade buffer memory.
struct FogProfile {
  double cpu_ghz = 1.0;
  double memory_mb = 32.0;
};

struct TopologyConfig {
  int zones = 6;                 // ring of zones, one fog node per zone
  double segment_length_m = 500.0;
  std::vector<FogProfile> fog_profiles{{1.0, 32.0}, {2.0, 24.0}, {3.0, 12.0}, {4.0, 6.0}};
};

struct CloudConfig {
  double cpu_ghz = 16.0;
  double backhaul_rtt_s = 0.1;
};

struct FleetConfig {
  int vehicles = 100;
  double speed_kmh_min = 20.0;
  double speed_kmh_max = 80.0;
  double arrival_rate_hz = 0.2;  // tasks per second per vehicle
};

struct TaskGenConfig {
  double size_mb_min = 0.5;
  double size_mb_max = 5.0;
  double deadline_s_min = 0.05;
  double deadline_s_max = 0.5;
  double cycles_per_bit = 10.0;
};

struct LinkConfig {
  double v2r_mbps = 100.0;   // vehicle to RSU, both directions
  double hop_delay_s = 0.005;
  double downlink_kb = 10.0;  // result payload
};

struct RewardConfig {
  double alpha = 1.0;           // weight on -Delay
  double beta = 1.0;            // weight on Success
  double lambda_balance = 1.0;  // weight on Balance
  double gamma_discount = 0.9;
  double delay_cap = 2.0;  // bound on latency/deadline; rejected tasks take the cap
};

struct ObserveConfig {
  double balance_window_s = 5.0;
  int max_queue_tasks = 32;        // queue-length normalizer
  int max_vehicles_per_zone = 40;  // vehicle-count normalizer
  double max_delay_s = 1.0;        // network-delay normalizer
  double delay_ema_alpha = 0.05;
};

struct QLearningConfig {
  double eta = 0.1;    // base learning rate, decayed per state visit
  double delta = 0.9;  // discount in the TD target
  double eta_visit_scale = 1000.0;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_fraction = 0.5;  // share of training decisions spent decaying
};

struct DqnConfig {
  std::vector<int> hidden{64, 64};
  int buffer_capacity = 50000;
  int batch_size = 64;
  int target_sync = 500;  // train steps between target refreshes
  double learning_rate = 1e-3;
  int train_every = 1;  // learn() calls per gradient step
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_fraction = 0.5;
  double huber_delta = 1.0;
  double grad_clip = 10.0;
};

struct ActorCriticConfig {
  std::vector<int> hidden{64, 64};
  double learning_rate = 1e-3;
  double entropy_coef = 0.01;
  double grad_clip = 10.0;
};

struct OptimizationConfig {
  double epoch_s = 0.1;    // batching window for joint assignment
  int slots_per_node = 2;  // fog assignments accepted per node per epoch
};

struct RunConfig {
  int train_episodes = 30;
  double episode_s = 200.0;
  double eval_s = 200.0;
  double metrics_sample_s = 1.0;
};

struct ExperimentConfig {
  TopologyConfig topology;
  CloudConfig cloud;
  FleetConfig fleet;
  TaskGenConfig tasks;
  LinkConfig links;
  RewardConfig reward;
  ObserveConfig observe;
  QLearningConfig q_learning;
  DqnConfig dqn;
  ActorCriticConfig actor_critic;
  OptimizationConfig optimization;
  RunConfig run;

  // Derived accessors (SI units).
  double v2r_bps() const { return links.v2r_mbps * 1e6; }
  double downlink_bits() const { return links.downlink_kb * 8e3; }

  void validate() const;  // throws ConfigError naming the offending key
  std::string to_json_string() const;
};

// Parses a JSON config string. Missing sections and keys take defaults;
// unknown keys are rejected. A blank document means "all defaults".
ExperimentConfig parse_config(const std::string& text);

// Loads from a file path. Empty path means "all defaults".
ExperimentConfig load_config(const std::string& path);

}  // namespace mfc::harness
