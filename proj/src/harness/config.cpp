#include "mfc/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mfc::harness {

namespace {

using nlohmann::json;

// Reads one section strictly: every key present in the JSON object must be
// consumed by a read_* call, otherwise the leftover is reported by name.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  void read_int(int& out, const char* key) {
    if (!mark(key)) return;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(path_ + "." + key + ": expected an integer");
    out = v.get<int>();
  }

  void read_real(double& out, const char* key) {
    if (!mark(key)) return;
    const json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(path_ + "." + key + ": expected a number");
    out = v.get<double>();
  }

  void read_real_list(std::vector<double>& out, const char* key) {
    if (!mark(key)) return;
    const json& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(path_ + "." + key + ": expected an array of numbers");
    out.clear();
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(path_ + "." + key + ": expected an array of numbers");
      out.push_back(e.get<double>());
    }
  }

  void read_int_list(std::vector<int>& out, const char* key) {
    if (!mark(key)) return;
    const json& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(path_ + "." + key + ": expected an array of integers");
    out.clear();
    for (const auto& e : v) {
      if (!e.is_number_integer())
        throw ConfigError(path_ + "." + key + ": expected an array of integers");
      out.push_back(e.get<int>());
    }
  }

  // Profiles are written as [[cpu_ghz, memory_mb], ...].
  void read_profiles(std::vector<FogProfile>& out, const char* key) {
    if (!mark(key)) return;
    const json& v = j_.at(key);
    const std::string want = path_ + "." + key + ": expected an array of [cpu_ghz, memory_mb] pairs";
    if (!v.is_array()) throw ConfigError(want);
    out.clear();
    for (const auto& e : v) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ConfigError(want);
      out.push_back({e[0].get<double>(), e[1].get<double>()});
    }
  }

  void finish() const {
    for (const auto& item : j_.items())
      if (!seen_.count(item.key())) throw ConfigError(path_ + "." + item.key() + ": unknown key");
  }

 private:
  bool mark(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void check_range(double lo, double hi, const char* lo_key, const char* hi_key) {
  require(lo > 0.0, std::string(lo_key) + ": must be positive");
  require(lo <= hi, std::string(lo_key) + " exceeds " + hi_key);
}

}  // namespace

void ExperimentConfig::validate() const {
  require(topology.zones >= 1, "topology.zones: must be at least 1");
  require(topology.segment_length_m > 0, "topology.segment_length_m: must be positive");
  require(!topology.fog_profiles.empty(), "topology.fog_profiles: must be non-empty");
  for (const FogProfile& fp : topology.fog_profiles) {
    require(fp.cpu_ghz > 0, "topology.fog_profiles: cpu_ghz must be positive");
    require(fp.memory_mb > 0, "topology.fog_profiles: memory_mb must be positive");
  }

  require(cloud.cpu_ghz > 0, "cloud.cpu_ghz: must be positive");
  require(cloud.backhaul_rtt_s > 0, "cloud.backhaul_rtt_s: must be positive");

  require(fleet.vehicles >= 1, "fleet.vehicles: must be at least 1");
  check_range(fleet.speed_kmh_min, fleet.speed_kmh_max, "fleet.speed_kmh_min",
              "fleet.speed_kmh_max");
  require(fleet.arrival_rate_hz >= 0, "fleet.arrival_rate_hz: must be non-negative");

  check_range(tasks.size_mb_min, tasks.size_mb_max, "tasks.size_mb_min", "tasks.size_mb_max");
  check_range(tasks.deadline_s_min, tasks.deadline_s_max, "tasks.deadline_s_min",
              "tasks.deadline_s_max");
  require(tasks.cycles_per_bit > 0, "tasks.cycles_per_bit: must be positive");

  require(links.v2r_mbps > 0, "links.v2r_mbps: must be positive");
  require(links.hop_delay_s > 0, "links.hop_delay_s: must be positive");
  require(links.downlink_kb > 0, "links.downlink_kb: must be positive");

  require(reward.alpha >= 0, "reward.alpha: must be non-negative");
  require(reward.beta >= 0, "reward.beta: must be non-negative");
  require(reward.lambda_balance >= 0, "reward.lambda_balance: must be non-negative");
  require(reward.alpha + reward.beta + reward.lambda_balance > 0,
          "reward.alpha: weights must not all be zero");
  require(reward.gamma_discount > 0 && reward.gamma_discount < 1,
          "reward.gamma_discount: must lie in (0,1)");
  require(reward.delay_cap > 0, "reward.delay_cap: must be positive");

  require(observe.balance_window_s > 0, "observe.balance_window_s: must be positive");
  require(observe.max_queue_tasks >= 1, "observe.max_queue_tasks: must be at least 1");
  require(observe.max_vehicles_per_zone >= 1,
          "observe.max_vehicles_per_zone: must be at least 1");
  require(observe.max_delay_s > 0, "observe.max_delay_s: must be positive");
  require(observe.delay_ema_alpha > 0 && observe.delay_ema_alpha <= 1,
          "observe.delay_ema_alpha: must lie in (0,1]");

  require(q_learning.eta >= 0 && q_learning.eta <= 1, "q_learning.eta: must lie in [0,1]");
  require(q_learning.delta > 0 && q_learning.delta < 1, "q_learning.delta: must lie in (0,1)");
  require(q_learning.eta_visit_scale > 0, "q_learning.eta_visit_scale: must be positive");

  auto check_eps = [](double start, double end, double frac, const char* section) {
    require(start >= 0 && start <= 1, std::string(section) + ".epsilon_start: must lie in [0,1]");
    require(end >= 0 && end <= start,
            std::string(section) + ".epsilon_end: must lie in [0, epsilon_start]");
    require(frac > 0 && frac <= 1,
            std::string(section) + ".epsilon_fraction: must lie in (0,1]");
  };
  check_eps(q_learning.epsilon_start, q_learning.epsilon_end, q_learning.epsilon_fraction,
            "q_learning");
  check_eps(dqn.epsilon_start, dqn.epsilon_end, dqn.epsilon_fraction, "dqn");

  require(!dqn.hidden.empty(), "dqn.hidden: must be non-empty");
  for (int h : dqn.hidden) require(h >= 1, "dqn.hidden: layer sizes must be at least 1");
  require(dqn.batch_size >= 1, "dqn.batch_size: must be at least 1");
  require(dqn.buffer_capacity >= dqn.batch_size,
          "dqn.buffer_capacity: must be at least batch_size");
  require(dqn.target_sync >= 1, "dqn.target_sync: must be at least 1");
  require(dqn.learning_rate > 0, "dqn.learning_rate: must be positive");
  require(dqn.train_every >= 1, "dqn.train_every: must be at least 1");
  require(dqn.huber_delta > 0, "dqn.huber_delta: must be positive");
  require(dqn.grad_clip > 0, "dqn.grad_clip: must be positive");

  require(!actor_critic.hidden.empty(), "actor_critic.hidden: must be non-empty");
  for (int h : actor_critic.hidden)
    require(h >= 1, "actor_critic.hidden: layer sizes must be at least 1");
  require(actor_critic.learning_rate > 0, "actor_critic.learning_rate: must be positive");
  require(actor_critic.entropy_coef >= 0, "actor_critic.entropy_coef: must be non-negative");
  require(actor_critic.grad_clip > 0, "actor_critic.grad_clip: must be positive");

  require(optimization.epoch_s > 0, "optimization.epoch_s: must be positive");
  require(optimization.slots_per_node >= 1, "optimization.slots_per_node: must be at least 1");

  require(run.train_episodes >= 0, "run.train_episodes: must be non-negative");
  require(run.episode_s > 0, "run.episode_s: must be positive");
  require(run.eval_s > 0, "run.eval_s: must be positive");
  require(run.metrics_sample_s > 0, "run.metrics_sample_s: must be positive");
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;

  bool blank = std::all_of(text.begin(), text.end(),
                           [](unsigned char c) { return std::isspace(c); });
  if (!blank) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");

    static const char* kSections[] = {"topology",  "cloud",        "fleet",        "tasks",
                                      "links",     "reward",       "observe",      "q_learning",
                                      "dqn",       "actor_critic", "optimization", "run"};
    {
      std::set<std::string> allowed(std::begin(kSections), std::end(kSections));
      for (const auto& item : j.items())
        if (!allowed.count(item.key())) throw ConfigError("config." + item.key() + ": unknown key");
    }
    auto section = [&](const char* name) -> const json* {
      if (!j.contains(name)) return nullptr;
      if (!j.at(name).is_object())
        throw ConfigError(std::string("config.") + name + ": expected an object");
      return &j.at(name);
    };

    if (const json* s = section("topology")) {
      Section p(*s, "topology");
      p.read_int(cfg.topology.zones, "zones");
      p.read_real(cfg.topology.segment_length_m, "segment_length_m");
      p.read_profiles(cfg.topology.fog_profiles, "fog_profiles");
      p.finish();
    }
    if (const json* s = section("cloud")) {
      Section p(*s, "cloud");
      p.read_real(cfg.cloud.cpu_ghz, "cpu_ghz");
      p.read_real(cfg.cloud.backhaul_rtt_s, "backhaul_rtt_s");
      p.finish();
    }
    if (const json* s = section("fleet")) {
      Section p(*s, "fleet");
      p.read_int(cfg.fleet.vehicles, "vehicles");
      p.read_real(cfg.fleet.speed_kmh_min, "speed_kmh_min");
      p.read_real(cfg.fleet.speed_kmh_max, "speed_kmh_max");
      p.read_real(cfg.fleet.arrival_rate_hz, "arrival_rate_hz");
      p.finish();
    }
    if (const json* s = section("tasks")) {
      Section p(*s, "tasks");
      p.read_real(cfg.tasks.size_mb_min, "size_mb_min");
      p.read_real(cfg.tasks.size_mb_max, "size_mb_max");
      p.read_real(cfg.tasks.deadline_s_min, "deadline_s_min");
      p.read_real(cfg.tasks.deadline_s_max, "deadline_s_max");
      p.read_real(cfg.tasks.cycles_per_bit, "cycles_per_bit");
      p.finish();
    }
    if (const json* s = section("links")) {
      Section p(*s, "links");
      p.read_real(cfg.links.v2r_mbps, "v2r_mbps");
      p.read_real(cfg.links.hop_delay_s, "hop_delay_s");
      p.read_real(cfg.links.downlink_kb, "downlink_kb");
      p.finish();
    }
    if (const json* s = section("reward")) {
      Section p(*s, "reward");
      p.read_real(cfg.reward.alpha, "alpha");
      p.read_real(cfg.reward.beta, "beta");
      p.read_real(cfg.reward.lambda_balance, "lambda_balance");
      p.read_real(cfg.reward.gamma_discount, "gamma_discount");
      p.read_real(cfg.reward.delay_cap, "delay_cap");
      p.finish();
    }
    if (const json* s = section("observe")) {
      Section p(*s, "observe");
      p.read_real(cfg.observe.balance_window_s, "balance_window_s");
      p.read_int(cfg.observe.max_queue_tasks, "max_queue_tasks");
      p.read_int(cfg.observe.max_vehicles_per_zone, "max_vehicles_per_zone");
      p.read_real(cfg.observe.max_delay_s, "max_delay_s");
      p.read_real(cfg.observe.delay_ema_alpha, "delay_ema_alpha");
      p.finish();
    }
    if (const json* s = section("q_learning")) {
      Section p(*s, "q_learning");
      p.read_real(cfg.q_learning.eta, "eta");
      p.read_real(cfg.q_learning.delta, "delta");
      p.read_real(cfg.q_learning.eta_visit_scale, "eta_visit_scale");
      p.read_real(cfg.q_learning.epsilon_start, "epsilon_start");
      p.read_real(cfg.q_learning.epsilon_end, "epsilon_end");
      p.read_real(cfg.q_learning.epsilon_fraction, "epsilon_fraction");
      p.finish();
    }
    if (const json* s = section("dqn")) {
      Section p(*s, "dqn");
      p.read_int_list(cfg.dqn.hidden, "hidden");
      p.read_int(cfg.dqn.buffer_capacity, "buffer_capacity");
      p.read_int(cfg.dqn.batch_size, "batch_size");
      p.read_int(cfg.dqn.target_sync, "target_sync");
      p.read_real(cfg.dqn.learning_rate, "learning_rate");
      p.read_int(cfg.dqn.train_every, "train_every");
      p.read_real(cfg.dqn.epsilon_start, "epsilon_start");
      p.read_real(cfg.dqn.epsilon_end, "epsilon_end");
      p.read_real(cfg.dqn.epsilon_fraction, "epsilon_fraction");
      p.read_real(cfg.dqn.huber_delta, "huber_delta");
      p.read_real(cfg.dqn.grad_clip, "grad_clip");
      p.finish();
    }
    if (const json* s = section("actor_critic")) {
      Section p(*s, "actor_critic");
      p.read_int_list(cfg.actor_critic.hidden, "hidden");
      p.read_real(cfg.actor_critic.learning_rate, "learning_rate");
      p.read_real(cfg.actor_critic.entropy_coef, "entropy_coef");
      p.read_real(cfg.actor_critic.grad_clip, "grad_clip");
      p.finish();
    }
    if (const json* s = section("optimization")) {
      Section p(*s, "optimization");
      p.read_real(cfg.optimization.epoch_s, "epoch_s");
      p.read_int(cfg.optimization.slots_per_node, "slots_per_node");
      p.finish();
    }
    if (const json* s = section("run")) {
      Section p(*s, "run");
      p.read_int(cfg.run.train_episodes, "train_episodes");
      p.read_real(cfg.run.episode_s, "episode_s");
      p.read_real(cfg.run.eval_s, "eval_s");
      p.read_real(cfg.run.metrics_sample_s, "metrics_sample_s");
      p.finish();
    }
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  if (path.empty()) {
    ExperimentConfig cfg;
    cfg.validate();
    return cfg;
  }
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string ExperimentConfig::to_json_string() const {
  json j;
  j["topology"] = {{"zones", topology.zones},
                   {"segment_length_m", topology.segment_length_m},
                   {"fog_profiles", json::array()}};
  for (const FogProfile& fp : topology.fog_profiles)
    j["topology"]["fog_profiles"].push_back({fp.cpu_ghz, fp.memory_mb});
  j["cloud"] = {{"cpu_ghz", cloud.cpu_ghz}, {"backhaul_rtt_s", cloud.backhaul_rtt_s}};
  j["fleet"] = {{"vehicles", fleet.vehicles},
                {"speed_kmh_min", fleet.speed_kmh_min},
                {"speed_kmh_max", fleet.speed_kmh_max},
                {"arrival_rate_hz", fleet.arrival_rate_hz}};
  j["tasks"] = {{"size_mb_min", tasks.size_mb_min},
                {"size_mb_max", tasks.size_mb_max},
                {"deadline_s_min", tasks.deadline_s_min},
                {"deadline_s_max", tasks.deadline_s_max},
                {"cycles_per_bit", tasks.cycles_per_bit}};
  j["links"] = {{"v2r_mbps", links.v2r_mbps},
                {"hop_delay_s", links.hop_delay_s},
                {"downlink_kb", links.downlink_kb}};
  j["reward"] = {{"alpha", reward.alpha},
                 {"beta", reward.beta},
                 {"lambda_balance", reward.lambda_balance},
                 {"gamma_discount", reward.gamma_discount},
                 {"delay_cap", reward.delay_cap}};
  j["observe"] = {{"balance_window_s", observe.balance_window_s},
                  {"max_queue_tasks", observe.max_queue_tasks},
                  {"max_vehicles_per_zone", observe.max_vehicles_per_zone},
                  {"max_delay_s", observe.max_delay_s},
                  {"delay_ema_alpha", observe.delay_ema_alpha}};
  j["q_learning"] = {{"eta", q_learning.eta},
                     {"delta", q_learning.delta},
                     {"eta_visit_scale", q_learning.eta_visit_scale},
                     {"epsilon_start", q_learning.epsilon_start},
                     {"epsilon_end", q_learning.epsilon_end},
                     {"epsilon_fraction", q_learning.epsilon_fraction}};
  j["dqn"] = {{"hidden", dqn.hidden},
              {"buffer_capacity", dqn.buffer_capacity},
              {"batch_size", dqn.batch_size},
              {"target_sync", dqn.target_sync},
              {"learning_rate", dqn.learning_rate},
              {"train_every", dqn.train_every},
              {"epsilon_start", dqn.epsilon_start},
              {"epsilon_end", dqn.epsilon_end},
              {"epsilon_fraction", dqn.epsilon_fraction},
              {"huber_delta", dqn.huber_delta},
              {"grad_clip", dqn.grad_clip}};
  j["actor_critic"] = {{"hidden", actor_critic.hidden},
                       {"learning_rate", actor_critic.learning_rate},
                       {"entropy_coef", actor_critic.entropy_coef},
                       {"grad_clip", actor_critic.grad_clip}};
  j["optimization"] = {{"epoch_s", optimization.epoch_s},
                       {"slots_per_node", optimization.slots_per_node}};
  j["run"] = {{"train_episodes", run.train_episodes},
              {"episode_s", run.episode_s},
              {"eval_s", run.eval_s},
              {"metrics_sample_s", run.metrics_sample_s}};
  return j.dump(2) + "\n";
}

}  // namespace mfc::harness
