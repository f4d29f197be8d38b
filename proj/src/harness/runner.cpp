#include "mfc/harness/runner.hpp"

#include <cmath>
#include <fstream>
#include <optional>

#include "mfc/env/reward.hpp"
#include "mfc/env/state.hpp"
#include "mfc/env/tracker.hpp"
#include "mfc/policies/factory.hpp"
#include "mfc/sim/event_queue.hpp"
#include "mfc/world/world.hpp"

namespace mfc::harness {

namespace {

env::PolicyObservation make_observation(world::World& w, const world::Task& t,
                                        const ExperimentConfig& cfg, double now) {
  env::PolicyObservation obs;
  obs.state = env::observe(w, t, cfg, now);
  obs.key = env::discretize(obs.state, w.zones());
  for (int a = 0; a < world::kNumActions; ++a) {
    obs.predicted_latency_s[static_cast<std::size_t>(a)] = w.predicted_completion_latency(t, a);
    obs.action_node[static_cast<std::size_t>(a)] = w.action_node(t, a);
  }
  return obs;
}

}  // namespace

EpisodeResult run_episode(const ExperimentConfig& cfg, policies::Policy& policy,
                          std::uint64_t master_seed, const std::string& stream_prefix,
                          double horizon_s, const std::string& label,
                          std::uint64_t seed_label) {
  sim::EventQueue queue(horizon_s);
  world::World w(cfg, master_seed, stream_prefix, queue);
  metrics::MetricsCollector collector;

  const bool training = policy.learns() && policy.mode() == policies::Mode::Training;
  std::optional<env::TransitionTracker> tracker;
  if (training)
    tracker.emplace([&policy](const env::Transition& t) { policy.learn(t); });

  double reward_sum = 0;
  long resolved = 0;
  long decisions = 0;
  std::vector<std::int64_t> pending;

  for (long k = 1; k * cfg.run.metrics_sample_s <= horizon_s; ++k)
    queue.schedule(k * cfg.run.metrics_sample_s, sim::EventKind::MetricsSample);
  if (policy.batches())
    for (long k = 1; k * cfg.optimization.epoch_s <= horizon_s; ++k)
      queue.schedule(k * cfg.optimization.epoch_s, sim::EventKind::DecisionEpoch);

  auto resolve_terminal = [&](std::int64_t id) {
    const world::Task& t = w.task(id);
    collector.record_outcome(t);
    double balance = env::balance_index(w.fog_window_shares(queue.now()));
    double reward = env::compute_reward(env::reward_terms(t, balance, cfg.reward), cfg.reward);
    reward_sum += reward;
    ++resolved;
    if (tracker) tracker->on_outcome(id, reward);
  };

  while (auto ev = queue.pop_next()) {
    switch (ev->kind) {
      case sim::EventKind::TaskArrival: {
        std::int64_t id = w.on_task_arrival(static_cast<int>(ev->entity));
        if (policy.batches()) {
          pending.push_back(id);
        } else {
          env::PolicyObservation obs = make_observation(w, w.task(id), cfg, queue.now());
          int action = policy.decide(obs);
          ++decisions;
          if (tracker) tracker->on_decision(id, obs.state, obs.key, action);
          w.route_task(id, action);
        }
        break;
      }
      case sim::EventKind::TransmissionDone:
        if (!w.on_transmission_done(ev->entity)) resolve_terminal(ev->entity);
        break;
      case sim::EventKind::ProcessingDone:
        w.on_processing_done(ev->entity);
        resolve_terminal(ev->entity);
        break;
      case sim::EventKind::VehicleHandover:
        w.on_handover(static_cast<int>(ev->entity));
        break;
      case sim::EventKind::DecisionEpoch: {
        if (pending.empty()) break;
        std::vector<env::PolicyObservation> batch;
        batch.reserve(pending.size());
        for (std::int64_t id : pending)
          batch.push_back(make_observation(w, w.task(id), cfg, queue.now()));
        std::vector<int> actions = policy.decide_batch(batch);
        for (std::size_t i = 0; i < pending.size(); ++i) {
          ++decisions;
          if (tracker)
            tracker->on_decision(pending[i], batch[i].state, batch[i].key, actions[i]);
          w.route_task(pending[i], actions[i]);
        }
        pending.clear();
        break;
      }
      case sim::EventKind::MetricsSample:
        collector.sample(w, queue.now());
        break;
    }
  }

  if (tracker) tracker->finish();

  EpisodeResult result;
  result.record = collector.finalize(w, horizon_s, label, seed_label);
  result.mean_reward = resolved > 0 ? reward_sum / static_cast<double>(resolved) : 0.0;
  result.decisions = decisions;
  return result;
}

long training_decisions_estimate(const ExperimentConfig& cfg) {
  return std::lround(cfg.run.train_episodes * cfg.run.episode_s * cfg.fleet.vehicles *
                     cfg.fleet.arrival_rate_hz);
}

TrainingOutput run_training(const ExperimentConfig& cfg, const std::string& policy_name,
                            std::uint64_t seed) {
  if (!policies::is_learning_policy(policy_name))
    throw ConfigError("train: policy '" + policy_name + "' does not learn");
  TrainingOutput out;
  out.policy = policies::make_policy(policy_name, cfg, seed, training_decisions_estimate(cfg));
  out.policy->set_mode(policies::Mode::Training);
  for (int ep = 0; ep < cfg.run.train_episodes; ++ep) {
    out.episodes.push_back(run_episode(cfg, *out.policy, seed, "train/ep" + std::to_string(ep),
                                       cfg.run.episode_s, policy_name, seed));
  }
  return out;
}

metrics::MetricsRecord run_eval(const ExperimentConfig& cfg, policies::Policy& policy,
                                std::uint64_t seed) {
  policy.set_mode(policies::Mode::Evaluation);
  return run_episode(cfg, policy, seed, "eval", cfg.run.eval_s, policy.name(), seed).record;
}

void export_training_curve(const std::vector<EpisodeResult>& episodes, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("training curve: cannot open " + path);
  out << "episode,mean_reward,decisions\n";
  for (std::size_t i = 0; i < episodes.size(); ++i)
    out << i << ',' << metrics::format_double(episodes[i].mean_reward) << ','
        << episodes[i].decisions << '\n';
  if (!out) throw std::runtime_error("training curve: write failed for " + path);
}

}  // namespace mfc::harness
