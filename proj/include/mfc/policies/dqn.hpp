#pragma once

#include <vector>

#include "mfc/nn/adam.hpp"
#include "mfc/nn/mlp.hpp"
#include "mfc/policies/policy.hpp"

namespace mfc::policies {

// Bootstrap targets y_i = r_i + gamma * max_a Q_target(s'_i, a), with the
// bootstrap dropped on terminal transitions.
Eigen::VectorXd dqn_targets(const nn::Mlp& target_net,
                            const std::vector<const env::Transition*>& batch, double gamma);

// Deep Q-network: online and target MLPs over the continuous state vector,
// a uniform-replay ring buffer, epsilon-greedy exploration, Huber loss.
class DqnPolicy : public Policy {
 public:
  DqnPolicy(const harness::DqnConfig& cfg, double gamma, int state_dim,
            long epsilon_decay_steps, std::uint64_t master_seed);

  std::string name() const override { return "dqn"; }
  bool learns() const override { return true; }
  int decide(const env::PolicyObservation& obs) override;
  void learn(const env::Transition& t) override;

  // One gradient step on a sampled batch; no-op (returns 0) below batch_size.
  double train_step();

  const nn::Mlp& online_net() const { return online_; }
  const nn::Mlp& target_net() const { return target_; }
  std::size_t buffer_size() const { return buffer_.size(); }
  long train_steps() const { return train_steps_; }

  void save(std::ostream& out) const override;
  void load(std::istream& in) override;

 private:
  harness::DqnConfig cfg_;
  double gamma_;
  long decay_steps_;
  nn::Mlp online_, target_;
  nn::Adam adam_;
  std::vector<env::Transition> buffer_;  // ring once capacity is reached
  std::size_t write_pos_ = 0;
  long decisions_ = 0, learn_calls_ = 0, train_steps_ = 0;
  sim::RngStream explore_, replay_;
};

}  // namespace mfc::policies
