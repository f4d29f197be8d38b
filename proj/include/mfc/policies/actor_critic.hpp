#pragma once

#include "mfc/nn/adam.hpp"
#include "mfc/nn/mlp.hpp"
#include "mfc/policies/policy.hpp"

namespace mfc::policies {

// A = r + gamma * V(s') * (1 - done) - V(s).
double advantage(double reward, double v_next, double v_now, double gamma, bool done);

// Advantage actor-critic on a shared trunk: one MLP whose output holds the
// |A| policy logits followed by the state value. Updates are online (one
// transition per step) through a single joint Adam step; the advantage is a
// constant in the actor term.
class ActorCriticPolicy : public Policy {
 public:
  ActorCriticPolicy(const harness::ActorCriticConfig& cfg, double gamma, int state_dim,
                    std::uint64_t master_seed);

  std::string name() const override { return "actor-critic"; }
  bool learns() const override { return true; }
  int decide(const env::PolicyObservation& obs) override;
  void learn(const env::Transition& t) override;

  struct StepLosses {
    double actor = 0;
    double critic = 0;
  };
  StepLosses train_step(const env::Transition& t);

  Eigen::VectorXd action_probabilities(const Eigen::VectorXd& state) const;
  const nn::Mlp& net() const { return net_; }

  void save(std::ostream& out) const override;
  void load(std::istream& in) override;

 private:
  harness::ActorCriticConfig cfg_;
  double gamma_;
  nn::Mlp net_;
  nn::Adam adam_;
  sim::RngStream explore_;
};

}  // namespace mfc::policies
