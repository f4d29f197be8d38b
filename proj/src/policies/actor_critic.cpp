#include "mfc/policies/actor_critic.hpp"

#include <cmath>

#include "mfc/nn/io.hpp"
#include "mfc/nn/ops.hpp"

namespace mfc::policies {

double advantage(double reward, double v_next, double v_now, double gamma, bool done) {
  return reward + (done ? 0.0 : gamma * v_next) - v_now;
}

ActorCriticPolicy::ActorCriticPolicy(const harness::ActorCriticConfig& cfg, double gamma,
                                     int state_dim, std::uint64_t master_seed)
    : cfg_(cfg),
      gamma_(gamma),
      adam_(cfg.learning_rate),
      explore_(master_seed, "policy/actor-critic/explore") {
  std::vector<int> sizes{state_dim};
  sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
  sizes.push_back(world::kNumActions + 1);  // logits, then the state value
  net_ = nn::Mlp(sizes);
  sim::RngStream init(master_seed, "policy/actor-critic/nn-init");
  net_.init_he_uniform(init);
}

Eigen::VectorXd ActorCriticPolicy::action_probabilities(const Eigen::VectorXd& state) const {
  Eigen::VectorXd out = net_.forward(state);
  return nn::softmax(out.head(world::kNumActions));
}

int ActorCriticPolicy::decide(const env::PolicyObservation& obs) {
  Eigen::VectorXd out = net_.forward(obs.state);
  Eigen::VectorXd logits = out.head(world::kNumActions);
  if (mode_ == Mode::Evaluation) return argmax_lowest(logits);
  Eigen::VectorXd probs = nn::softmax(logits);
  double u = explore_.uniform();
  double cum = 0;
  for (int a = 0; a < world::kNumActions; ++a) {
    cum += probs[a];
    if (u < cum) return a;
  }
  return world::kNumActions - 1;
}

void ActorCriticPolicy::learn(const env::Transition& t) {
  if (mode_ == Mode::Evaluation) return;
  train_step(t);
}

ActorCriticPolicy::StepLosses ActorCriticPolicy::train_step(const env::Transition& t) {
  const int na = world::kNumActions;
  nn::Mlp::Trace trace;
  Eigen::VectorXd out = net_.forward(t.state, trace);
  Eigen::VectorXd logits = out.head(na);
  double v_now = out[na];
  double v_next = t.done ? 0.0 : net_.forward(t.next_state)[na];
  double adv = advantage(t.reward, v_next, v_now, gamma_, t.done);

  Eigen::VectorXd probs = nn::softmax(logits);
  double h = nn::entropy(probs);

  // Joint loss: adv^2 on the value head (bootstrap target held constant) and
  // -log pi(a|s) * adv - entropy_coef * H on the logits (adv held constant).
  Eigen::VectorXd dout(na + 1);
  for (int i = 0; i < na; ++i) {
    double indicator = (i == t.action) ? 1.0 : 0.0;
    dout[i] = adv * (probs[i] - indicator) +
              cfg_.entropy_coef * probs[i] * (std::log(probs[i]) + h);
  }
  dout[na] = -2.0 * adv;

  nn::Mlp::Gradients grads = net_.zero_gradients();
  net_.backward(trace, dout, grads);
  adam_.step(net_, grads, cfg_.grad_clip);

  StepLosses losses;
  losses.critic = adv * adv;
  losses.actor = -std::log(probs[t.action]) * adv - cfg_.entropy_coef * h;
  return losses;
}

void ActorCriticPolicy::save(std::ostream& out) const {
  out << "policy actor-critic\n";
  nn::save_mlp(out, net_);
}

void ActorCriticPolicy::load(std::istream& in) { net_ = nn::load_mlp(in); }

}  // namespace mfc::policies
