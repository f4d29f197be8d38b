#include "mfc/policies/dqn.hpp"

#include <unordered_set>

#include "mfc/nn/io.hpp"
#include "mfc/nn/ops.hpp"

namespace mfc::policies {

Eigen::VectorXd dqn_targets(const nn::Mlp& target_net,
                            const std::vector<const env::Transition*>& batch, double gamma) {
  const int b = static_cast<int>(batch.size());
  Eigen::MatrixXd next(target_net.input_dim(), b);
  for (int i = 0; i < b; ++i) next.col(i) = batch[static_cast<std::size_t>(i)]->next_state;
  Eigen::MatrixXd q_next = target_net.forward_batch(next);
  Eigen::VectorXd y(b);
  for (int i = 0; i < b; ++i) {
    const env::Transition& t = *batch[static_cast<std::size_t>(i)];
    y[i] = t.reward + (t.done ? 0.0 : gamma * q_next.col(i).maxCoeff());
  }
  return y;
}

DqnPolicy::DqnPolicy(const harness::DqnConfig& cfg, double gamma, int state_dim,
                     long epsilon_decay_steps, std::uint64_t master_seed)
    : cfg_(cfg),
      gamma_(gamma),
      decay_steps_(epsilon_decay_steps),
      adam_(cfg.learning_rate),
      explore_(master_seed, "policy/dqn/explore"),
      replay_(master_seed, "policy/dqn/replay") {
  std::vector<int> sizes{state_dim};
  sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
  sizes.push_back(world::kNumActions);
  online_ = nn::Mlp(sizes);
  sim::RngStream init(master_seed, "policy/dqn/nn-init");
  online_.init_he_uniform(init);
  target_ = online_;
  buffer_.reserve(static_cast<std::size_t>(cfg_.buffer_capacity));
}

int DqnPolicy::decide(const env::PolicyObservation& obs) {
  Eigen::VectorXd q = online_.forward(obs.state);
  if (mode_ == Mode::Evaluation) return argmax_lowest(q);
  double eps = epsilon_at(decisions_++, cfg_.epsilon_start, cfg_.epsilon_end, decay_steps_);
  return epsilon_greedy_select(q, eps, explore_);
}

void DqnPolicy::learn(const env::Transition& t) {
  if (mode_ == Mode::Evaluation) return;
  if (buffer_.size() < static_cast<std::size_t>(cfg_.buffer_capacity)) {
    buffer_.push_back(t);
  } else {
    buffer_[write_pos_] = t;
  }
  write_pos_ = (write_pos_ + 1) % static_cast<std::size_t>(cfg_.buffer_capacity);
  if (++learn_calls_ % cfg_.train_every == 0) train_step();
}

double DqnPolicy::train_step() {
  const int b = cfg_.batch_size;
  if (buffer_.size() < static_cast<std::size_t>(b)) return 0.0;

  // Uniform without replacement inside the batch; draw order is the batch
  // order, so sampling is replay-deterministic.
  std::vector<const env::Transition*> batch;
  batch.reserve(static_cast<std::size_t>(b));
  std::unordered_set<int> taken;
  while (static_cast<int>(batch.size()) < b) {
    int idx = replay_.uniform_int(static_cast<int>(buffer_.size()));
    if (taken.insert(idx).second) batch.push_back(&buffer_[static_cast<std::size_t>(idx)]);
  }

  Eigen::VectorXd y = dqn_targets(target_, batch, gamma_);

  Eigen::MatrixXd x(online_.input_dim(), b);
  for (int i = 0; i < b; ++i) x.col(i) = batch[static_cast<std::size_t>(i)]->state;
  nn::Mlp::BatchTrace trace;
  Eigen::MatrixXd q = online_.forward_batch(x, trace);

  Eigen::MatrixXd dloss = Eigen::MatrixXd::Zero(world::kNumActions, b);
  double loss_sum = 0;
  for (int i = 0; i < b; ++i) {
    int a = batch[static_cast<std::size_t>(i)]->action;
    nn::HuberResult h = nn::huber_loss(q(a, i), y[i], cfg_.huber_delta);
    loss_sum += h.loss;
    dloss(a, i) = h.dloss_dpred / b;
  }

  nn::Mlp::Gradients grads = online_.zero_gradients();
  online_.backward_batch(trace, dloss, grads);
  adam_.step(online_, grads, cfg_.grad_clip);

  if (++train_steps_ % cfg_.target_sync == 0) target_ = online_;
  return loss_sum / b;
}

void DqnPolicy::save(std::ostream& out) const {
  out << "policy dqn\n";
  nn::save_mlp(out, online_);
}

void DqnPolicy::load(std::istream& in) {
  online_ = nn::load_mlp(in);
  target_ = online_;
}

}  // namespace mfc::policies
