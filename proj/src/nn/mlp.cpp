#include "mfc/nn/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace mfc::nn {

Mlp::Mlp(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.size() < 2) throw std::logic_error("Mlp: need at least input and output sizes");
  for (int s : sizes_)
    if (s < 1) throw std::logic_error("Mlp: layer sizes must be positive");
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    weights_.emplace_back(Eigen::MatrixXd::Zero(sizes_[l + 1], sizes_[l]));
    biases_.emplace_back(Eigen::VectorXd::Zero(sizes_[l + 1]));
  }
}

void Mlp::init_he_uniform(sim::RngStream& rng) {
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    double limit = std::sqrt(6.0 / sizes_[l]);
    Eigen::MatrixXd& w = weights_[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = rng.uniform(-limit, limit);
    biases_[l].setZero();
  }
}

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& x) const {
  if (x.size() != input_dim()) throw std::logic_error("Mlp::forward: input dimension mismatch");
  Eigen::VectorXd a = x;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    a = weights_[l] * a + biases_[l];
    if (l + 1 < weights_.size()) a = a.cwiseMax(0.0);
  }
  return a;
}

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& x, Trace& trace) const {
  if (x.size() != input_dim()) throw std::logic_error("Mlp::forward: input dimension mismatch");
  trace.acts.assign(1, x);
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Eigen::VectorXd a = weights_[l] * trace.acts.back() + biases_[l];
    if (l + 1 < weights_.size()) a = a.cwiseMax(0.0);
    trace.acts.push_back(std::move(a));
  }
  return trace.acts.back();
}

Eigen::MatrixXd Mlp::forward_batch(const Eigen::MatrixXd& x) const {
  BatchTrace trace;
  return forward_batch(x, trace);
}

Eigen::MatrixXd Mlp::forward_batch(const Eigen::MatrixXd& x, BatchTrace& trace) const {
  if (x.rows() != input_dim())
    throw std::logic_error("Mlp::forward_batch: input dimension mismatch");
  trace.acts.assign(1, x);
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Eigen::MatrixXd a = (weights_[l] * trace.acts.back()).colwise() + biases_[l];
    if (l + 1 < weights_.size()) a = a.cwiseMax(0.0);
    trace.acts.push_back(std::move(a));
  }
  return trace.acts.back();
}

void Mlp::Gradients::set_zero() {
  for (auto& m : w) m.setZero();
  for (auto& v : b) v.setZero();
}

double Mlp::Gradients::squared_norm() const {
  double s = 0;
  for (const auto& m : w) s += m.squaredNorm();
  for (const auto& v : b) s += v.squaredNorm();
  return s;
}

void Mlp::Gradients::scale(double s) {
  for (auto& m : w) m *= s;
  for (auto& v : b) v *= s;
}

Mlp::Gradients Mlp::zero_gradients() const {
  Gradients g;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    g.w.emplace_back(Eigen::MatrixXd::Zero(weights_[l].rows(), weights_[l].cols()));
    g.b.emplace_back(Eigen::VectorXd::Zero(biases_[l].size()));
  }
  return g;
}

void Mlp::backward(const Trace& trace, const Eigen::VectorXd& dloss_dout,
                   Gradients& grads) const {
  Eigen::VectorXd delta = dloss_dout;
  for (int l = layer_count() - 1; l >= 0; --l) {
    grads.w[l] += delta * trace.acts[l].transpose();
    grads.b[l] += delta;
    if (l > 0) {
      delta = weights_[l].transpose() * delta;
      // ReLU mask: the stored activation is max(0, pre), so positive entries
      // identify where the unit was active.
      delta = delta.cwiseProduct(
          (trace.acts[l].array() > 0.0).cast<double>().matrix());
    }
  }
}

void Mlp::backward_batch(const BatchTrace& trace, const Eigen::MatrixXd& dloss_dout,
                         Gradients& grads) const {
  Eigen::MatrixXd delta = dloss_dout;
  for (int l = layer_count() - 1; l >= 0; --l) {
    grads.w[l] += delta * trace.acts[l].transpose();
    grads.b[l] += delta.rowwise().sum();
    if (l > 0) {
      delta = weights_[l].transpose() * delta;
      delta = delta.cwiseProduct(
          (trace.acts[l].array() > 0.0).cast<double>().matrix());
    }
  }
}

std::size_t Mlp::param_count() const {
  std::size_t n = 0;
  for (const auto& w : weights_) n += static_cast<std::size_t>(w.size());
  for (const auto& b : biases_) n += static_cast<std::size_t>(b.size());
  return n;
}

Eigen::VectorXd Mlp::flatten() const {
  Eigen::VectorXd flat(static_cast<Eigen::Index>(param_count()));
  Eigen::Index pos = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    const Eigen::MatrixXd& w = weights_[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) flat[pos++] = w(r, c);
    for (Eigen::Index i = 0; i < biases_[l].size(); ++i) flat[pos++] = biases_[l][i];
  }
  return flat;
}

void Mlp::unflatten(const Eigen::VectorXd& flat) {
  if (flat.size() != static_cast<Eigen::Index>(param_count()))
    throw std::logic_error("Mlp::unflatten: parameter count mismatch");
  Eigen::Index pos = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Eigen::MatrixXd& w = weights_[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = flat[pos++];
    for (Eigen::Index i = 0; i < biases_[l].size(); ++i) biases_[l][i] = flat[pos++];
  }
}

bool Mlp::all_finite() const {
  for (const auto& w : weights_)
    if (!w.allFinite()) return false;
  for (const auto& b : biases_)
    if (!b.allFinite()) return false;
  return true;
}

}  // namespace mfc::nn
