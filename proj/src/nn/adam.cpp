#include "mfc/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace mfc::nn {

void Adam::step(Mlp& net, Mlp::Gradients& grads, double clip_norm) {
  if (!initialized_) {
    m_ = net.zero_gradients();
    v_ = net.zero_gradients();
    initialized_ = true;
  }
  if (m_.w.size() != grads.w.size())
    throw std::logic_error("Adam::step: gradient shape mismatch");

  if (clip_norm > 0.0) {
    double norm = std::sqrt(grads.squared_norm());
    if (norm > clip_norm) grads.scale(clip_norm / norm);
  }

  ++t_;
  const double corr1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double corr2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));

  auto update = [&](Eigen::Ref<Eigen::MatrixXd> p, Eigen::Ref<Eigen::MatrixXd> m,
                    Eigen::Ref<Eigen::MatrixXd> v, const Eigen::Ref<const Eigen::MatrixXd>& g) {
    m = beta1_ * m + (1.0 - beta1_) * g;
    v = beta2_ * v + (1.0 - beta2_) * g.cwiseProduct(g);
    p.array() -= lr_ * (m.array() / corr1) / ((v.array() / corr2).sqrt() + eps_);
  };

  for (std::size_t l = 0; l < grads.w.size(); ++l) {
    update(net.weights()[l], m_.w[l], v_.w[l], grads.w[l]);
    update(net.biases()[l], m_.b[l], v_.b[l], grads.b[l]);
  }
}

}  // namespace mfc::nn
