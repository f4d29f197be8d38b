#pragma once

#include "mfc/nn/mlp.hpp"

namespace mfc::nn {

// Adam with bias correction and optional global gradient-norm clipping.
class Adam {
 public:
  explicit Adam(double learning_rate = 1e-3, double beta1 = 0.9, double beta2 = 0.999,
                double epsilon = 1e-8)
      : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon) {}

  // Clips grads in place to the given global L2 norm (0 disables), then
  // applies one update to the network parameters.
  void step(Mlp& net, Mlp::Gradients& grads, double clip_norm = 0.0);

  long step_count() const { return t_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  bool initialized_ = false;
  Mlp::Gradients m_, v_;
};

}  // namespace mfc::nn
