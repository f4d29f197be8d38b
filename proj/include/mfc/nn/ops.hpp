#pragma once

#include <Eigen/Core>

namespace mfc::nn {

// Numerically stable softmax (max-subtraction). Output sums to 1.
Eigen::VectorXd softmax(const Eigen::VectorXd& logits);

// Shannon entropy of a probability vector, in nats.
double entropy(const Eigen::VectorXd& probs);

struct HuberResult {
  double loss = 0;
  double dloss_dpred = 0;
};

// Quadratic within |pred - target| <= delta, linear beyond; the gradient
// saturates at +-delta.
HuberResult huber_loss(double pred, double target, double delta);

}  // namespace mfc::nn
