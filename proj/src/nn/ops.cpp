#include "mfc/nn/ops.hpp"

#include <cmath>
#include <stdexcept>

namespace mfc::nn {

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  if (logits.size() == 0) throw std::logic_error("softmax: empty logits");
  Eigen::VectorXd shifted = (logits.array() - logits.maxCoeff()).exp();
  return shifted / shifted.sum();
}

double entropy(const Eigen::VectorXd& probs) {
  double h = 0;
  for (Eigen::Index i = 0; i < probs.size(); ++i)
    if (probs[i] > 0) h -= probs[i] * std::log(probs[i]);
  return h;
}

HuberResult huber_loss(double pred, double target, double delta) {
  if (!(delta > 0)) throw std::logic_error("huber_loss: delta must be positive");
  double err = pred - target;
  HuberResult r;
  if (std::abs(err) <= delta) {
    r.loss = 0.5 * err * err;
    r.dloss_dpred = err;
  } else {
    r.loss = delta * (std::abs(err) - 0.5 * delta);
    r.dloss_dpred = err > 0 ? delta : -delta;
  }
  return r;
}

}  // namespace mfc::nn
