#pragma once

#include <Eigen/Core>
#include <vector>

#include "mfc/sim/rng.hpp"

namespace mfc::nn {

// Fully connected network: ReLU on hidden layers, identity on the output.
// Weights W[l] have shape sizes[l+1] x sizes[l]; the forward pass is
// a_{l+1} = act(W[l] a_l + b[l]).
class Mlp {
 public:
  Mlp() = default;
  explicit Mlp(std::vector<int> sizes);

  // He-uniform weights (limit sqrt(6/fan_in)), zero biases. Draw order is
  // layer by layer, row-major, and is part of the replay contract.
  void init_he_uniform(sim::RngStream& rng);

  const std::vector<int>& sizes() const { return sizes_; }
  int input_dim() const { return sizes_.front(); }
  int output_dim() const { return sizes_.back(); }
  int layer_count() const { return static_cast<int>(weights_.size()); }

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;

  // Activations kept for backprop; acts[0] is the input, acts[l+1] the output
  // of layer l after its activation.
  struct Trace {
    std::vector<Eigen::VectorXd> acts;
  };
  Eigen::VectorXd forward(const Eigen::VectorXd& x, Trace& trace) const;

  struct BatchTrace {
    std::vector<Eigen::MatrixXd> acts;
  };
  // Columns are samples: X is input_dim x batch.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& x, BatchTrace& trace) const;

  struct Gradients {
    std::vector<Eigen::MatrixXd> w;
    std::vector<Eigen::VectorXd> b;
    void set_zero();
    double squared_norm() const;
    void scale(double s);
  };
  Gradients zero_gradients() const;

  // Accumulates exact reverse-mode gradients of the loss into grads, given
  // d(loss)/d(output). The trace must come from the matching forward call.
  void backward(const Trace& trace, const Eigen::VectorXd& dloss_dout,
                Gradients& grads) const;
  void backward_batch(const BatchTrace& trace, const Eigen::MatrixXd& dloss_dout,
                      Gradients& grads) const;

  std::vector<Eigen::MatrixXd>& weights() { return weights_; }
  std::vector<Eigen::VectorXd>& biases() { return biases_; }
  const std::vector<Eigen::MatrixXd>& weights() const { return weights_; }
  const std::vector<Eigen::VectorXd>& biases() const { return biases_; }

  std::size_t param_count() const;
  Eigen::VectorXd flatten() const;        // W0 row-major, b0, W1, b1, ...
  void unflatten(const Eigen::VectorXd& flat);
  bool all_finite() const;

 private:
  std::vector<int> sizes_;
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
};

}  // namespace mfc::nn
