#include <cmath>
#include <sstream>

#include "doctest.h"
#include "mfc/nn/adam.hpp"
#include "mfc/nn/io.hpp"
#include "mfc/nn/mlp.hpp"
#include "mfc/nn/ops.hpp"
#include "mfc/sim/rng.hpp"

using mfc::nn::Adam;
using mfc::nn::entropy;
using mfc::nn::huber_loss;
using mfc::nn::load_mlp;
using mfc::nn::Mlp;
using mfc::nn::save_mlp;
using mfc::nn::softmax;
using mfc::sim::RngStream;

TEST_CASE("zero-weight network outputs its output-layer bias") {
  Mlp net({3, 4, 2});
  for (auto& w : net.weights()) w.setZero();
  for (auto& b : net.biases()) b.setZero();
  net.biases().back() << 0.7, -0.2;
  Eigen::VectorXd x(3);
  x << 1.0, -2.0, 3.0;
  Eigen::VectorXd y = net.forward(x);
  CHECK(y[0] == doctest::Approx(0.7));
  CHECK(y[1] == doctest::Approx(-0.2));
}

TEST_CASE("single identity layer passes input through") {
  Mlp net({3, 3});
  net.weights()[0].setIdentity();
  net.biases()[0].setZero();
  Eigen::VectorXd x(3);
  x << 0.5, -1.5, 2.0;
  CHECK((net.forward(x) - x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("initialization is a pure function of the stream") {
  Mlp a({5, 8, 4});
  Mlp b({5, 8, 4});
  RngStream ra(21, "nn-init");
  RngStream rb(21, "nn-init");
  a.init_he_uniform(ra);
  b.init_he_uniform(rb);
  CHECK((a.flatten() - b.flatten()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("analytic gradients match central finite differences") {
  RngStream rng(17, "gradcheck");
  for (int net_idx = 0; net_idx < 5; ++net_idx) {
    Mlp net({4, 8, 6, 3});
    net.init_he_uniform(rng);
    Eigen::VectorXd x(4);
    for (int i = 0; i < 4; ++i) x[i] = rng.uniform(-1.0, 1.0);
    Eigen::VectorXd target(3);
    for (int i = 0; i < 3; ++i) target[i] = rng.uniform(-1.0, 1.0);

    // Loss: 0.5 * |out - target|^2, so dloss/dout = out - target.
    Mlp::Trace trace;
    Eigen::VectorXd out = net.forward(x, trace);
    auto grads = net.zero_gradients();
    net.backward(trace, out - target, grads);

    Eigen::VectorXd flat = net.flatten();
    auto loss_at = [&](const Eigen::VectorXd& params) {
      Mlp probe({4, 8, 6, 3});
      probe.unflatten(params);
      Eigen::VectorXd o = probe.forward(x);
      return 0.5 * (o - target).squaredNorm();
    };
    // Flatten analytic grads in the same parameter order.
    Eigen::VectorXd analytic(flat.size());
    int pos = 0;
    for (std::size_t l = 0; l < grads.w.size(); ++l) {
      for (int r = 0; r < grads.w[l].rows(); ++r)
        for (int c = 0; c < grads.w[l].cols(); ++c) analytic[pos++] = grads.w[l](r, c);
      for (int i = 0; i < grads.b[l].size(); ++i) analytic[pos++] = grads.b[l][i];
    }
    const double h = 1e-5;
    for (int sample = 0; sample < 25; ++sample) {
      int p = rng.uniform_int(static_cast<int>(flat.size()));
      Eigen::VectorXd up = flat, down = flat;
      up[p] += h;
      down[p] -= h;
      double numeric = (loss_at(up) - loss_at(down)) / (2 * h);
      double denom = std::max({std::abs(numeric), std::abs(analytic[p]), 1e-8});
      CHECK(std::abs(numeric - analytic[p]) / denom < 1e-4);
    }
  }
}

TEST_CASE("zero loss gradient produces zero parameter gradients") {
  RngStream rng(5, "zg");
  Mlp net({3, 6, 2});
  net.init_he_uniform(rng);
  Eigen::VectorXd x(3);
  x << 0.1, 0.2, 0.3;
  Mlp::Trace trace;
  net.forward(x, trace);
  auto grads = net.zero_gradients();
  net.backward(trace, Eigen::VectorXd::Zero(2), grads);
  CHECK(grads.squared_norm() == 0.0);
}

TEST_CASE("gradients add across losses") {
  RngStream rng(6, "lin");
  Mlp net({3, 5, 2});
  net.init_he_uniform(rng);
  Eigen::VectorXd x(3);
  x << -0.4, 0.9, 0.2;
  Eigen::VectorXd g1(2), g2(2);
  g1 << 1.0, -0.5;
  g2 << 0.25, 2.0;

  Mlp::Trace trace;
  net.forward(x, trace);
  auto a = net.zero_gradients();
  net.backward(trace, g1, a);
  auto b = net.zero_gradients();
  net.backward(trace, g2, b);
  auto sum = net.zero_gradients();
  net.backward(trace, g1 + g2, sum);
  for (std::size_t l = 0; l < sum.w.size(); ++l) {
    CHECK((sum.w[l] - a.w[l] - b.w[l]).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((sum.b[l] - a.b[l] - b.b[l]).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("batch forward and backward agree with per-sample paths") {
  RngStream rng(8, "batch");
  Mlp net({4, 7, 3});
  net.init_he_uniform(rng);
  const int batch = 5;
  Eigen::MatrixXd X(4, batch), G(3, batch);
  for (int c = 0; c < batch; ++c)
    for (int r = 0; r < 4; ++r) X(r, c) = rng.uniform(-1.0, 1.0);
  for (int c = 0; c < batch; ++c)
    for (int r = 0; r < 3; ++r) G(r, c) = rng.uniform(-1.0, 1.0);

  Mlp::BatchTrace btrace;
  Eigen::MatrixXd out = net.forward_batch(X, btrace);
  auto bg = net.zero_gradients();
  net.backward_batch(btrace, G, bg);

  auto sg = net.zero_gradients();
  for (int c = 0; c < batch; ++c) {
    Mlp::Trace trace;
    Eigen::VectorXd o = net.forward(X.col(c), trace);
    CHECK((o - out.col(c)).cwiseAbs().maxCoeff() < 1e-12);
    net.backward(trace, G.col(c), sg);
  }
  for (std::size_t l = 0; l < sg.w.size(); ++l) {
    CHECK((sg.w[l] - bg.w[l]).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((sg.b[l] - bg.b[l]).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("adam leaves parameters alone on zero gradients") {
  RngStream rng(4, "adam0");
  Mlp net({2, 3, 1});
  net.init_he_uniform(rng);
  Eigen::VectorXd before = net.flatten();
  Adam opt(1e-3);
  auto grads = net.zero_gradients();
  opt.step(net, grads);
  CHECK((net.flatten() - before).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("adam first step moves a scalar by about the learning rate") {
  Mlp net({1, 1});
  net.weights()[0](0, 0) = 0.0;
  net.biases()[0][0] = 0.0;
  Adam opt(1e-3);
  auto grads = net.zero_gradients();
  grads.w[0](0, 0) = 1.0;
  opt.step(net, grads);
  // Bias-corrected first step is -lr * g / (|g| + eps) = -lr almost exactly.
  CHECK(net.weights()[0](0, 0) == doctest::Approx(-1e-3).epsilon(1e-4));
}

TEST_CASE("adam minimizes a one-dimensional quadratic") {
  Mlp net({1, 1});
  net.weights()[0](0, 0) = 0.0;
  net.biases()[0][0] = 0.0;
  Adam opt(0.05);
  Eigen::VectorXd one(1);
  one << 1.0;
  for (int i = 0; i < 200; ++i) {
    double w = net.forward(one)[0];
    auto grads = net.zero_gradients();
    Mlp::Trace trace;
    net.forward(one, trace);
    Eigen::VectorXd d(1);
    d << (w - 3.0);  // d/dw of 0.5 (w-3)^2
    net.backward(trace, d, grads);
    opt.step(net, grads);
  }
  CHECK(std::abs(net.forward(one)[0] - 3.0) < 0.1);
}

TEST_CASE("gradient clipping caps the global norm") {
  Mlp net({2, 2});
  net.weights()[0].setZero();
  net.biases()[0].setZero();
  auto grads = net.zero_gradients();
  grads.w[0] << 30.0, 0.0, 0.0, 40.0;  // norm 50
  Eigen::VectorXd before = net.flatten();
  Adam opt(1.0);
  opt.step(net, grads, 10.0);
  CHECK(std::sqrt(grads.squared_norm()) == doctest::Approx(10.0));
}

TEST_CASE("softmax basics") {
  Eigen::VectorXd even(2);
  even << 0.0, 0.0;
  auto p = softmax(even);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));

  Eigen::VectorXd huge(2);
  huge << 1000.0, 0.0;
  auto q = softmax(huge);
  CHECK(std::isfinite(q[0]));
  CHECK(q[0] == doctest::Approx(1.0));
  CHECK(q.sum() == doctest::Approx(1.0).epsilon(1e-9));

  Eigen::VectorXd base(3), shifted(3);
  base << 0.3, -1.2, 2.0;
  shifted = base.array() + 57.0;
  CHECK((softmax(base) - softmax(shifted)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("entropy peaks at uniform") {
  Eigen::VectorXd uniform(4);
  uniform.setConstant(0.25);
  CHECK(entropy(uniform) == doctest::Approx(std::log(4.0)));
  Eigen::VectorXd spike(4);
  spike << 1.0, 0.0, 0.0, 0.0;
  CHECK(entropy(spike) == doctest::Approx(0.0));
}

TEST_CASE("huber loss branches") {
  auto exact = huber_loss(2.0, 2.0, 1.0);
  CHECK(exact.loss == 0.0);
  CHECK(exact.dloss_dpred == 0.0);

  auto quad = huber_loss(2.5, 2.0, 1.0);  // err 0.5, quadratic branch
  CHECK(quad.loss == doctest::Approx(0.125));
  CHECK(quad.dloss_dpred == doctest::Approx(0.5));

  auto lin = huber_loss(5.0, 2.0, 1.0);  // err 3, linear branch
  CHECK(lin.loss == doctest::Approx(2.5));
  CHECK(lin.dloss_dpred == doctest::Approx(1.0));

  auto neg = huber_loss(-1.0, 2.0, 1.0);  // err -3: gradient saturates at -delta
  CHECK(neg.dloss_dpred == doctest::Approx(-1.0));
}

TEST_CASE("weights round-trip bit-exactly through the text format") {
  RngStream rng(33, "io");
  Mlp net({6, 11, 4});
  net.init_he_uniform(rng);
  std::stringstream buf;
  save_mlp(buf, net);
  Mlp back = load_mlp(buf);
  REQUIRE(back.sizes() == net.sizes());
  Eigen::VectorXd a = net.flatten(), b = back.flatten();
  for (int i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("malformed weight blobs are rejected") {
  std::stringstream empty("");
  CHECK_THROWS_AS(load_mlp(empty), std::runtime_error);
  std::stringstream junk("mlp\nlayer_sizes 2 3 x\n");
  CHECK_THROWS_AS(load_mlp(junk), std::runtime_error);
}
