#pragma once

#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "mfc/env/state.hpp"
#include "mfc/sim/rng.hpp"

namespace mfc::policies {

enum class Mode { Training, Evaluation };

// One offloading strategy. In Evaluation mode decide() is a deterministic
// function of the observation (ties to the lowest action index) and learn()
// is a no-op; parameters stay bitwise frozen.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string name() const = 0;
  virtual int decide(const env::PolicyObservation& obs) = 0;
  virtual void learn(const env::Transition&) {}
  virtual bool learns() const { return false; }

  // Batching policies collect arrivals and decide them jointly per epoch.
  virtual bool batches() const { return false; }
  virtual std::vector<int> decide_batch(const std::vector<env::PolicyObservation>& batch);

  virtual void set_mode(Mode mode) { mode_ = mode; }
  Mode mode() const { return mode_; }

  virtual void save(std::ostream& out) const;
  virtual void load(std::istream& in);

 protected:
  Mode mode_ = Mode::Training;
};

// Argmax with ties broken toward the lowest index.
int argmax_lowest(const Eigen::VectorXd& values);

// With probability epsilon a uniform action, otherwise argmax_lowest.
int epsilon_greedy_select(const Eigen::VectorXd& values, double epsilon, sim::RngStream& rng);

// Linear schedule from start to end over decay_steps decisions, clamped.
double epsilon_at(long step, double start, double end, long decay_steps);

}  // namespace mfc::policies
