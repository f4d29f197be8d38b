#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>

#include "mfc/env/state.hpp"

namespace mfc::env {

// Pairs each decision with its own task's eventual reward and with the
// observation at the NEXT decision (the agent's next state). A transition is
// emitted once both halves exist; the final decision of a run flushes with
// done = true. Tasks still unresolved at the end of the run yield nothing.
class TransitionTracker {
 public:
  using Sink = std::function<void(const Transition&)>;

  explicit TransitionTracker(Sink sink) : sink_(std::move(sink)) {}

  void on_decision(std::int64_t task_id, const Eigen::VectorXd& state, std::int64_t key,
                   int action);
  void on_outcome(std::int64_t task_id, double reward);
  void finish();

 private:
  struct Slot {
    Eigen::VectorXd state;
    std::int64_t key = 0;
    int action = 0;
    double reward = 0;
    bool have_reward = false;
    Eigen::VectorXd next_state;
    std::int64_t next_key = 0;
    bool have_next = false;
  };

  void maybe_emit(std::int64_t task_id, bool done);

  Sink sink_;
  std::unordered_map<std::int64_t, Slot> open_;
  std::int64_t last_decision_ = -1;
};

}  // namespace mfc::env
