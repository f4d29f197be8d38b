#include "mfc/env/tracker.hpp"

namespace mfc::env {

void TransitionTracker::on_decision(std::int64_t task_id, const Eigen::VectorXd& state,
                                    std::int64_t key, int action) {
  if (last_decision_ >= 0) {
    auto it = open_.find(last_decision_);
    if (it != open_.end()) {
      it->second.next_state = state;
      it->second.next_key = key;
      it->second.have_next = true;
      maybe_emit(last_decision_, false);
    }
  }
  Slot slot;
  slot.state = state;
  slot.key = key;
  slot.action = action;
  open_.emplace(task_id, std::move(slot));
  last_decision_ = task_id;
}

void TransitionTracker::on_outcome(std::int64_t task_id, double reward) {
  auto it = open_.find(task_id);
  if (it == open_.end()) return;
  it->second.reward = reward;
  it->second.have_reward = true;
  maybe_emit(task_id, false);
}

void TransitionTracker::finish() {
  // Only the final decision can still lack a next state. If its reward never
  // resolved either, it is dropped along with any other unresolved tasks.
  if (last_decision_ >= 0) {
    auto it = open_.find(last_decision_);
    if (it != open_.end() && it->second.have_reward) {
      it->second.next_state = it->second.state;
      it->second.next_key = it->second.key;
      it->second.have_next = true;
      maybe_emit(last_decision_, true);
    }
  }
  open_.clear();
  last_decision_ = -1;
}

void TransitionTracker::maybe_emit(std::int64_t task_id, bool done) {
  auto it = open_.find(task_id);
  if (it == open_.end()) return;
  Slot& slot = it->second;
  if (!slot.have_reward || !slot.have_next) return;
  Transition t;
  t.state = std::move(slot.state);
  t.key = slot.key;
  t.action = slot.action;
  t.reward = slot.reward;
  t.next_state = std::move(slot.next_state);
  t.next_key = slot.next_key;
  t.done = done;
  open_.erase(it);
  sink_(t);
}

}  // namespace mfc::env
