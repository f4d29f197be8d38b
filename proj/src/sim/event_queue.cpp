#include "mfc/sim/event_queue.hpp"

#include <stdexcept>

namespace mfc::sim {

EventQueue::EventQueue(double horizon) : horizon_(horizon) {
  if (!(horizon > 0.0)) throw std::logic_error("EventQueue: horizon must be positive");
}

std::uint64_t EventQueue::schedule(double fire_time, EventKind kind, std::int64_t entity,
                                   std::int64_t aux) {
  if (fire_time < now_) throw std::logic_error("EventQueue: schedule into the past");
  Event ev;
  ev.fire_time = fire_time;
  ev.seq = next_seq_++;
  ev.kind = kind;
  ev.entity = entity;
  ev.aux = aux;
  heap_.push(ev);
  ++scheduled_;
  return ev.seq;
}

std::optional<Event> EventQueue::pop_next() {
  while (!heap_.empty()) {
    Event ev = heap_.top();
    heap_.pop();
    if (ev.fire_time > horizon_) {
      // Past-horizon events are dropped; the run ends at the horizon.
      ++dropped_;
      now_ = horizon_;
      continue;
    }
    now_ = ev.fire_time;
    ++fired_;
    return ev;
  }
  return std::nullopt;
}

}  // namespace mfc::sim
