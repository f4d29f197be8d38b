#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

namespace mfc::sim {

enum class EventKind {
  TaskArrival,
  TransmissionDone,
  ProcessingDone,
  VehicleHandover,
  DecisionEpoch,
  MetricsSample,
};

struct Event {
  double fire_time = 0.0;
  std::uint64_t seq = 0;  // schedule order; breaks fire_time ties
  EventKind kind = EventKind::TaskArrival;
  std::int64_t entity = -1;  // task id, vehicle id, or node id depending on kind
  std::int64_t aux = -1;     // secondary id (e.g. destination node)
};

// Deterministic future event list. Events fire in (fire_time, seq) order,
// so equal-time events replay in the order they were scheduled.
class EventQueue {
 public:
  explicit EventQueue(double horizon);

  double now() const { return now_; }
  double horizon() const { return horizon_; }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

  std::uint64_t scheduled_count() const { return scheduled_; }
  std::uint64_t fired_count() const { return fired_; }
  std::uint64_t dropped_count() const { return dropped_; }

  // Schedules an event. fire_time must not precede the current clock.
  // Returns the assigned sequence number.
  std::uint64_t schedule(double fire_time, EventKind kind, std::int64_t entity = -1,
                         std::int64_t aux = -1);

  // Pops the next event and advances the clock to its fire time. Events past
  // the horizon are discarded; once only such events remain the clock clamps
  // to the horizon and nullopt is returned. Empty queue also returns nullopt
  // (clock unchanged).
  std::optional<Event> pop_next();

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.fire_time != b.fire_time) return a.fire_time > b.fire_time;
      return a.seq > b.seq;
    }
  };

  double horizon_;
  double now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t scheduled_ = 0;
  std::uint64_t fired_ = 0;
  std::uint64_t dropped_ = 0;
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
};

}  // namespace mfc::sim
