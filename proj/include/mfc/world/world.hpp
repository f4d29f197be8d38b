#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "mfc/harness/config.hpp"
#include "mfc/sim/event_queue.hpp"
#include "mfc/sim/rng.hpp"

namespace mfc::world {

enum class Outcome { Pending, Completed, DeadlineMiss, Rejected };

// Offloading actions, fixed order. "Left"/"Right" are the two ring neighbors
// of the task's origin zone.
enum Action : int {
  kActionLocal = 0,
  kActionNeighborLeft = 1,
  kActionNeighborRight = 2,
  kActionCloud = 3,
};
inline constexpr int kNumActions = 4;

struct Task {
  std::int64_t id = -1;
  int vehicle = -1;
  int origin_zone = -1;
  double size_bytes = 0;
  double cycles = 0;
  double deadline_s = 0;
  double created_at = 0;
  double tx_ready_at = 0;  // upload to the origin RSU finishes here
  double decided_at = -1;
  double tx_done_at = -1;    // arrival at the executing node
  double completed_at = -1;  // result delivered to the vehicle
  int action = -1;
  int exec_node = -1;  // fog node id, or zones() for the cloud
  Outcome outcome = Outcome::Pending;
  double latency_s = -1;
};

struct ServiceSegment {
  double start = 0;
  double end = 0;
};

// One serial-FIFO compute node. The cloud is modeled as a node with
// unbounded memory; fog nodes admission-check against memory_bytes.
struct Node {
  double cpu_hz = 0;
  double memory_bytes = 0;
  double queued_bytes = 0;  // admitted but not yet finished processing
  int queue_len = 0;
  double busy_until = 0;
  double total_service = 0;  // committed service time, may extend past "now"
  std::deque<ServiceSegment> segments;

  // Service performed up to time t (committed future work excluded).
  double busy_up_to(double t) const;
  // Service performed inside [t - window, t]; prunes segments older than that.
  double busy_in_window(double t, double window);
};

struct Vehicle {
  int zone = 0;
  double speed_mps = 0;
};

// The physical model: a ring of zones (fog node i in zone i), a cloud tier,
// mobile vehicles generating tasks, and the link/latency arithmetic. All
// mutation happens through the event handlers, in kernel event order.
class World {
 public:
  World(const harness::ExperimentConfig& cfg, std::uint64_t master_seed,
        const std::string& stream_prefix, sim::EventQueue& queue);

  int zones() const { return zones_; }
  int cloud_node() const { return zones_; }

  // Event handlers. The runner dispatches kernel events to these.
  std::int64_t on_task_arrival(int vehicle);      // creates the task, chains the next arrival
  void on_handover(int vehicle);                  // moves the vehicle, chains the next handover
  void route_task(std::int64_t task, int action);  // schedules TransmissionDone
  bool on_transmission_done(std::int64_t task);   // admission; false = rejected (terminal)
  void on_processing_done(std::int64_t task);     // resolves delivery, outcome, latency

  // Latency model.
  int action_node(const Task& t, int action) const;
  int ring_distance(int a, int b) const;
  double transmission_delay(const Task& t, int action) const;  // upload + route extras
  double route_extra(const Task& t, int action) const;         // hop / backhaul part only
  double processing_time(const Task& t, int node) const;
  double downlink_delay(int exec_node, int vehicle_zone) const;
  // End-to-end latency estimate for deciding now, from current queue state.
  double predicted_completion_latency(const Task& t, int action) const;

  // State read-outs.
  const Task& task(std::int64_t id) const { return tasks_.at(static_cast<std::size_t>(id)); }
  Task& task_mut(std::int64_t id) { return tasks_.at(static_cast<std::size_t>(id)); }
  const std::vector<Node>& nodes() const { return nodes_; }
  Node& node_mut(int i) { return nodes_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& vehicles_per_zone() const { return vehicles_per_zone_; }
  double delay_ema_s() const { return delay_ema_s_; }
  // Busy fraction of each fog node within the trailing balance window.
  std::vector<double> fog_window_shares(double now);

  std::int64_t generated() const { return generated_; }
  std::int64_t completed() const { return completed_; }
  std::int64_t missed() const { return missed_; }
  std::int64_t rejected() const { return rejected_; }
  std::int64_t in_flight() const { return generated_ - completed_ - missed_ - rejected_; }

 private:
  void mark_terminal(Task& t, Outcome outcome, double latency);

  const harness::ExperimentConfig& cfg_;
  sim::EventQueue& queue_;
  int zones_;
  double balance_window_s_;
  std::vector<Node> nodes_;  // fog nodes 0..zones-1, cloud at index zones
  std::vector<Vehicle> vehicles_;
  std::vector<int> vehicles_per_zone_;
  std::vector<Task> tasks_;
  double delay_ema_s_ = 0;

  std::int64_t generated_ = 0, completed_ = 0, missed_ = 0, rejected_ = 0;

  sim::RngStream fleet_rng_, arrivals_rng_, tasks_rng_, mobility_rng_;
};

}  // namespace mfc::world
