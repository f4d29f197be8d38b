#include "mfc/world/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mfc::world {

double Node::busy_up_to(double t) const {
  return total_service - std::max(0.0, busy_until - t);
}

double Node::busy_in_window(double t, double window) {
  const double lo = t - window;
  while (!segments.empty() && segments.front().end <= lo) segments.pop_front();
  double sum = 0;
  for (const auto& seg : segments) {
    if (seg.start >= t) break;
    sum += std::max(0.0, std::min(seg.end, t) - std::max(seg.start, lo));
  }
  return sum;
}

World::World(const harness::ExperimentConfig& cfg, std::uint64_t master_seed,
             const std::string& stream_prefix, sim::EventQueue& queue)
    : cfg_(cfg),
      queue_(queue),
      zones_(cfg.topology.zones),
      balance_window_s_(cfg.observe.balance_window_s),
      vehicles_per_zone_(static_cast<std::size_t>(cfg.topology.zones), 0),
      fleet_rng_(master_seed, stream_prefix + "/fleet"),
      arrivals_rng_(master_seed, stream_prefix + "/arrivals"),
      tasks_rng_(master_seed, stream_prefix + "/tasks"),
      mobility_rng_(master_seed, stream_prefix + "/mobility") {
  nodes_.resize(static_cast<std::size_t>(zones_) + 1);
  // Hardware classes tile the ring in listed order, so the infrastructure is
  // a function of the config alone and every seed faces the same topology.
  const auto& profiles = cfg.topology.fog_profiles;
  for (int i = 0; i < zones_; ++i) {
    const auto& fp = profiles[static_cast<std::size_t>(i) % profiles.size()];
    nodes_[i].cpu_hz = fp.cpu_ghz * 1e9;
    nodes_[i].memory_bytes = fp.memory_mb * 1e6;
  }
  Node& cloud = nodes_[static_cast<std::size_t>(zones_)];
  cloud.cpu_hz = cfg.cloud.cpu_ghz * 1e9;
  cloud.memory_bytes = std::numeric_limits<double>::infinity();

  vehicles_.resize(static_cast<std::size_t>(cfg.fleet.vehicles));
  for (auto& v : vehicles_) {
    v.zone = fleet_rng_.uniform_int(zones_);
    v.speed_mps = fleet_rng_.uniform(cfg.fleet.speed_kmh_min, cfg.fleet.speed_kmh_max) / 3.6;
    ++vehicles_per_zone_[static_cast<std::size_t>(v.zone)];
  }
  if (cfg.fleet.arrival_rate_hz > 0) {
    for (std::size_t v = 0; v < vehicles_.size(); ++v) {
      double gap = arrivals_rng_.exponential(cfg.fleet.arrival_rate_hz);
      queue_.schedule(gap, sim::EventKind::TaskArrival, static_cast<std::int64_t>(v));
    }
  }
  for (std::size_t v = 0; v < vehicles_.size(); ++v) {
    double dwell = cfg.topology.segment_length_m / vehicles_[v].speed_mps;
    queue_.schedule(dwell, sim::EventKind::VehicleHandover, static_cast<std::int64_t>(v));
  }
}

std::int64_t World::on_task_arrival(int vehicle) {
  const double now = queue_.now();
  Task t;
  t.id = static_cast<std::int64_t>(tasks_.size());
  t.vehicle = vehicle;
  t.origin_zone = vehicles_[static_cast<std::size_t>(vehicle)].zone;
  // Draw order is part of the replay contract: size, deadline, then the gap
  // to this vehicle's next arrival.
  t.size_bytes = tasks_rng_.uniform(cfg_.tasks.size_mb_min, cfg_.tasks.size_mb_max) * 1e6;
  t.deadline_s = tasks_rng_.uniform(cfg_.tasks.deadline_s_min, cfg_.tasks.deadline_s_max);
  t.cycles = t.size_bytes * 8.0 * cfg_.tasks.cycles_per_bit;
  t.created_at = now;
  t.tx_ready_at = now + t.size_bytes * 8.0 / cfg_.v2r_bps();
  tasks_.push_back(t);
  ++generated_;

  double gap = arrivals_rng_.exponential(cfg_.fleet.arrival_rate_hz);
  queue_.schedule(now + gap, sim::EventKind::TaskArrival, vehicle);
  return t.id;
}

void World::on_handover(int vehicle) {
  Vehicle& v = vehicles_[static_cast<std::size_t>(vehicle)];
  int left = (v.zone + zones_ - 1) % zones_;
  int right = (v.zone + 1) % zones_;
  int next = mobility_rng_.uniform_int(2) == 0 ? left : right;
  --vehicles_per_zone_[static_cast<std::size_t>(v.zone)];
  v.zone = next;
  ++vehicles_per_zone_[static_cast<std::size_t>(v.zone)];
  double dwell = cfg_.topology.segment_length_m / v.speed_mps;
  queue_.schedule(queue_.now() + dwell, sim::EventKind::VehicleHandover, vehicle);
}

int World::action_node(const Task& t, int action) const {
  switch (action) {
    case kActionLocal:
      return t.origin_zone;
    case kActionNeighborLeft:
      return (t.origin_zone + zones_ - 1) % zones_;
    case kActionNeighborRight:
      return (t.origin_zone + 1) % zones_;
    case kActionCloud:
      return cloud_node();
  }
  throw std::logic_error("action_node: invalid action");
}

int World::ring_distance(int a, int b) const {
  int d = std::abs(a - b);
  return std::min(d, zones_ - d);
}

double World::transmission_delay(const Task& t, int action) const {
  return t.size_bytes * 8.0 / cfg_.v2r_bps() + route_extra(t, action);
}

double World::route_extra(const Task& t, int action) const {
  if (action == kActionCloud) return cfg_.cloud.backhaul_rtt_s / 2.0;
  return ring_distance(t.origin_zone, action_node(t, action)) * cfg_.links.hop_delay_s;
}

double World::processing_time(const Task& t, int node) const {
  return t.cycles / nodes_[static_cast<std::size_t>(node)].cpu_hz;
}

double World::downlink_delay(int exec_node, int vehicle_zone) const {
  double wireless = cfg_.downlink_bits() / cfg_.v2r_bps();
  if (exec_node == cloud_node()) return cfg_.cloud.backhaul_rtt_s / 2.0 + wireless;
  return wireless + ring_distance(exec_node, vehicle_zone) * cfg_.links.hop_delay_s;
}

double World::predicted_completion_latency(const Task& t, int action) const {
  const double now = queue_.now();
  int node_id = action_node(t, action);
  const Node& node = nodes_[static_cast<std::size_t>(node_id)];
  // Route extras accrue after the upload to the origin RSU finishes; a
  // decision made mid-upload hides behind the remaining upload time.
  double node_arrival = std::max(t.tx_ready_at, now) + route_extra(t, action);
  double start = std::max(node_arrival, node.busy_until);
  double delivered = start + processing_time(t, node_id) +
                     downlink_delay(node_id, vehicles_[static_cast<std::size_t>(t.vehicle)].zone);
  return delivered - t.created_at;
}

void World::route_task(std::int64_t id, int action) {
  Task& t = task_mut(id);
  if (t.action != -1) throw std::logic_error("route_task: task already routed");
  const double now = queue_.now();
  t.decided_at = now;
  t.action = action;
  t.exec_node = action_node(t, action);
  double arrive = std::max(t.tx_ready_at, now) + route_extra(t, action);
  queue_.schedule(arrive, sim::EventKind::TransmissionDone, id, t.exec_node);
}

bool World::on_transmission_done(std::int64_t id) {
  Task& t = task_mut(id);
  t.tx_done_at = queue_.now();
  Node& node = nodes_[static_cast<std::size_t>(t.exec_node)];
  if (node.queued_bytes + t.size_bytes > node.memory_bytes) {
    mark_terminal(t, Outcome::Rejected, -1);
    return false;
  }
  node.queued_bytes += t.size_bytes;
  node.queue_len += 1;
  double start = std::max(queue_.now(), node.busy_until);
  double proc = processing_time(t, t.exec_node);
  node.busy_until = start + proc;
  node.total_service += proc;
  node.segments.push_back({start, start + proc});
  queue_.schedule(start + proc, sim::EventKind::ProcessingDone, id, t.exec_node);
  return true;
}

void World::on_processing_done(std::int64_t id) {
  Task& t = task_mut(id);
  Node& node = nodes_[static_cast<std::size_t>(t.exec_node)];
  node.queued_bytes -= t.size_bytes;
  node.queue_len -= 1;
  double delivery =
      downlink_delay(t.exec_node, vehicles_[static_cast<std::size_t>(t.vehicle)].zone);
  t.completed_at = queue_.now() + delivery;
  double latency = t.completed_at - t.created_at;
  delay_ema_s_ = (1.0 - cfg_.observe.delay_ema_alpha) * delay_ema_s_ +
                 cfg_.observe.delay_ema_alpha * latency;
  mark_terminal(t, latency <= t.deadline_s ? Outcome::Completed : Outcome::DeadlineMiss, latency);
}

void World::mark_terminal(Task& t, Outcome outcome, double latency) {
  t.outcome = outcome;
  t.latency_s = latency;
  switch (outcome) {
    case Outcome::Completed:
      ++completed_;
      break;
    case Outcome::DeadlineMiss:
      ++missed_;
      break;
    case Outcome::Rejected:
      ++rejected_;
      break;
    case Outcome::Pending:
      throw std::logic_error("mark_terminal: Pending is not terminal");
  }
}

std::vector<double> World::fog_window_shares(double now) {
  std::vector<double> shares(static_cast<std::size_t>(zones_));
  double window = std::min(balance_window_s_, std::max(now, 1e-12));
  for (int i = 0; i < zones_; ++i)
    shares[static_cast<std::size_t>(i)] = nodes_[static_cast<std::size_t>(i)].busy_in_window(
                                              now, balance_window_s_) /
                                          window;
  return shares;
}

}  // namespace mfc::world
