#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "mfc/world/world.hpp"

namespace mfc::metrics {

struct MetricsRecord {
  std::string policy;
  std::uint64_t seed = 0;
  std::int64_t generated = 0;
  std::int64_t completed = 0;
  std::int64_t missed = 0;
  std::int64_t rejected = 0;
  double avg_latency_s = 0;   // over completed tasks; NaN when none completed
  double success_rate = 0;    // completed / generated; NaN when none generated
  double jain_mean = 0;       // mean over periodic balance samples
  double load_variance_mean = 0;
  double util_mean = 0;       // mean over fog nodes of busy time / elapsed
  std::vector<double> util_per_node;
};

// Fraction of elapsed time the node spent serving, clipped to [0,1].
double utilization(const world::Node& node, double elapsed);

struct BalanceSample {
  double jain = 0;
  double variance = 0;  // population variance of the busy shares
};
BalanceSample sampled_balance(world::World& w, double now);

// Accumulates one run's outcomes and periodic samples.
class MetricsCollector {
 public:
  // Terminal tasks only; recording the same task twice is a logic error.
  void record_outcome(const world::Task& t);

  // Balance sample plus the conservation cross-check between this
  // collector's terminal counts and the world's.
  void sample(world::World& w, double now);

  MetricsRecord finalize(world::World& w, double elapsed, std::string policy,
                         std::uint64_t seed) const;

 private:
  std::unordered_set<std::int64_t> recorded_;
  std::int64_t completed_ = 0, missed_ = 0, rejected_ = 0;
  double latency_sum_ = 0;
  double jain_sum_ = 0, variance_sum_ = 0;
  long samples_ = 0;
};

// One header row plus one row per record; doubles at full precision so a
// re-export of identical records is byte-identical.
void export_csv(const std::vector<MetricsRecord>& records, const std::string& path);
std::vector<MetricsRecord> parse_csv(const std::string& path);

// Full-precision decimal formatting (round-trips exactly).
std::string format_double(double v);

}  // namespace mfc::metrics
