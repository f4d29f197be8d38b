#include "mfc/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mfc/env/reward.hpp"

namespace mfc::metrics {

double utilization(const world::Node& node, double elapsed) {
  if (!(elapsed > 0)) throw std::logic_error("utilization: elapsed must be positive");
  return std::clamp(node.busy_up_to(elapsed) / elapsed, 0.0, 1.0);
}

BalanceSample sampled_balance(world::World& w, double now) {
  std::vector<double> shares = w.fog_window_shares(now);
  BalanceSample s;
  s.jain = env::balance_index(shares);
  double mean = 0;
  for (double x : shares) mean += x;
  mean /= static_cast<double>(shares.size());
  for (double x : shares) s.variance += (x - mean) * (x - mean);
  s.variance /= static_cast<double>(shares.size());
  return s;
}

void MetricsCollector::record_outcome(const world::Task& t) {
  if (!recorded_.insert(t.id).second)
    throw std::logic_error("record_outcome: task recorded twice");
  switch (t.outcome) {
    case world::Outcome::Completed:
      ++completed_;
      latency_sum_ += t.latency_s;
      break;
    case world::Outcome::DeadlineMiss:
      ++missed_;
      break;
    case world::Outcome::Rejected:
      ++rejected_;
      break;
    case world::Outcome::Pending:
      throw std::logic_error("record_outcome: task not terminal");
  }
}

void MetricsCollector::sample(world::World& w, double now) {
  // Conservation: the world's own terminal counters, this collector's
  // independent tally, and the in-flight remainder must agree.
  if (completed_ != w.completed() || missed_ != w.missed() || rejected_ != w.rejected())
    throw std::logic_error("metrics sample: terminal counts diverge from world counters");
  std::int64_t accounted = completed_ + missed_ + rejected_ + w.in_flight();
  if (accounted != w.generated() || w.in_flight() < 0)
    throw std::logic_error("metrics sample: task conservation violated");

  BalanceSample b = sampled_balance(w, now);
  jain_sum_ += b.jain;
  variance_sum_ += b.variance;
  ++samples_;
}

MetricsRecord MetricsCollector::finalize(world::World& w, double elapsed, std::string policy,
                                         std::uint64_t seed) const {
  MetricsRecord r;
  r.policy = std::move(policy);
  r.seed = seed;
  r.generated = w.generated();
  r.completed = completed_;
  r.missed = missed_;
  r.rejected = rejected_;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.avg_latency_s = completed_ > 0 ? latency_sum_ / static_cast<double>(completed_) : nan;
  r.success_rate = r.generated > 0
                       ? static_cast<double>(completed_) / static_cast<double>(r.generated)
                       : nan;
  r.jain_mean = samples_ > 0 ? jain_sum_ / samples_ : nan;
  r.load_variance_mean = samples_ > 0 ? variance_sum_ / samples_ : nan;
  for (int i = 0; i < w.zones(); ++i)
    r.util_per_node.push_back(utilization(w.nodes()[static_cast<std::size_t>(i)], elapsed));
  double sum = 0;
  for (double u : r.util_per_node) sum += u;
  r.util_mean = sum / static_cast<double>(r.util_per_node.size());
  return r;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {
const char* kHeader =
    "policy,seed,generated,completed,missed,rejected,avg_latency_s,success_rate,"
    "jain_mean,load_variance_mean,util_mean,util_per_node";
}

void export_csv(const std::vector<MetricsRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_csv: cannot open " + path + " for writing");
  out << kHeader << '\n';
  for (const auto& r : records) {
    out << r.policy << ',' << r.seed << ',' << r.generated << ',' << r.completed << ','
        << r.missed << ',' << r.rejected << ',' << format_double(r.avg_latency_s) << ','
        << format_double(r.success_rate) << ',' << format_double(r.jain_mean) << ','
        << format_double(r.load_variance_mean) << ',' << format_double(r.util_mean) << ',';
    for (std::size_t i = 0; i < r.util_per_node.size(); ++i)
      out << (i ? ";" : "") << format_double(r.util_per_node[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("export_csv: write failed for " + path);
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& path) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw std::runtime_error("parse_csv: bad number '" + s + "' in " + path);
  return v;
}

}  // namespace

std::vector<MetricsRecord> parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw std::runtime_error("parse_csv: unexpected header in " + path);
  std::vector<MetricsRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 12)
      throw std::runtime_error("parse_csv: wrong field count in " + path);
    MetricsRecord r;
    r.policy = fields[0];
    r.seed = std::strtoull(fields[1].c_str(), nullptr, 10);
    r.generated = std::strtoll(fields[2].c_str(), nullptr, 10);
    r.completed = std::strtoll(fields[3].c_str(), nullptr, 10);
    r.missed = std::strtoll(fields[4].c_str(), nullptr, 10);
    r.rejected = std::strtoll(fields[5].c_str(), nullptr, 10);
    r.avg_latency_s = parse_double(fields[6], path);
    r.success_rate = parse_double(fields[7], path);
    r.jain_mean = parse_double(fields[8], path);
    r.load_variance_mean = parse_double(fields[9], path);
    r.util_mean = parse_double(fields[10], path);
    if (!fields[11].empty())
      for (const auto& tok : split(fields[11], ';')) r.util_per_node.push_back(parse_double(tok, path));
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace mfc::metrics
