#include "mfc/policies/q_learning.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace mfc::policies {

namespace {
const std::array<double, world::kNumActions> kZeroRow{};
}

QLearningPolicy::QLearningPolicy(const harness::QLearningConfig& cfg, long epsilon_decay_steps,
                                 std::uint64_t master_seed)
    : cfg_(cfg),
      decay_steps_(epsilon_decay_steps),
      explore_(master_seed, "policy/q-learning/explore") {}

const std::array<double, world::kNumActions>& QLearningPolicy::q_values(std::int64_t key) const {
  auto it = table_.find(key);
  return it == table_.end() ? kZeroRow : it->second;
}

int QLearningPolicy::decide(const env::PolicyObservation& obs) {
  const auto& row = q_values(obs.key);
  Eigen::VectorXd values(world::kNumActions);
  for (int a = 0; a < world::kNumActions; ++a) values[a] = row[static_cast<std::size_t>(a)];
  if (mode_ == Mode::Evaluation) return argmax_lowest(values);
  double eps = epsilon_at(decisions_++, cfg_.epsilon_start, cfg_.epsilon_end, decay_steps_);
  return epsilon_greedy_select(values, eps, explore_);
}

void QLearningPolicy::learn(const env::Transition& t) {
  if (mode_ == Mode::Evaluation) return;
  q_update(t);
}

double QLearningPolicy::q_update(const env::Transition& t) {
  if (t.action < 0 || t.action >= world::kNumActions)
    throw std::logic_error("q_update: action out of range");
  double bootstrap = 0;
  if (!t.done) {
    const auto& next = q_values(t.next_key);
    bootstrap = *std::max_element(next.begin(), next.end());
  }
  std::int64_t& visits = visits_[t.key];
  double eta = cfg_.eta / (1.0 + static_cast<double>(visits) / cfg_.eta_visit_scale);
  ++visits;
  auto& row = table_[t.key];
  double td_error = t.reward + cfg_.delta * bootstrap - row[static_cast<std::size_t>(t.action)];
  row[static_cast<std::size_t>(t.action)] += eta * td_error;
  return td_error;
}

void QLearningPolicy::save(std::ostream& out) const {
  out << "policy q-learning\nentries " << table_.size() << "\n";
  std::vector<std::int64_t> keys;
  keys.reserve(table_.size());
  for (const auto& [key, row] : table_) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  char buf[64];
  for (std::int64_t key : keys) {
    const auto& row = table_.at(key);
    out << key;
    for (double q : row) {
      std::snprintf(buf, sizeof(buf), "%a", q);
      out << ' ' << buf;
    }
    auto vit = visits_.find(key);
    out << ' ' << (vit == visits_.end() ? 0 : vit->second) << '\n';
  }
  out << "end\n";
}

void QLearningPolicy::load(std::istream& in) {
  auto fail = [](const std::string& what) {
    throw std::runtime_error("q-table load: " + what);
  };
  std::string tok;
  if (!(in >> tok) || tok != "entries") fail("missing 'entries'");
  std::size_t count = 0;
  if (!(in >> count)) fail("bad entry count");
  table_.clear();
  visits_.clear();
  for (std::size_t i = 0; i < count; ++i) {
    std::int64_t key = 0;
    if (!(in >> key)) fail("bad state key");
    std::array<double, world::kNumActions> row{};
    for (auto& q : row) {
      if (!(in >> tok)) fail("missing action value");
      char* end = nullptr;
      q = std::strtod(tok.c_str(), &end);
      if (end != tok.c_str() + tok.size()) fail("bad action value '" + tok + "'");
    }
    std::int64_t visits = 0;
    if (!(in >> visits)) fail("bad visit count");
    table_.emplace(key, row);
    if (visits > 0) visits_.emplace(key, visits);
  }
  if (!(in >> tok) || tok != "end") fail("missing 'end' trailer");
}

}  // namespace mfc::policies
