#include "mfc/harness/compare.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "mfc/harness/runner.hpp"
#include "mfc/policies/factory.hpp"

namespace mfc::harness {

namespace {

struct SeedOutcome {
  std::vector<metrics::MetricsRecord> records;  // canonical policy order
  std::vector<std::vector<EpisodeResult>> curves;  // RL policies, training order
};

double mean_of(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0;
  double m = mean_of(xs);
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

double pooled_se(double sd_a, double sd_b, std::size_t n) {
  return std::sqrt((sd_a * sd_a + sd_b * sd_b) / static_cast<double>(n));
}

}  // namespace

std::string jain_category(double jain) {
  if (jain < 0.5) return "Low";
  if (jain < 0.7) return "Moderate";
  if (jain < 0.9) return "High";
  return "Very High";
}

ComparisonReport run_compare(const ExperimentConfig& cfg, const std::vector<std::uint64_t>& seeds,
                             int jobs, const std::string& out_dir) {
  if (seeds.size() < 3) throw ConfigError("compare: need at least 3 seeds");
  std::filesystem::create_directories(out_dir);

  const auto& names = policies::all_policy_names();
  std::vector<SeedOutcome> outcomes(seeds.size());

  // Each seed is an isolated bundle: train the three learners, then evaluate
  // all five policies on that seed's paired evaluation workload. Bundles are
  // independent, so the thread count cannot affect any result.
  auto run_seed = [&](std::size_t si) {
    std::uint64_t seed = seeds[si];
    SeedOutcome& out = outcomes[si];
    std::vector<std::unique_ptr<policies::Policy>> trained;
    for (const auto& name : names) {
      if (!policies::is_learning_policy(name)) continue;
      TrainingOutput t = run_training(cfg, name, seed);
      out.curves.push_back(std::move(t.episodes));
      trained.push_back(std::move(t.policy));
    }
    std::size_t next_trained = 0;
    for (const auto& name : names) {
      std::unique_ptr<policies::Policy> fresh;
      policies::Policy* policy = nullptr;
      if (policies::is_learning_policy(name)) {
        policy = trained[next_trained++].get();
      } else {
        fresh = policies::make_policy(name, cfg, seed, 0);
        policy = fresh.get();
      }
      out.records.push_back(run_eval(cfg, *policy, seed));
    }
    // Persist artifacts after evaluation; evaluation must not mutate them.
    std::size_t ti = 0;
    for (const auto& name : names) {
      if (!policies::is_learning_policy(name)) continue;
      policies::save_policy_file(*trained[ti],
                                 out_dir + "/policy-" + name + "-seed" + std::to_string(seed) +
                                     ".txt");
      export_training_curve(out.curves[ti],
                            out_dir + "/curve-" + name + "-seed" + std::to_string(seed) + ".csv");
      ++ti;
    }
  };

  if (jobs <= 1 || seeds.size() == 1) {
    for (std::size_t si = 0; si < seeds.size(); ++si) run_seed(si);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t si = next.fetch_add(1); si < seeds.size(); si = next.fetch_add(1))
        run_seed(si);
    };
    std::vector<std::thread> pool;
    int n_threads = std::min<int>(jobs, static_cast<int>(seeds.size()));
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ComparisonReport report;
  // Rows policy-major, seeds in the given order.
  for (std::size_t pi = 0; pi < names.size(); ++pi)
    for (std::size_t si = 0; si < seeds.size(); ++si)
      report.records.push_back(outcomes[si].records[pi]);

  for (std::size_t pi = 0; pi < names.size(); ++pi) {
    std::vector<double> lat, succ, jain, var, util;
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const auto& r = outcomes[si].records[pi];
      lat.push_back(r.avg_latency_s);
      succ.push_back(r.success_rate);
      jain.push_back(r.jain_mean);
      var.push_back(r.load_variance_mean);
      util.push_back(r.util_mean);
    }
    PolicyStats s;
    s.policy = names[pi];
    s.latency_mean = mean_of(lat);
    s.latency_sd = sample_sd(lat);
    s.success_mean = mean_of(succ);
    s.success_sd = sample_sd(succ);
    s.jain_mean = mean_of(jain);
    s.jain_sd = sample_sd(jain);
    s.variance_mean = mean_of(var);
    s.util_mean = mean_of(util);
    report.stats.push_back(s);
  }

  const PolicyStats& greedy = report.stats[0];
  const PolicyStats& opt = report.stats[1];
  const PolicyStats& ql = report.stats[2];
  const PolicyStats& dqn = report.stats[3];
  const PolicyStats& ac = report.stats[4];
  const std::size_t n = seeds.size();

  report.latency_ordering_strict = greedy.latency_mean > opt.latency_mean &&
                                   opt.latency_mean > ql.latency_mean &&
                                   opt.latency_mean > dqn.latency_mean &&
                                   opt.latency_mean > ac.latency_mean;
  report.rl_latency_ordered_within_se =
      ac.latency_mean <= dqn.latency_mean + pooled_se(ac.latency_sd, dqn.latency_sd, n) &&
      dqn.latency_mean <= ql.latency_mean + pooled_se(dqn.latency_sd, ql.latency_sd, n);
  report.success_ordering_strict = greedy.success_mean < opt.success_mean &&
                                   opt.success_mean < ql.success_mean &&
                                   opt.success_mean < dqn.success_mean &&
                                   opt.success_mean < ac.success_mean;
  report.rl_success_ordered_within_se =
      ac.success_mean >= dqn.success_mean - pooled_se(ac.success_sd, dqn.success_sd, n) &&
      dqn.success_mean >= ql.success_mean - pooled_se(dqn.success_sd, ql.success_sd, n);
  report.rl_jain_at_least_greedy = ql.jain_mean >= greedy.jain_mean &&
                                   dqn.jain_mean >= greedy.jain_mean &&
                                   ac.jain_mean >= greedy.jain_mean;

  const PolicyStats* best = &ql;
  for (const PolicyStats* cand : {&dqn, &ac})
    if (cand->latency_mean < best->latency_mean) best = cand;
  report.best_rl_policy = best->policy;
  report.best_rl_latency_improvement =
      (greedy.latency_mean - best->latency_mean) / greedy.latency_mean;
  report.best_rl_success_gain_pp = (best->success_mean - greedy.success_mean) * 100.0;

  metrics::export_csv(report.records, out_dir + "/metrics.csv");

  {
    std::ofstream out(out_dir + "/fig3_latency.csv");
    if (!out) throw std::runtime_error("compare: cannot write fig3_latency.csv");
    out << "policy,latency_ms_mean,latency_ms_sd\n";
    for (const auto& s : report.stats)
      out << s.policy << ',' << metrics::format_double(s.latency_mean * 1e3) << ','
          << metrics::format_double(s.latency_sd * 1e3) << '\n';
  }
  {
    std::ofstream out(out_dir + "/fig4_success.csv");
    if (!out) throw std::runtime_error("compare: cannot write fig4_success.csv");
    out << "policy,success_pct_mean,success_pct_sd\n";
    for (const auto& s : report.stats)
      out << s.policy << ',' << metrics::format_double(s.success_mean * 100.0) << ','
          << metrics::format_double(s.success_sd * 100.0) << '\n';
  }

  nlohmann::json j;
  j["seeds"] = seeds;
  for (const auto& s : report.stats) {
    nlohmann::json js;
    js["latency_s_mean"] = s.latency_mean;
    js["latency_s_sd"] = s.latency_sd;
    js["success_rate_mean"] = s.success_mean;
    js["success_rate_sd"] = s.success_sd;
    js["jain_mean"] = s.jain_mean;
    js["jain_sd"] = s.jain_sd;
    js["load_variance_mean"] = s.variance_mean;
    js["utilization_mean"] = s.util_mean;
    js["load_balance_category"] = jain_category(s.jain_mean);
    j["policies"][s.policy] = js;
  }
  j["orderings"] = {{"latency_greedy_gt_opt_gt_rl", report.latency_ordering_strict},
                    {"rl_latency_ac_le_dqn_le_ql_within_se", report.rl_latency_ordered_within_se},
                    {"success_greedy_lt_opt_lt_rl", report.success_ordering_strict},
                    {"rl_success_ac_ge_dqn_ge_ql_within_se", report.rl_success_ordered_within_se},
                    {"rl_jain_at_least_greedy", report.rl_jain_at_least_greedy}};
  j["best_rl"] = {{"policy", report.best_rl_policy},
                  {"latency_improvement_vs_greedy", report.best_rl_latency_improvement},
                  {"success_gain_pp_vs_greedy", report.best_rl_success_gain_pp}};
  std::ofstream jf(out_dir + "/comparison.json");
  if (!jf) throw std::runtime_error("compare: cannot write comparison.json");
  jf << j.dump(2) << '\n';

  return report;
}

}  // namespace mfc::harness
