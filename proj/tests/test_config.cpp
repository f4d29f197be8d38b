#include <fstream>
#include <string>

#include "doctest.h"
#include "mfc/harness/config.hpp"

using mfc::harness::ConfigError;
using mfc::harness::ExperimentConfig;
using mfc::harness::load_config;
using mfc::harness::parse_config;

TEST_CASE("defaults validate and carry the documented shape") {
  ExperimentConfig cfg;
  cfg.validate();
  CHECK(cfg.topology.zones == 6);
  CHECK(cfg.topology.fog_profiles.size() >= 1);
  CHECK(cfg.fleet.vehicles >= 100);
  CHECK(cfg.fleet.speed_kmh_min >= 20.0);
  CHECK(cfg.fleet.speed_kmh_max <= 80.0);
  CHECK(cfg.tasks.size_mb_min == doctest::Approx(0.5));
  CHECK(cfg.tasks.size_mb_max == doctest::Approx(5.0));
  CHECK(cfg.tasks.deadline_s_min == doctest::Approx(0.05));
  CHECK(cfg.tasks.deadline_s_max == doctest::Approx(0.5));
  CHECK(cfg.reward.gamma_discount > 0);
  CHECK(cfg.reward.gamma_discount < 1);
}

TEST_CASE("empty object yields the defaults") {
  auto cfg = parse_config("{}");
  ExperimentConfig defaults;
  CHECK(cfg.to_json_string() == defaults.to_json_string());
}

TEST_CASE("a partial overlay touches only its keys") {
  auto cfg = parse_config(R"({"fleet": {"vehicles": 250}, "reward": {"alpha": 2.0}})");
  CHECK(cfg.fleet.vehicles == 250);
  CHECK(cfg.reward.alpha == 2.0);
  ExperimentConfig defaults;
  CHECK(cfg.topology.zones == defaults.topology.zones);
  CHECK(cfg.reward.beta == defaults.reward.beta);
}

TEST_CASE("unknown keys are rejected by name") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"flete": {}})"),
                       doctest::Contains("flete"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"fleet": {"vehicels": 10}})"),
                       doctest::Contains("vehicels"), ConfigError);
}

TEST_CASE("type errors name the offending key") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"fleet": {"vehicles": "many"}})"),
                       doctest::Contains("vehicles"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"fleet": 3})"),
                       doctest::Contains("fleet"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1,2,3]"), ConfigError);
  CHECK_THROWS_AS(parse_config("not json at all"), ConfigError);
}

TEST_CASE("fog profiles parse as cpu memory pairs") {
  auto cfg = parse_config(R"({"topology": {"fog_profiles": [[4.0, 22.0], [2.0, 12.0]]}})");
  REQUIRE(cfg.topology.fog_profiles.size() == 2);
  CHECK(cfg.topology.fog_profiles[0].cpu_ghz == 4.0);
  CHECK(cfg.topology.fog_profiles[0].memory_mb == 22.0);
  CHECK(cfg.topology.fog_profiles[1].cpu_ghz == 2.0);

  CHECK_THROWS_WITH_AS(parse_config(R"({"topology": {"fog_profiles": [[4.0]]}})"),
                       doctest::Contains("fog_profiles"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"topology": {"fog_profiles": 7}})"),
                       doctest::Contains("pairs"), ConfigError);
}

TEST_CASE("validation failures carry the violated key") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"topology": {"zones": 0}})"),
                       doctest::Contains("zones"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"tasks": {"size_mb_min": 6.0}})"),
                       doctest::Contains("size_mb_min"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"reward": {"gamma_discount": 1.5}})"),
                       doctest::Contains("gamma_discount"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"reward": {"alpha": 0.0, "beta": 0.0, "lambda_balance": 0.0}})"),
      doctest::Contains("alpha"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"topology": {"fog_profiles": []}})"),
                       doctest::Contains("non-empty"), ConfigError);
}

TEST_CASE("json echo round-trips the whole config") {
  auto cfg = parse_config(R"({
    "topology": {"zones": 9, "fog_profiles": [[4.0, 22.0], [1.5, 10.0]]},
    "fleet": {"vehicles": 150, "arrival_rate_hz": 0.4},
    "links": {"v2r_mbps": 250.0},
    "dqn": {"hidden": [32, 32], "batch_size": 48},
    "run": {"train_episodes": 12}
  })");
  auto echoed = parse_config(cfg.to_json_string());
  CHECK(echoed.to_json_string() == cfg.to_json_string());
  CHECK(echoed.topology.zones == 9);
  CHECK(echoed.dqn.hidden == std::vector<int>{32, 32});
  CHECK(echoed.run.train_episodes == 12);
}

TEST_CASE("load_config reads a file and reports a missing one") {
  const std::string p = "/tmp/mfc_cfg_probe.json";
  std::ofstream(p) << R"({"fleet": {"vehicles": 111}})";
  auto cfg = load_config(p);
  CHECK(cfg.fleet.vehicles == 111);
  CHECK_THROWS_AS(load_config("/tmp/definitely_missing_cfg.json"), ConfigError);
}
