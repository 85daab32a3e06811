#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "majority/sweep.hpp"

using namespace majority;

namespace {

SweepConfig small_config() {
  ErConfig er;
  er.n = 600;
  er.mean_degree = 5.2;
  SweepConfig cfg;
  cfg.source = er;
  cfg.r_targets = {-0.1, 0.1};
  cfg.rho_targets = {0.0, 0.2};
  cfg.active_fractions = {0.1};
  cfg.replicates = 3;
  cfg.base_seed = 42;
  return cfg;
}

std::string csv_of(const SweepConfig& cfg) {
  std::ostringstream out;
  write_sweep_csv(out, cfg, run_sweep(cfg));
  return out.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("sweep config parsing") {
  const auto j = Json::parse(R"({
    "graph": {"generator": "powerlaw", "n": 500, "alpha": 2.4},
    "r_targets": [-0.1, 0.0], "rho_targets": [0.1], "active_fractions": [0.05, 0.1],
    "phi": 0.5, "comparison": "inclusive", "replicates": 2, "base_seed": 7,
    "tuning": {"r_tolerance": 0.02}, "ensemble": {"variants": 3}
  })");
  const SweepConfig cfg = sweep_config_from_json(j);
  CHECK(std::get<PowerLawConfig>(cfg.source).alpha == 2.4);
  CHECK(cfg.comparison == Comparison::inclusive);
  CHECK(cfg.r_levels() == 2);
  CHECK(cfg.tuning.r_tolerance == 0.02);
  CHECK(cfg.ensemble.variants == 3);

  auto bad = [&](const char* patch) {
    Json copy = j;
    copy.merge_patch(Json::parse(patch));
    return copy;
  };
  CHECK_THROWS_AS(sweep_config_from_json(bad(R"({"replicates": 0})")), std::invalid_argument);
  CHECK_THROWS_AS(sweep_config_from_json(bad(R"({"rho_targets": []})")), std::invalid_argument);
  CHECK_THROWS_AS(sweep_config_from_json(bad(R"({"active_fractions": [1.5]})")), std::invalid_argument);
  CHECK_THROWS_AS(sweep_config_from_json(bad(R"({"phi": 1.0})")), std::invalid_argument);
  CHECK_THROWS_AS(sweep_config_from_json(bad(R"({"graph": {"generator": "ws"}})")), std::invalid_argument);
  CHECK_THROWS_AS(sweep_config_from_json(bad(R"({"replicates": "many"})")), std::invalid_argument);
  CHECK_THROWS_AS(sweep_config_from_json(Json::parse(R"({"rho_targets": [0]})")), std::invalid_argument);
}

TEST_CASE("sweep output shape and content") {
  const SweepConfig cfg = small_config();
  const auto cells = run_sweep(cfg);
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].r_requested == -0.1);
  CHECK(cells[1].rho_requested == 0.2);
  CHECK(cells[2].r_requested == 0.1);
  for (const auto& c : cells) {
    CHECK(c.error.empty());
    CHECK(c.replicates == 3);
    CHECK(c.seeds.size() == 3);
    CHECK(c.empirical_std >= 0);
    CHECK(c.model_fraction >= 0);
    CHECK(c.model_fraction <= 1);
    CHECK(std::abs(c.r_achieved - *c.r_requested) <= 0.01 + 1e-12);
  }
  // replicates share their graph across rho levels, so r matches exactly
  CHECK(cells[0].r_samples == cells[1].r_samples);

  std::ostringstream out;
  write_sweep_csv(out, cfg, cells);
  const std::string csv = out.str();
  CHECK(csv.rfind("graph,alpha_or_meank,r_req,r_ach,rho_req,rho_ach,frac_active,phi,cmp,emp_mean,emp_std,model,gauss,reps,flags\n", 0) == 0);
  CHECK(lines(csv) == 5);
  CHECK(csv.find("\ner,5.2,-0.100000,") != std::string::npos);
}

TEST_CASE("sweeps are deterministic and independent of the worker count") {
  SweepConfig cfg = small_config();
  const std::string once = csv_of(cfg);
  CHECK(csv_of(cfg) == once);
  cfg.workers = 3;
  CHECK(csv_of(cfg) == once);
  cfg.base_seed = 43;
  CHECK(csv_of(cfg) != once);
}

TEST_CASE("failed cells are reported in place") {
  SweepConfig cfg = small_config();
  DatasetSpec missing;
  missing.name = "nowhere";
  missing.path = "/definitely/not/here.txt";
  cfg.source = missing;
  const auto cells = run_sweep(cfg);
  REQUIRE(cells.size() == 4);
  for (const auto& c : cells) {
    CHECK(c.replicates == 0);
    CHECK_FALSE(c.error.empty());
    CHECK(c.flags().rfind("error=", 0) == 0);
    CHECK(c.flags().find(',') == std::string::npos);
  }
  std::ostringstream out;
  write_sweep_csv(out, cfg, cells);
  CHECK(lines(out.str()) == 5);
}

TEST_CASE("empty r_targets keeps the natural assortativity") {
  SweepConfig cfg = small_config();
  cfg.r_targets.clear();
  const auto cells = run_sweep(cfg);
  REQUIRE(cells.size() == 2);
  CHECK_FALSE(cells[0].r_requested.has_value());
  CHECK(std::abs(cells[0].r_achieved) < 0.1);
}

TEST_CASE("non-converged tunings are flagged") {
  SweepConfig cfg = small_config();
  cfg.r_targets = {0.95};
  cfg.tuning.rewire_iters_per_edge = 2;
  const auto cells = run_sweep(cfg);
  CHECK(cells[0].flags().find("r_nc=3/3") != std::string::npos);
}

TEST_CASE("fixed-r ensembles") {
  PowerLawConfig pl;
  pl.n = 1500;
  pl.alpha = 2.4;
  SweepConfig cfg;
  cfg.source = pl;
  cfg.r_targets = {-0.05};
  cfg.rho_targets = {0.3};
  cfg.active_fractions = {0.1};
  cfg.ensemble.variants = 4;
  cfg.ensemble.swaps = 2000;
  const auto levels = run_fixed_r_ensemble(cfg);
  REQUIRE(levels.size() == 1);
  const auto& l = levels[0];
  CHECK(l.error.empty());
  CHECK(l.empirical.size() == 4);
  CHECK(l.max_r_drift <= 0.01);
  CHECK(l.spread() >= 0);
  std::ostringstream a, b;
  write_ensemble_csv(a, cfg, levels);
  write_ensemble_csv(b, cfg, run_fixed_r_ensemble(cfg));
  CHECK(a.str() == b.str());
  CHECK(lines(a.str()) == 2);
}
