#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "majority/generators.hpp"
#include "majority/illusion.hpp"
#include "majority/io.hpp"
#include "majority/rng.hpp"
#include "majority/serialize.hpp"

namespace majority {

using GraphSource = std::variant<PowerLawConfig, ErConfig, DatasetSpec>;

struct TuningSettings {
  double r_tolerance = 0.01;
  double rho_tolerance = 0.01;
  double rewire_iters_per_edge = 100;
  double swap_iters_per_node = 100;
};

struct EnsembleSettings {
  std::size_t variants = 5;
  std::size_t swaps = 10000;
  double r_tolerance = 0.01;
};

/// One experiment grid. An empty r_targets list means "keep the graph's own
/// assortativity" and counts as a single level.
struct SweepConfig {
  GraphSource source;
  std::vector<double> r_targets;
  std::vector<double> rho_targets;
  std::vector<double> active_fractions;
  double phi = 0.5;
  Comparison comparison = Comparison::strict;
  std::size_t replicates = 10;
  Seed base_seed = 1;
  std::string output_path;
  std::size_t workers = 1;
  TuningSettings tuning;
  EnsembleSettings ensemble;
  std::optional<std::filesystem::path> data_root;

  /// Throws std::invalid_argument on empty grids, non-finite targets,
  /// replicates == 0 or an invalid source.
  void validate() const;
  std::size_t r_levels() const { return r_targets.empty() ? 1 : r_targets.size(); }
};

/// Parses the JSON config. Keys: "graph" ({"generator": "powerlaw"|"er", ...}
/// or {"dataset": {...}}), "r_targets", "rho_targets", "active_fractions",
/// "phi", "comparison", "replicates", "base_seed", "output_path", "workers",
/// "tuning", "ensemble".
SweepConfig sweep_config_from_json(const Json& j);

struct SweepCell {
  std::optional<double> r_requested;
  double rho_requested = 0;
  double active_fraction = 0;
  std::size_t r_index = 0;
  std::size_t rho_index = 0;
  std::size_t fraction_index = 0;

  double r_achieved = 0;           ///< mean over replicates
  double rho_achieved = 0;         ///< mean over replicates
  std::size_t r_not_converged = 0;
  std::size_t rho_not_converged = 0;
  double empirical_mean = 0;
  double empirical_std = 0;        ///< sample standard deviation
  double model_fraction = 0;       ///< mean over replicates
  std::optional<double> gaussian_fraction;
  std::size_t replicates = 0;      ///< successful replicates
  std::vector<Seed> seeds;         ///< attribute-swap seed of each replicate
  std::vector<double> empirical;   ///< per-replicate empirical fractions
  std::vector<double> rho_samples; ///< per-replicate achieved rho
  std::vector<double> r_samples;   ///< per-replicate achieved r
  std::string error;

  std::string flags() const;
};

/// Runs every (r, rho, fraction) cell: build graph, rewire to r, activate the
/// fraction at random, swap attributes toward rho, then measure the empirical,
/// model and Gaussian illusion fractions. Cells come back in
/// (r, rho, fraction) order; failures are recorded in SweepCell::error.
std::vector<SweepCell> run_sweep(const SweepConfig& cfg);

std::string source_kind(const GraphSource& source);
std::string source_parameter(const GraphSource& source);

/// CSV with header
/// graph,alpha_or_meank,r_req,r_ach,rho_req,rho_ach,frac_active,phi,cmp,emp_mean,emp_std,model,gauss,reps,flags
void write_sweep_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepCell>& cells);

struct EnsembleLevel {
  std::optional<double> r_requested;
  double rho_requested = 0;
  double active_fraction = 0;
  double r_initial = 0;
  double rho_achieved = 0;
  std::vector<double> empirical;          ///< one per structure-randomized variant
  std::vector<std::size_t> accepted_swaps;
  double max_r_drift = 0;
  std::string error;

  double mean() const;
  double std_dev() const;
  double spread() const;  ///< max - min
};

/// For every (r, rho, fraction) level: tune one base graph and assignment, then
/// measure K structure-randomized variants that keep the degree sequence and r.
std::vector<EnsembleLevel> run_fixed_r_ensemble(const SweepConfig& cfg);

void write_ensemble_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<EnsembleLevel>& levels);

/// Builds the base graph of a sweep for replicate `replicate`.
Graph build_source_graph(const GraphSource& source, Seed seed,
                         const std::optional<std::filesystem::path>& data_root = std::nullopt);

}  // namespace majority
