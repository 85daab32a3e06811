#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "majority/graph.hpp"
#include "majority/rng.hpp"

namespace majority {

/// Power-law degree distribution p(k) ~ k^-alpha on [k_min, k_max].
/// k_max defaults to n - 1.
struct PowerLawConfig {
  std::size_t n = 10000;
  double alpha = 2.1;
  int k_min = 1;
  std::optional<int> k_max;
  Seed seed = 1;

  int effective_k_max() const { return k_max ? *k_max : static_cast<int>(n) - 1; }
  /// Throws std::invalid_argument if alpha <= 1 or not 1 <= k_min <= k_max < n.
  void validate() const;
};

/// G(n, p) with p = mean_degree / (n - 1).
struct ErConfig {
  std::size_t n = 10000;
  double mean_degree = 5.2;
  Seed seed = 1;

  /// Throws std::invalid_argument unless 0 < mean_degree <= n - 1.
  void validate() const;
};

/// Inverse-CDF sampler for the discrete power law. Degrees are i.i.d.; if
/// their sum is odd, one uniformly chosen entry is bumped by one (or lowered,
/// when it already sits at k_max) so that stub matching can pair every stub.
std::vector<int> sample_powerlaw_degree_sequence(const PowerLawConfig& cfg);

/// Probability mass of the truncated power law, indexed by k - k_min.
std::vector<double> powerlaw_pmf(double alpha, int k_min, int k_max);

struct ConfigurationModelResult {
  Graph graph;
  BuildReport report;
  std::vector<int> requested_degrees;
};

/// Uniform stub matching run to exhaustion, then simplified: self-loops and
/// repeated edges from the matching are dropped, so realized degrees can only
/// fall below the requested ones. Throws std::invalid_argument for an odd
/// degree sum or negative degrees.
ConfigurationModelResult configuration_model(const std::vector<int>& degrees, Seed seed);

ConfigurationModelResult powerlaw_configuration_model(const PowerLawConfig& cfg);

/// Each unordered pair is linked independently with p = <k>/(n-1); sampled by
/// geometric skipping over the pair sequence.
Graph erdos_renyi(const ErConfig& cfg);

}  // namespace majority
