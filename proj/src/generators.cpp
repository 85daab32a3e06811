#include "majority/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace majority {

void PowerLawConfig::validate() const {
  if (!(alpha > 1.0)) throw std::invalid_argument("power law exponent must exceed 1");
  if (n < 2) throw std::invalid_argument("power law graph needs at least two nodes");
  const int hi = effective_k_max();
  if (k_min < 1 || k_min > hi || static_cast<std::size_t>(hi) >= n)
    throw std::invalid_argument("degree bounds must satisfy 1 <= k_min <= k_max < n");
}

void ErConfig::validate() const {
  if (n < 2) throw std::invalid_argument("Erdos-Renyi graph needs at least two nodes");
  if (!(mean_degree > 0.0) || mean_degree > static_cast<double>(n - 1))
    throw std::invalid_argument("mean degree must lie in (0, n-1]");
}

std::vector<double> powerlaw_pmf(double alpha, int k_min, int k_max) {
  std::vector<double> pmf;
  pmf.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k) pmf.push_back(std::pow(static_cast<double>(k), -alpha));
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  for (double& w : pmf) w /= total;
  return pmf;
}

std::vector<int> sample_powerlaw_degree_sequence(const PowerLawConfig& cfg) {
  cfg.validate();
  const int hi = cfg.effective_k_max();
  const std::vector<double> pmf = powerlaw_pmf(cfg.alpha, cfg.k_min, hi);
  std::vector<double> cdf(pmf.size());
  std::partial_sum(pmf.begin(), pmf.end(), cdf.begin());
  cdf.back() = 1.0;

  Rng rng(cfg.seed);
  std::vector<int> degrees(cfg.n);
  long long sum = 0;
  for (int& k : degrees) {
    const double u = rng.uniform();
    const auto idx = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    k = cfg.k_min + static_cast<int>(std::min<std::ptrdiff_t>(idx, static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    sum += k;
  }
  if (sum % 2 != 0) {
    int& k = degrees[static_cast<std::size_t>(rng.below(degrees.size()))];
    k += (k < hi) ? 1 : -1;
  }
  return degrees;
}

ConfigurationModelResult configuration_model(const std::vector<int>& degrees, Seed seed) {
  long long sum = 0;
  for (int k : degrees) {
    if (k < 0) throw std::invalid_argument("negative degree");
    sum += k;
  }
  if (sum % 2 != 0) throw std::invalid_argument("degree sum must be even");
  if (degrees.empty()) throw std::invalid_argument("empty degree sequence");

  std::vector<NodeId> stubs;
  stubs.reserve(static_cast<std::size_t>(sum));
  for (std::size_t v = 0; v < degrees.size(); ++v)
    stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[v]), static_cast<NodeId>(v));

  Rng rng(seed);
  rng.shuffle(std::span<NodeId>(stubs));
  std::vector<Edge> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.emplace_back(stubs[i], stubs[i + 1]);

  ConfigurationModelResult out;
  out.graph = Graph::from_dense(degrees.size(), edges, &out.report);
  out.requested_degrees = degrees;
  return out;
}

ConfigurationModelResult powerlaw_configuration_model(const PowerLawConfig& cfg) {
  const auto degrees = sample_powerlaw_degree_sequence(cfg);
  return configuration_model(degrees, derive_seed(cfg.seed, {0x737475627355ULL}));
}

Graph erdos_renyi(const ErConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<std::int64_t>(cfg.n);
  const double p = std::min(1.0, cfg.mean_degree / static_cast<double>(n - 1));
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * static_cast<double>(n) * static_cast<double>(n - 1) / 2.0 * 1.1) + 16);

  if (p >= 1.0) {
    for (std::int64_t u = 0; u < n; ++u)
      for (std::int64_t v = u + 1; v < n; ++v) edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    return Graph::from_dense(cfg.n, edges);
  }

  // Batagelj-Brandes: walk pairs (v, w) with w < v, skipping geometric gaps.
  Rng rng(cfg.seed);
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double r = 1.0 - rng.uniform();  // (0, 1]
    w += 1 + static_cast<std::int64_t>(std::floor(std::log(r) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return Graph::from_dense(cfg.n, edges);
}

}  // namespace majority
