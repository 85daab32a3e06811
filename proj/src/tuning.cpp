#include "majority/tuning.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "majority/statistics.hpp"

namespace majority {

namespace {

constexpr double kMinImprovement = 1e-12;

/// Mutable edge list plus membership index for degree-preserving double-edge
/// swaps. Tracks T = sum over edges of k_u k_v, which together with the
/// (fixed) degree moments determines r exactly.
class EdgeSwapper {
 public:
  explicit EdgeSwapper(const Graph& g)
      : labels_(g.labels().begin(), g.labels().end()),
        degrees_(g.degrees().begin(), g.degrees().end()),
        edges_(g.edges().begin(), g.edges().end()) {
    present_.reserve(edges_.size() * 2);
    for (auto [u, v] : edges_) {
      present_.insert(key(u, v));
      product_sum_ += std::int64_t{degree(u)} * degree(v);
    }
  }

  struct Rewiring {
    Edge first;
    Edge second;
    std::int64_t delta = 0;
  };

  std::size_t edge_count() const { return edges_.size(); }
  std::int64_t product_sum() const { return product_sum_; }

  std::pair<std::size_t, std::size_t> pick_pair(Rng& rng) const {
    const std::size_t i = rng.below(edges_.size());
    std::size_t j = rng.below(edges_.size() - 1);
    if (j >= i) ++j;
    return {i, j};
  }

  /// The two rewirings of edges i and j; empty when the edges share a node.
  std::optional<std::array<Rewiring, 2>> rewirings(std::size_t i, std::size_t j) const {
    const auto [a, b] = edges_[i];
    const auto [c, d] = edges_[j];
    if (a == c || a == d || b == c || b == d) return std::nullopt;
    const std::int64_t before = std::int64_t{degree(a)} * degree(b) + std::int64_t{degree(c)} * degree(d);
    Rewiring ac{{a, c}, {b, d}, std::int64_t{degree(a)} * degree(c) + std::int64_t{degree(b)} * degree(d) - before};
    Rewiring ad{{a, d}, {b, c}, std::int64_t{degree(a)} * degree(d) + std::int64_t{degree(b)} * degree(c) - before};
    return std::array<Rewiring, 2>{ac, ad};
  }

  bool keeps_simple(const Rewiring& w) const {
    return !present_.contains(key(w.first.first, w.first.second)) &&
           !present_.contains(key(w.second.first, w.second.second));
  }

  void apply(std::size_t i, std::size_t j, const Rewiring& w) {
    present_.erase(key(edges_[i].first, edges_[i].second));
    present_.erase(key(edges_[j].first, edges_[j].second));
    edges_[i] = w.first;
    edges_[j] = w.second;
    present_.insert(key(w.first.first, w.first.second));
    present_.insert(key(w.second.first, w.second.second));
    product_sum_ += w.delta;
  }

  Graph build() const { return Graph::from_dense(labels_, edges_); }

 private:
  static std::uint64_t key(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
  }
  int degree(NodeId v) const { return degrees_[static_cast<std::size_t>(v)]; }

  std::vector<Label> labels_;
  std::vector<int> degrees_;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> present_;
  std::int64_t product_sum_ = 0;
};

}  // namespace

RewireOutcome rewire_to_assortativity(const Graph& g, double target_r, const RewireOptions& options) {
  if (!(options.tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  const DegreeMoments moments = DegreeMoments::of(g.degrees());
  if (!assortativity_defined(moments)) throw std::domain_error("assortativity undefined");

  EdgeSwapper swapper(g);
  Rng rng(options.seed);
  const std::size_t max_iters = options.max_iters.value_or(100 * g.edge_count());

  double r = assortativity_from_sums(moments, swapper.product_sum());
  double distance = std::abs(r - target_r);
  TuneResult result;
  result.target = target_r;
  result.tolerance = options.tolerance;

  while (distance > options.tolerance && result.iterations < max_iters && swapper.edge_count() >= 2) {
    ++result.iterations;
    const auto [i, j] = swapper.pick_pair(rng);
    const auto candidates = swapper.rewirings(i, j);
    if (!candidates) continue;

    const EdgeSwapper::Rewiring* best = nullptr;
    double best_distance = distance - kMinImprovement;
    double best_r = r;
    for (const auto& w : *candidates) {
      if (w.delta == 0) continue;
      const double r_new = assortativity_from_sums(moments, swapper.product_sum() + w.delta);
      const double d_new = std::abs(r_new - target_r);
      if (d_new < best_distance && swapper.keeps_simple(w)) {
        best = &w;
        best_distance = d_new;
        best_r = r_new;
      }
    }
    if (!best) continue;
    swapper.apply(i, j, *best);
    r = best_r;
    distance = best_distance;
    ++result.accepted;
    if (options.on_accept) options.on_accept(r);
  }

  RewireOutcome out{swapper.build(), {}};
  const double recomputed = assortativity(out.graph);
  if (std::abs(recomputed - r) > 1e-6) throw std::logic_error("incremental assortativity drifted from recomputation");
  result.achieved = recomputed;
  result.converged = std::abs(recomputed - target_r) <= options.tolerance;
  result.swap_acceptance_rate =
      result.iterations ? static_cast<double>(result.accepted) / static_cast<double>(result.iterations) : 0.0;
  out.result = result;
  return out;
}

SwapOutcome swap_attributes_to_rho(const Graph& g, AttributeAssignment a, double target_rho,
                                   const SwapOptions& options) {
  if (!(options.tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  if (a.size() != g.node_count()) throw std::invalid_argument("assignment size does not match graph");
  const DegreeMoments moments = DegreeMoments::of(g.degrees());
  const auto active_count = static_cast<std::int64_t>(a.active_count());
  if (!degree_attribute_correlation_defined(moments, active_count)) throw std::domain_error("correlation undefined");

  std::vector<NodeId> active;
  std::vector<NodeId> inactive;
  std::int64_t active_degree_sum = 0;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const auto id = static_cast<NodeId>(v);
    if (a.active(id)) {
      active.push_back(id);
      active_degree_sum += g.degree(id);
    } else {
      inactive.push_back(id);
    }
  }

  Rng rng(options.seed);
  const std::size_t max_iters = options.max_iters.value_or(100 * g.node_count());
  double rho = degree_attribute_correlation(moments, active_count, active_degree_sum);
  double distance = std::abs(rho - target_rho);
  TuneResult result;
  result.target = target_rho;
  result.tolerance = options.tolerance;
  std::size_t consecutive_rejections = 0;

  while (distance > options.tolerance && result.iterations < max_iters &&
         consecutive_rejections < g.node_count()) {
    ++result.iterations;
    ++consecutive_rejections;
    const std::size_t i = rng.below(active.size());
    const std::size_t j = rng.below(inactive.size());
    const std::int64_t delta = g.degree(inactive[j]) - g.degree(active[i]);
    if (delta == 0) continue;
    const double rho_new = degree_attribute_correlation(moments, active_count, active_degree_sum + delta);
    const double d_new = std::abs(rho_new - target_rho);
    if (!(d_new < distance - kMinImprovement)) continue;

    a.swap_states(active[i], inactive[j]);
    std::swap(active[i], inactive[j]);
    active_degree_sum += delta;
    rho = rho_new;
    distance = d_new;
    ++result.accepted;
    consecutive_rejections = 0;
    if (options.on_accept) options.on_accept(rho);
  }

  result.achieved = rho;
  result.converged = distance <= options.tolerance;
  result.swap_acceptance_rate =
      result.iterations ? static_cast<double>(result.accepted) / static_cast<double>(result.iterations) : 0.0;
  return {std::move(a), result};
}

RandomizeOutcome randomize_at_fixed_r(const Graph& g, double tolerance, std::size_t n_accepted, Seed seed,
                                      std::optional<std::size_t> max_attempts) {
  const DegreeMoments moments = DegreeMoments::of(g.degrees());
  const bool r_defined = assortativity_defined(moments);
  EdgeSwapper swapper(g);
  Rng rng(seed);

  RandomizeOutcome out;
  if (r_defined) out.initial_r = assortativity_from_sums(moments, swapper.product_sum());
  const std::size_t limit = max_attempts.value_or(std::max(100 * n_accepted, 100 * g.edge_count()));

  while (out.accepted < n_accepted && out.attempts < limit && swapper.edge_count() >= 2) {
    ++out.attempts;
    const auto [i, j] = swapper.pick_pair(rng);
    const auto candidates = swapper.rewirings(i, j);
    if (!candidates) continue;
    const auto& w = (*candidates)[rng.below(2)];
    if (r_defined) {
      const double r_new = assortativity_from_sums(moments, swapper.product_sum() + w.delta);
      if (std::abs(r_new - *out.initial_r) > tolerance) continue;
    }
    if (!swapper.keeps_simple(w)) continue;
    swapper.apply(i, j, w);
    ++out.accepted;
  }

  out.graph = swapper.build();
  if (r_defined) out.final_r = assortativity(out.graph);
  return out;
}

}  // namespace majority
