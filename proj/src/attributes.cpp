#include "majority/attributes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace majority {

AttributeAssignment::AttributeAssignment(std::vector<std::uint8_t> states) : states_(std::move(states)) {
  for (auto& s : states_) {
    if (s > 1) throw std::invalid_argument("attribute values must be 0 or 1");
    active_count_ += s;
  }
}

AttributeAssignment AttributeAssignment::from_active(std::size_t node_count, std::span<const NodeId> active) {
  std::vector<std::uint8_t> states(node_count, 0);
  for (NodeId v : active) states.at(static_cast<std::size_t>(v)) = 1;
  return AttributeAssignment(std::move(states));
}

std::size_t active_target_count(std::size_t node_count, double fraction) {
  const double target = std::round(fraction * static_cast<double>(node_count));
  if (!(target >= 1.0) || target > static_cast<double>(node_count) - 1.0)
    throw std::invalid_argument("active fraction must leave at least one active and one inactive node");
  return static_cast<std::size_t>(target);
}

AttributeAssignment activate_random(const Graph& g, double fraction, Seed seed) {
  const std::size_t count = active_target_count(g.node_count(), fraction);
  std::vector<NodeId> nodes(g.node_count());
  std::iota(nodes.begin(), nodes.end(), 0);
  // Partial Fisher-Yates: the first `count` slots are a uniform sample.
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(nodes.size() - i));
    std::swap(nodes[i], nodes[j]);
  }
  return AttributeAssignment::from_active(g.node_count(), std::span(nodes).first(count));
}

AttributeAssignment activate_top_degree(const Graph& g, double fraction) {
  const std::size_t count = active_target_count(g.node_count(), fraction);
  std::vector<NodeId> nodes(g.node_count());
  std::iota(nodes.begin(), nodes.end(), 0);
  std::stable_sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
  return AttributeAssignment::from_active(g.node_count(), std::span(nodes).first(count));
}

bool degree_attribute_correlation_defined(const DegreeMoments& m, std::int64_t active_count) {
  const Int128 var_k = Int128{m.nodes} * m.s2 - Int128{m.s1} * m.s1;
  return active_count > 0 && active_count < m.nodes && var_k > 0;
}

double degree_attribute_correlation(const DegreeMoments& m, std::int64_t active_count,
                                    std::int64_t active_degree_sum) {
  if (!degree_attribute_correlation_defined(m, active_count)) throw std::domain_error("correlation undefined");
  // rho = P(x=1) (<k>_{x=1} - <k>) / (sigma_x sigma_k)
  //     = (N S_A - A S1) / (sqrt(A (N - A)) sqrt(N S2 - S1^2)).
  const Int128 num = Int128{m.nodes} * active_degree_sum - Int128{active_count} * m.s1;
  const long double var_x = static_cast<long double>(active_count) * static_cast<long double>(m.nodes - active_count);
  const long double var_k = static_cast<long double>(Int128{m.nodes} * m.s2 - Int128{m.s1} * m.s1);
  return static_cast<double>(static_cast<long double>(num) / (std::sqrt(var_x) * std::sqrt(var_k)));
}

double AttributeProfile::p_active_given(int k) const {
  const auto it = std::lower_bound(classes.begin(), classes.end(), k);
  if (it == classes.end() || *it != k) throw std::out_of_range("degree " + std::to_string(k) + " not observed");
  return p_active_given_k[it - classes.begin()];
}

AttributeProfile activity_profile(const Graph& g, const DegreeStats& stats, const AttributeAssignment& a) {
  if (a.size() != g.node_count()) throw std::invalid_argument("assignment size does not match graph");
  const auto& m = stats.moments();
  const auto active = static_cast<std::int64_t>(a.active_count());

  AttributeProfile prof;
  prof.classes.assign(stats.classes().begin(), stats.classes().end());
  Eigen::VectorXd active_per_class = Eigen::VectorXd::Zero(stats.class_count());
  std::int64_t active_degree_sum = 0;
  const auto node_class = stats.node_class();
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (!a.active(static_cast<NodeId>(v))) continue;
    active_per_class[node_class[v]] += 1.0;
    active_degree_sum += g.degree(static_cast<NodeId>(v));
  }
  prof.p_active_given_k.resize(stats.class_count());
  for (Eigen::Index c = 0; c < stats.class_count(); ++c)
    prof.p_active_given_k[c] = active_per_class[c] / static_cast<double>(stats.node_counts()[static_cast<std::size_t>(c)]);

  const auto n = static_cast<double>(m.nodes);
  prof.p_active = static_cast<double>(active) / n;
  prof.sigma_x = std::sqrt(prof.p_active * (1.0 - prof.p_active));
  prof.sigma_k = stats.sigma_k();
  prof.mean_degree = stats.mean_degree();
  prof.mean_degree_active = active > 0 ? static_cast<double>(active_degree_sum) / static_cast<double>(active) : 0.0;
  if (degree_attribute_correlation_defined(m, active))
    prof.rho_kx = degree_attribute_correlation(m, active, active_degree_sum);
  return prof;
}

AttributeProfile attribute_profile(const Graph& g, const DegreeStats& stats, const AttributeAssignment& a) {
  AttributeProfile prof = activity_profile(g, stats, a);
  if (!prof.rho_kx) throw std::domain_error("correlation undefined");
  return prof;
}

AttributeProfile attribute_profile(const Graph& g, const AttributeAssignment& a) {
  return attribute_profile(g, degree_stats(g), a);
}

ParadoxMetrics paradox_metrics(const Graph& g, const AttributeAssignment& a) {
  if (g.node_count() == 0) throw std::invalid_argument("empty graph");
  if (a.size() != g.node_count()) throw std::invalid_argument("assignment size does not match graph");
  const DegreeStats stats = degree_stats(g);
  std::int64_t active_ends = 0;
  for (std::size_t v = 0; v < g.node_count(); ++v)
    if (a.active(static_cast<NodeId>(v))) active_ends += g.degree(static_cast<NodeId>(v));

  ParadoxMetrics pm;
  pm.node_active_prob = static_cast<double>(a.active_count()) / static_cast<double>(g.node_count());
  const std::int64_t ends = stats.moments().s1;
  pm.neighbor_active_prob = ends > 0 ? static_cast<double>(active_ends) / static_cast<double>(ends) : 0.0;
  pm.gfp_strength = pm.neighbor_active_prob - pm.node_active_prob;
  pm.fp_strength = stats.paradox_strength();
  return pm;
}

}  // namespace majority
