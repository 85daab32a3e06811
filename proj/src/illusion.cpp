#include "majority/illusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace majority {

std::string_view to_string(Comparison c) { return c == Comparison::strict ? "strict" : "inclusive"; }

Comparison parse_comparison(std::string_view text) {
  if (text == "strict" || text == ">") return Comparison::strict;
  if (text == "inclusive" || text == ">=") return Comparison::inclusive;
  throw std::invalid_argument("unknown comparison '" + std::string(text) + "'");
}

Threshold::Threshold(double phi, Comparison comparison) : phi_(phi), comparison_(comparison) {
  if (!(phi > 0.0 && phi < 1.0)) throw std::invalid_argument("threshold phi must lie in (0, 1)");
  // Continued-fraction convergents until the rational reproduces phi.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = phi;
  for (int iter = 0; iter < 64; ++iter) {
    const auto a = static_cast<std::int64_t>(std::floor(x));
    const std::int64_t p2 = a * p1 + p0;
    const std::int64_t q2 = a * q1 + q0;
    if (q2 > 1'000'000'000'000LL) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - phi) <= 1e-15 * phi) break;
    const double frac = x - static_cast<double>(a);
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  num_ = p1;
  den_ = q1;
}

bool Threshold::met(std::int64_t active_neighbors, std::int64_t degree) const {
  const Int128 lhs = Int128{active_neighbors} * den_;
  const Int128 rhs = Int128{num_} * degree;
  return comparison_ == Comparison::strict ? lhs > rhs : lhs >= rhs;
}

std::int64_t Threshold::min_active(std::int64_t degree) const {
  const Int128 prod = Int128{num_} * degree;
  const auto floor_div = static_cast<std::int64_t>(prod / den_);
  if (comparison_ == Comparison::strict) return floor_div + 1;
  return prod % den_ == 0 ? floor_div : floor_div + 1;
}

IllusionReport empirical_illusion(const Graph& g, const AttributeAssignment& a, const Threshold& threshold) {
  if (a.size() != g.node_count()) throw std::invalid_argument("assignment size does not match graph");
  IllusionReport report;
  report.phi = threshold.phi();
  report.comparison = threshold.comparison();
  report.node_count = g.node_count();
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const auto id = static_cast<NodeId>(v);
    const int k = g.degree(id);
    if (k == 0) {
      ++report.isolated;
      continue;
    }
    std::int64_t active = 0;
    for (NodeId u : g.neighbors(id)) active += a.active(u);
    if (threshold.met(active, k)) ++report.n_illusioned;
  }
  report.empirical_fraction =
      report.node_count ? static_cast<double>(report.n_illusioned) / static_cast<double>(report.node_count) : 0.0;
  return report;
}

Eigen::VectorXd neighbor_active_probs(const JointDegreeDistribution& joint, const AttributeProfile& profile) {
  const Eigen::VectorXd edge_mass = joint.matrix().rowwise().sum();  // q(k)
  const Eigen::VectorXd active_mass = joint.matrix() * profile.p_active_given_k;
  Eigen::VectorXd h(edge_mass.size());
  for (Eigen::Index c = 0; c < h.size(); ++c)
    h[c] = edge_mass[c] > 0 ? std::clamp(active_mass[c] / edge_mass[c], 0.0, 1.0)
                            : std::numeric_limits<double>::quiet_NaN();
  return h;
}

double neighbor_active_prob_given_k(const DegreeStats& stats, const JointDegreeDistribution& joint,
                                    const AttributeProfile& profile, int k) {
  const auto c = stats.class_of(k);
  if (!c) throw std::out_of_range("degree " + std::to_string(k) + " not observed");
  const double qk = joint.matrix().row(*c).sum();
  if (!(qk > 0)) throw std::domain_error("q(k) is zero");
  return std::clamp(joint.matrix().row(*c).dot(profile.p_active_given_k) / qk, 0.0, 1.0);
}

double global_neighbor_active_prob(const DegreeStats& stats, const JointDegreeDistribution& joint,
                                   const AttributeProfile& profile) {
  const Eigen::VectorXd h = neighbor_active_probs(joint, profile);
  double total = 0;
  for (Eigen::Index c = 0; c < h.size(); ++c)
    if (!std::isnan(h[c])) total += h[c] * stats.p()[c];
  return total;
}

double binomial_tail(std::int64_t k, double h, std::int64_t m) {
  if (m <= 0) return 1.0;
  if (m > k) return 0.0;
  if (h <= 0.0) return 0.0;
  if (h >= 1.0) return 1.0;

  const auto mode = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(static_cast<double>(k + 1) * h)), 0, k);
  const std::int64_t start = std::max(m, mode);
  const double log_start = std::lgamma(static_cast<double>(k + 1)) - std::lgamma(static_cast<double>(start + 1)) -
                           std::lgamma(static_cast<double>(k - start + 1)) + static_cast<double>(start) * std::log(h) +
                           static_cast<double>(k - start) * std::log1p(-h);
  const double odds = h / (1.0 - h);

  // Terms relative to the one at `start`, which is the largest in the range.
  double sum = 1.0;
  double term = 1.0;
  for (std::int64_t n = start; n < k; ++n) {
    term *= static_cast<double>(k - n) / static_cast<double>(n + 1) * odds;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  term = 1.0;
  for (std::int64_t n = start; n > m; --n) {
    term *= static_cast<double>(n) / static_cast<double>(k - n + 1) / odds;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return std::min(1.0, std::exp(log_start + std::log(sum)));
}

double illusion_from_neighbor_probs(const DegreeStats& stats, const Eigen::VectorXd& h, const Threshold& threshold,
                                    std::vector<DegreeModel>* per_k) {
  if (h.size() != stats.class_count()) throw std::invalid_argument("one probability per degree class expected");
  const auto classes = stats.classes();
  double total = 0;
  if (per_k) per_k->clear();
  for (Eigen::Index c = 0; c < h.size(); ++c) {
    const int k = classes[static_cast<std::size_t>(c)];
    if (k == 0) continue;
    const double exceed = binomial_tail(k, h[c], threshold.min_active(k));
    total += stats.p()[c] * exceed;
    if (per_k) per_k->push_back({k, stats.p()[c], h[c], exceed});
  }
  return total;
}

IllusionModel model_illusion(const DegreeStats& stats, const JointDegreeDistribution& joint,
                             const AttributeProfile& profile, const Threshold& threshold) {
  IllusionModel model;
  model.fraction = illusion_from_neighbor_probs(stats, neighbor_active_probs(joint, profile), threshold, &model.per_k);
  return model;
}

double gaussian_neighbor_active_prob(const DegreeStats& stats, const AttributeProfile& profile) {
  if (!(stats.sigma_k() > 0)) throw std::domain_error("degree variance is zero");
  if (!profile.rho_kx) throw std::domain_error("correlation undefined");
  const double slope = *profile.rho_kx * profile.sigma_x / stats.sigma_k();
  const auto classes = stats.classes();
  double h = 0;
  for (Eigen::Index c = 0; c < stats.class_count(); ++c) {
    const double k = classes[static_cast<std::size_t>(c)];
    h += stats.q()[c] * std::clamp(profile.p_active + slope * (k - stats.mean_degree()), 0.0, 1.0);
  }
  return h;
}

double gaussian_model_illusion(const DegreeStats& stats, const AttributeProfile& profile, const Threshold& threshold) {
  const double h = gaussian_neighbor_active_prob(stats, profile);
  return illusion_from_neighbor_probs(stats, Eigen::VectorXd::Constant(stats.class_count(), h), threshold);
}

IllusionReport illusion_report(const Graph& g, const AttributeAssignment& a, const Threshold& threshold) {
  IllusionReport report = empirical_illusion(g, a, threshold);
  const DegreeStats stats = degree_stats(g);
  const JointDegreeDistribution joint = joint_degree_distribution(g, stats);
  const AttributeProfile profile = activity_profile(g, stats, a);
  IllusionModel model = model_illusion(stats, joint, profile, threshold);
  report.model_fraction = model.fraction;
  report.per_k_model = std::move(model.per_k);
  if (profile.rho_kx && stats.sigma_k() > 0) report.gaussian_fraction = gaussian_model_illusion(stats, profile, threshold);
  return report;
}

CascadeResult run_threshold_cascade(const Graph& g, const AttributeAssignment& a, const Threshold& threshold) {
  if (a.size() != g.node_count()) throw std::invalid_argument("assignment size does not match graph");
  std::vector<std::uint8_t> state(a.states().begin(), a.states().end());
  CascadeResult result;
  result.active_per_round.push_back(a.active_count());
  std::size_t active_total = a.active_count();
  std::vector<NodeId> newly;

  while (true) {
    newly.clear();
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      if (state[v]) continue;
      const auto id = static_cast<NodeId>(v);
      const int k = g.degree(id);
      if (k == 0) continue;
      std::int64_t active = 0;
      for (NodeId u : g.neighbors(id)) active += state[static_cast<std::size_t>(u)];
      if (threshold.met(active, k)) newly.push_back(id);
    }
    if (newly.empty()) break;
    for (NodeId v : newly) state[static_cast<std::size_t>(v)] = 1;
    active_total += newly.size();
    ++result.rounds;
    result.active_per_round.push_back(active_total);
  }

  result.final_active_fraction =
      g.node_count() ? static_cast<double>(active_total) / static_cast<double>(g.node_count()) : 0.0;
  result.final_state = AttributeAssignment(std::move(state));
  return result;
}

}  // namespace majority
