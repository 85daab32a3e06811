#include "majority/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "majority/rng.hpp"

namespace majority {

namespace {

using Wide = Int128;

double ratio(Wide num, Wide den) { return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den)); }

}  // namespace

DegreeMoments DegreeMoments::of(std::span<const int> degrees) {
  DegreeMoments m;
  m.nodes = static_cast<std::int64_t>(degrees.size());
  for (int k : degrees) {
    const std::int64_t kk = k;
    m.s1 += kk;
    m.s2 += kk * kk;
    m.s3 += kk * kk * kk;
  }
  return m;
}

std::optional<Eigen::Index> DegreeStats::class_of(int k) const {
  const auto it = std::lower_bound(classes_.begin(), classes_.end(), k);
  if (it == classes_.end() || *it != k) return std::nullopt;
  return static_cast<Eigen::Index>(it - classes_.begin());
}

double DegreeStats::p(int k) const {
  const auto c = class_of(k);
  if (!c) throw std::out_of_range("degree " + std::to_string(k) + " not observed");
  return p_[*c];
}

double DegreeStats::q(int k) const {
  const auto c = class_of(k);
  if (!c) throw std::out_of_range("degree " + std::to_string(k) + " not observed");
  return q_[*c];
}

std::size_t DegreeStats::isolated_count() const {
  return (!classes_.empty() && classes_.front() == 0) ? static_cast<std::size_t>(node_counts_.front()) : 0;
}

DegreeStats degree_stats(const Graph& g) {
  if (g.node_count() == 0) throw std::invalid_argument("empty graph");
  DegreeStats s;
  const auto degrees = g.degrees();
  s.classes_.assign(degrees.begin(), degrees.end());
  std::sort(s.classes_.begin(), s.classes_.end());
  s.classes_.erase(std::unique(s.classes_.begin(), s.classes_.end()), s.classes_.end());

  s.node_counts_.assign(s.classes_.size(), 0);
  s.node_class_.resize(degrees.size());
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    const Eigen::Index c = *s.class_of(degrees[v]);
    s.node_class_[v] = c;
    ++s.node_counts_[static_cast<std::size_t>(c)];
  }

  s.moments_ = DegreeMoments::of(degrees);
  const auto& m = s.moments_;
  const auto classes = static_cast<Eigen::Index>(s.classes_.size());
  s.p_.resize(classes);
  s.q_.resize(classes);
  for (Eigen::Index c = 0; c < classes; ++c) {
    const std::int64_t count = s.node_counts_[static_cast<std::size_t>(c)];
    s.p_[c] = static_cast<double>(count) / static_cast<double>(m.nodes);
    s.q_[c] = m.s1 > 0 ? ratio(Wide{count} * s.classes_[static_cast<std::size_t>(c)], m.s1) : 0.0;
  }

  s.mean_degree_ = ratio(m.s1, m.nodes);
  const Wide var_k_num = Wide{m.nodes} * m.s2 - Wide{m.s1} * m.s1;
  s.sigma_k_ = std::sqrt(ratio(var_k_num, Wide{m.nodes} * m.nodes));
  if (m.s1 > 0) {
    s.mean_q_degree_ = ratio(m.s2, m.s1);
    const Wide var_q_num = Wide{m.s1} * m.s3 - Wide{m.s2} * m.s2;
    s.sigma_q_ = std::sqrt(ratio(var_q_num, Wide{m.s1} * m.s1));
  }
  return s;
}

double JointDegreeDistribution::operator()(int k, int k_prime) const {
  auto index = [&](int d) {
    const auto it = std::lower_bound(classes_.begin(), classes_.end(), d);
    if (it == classes_.end() || *it != d) throw std::out_of_range("degree " + std::to_string(d) + " not observed");
    return static_cast<Eigen::Index>(it - classes_.begin());
  };
  return e_(index(k), index(k_prime));
}

JointDegreeDistribution joint_degree_distribution(const Graph& g, const DegreeStats& stats) {
  JointDegreeDistribution j;
  j.classes_.assign(stats.classes().begin(), stats.classes().end());
  const Eigen::Index n = stats.class_count();
  j.counts_ = CountMatrix::Zero(n, n);
  const auto node_class = stats.node_class();
  for (auto [u, v] : g.edges()) {
    const Eigen::Index a = node_class[static_cast<std::size_t>(u)];
    const Eigen::Index b = node_class[static_cast<std::size_t>(v)];
    ++j.counts_(a, b);
    ++j.counts_(b, a);
  }
  j.edge_ends_ = 2 * static_cast<std::int64_t>(g.edge_count());
  j.e_ = j.edge_ends_ > 0 ? Eigen::MatrixXd(j.counts_.cast<double>() / static_cast<double>(j.edge_ends_))
                          : Eigen::MatrixXd::Zero(n, n);
  return j;
}

JointDegreeDistribution joint_degree_distribution(const Graph& g) {
  return joint_degree_distribution(g, degree_stats(g));
}

bool assortativity_defined(const DegreeMoments& m) {
  return m.s1 > 0 && Wide{m.s1} * m.s3 - Wide{m.s2} * m.s2 > 0;
}

double assortativity_from_sums(const DegreeMoments& m, std::int64_t edge_degree_product_sum) {
  if (!assortativity_defined(m)) throw std::domain_error("assortativity undefined");
  // With 2M = S1: sum k k' e = 2T / S1, <k>_q = S2 / S1, sigma_q^2 = (S1 S3 - S2^2) / S1^2,
  // so r = (2 T S1 - S2^2) / (S1 S3 - S2^2).
  const Wide num = Wide{2} * edge_degree_product_sum * m.s1 - Wide{m.s2} * m.s2;
  const Wide den = Wide{m.s1} * m.s3 - Wide{m.s2} * m.s2;
  return ratio(num, den);
}

double assortativity(const DegreeStats& stats, const JointDegreeDistribution& joint) {
  const auto classes = stats.classes();
  const auto& counts = joint.counts();
  Wide directed = 0;  // sum over edge ends of k k'
  for (Eigen::Index a = 0; a < counts.rows(); ++a)
    for (Eigen::Index b = 0; b < counts.cols(); ++b)
      if (counts(a, b) != 0)
        directed += Wide{counts(a, b)} * classes[static_cast<std::size_t>(a)] * classes[static_cast<std::size_t>(b)];
  return assortativity_from_sums(stats.moments(), static_cast<std::int64_t>(directed / 2));
}

double assortativity(const Graph& g) {
  const DegreeStats stats = degree_stats(g);
  return assortativity(stats, joint_degree_distribution(g, stats));
}

}  // namespace majority
