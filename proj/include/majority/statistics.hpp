#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "majority/graph.hpp"

namespace majority {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Exact power sums of the degree sequence: S_j = sum_v k_v^j.
struct DegreeMoments {
  std::int64_t nodes = 0;
  std::int64_t s1 = 0;
  std::int64_t s2 = 0;
  std::int64_t s3 = 0;

  static DegreeMoments of(std::span<const int> degrees);
};

/// Node and neighbor degree distributions over the distinct degrees ("degree
/// classes") of a graph.
///
/// p(k) is the fraction of nodes with degree k; q(k) = k p(k) / <k> is the
/// fraction of edge ends attached to such nodes. Vectors are indexed by class,
/// classes() lists the degrees ascending. Lookup of an unobserved degree
/// throws std::out_of_range.
class DegreeStats {
 public:
  std::span<const int> classes() const { return classes_; }
  Eigen::Index class_count() const { return static_cast<Eigen::Index>(classes_.size()); }
  std::optional<Eigen::Index> class_of(int k) const;

  const Eigen::VectorXd& p() const { return p_; }
  const Eigen::VectorXd& q() const { return q_; }
  std::span<const std::int64_t> node_counts() const { return node_counts_; }
  double p(int k) const;
  double q(int k) const;

  /// Class index of every node.
  std::span<const Eigen::Index> node_class() const { return node_class_; }

  const DegreeMoments& moments() const { return moments_; }
  std::size_t node_count() const { return static_cast<std::size_t>(moments_.nodes); }
  std::size_t edge_count() const { return static_cast<std::size_t>(moments_.s1 / 2); }
  std::size_t isolated_count() const;

  double mean_degree() const { return mean_degree_; }
  double sigma_k() const { return sigma_k_; }
  double mean_q_degree() const { return mean_q_degree_; }
  double sigma_q() const { return sigma_q_; }

  /// <k>_q - <k>, the friendship-paradox strength.
  double paradox_strength() const { return mean_q_degree_ - mean_degree_; }

  friend DegreeStats degree_stats(const Graph& g);

 private:
  std::vector<int> classes_;
  std::vector<std::int64_t> node_counts_;
  std::vector<Eigen::Index> node_class_;
  Eigen::VectorXd p_;
  Eigen::VectorXd q_;
  DegreeMoments moments_;
  double mean_degree_ = 0;
  double sigma_k_ = 0;
  double mean_q_degree_ = 0;
  double sigma_q_ = 0;
};

DegreeStats degree_stats(const Graph& g);

/// e(k, k') over directed edge ends: every undirected edge contributes once in
/// each orientation, so the matrix is symmetric and its row sums are q(k).
/// Rows and columns are indexed by the degree classes of the graph's
/// DegreeStats.
class JointDegreeDistribution {
 public:
  std::span<const int> classes() const { return classes_; }
  const CountMatrix& counts() const { return counts_; }
  const Eigen::MatrixXd& matrix() const { return e_; }
  /// Throws std::out_of_range for unobserved degrees.
  double operator()(int k, int k_prime) const;
  std::int64_t edge_ends() const { return edge_ends_; }

  friend JointDegreeDistribution joint_degree_distribution(const Graph& g, const DegreeStats& stats);

 private:
  std::vector<int> classes_;
  CountMatrix counts_;
  Eigen::MatrixXd e_;
  std::int64_t edge_ends_ = 0;
};

JointDegreeDistribution joint_degree_distribution(const Graph& g, const DegreeStats& stats);
JointDegreeDistribution joint_degree_distribution(const Graph& g);

/// Degree assortativity r = (sum k k' e(k,k') - <k>_q^2) / sigma_q^2.
///
/// Evaluated from exact integer sums, so it is reproducible to the last bit.
/// Throws std::domain_error("assortativity undefined") when sigma_q = 0.
double assortativity(const DegreeStats& stats, const JointDegreeDistribution& joint);
double assortativity(const Graph& g);

/// The same coefficient from the degree moments and the edge sum
/// sum_{(u,v) in E} k_u k_v. Used by the rewiring procedures, which keep that
/// sum up to date incrementally.
double assortativity_from_sums(const DegreeMoments& moments, std::int64_t edge_degree_product_sum);
bool assortativity_defined(const DegreeMoments& moments);

}  // namespace majority
