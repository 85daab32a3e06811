#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "majority/graph.hpp"
#include "majority/rng.hpp"
#include "majority/statistics.hpp"

namespace majority {

/// Binary node states; x = 1 marks an active node.
class AttributeAssignment {
 public:
  AttributeAssignment() = default;
  explicit AttributeAssignment(std::vector<std::uint8_t> states);
  static AttributeAssignment from_active(std::size_t node_count, std::span<const NodeId> active);

  std::size_t size() const { return states_.size(); }
  std::size_t active_count() const { return active_count_; }
  bool active(NodeId v) const { return states_[static_cast<std::size_t>(v)] != 0; }
  std::span<const std::uint8_t> states() const { return states_; }

  /// Exchanges the states of two nodes; active_count is unchanged.
  void swap_states(NodeId a, NodeId b) {
    std::swap(states_[static_cast<std::size_t>(a)], states_[static_cast<std::size_t>(b)]);
  }

  bool operator==(const AttributeAssignment&) const = default;

 private:
  std::vector<std::uint8_t> states_;
  std::size_t active_count_ = 0;
};

/// round(fraction * N) nodes, chosen uniformly without replacement.
/// Throws std::invalid_argument if that count is 0 or N.
AttributeAssignment activate_random(const Graph& g, double fraction, Seed seed);

/// round(fraction * N) highest-degree nodes (ties broken by node id): the
/// assignment with the largest attainable degree-attribute correlation.
AttributeAssignment activate_top_degree(const Graph& g, double fraction);

std::size_t active_target_count(std::size_t node_count, double fraction);

/// Joint statistics of degree and attribute.
struct AttributeProfile {
  std::vector<int> classes;            ///< degree classes, ascending
  Eigen::VectorXd p_active_given_k;    ///< P(x=1|k), aligned with classes
  double p_active = 0;                 ///< P(x=1)
  double sigma_x = 0;
  double sigma_k = 0;
  double mean_degree = 0;
  double mean_degree_active = 0;       ///< <k>_{x=1}; 0 when nothing is active
  std::optional<double> rho_kx;        ///< unset when the correlation is undefined

  /// Throws std::out_of_range for a degree that no node has.
  double p_active_given(int k) const;
};

/// Throws std::domain_error("correlation undefined") when all or no nodes are
/// active, or when the graph is regular. On success rho_kx is always set.
AttributeProfile attribute_profile(const Graph& g, const DegreeStats& stats, const AttributeAssignment& a);
AttributeProfile attribute_profile(const Graph& g, const AttributeAssignment& a);

/// Same statistics without the correlation requirement: P(x=1|k) is defined
/// for any assignment, so the mean-field model can run on regular graphs.
/// rho_kx is left unset when undefined.
AttributeProfile activity_profile(const Graph& g, const DegreeStats& stats, const AttributeAssignment& a);

/// rho_kx from exact sums: active_degree_sum is the total degree of active nodes.
double degree_attribute_correlation(const DegreeMoments& moments, std::int64_t active_count,
                                    std::int64_t active_degree_sum);
bool degree_attribute_correlation_defined(const DegreeMoments& moments, std::int64_t active_count);

struct ParadoxMetrics {
  double neighbor_active_prob = 0;  ///< Q(x=1)
  double node_active_prob = 0;      ///< P(x=1)
  double gfp_strength = 0;          ///< Q(x=1) - P(x=1)
  double fp_strength = 0;           ///< <k>_q - <k>
};

/// Q(x=1) is the fraction of directed edge ends that land on an active node.
ParadoxMetrics paradox_metrics(const Graph& g, const AttributeAssignment& a);

}  // namespace majority
