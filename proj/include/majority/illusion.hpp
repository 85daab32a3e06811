#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "majority/attributes.hpp"
#include "majority/graph.hpp"
#include "majority/statistics.hpp"

namespace majority {

/// strict: more than phi*k active neighbors; inclusive: at least phi*k.
enum class Comparison { strict, inclusive };

std::string_view to_string(Comparison c);
/// Accepts "strict" / "inclusive" (also ">" / ">="); throws std::invalid_argument.
Comparison parse_comparison(std::string_view text);

/// Activation threshold phi in (0, 1) with its comparison rule.
///
/// phi is held as an exact rational so that boundary cases (e.g. exactly half
/// of the neighbors) are decided in integer arithmetic: for phi = 1/2 the
/// strict test is 2 n > k.
class Threshold {
 public:
  explicit Threshold(double phi = 0.5, Comparison comparison = Comparison::strict);

  double phi() const { return phi_; }
  Comparison comparison() const { return comparison_; }

  bool met(std::int64_t active_neighbors, std::int64_t degree) const;
  /// Smallest active-neighbor count that meets the threshold at this degree.
  std::int64_t min_active(std::int64_t degree) const;

 private:
  double phi_;
  Comparison comparison_;
  std::int64_t num_;
  std::int64_t den_;
};

struct DegreeModel {
  int k = 0;
  double p_k = 0;
  double h_k = 0;         ///< P(x'=1|k)
  double p_exceed = 0;    ///< P_{>phi}(k)
};

struct IllusionReport {
  double phi = 0.5;
  Comparison comparison = Comparison::strict;
  std::size_t node_count = 0;
  std::size_t isolated = 0;
  std::size_t n_illusioned = 0;
  double empirical_fraction = 0;
  std::optional<double> model_fraction;
  std::optional<double> gaussian_fraction;
  std::vector<DegreeModel> per_k_model;
};

/// Counts nodes whose active-neighbor count meets the threshold. Every node is
/// in the denominator; isolated nodes are never counted as illusioned.
IllusionReport empirical_illusion(const Graph& g, const AttributeAssignment& a, const Threshold& threshold);

/// P(x'=1|k) = sum_k' P(x=1|k') e(k,k') / q(k) for every degree class; NaN for
/// classes with q(k) = 0.
Eigen::VectorXd neighbor_active_probs(const JointDegreeDistribution& joint, const AttributeProfile& profile);

/// Single-class version; throws std::out_of_range for unobserved k and
/// std::domain_error when q(k) = 0.
double neighbor_active_prob_given_k(const DegreeStats& stats, const JointDegreeDistribution& joint,
                                    const AttributeProfile& profile, int k);

/// P(x'=1) = sum_k P(x'=1|k) p(k), over nodes with at least one neighbor.
double global_neighbor_active_prob(const DegreeStats& stats, const JointDegreeDistribution& joint,
                                   const AttributeProfile& profile);

/// P[Binomial(k, h) >= m], by term recurrence outward from the mode.
double binomial_tail(std::int64_t k, double h, std::int64_t m);

/// sum_k p(k) P[Binomial(k, h_k) meets threshold], with h indexed by degree
/// class. Degree-0 classes contribute nothing.
double illusion_from_neighbor_probs(const DegreeStats& stats, const Eigen::VectorXd& h, const Threshold& threshold,
                                    std::vector<DegreeModel>* per_k = nullptr);

struct IllusionModel {
  double fraction = 0;
  std::vector<DegreeModel> per_k;
};

/// Mean-field estimate: each of a degree-k node's neighbors is independently
/// active with probability P(x'=1|k).
IllusionModel model_illusion(const DegreeStats& stats, const JointDegreeDistribution& joint,
                             const AttributeProfile& profile, const Threshold& threshold);

/// Neighbor-activity probability under the bivariate-normal approximation:
/// P(x=1|k') = <x> + rho sigma_x / sigma_k (k' - <k>), clamped to [0, 1], and
/// averaged over the neighbor degree distribution q(k') assuming uncorrelated
/// mixing. The result is the same for every k.
double gaussian_neighbor_active_prob(const DegreeStats& stats, const AttributeProfile& profile);

/// Illusion fraction with the Gaussian neighbor-activity probability.
/// Throws std::domain_error when sigma_k = 0.
double gaussian_model_illusion(const DegreeStats& stats, const AttributeProfile& profile, const Threshold& threshold);

/// Empirical fraction plus model and Gaussian estimates where they are defined.
IllusionReport illusion_report(const Graph& g, const AttributeAssignment& a, const Threshold& threshold);

struct CascadeResult {
  std::size_t rounds = 0;
  std::vector<std::size_t> active_per_round;  ///< [0] is the seed set
  double final_active_fraction = 0;
  AttributeAssignment final_state;
};

/// Synchronous threshold dynamics: each round, every inactive node activates
/// if its neighbors' states from the previous round meet the threshold.
/// Stops after the first round that activates nobody.
CascadeResult run_threshold_cascade(const Graph& g, const AttributeAssignment& a, const Threshold& threshold);

}  // namespace majority
