#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "majority/attributes.hpp"
#include "majority/graph.hpp"
#include "majority/rng.hpp"

namespace majority {

struct TuneResult {
  double achieved = 0;
  double target = 0;
  double tolerance = 0;
  std::size_t iterations = 0;
  std::size_t accepted = 0;
  bool converged = false;
  double swap_acceptance_rate = 0;
};

struct RewireOptions {
  double tolerance = 0.01;
  /// Defaults to 100 x |E| proposals.
  std::optional<std::size_t> max_iters;
  Seed seed = 1;
  /// Called with the new r after every accepted swap.
  std::function<void(double)> on_accept;
};

struct RewireOutcome {
  Graph graph;
  TuneResult result;
};

/// Degree-preserving hill climb on r. Each proposal takes two random edges
/// (a,b),(c,d), evaluates both rewirings (a,c),(b,d) and (a,d),(b,c), and keeps
/// the one that brings r closest to the target, provided the result is still
/// simple and strictly closer. Stops within tolerance or after max_iters.
///
/// Throws std::domain_error for graphs where r is undefined, and
/// std::invalid_argument for a non-positive tolerance.
RewireOutcome rewire_to_assortativity(const Graph& g, double target_r, const RewireOptions& options);

struct SwapOptions {
  double tolerance = 0.01;
  /// Defaults to 100 x N proposals.
  std::optional<std::size_t> max_iters;
  Seed seed = 1;
  std::function<void(double)> on_accept;
};

struct SwapOutcome {
  AttributeAssignment assignment;
  TuneResult result;
};

/// Exchanges the states of a random active and a random inactive node when
/// that moves rho_kx strictly toward the target. Stops within tolerance, after
/// max_iters, or once N consecutive proposals have all been rejected.
SwapOutcome swap_attributes_to_rho(const Graph& g, AttributeAssignment a, double target_rho,
                                   const SwapOptions& options);

struct RandomizeOutcome {
  Graph graph;
  std::size_t accepted = 0;
  std::size_t attempts = 0;
  std::optional<double> initial_r;
  std::optional<double> final_r;
};

/// Degree-preserving edge swaps that keep r within tolerance of its starting
/// value. Stops after n_accepted swaps or max_attempts proposals (default
/// max(100 x n_accepted, 100 x |E|)); may return fewer accepted swaps than
/// requested.
RandomizeOutcome randomize_at_fixed_r(const Graph& g, double tolerance, std::size_t n_accepted, Seed seed,
                                      std::optional<std::size_t> max_attempts = std::nullopt);

}  // namespace majority
