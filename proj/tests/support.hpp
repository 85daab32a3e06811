#pragma once

// Small fixture graphs and brute-force reference computations shared by the
// tests. The references deliberately avoid the library's statistics code.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "majority/attributes.hpp"
#include "majority/graph.hpp"

namespace fixtures {

using majority::AttributeAssignment;
using majority::Edge;
using majority::Graph;
using majority::NodeId;

inline Graph make(std::size_t n, std::vector<Edge> edges) { return Graph::from_dense(n, edges); }

/// Node 0 is the hub.
inline Graph star(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return make(static_cast<std::size_t>(leaves) + 1, e);
}

inline Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return make(static_cast<std::size_t>(n), e);
}

inline Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make(static_cast<std::size_t>(n), e);
}

inline Graph complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return make(static_cast<std::size_t>(n), e);
}

/// Independent G(n, p) by direct coin flips over all pairs.
inline Graph random_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return make(static_cast<std::size_t>(n), e);
}

inline AttributeAssignment random_assignment(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::uint8_t> x(n);
  for (auto& v : x) v = coin(rng) ? 1 : 0;
  return AttributeAssignment(std::move(x));
}

/// 14 nodes: hubs 0, 1, 2 form a triangle; nodes 3..13 form an 11-cycle and
/// each is also linked to two hubs. With the hubs active every other node has
/// exactly half of its neighbors active.
inline Graph fig1_analogue() {
  std::vector<Edge> e{{0, 1}, {0, 2}, {1, 2}};
  for (int j = 0; j < 11; ++j) {
    const int v = 3 + j;
    e.emplace_back(v, 3 + (j + 1) % 11);
    e.emplace_back(j % 3, v);
    e.emplace_back((j + 1) % 3, v);
  }
  return make(14, e);
}

inline AttributeAssignment fig1_hubs_active() { return AttributeAssignment::from_active(14, std::vector<NodeId>{0, 1, 2}); }

/// Three cycle nodes that are pairwise non-adjacent on the cycle.
inline AttributeAssignment fig1_recolored() { return AttributeAssignment::from_active(14, std::vector<NodeId>{3, 7, 11}); }

}  // namespace fixtures

namespace oracle {

using majority::AttributeAssignment;
using majority::Graph;
using majority::NodeId;
using Quad = boost::multiprecision::cpp_bin_float_50;

inline double pearson(const std::vector<long double>& x, const std::vector<long double>& y) {
  const auto n = static_cast<long double>(x.size());
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

/// Pearson correlation of degrees across both orientations of every edge.
inline double assortativity(const Graph& g) {
  std::vector<long double> a, b;
  for (auto [u, v] : g.edges()) {
    a.push_back(g.degree(u));
    b.push_back(g.degree(v));
    a.push_back(g.degree(v));
    b.push_back(g.degree(u));
  }
  return pearson(a, b);
}

/// Pearson correlation of (degree, state) over nodes.
inline double rho(const Graph& g, const AttributeAssignment& x) {
  std::vector<long double> k, s;
  for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v) {
    k.push_back(g.degree(v));
    s.push_back(x.active(v) ? 1 : 0);
  }
  return pearson(k, s);
}

inline int active_neighbors(const Graph& g, const AttributeAssignment& x, NodeId v) {
  int n = 0;
  for (NodeId w : g.neighbors(v)) n += x.active(w);
  return n;
}

/// Nodes with active/degree above num/den (or at least, when inclusive).
inline std::size_t illusioned(const Graph& g, const AttributeAssignment& x, int num, int den, bool inclusive) {
  std::size_t count = 0;
  for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v) {
    const int k = g.degree(v);
    if (k == 0) continue;
    const long lhs = static_cast<long>(active_neighbors(g, x, v)) * den;
    const long rhs = static_cast<long>(num) * k;
    count += inclusive ? lhs >= rhs : lhs > rhs;
  }
  return count;
}

/// P(x=1 | degree) by counting nodes.
inline std::map<int, long double> active_given_degree(const Graph& g, const AttributeAssignment& x) {
  std::map<int, std::pair<long, long>> tally;
  for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v) {
    auto& t = tally[g.degree(v)];
    t.first += x.active(v);
    ++t.second;
  }
  std::map<int, long double> out;
  for (auto& [k, t] : tally) out[k] = static_cast<long double>(t.first) / t.second;
  return out;
}

/// Mean of P(x=1|k') over the edge ends leaving degree-k nodes.
inline std::map<int, long double> neighbor_active_given_degree(const Graph& g, const AttributeAssignment& x) {
  const auto pk = active_given_degree(g, x);
  std::map<int, std::pair<long double, long>> acc;
  for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v)
    for (NodeId w : g.neighbors(v)) {
      auto& a = acc[g.degree(v)];
      a.first += pk.at(g.degree(w));
      ++a.second;
    }
  std::map<int, long double> out;
  for (auto& [k, a] : acc) out[k] = a.first / a.second;
  return out;
}

/// P[#active > phi k] (or >=) for k independent neighbors, each active with
/// probability h, by summing over all 2^k neighbor states.
inline Quad exhaustive_tail(int k, const Quad& h, int num, int den, bool inclusive) {
  Quad total = 0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    const int n = __builtin_popcount(mask);
    const long lhs = static_cast<long>(n) * den, rhs = static_cast<long>(num) * k;
    if (!(inclusive ? lhs >= rhs : lhs > rhs)) continue;
    Quad term = 1;
    for (int i = 0; i < k; ++i) term *= (mask >> i & 1u) ? h : Quad(1) - h;
    total += term;
  }
  return total;
}

/// Sum over nodes of the exhaustive tail at the node's degree, divided by N.
inline double model_fraction(const Graph& g, const std::map<int, Quad>& h, int num, int den, bool inclusive) {
  std::map<int, Quad> tail;
  Quad total = 0;
  for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v) {
    const int k = g.degree(v);
    if (k == 0) continue;
    auto it = tail.find(k);
    if (it == tail.end()) it = tail.emplace(k, exhaustive_tail(k, h.at(k), num, den, inclusive)).first;
    total += it->second;
  }
  return static_cast<double>(total / g.node_count());
}

inline std::vector<int> sorted_degrees(const Graph& g) {
  std::vector<int> d(g.degrees().begin(), g.degrees().end());
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace oracle
