#include "majority/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace majority {

int Graph::max_degree() const {
  return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::optional<NodeId> Graph::find(Label label) const {
  const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<NodeId>(it - labels_.begin());
}

Graph Graph::from_dense(std::vector<Label> labels, std::span<const Edge> edges,
                        BuildReport* report) {
  const std::size_t n = labels.size();
  BuildReport local;
  local.input_edges = edges.size();

  std::vector<Edge> simple;
  simple.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
      throw std::out_of_range("edge endpoint outside node range");
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    simple.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(simple.begin(), simple.end());
  const auto last = std::unique(simple.begin(), simple.end());
  local.duplicates_dropped = static_cast<std::size_t>(simple.end() - last);
  simple.erase(last, simple.end());

  Graph g;
  g.labels_ = std::move(labels);
  g.degree_.assign(n, 0);
  for (auto [u, v] : simple) {
    ++g.degree_[static_cast<std::size_t>(u)];
    ++g.degree_[static_cast<std::size_t>(v)];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    g.offsets_[i + 1] = g.offsets_[i] + static_cast<std::size_t>(g.degree_[i]);
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : simple) g.adjacency_[cursor[static_cast<std::size_t>(u)]++] = v;
  for (auto [u, v] : simple) g.adjacency_[cursor[static_cast<std::size_t>(v)]++] = u;
  for (std::size_t i = 0; i < n; ++i)
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
  g.edges_ = std::move(simple);

  if (report) *report = local;
  return g;
}

Graph Graph::from_dense(std::size_t node_count, std::span<const Edge> edges, BuildReport* report) {
  std::vector<Label> labels(node_count);
  for (std::size_t i = 0; i < node_count; ++i) labels[i] = static_cast<Label>(i);
  return from_dense(std::move(labels), edges, report);
}

BuiltGraph build_graph(std::span<const LabeledEdge> edges, std::span<const Label> extra_nodes) {
  if (edges.empty() && extra_nodes.empty()) throw std::invalid_argument("empty graph");

  std::vector<Label> labels(extra_nodes.begin(), extra_nodes.end());
  labels.reserve(labels.size() + 2 * edges.size());
  for (auto [u, v] : edges) {
    labels.push_back(u);
    labels.push_back(v);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.front() < 0) throw std::invalid_argument("negative node id");

  auto dense = [&](Label l) {
    return static_cast<NodeId>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
  };
  std::vector<Edge> mapped;
  mapped.reserve(edges.size());
  for (auto [u, v] : edges) mapped.emplace_back(dense(u), dense(v));

  BuiltGraph out;
  out.graph = Graph::from_dense(std::move(labels), mapped, &out.report);
  return out;
}

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> seq(g.degrees().begin(), g.degrees().end());
  std::sort(seq.begin(), seq.end());
  return seq;
}

}  // namespace majority
