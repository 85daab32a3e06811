#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace majority {

using NodeId = std::int32_t;
/// Node identifier as it appears in an input file.
using Label = std::int64_t;

using LabeledEdge = std::pair<Label, Label>;
using Edge = std::pair<NodeId, NodeId>;

/// What build_graph had to discard to produce a simple graph.
struct BuildReport {
  std::size_t input_edges = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;

  bool operator==(const BuildReport&) const = default;
};

/// Undirected simple graph, immutable once built.
///
/// Nodes are dense ids 0..N-1. labels()[v] is the original identifier of v;
/// labels are strictly increasing in v, so label lookups are binary searches.
/// Adjacency is stored CSR-style with each neighbor list sorted.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  int degree(NodeId v) const { return degree_[static_cast<std::size_t>(v)]; }
  std::span<const int> degrees() const { return degree_; }
  int max_degree() const;

  std::span<const NodeId> neighbors(NodeId v) const {
    const auto i = static_cast<std::size_t>(v);
    return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  /// Edges as (u, v) with u < v, sorted ascending.
  std::span<const Edge> edges() const { return edges_; }

  bool has_edge(NodeId u, NodeId v) const;

  Label label(NodeId v) const { return labels_[static_cast<std::size_t>(v)]; }
  std::span<const Label> labels() const { return labels_; }
  std::optional<NodeId> find(Label label) const;

  bool operator==(const Graph&) const = default;

  /// Builds from dense ids with the given labels (one per node, strictly
  /// increasing). Self-loops and duplicate edges are dropped and counted.
  static Graph from_dense(std::vector<Label> labels, std::span<const Edge> edges,
                          BuildReport* report = nullptr);
  /// Same, with labels 0..node_count-1.
  static Graph from_dense(std::size_t node_count, std::span<const Edge> edges,
                          BuildReport* report = nullptr);

 private:
  std::vector<Label> labels_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<int> degree_;
  std::vector<Edge> edges_;
};

struct BuiltGraph {
  Graph graph;
  BuildReport report;
};

/// Builds a simple graph from labeled edges. Labels are remapped to dense ids
/// in ascending label order. extra_nodes declares nodes that may carry no
/// edge (e.g. isolated nodes listed in a GML file).
///
/// Throws std::invalid_argument("empty graph") when there are no edges and
/// no declared nodes, and for negative labels.
BuiltGraph build_graph(std::span<const LabeledEdge> edges,
                       std::span<const Label> extra_nodes = {});

/// Multiset of degrees, sorted ascending.
std::vector<int> degree_sequence(const Graph& g);

}  // namespace majority
