#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "majority/attributes.hpp"
#include "majority/graph.hpp"

namespace majority {

/// Edges as read from a file, before any simplification.
struct RawNetwork {
  std::vector<LabeledEdge> edges;
  /// Nodes declared independently of edges (GML node blocks, or 0..N-1 from
  /// an edge-list "# nodes N" header).
  std::vector<Label> declared_nodes;
  bool directed = false;
};

struct EdgeListColumns {
  std::size_t source = 0;
  std::size_t target = 1;
};

/// SNAP-style edge list: one edge per line, whitespace- (or comma-) separated
/// tokens, '#' comment lines ignored. A "# nodes N" comment declares nodes
/// 0..N-1 so isolated nodes survive a write/read cycle.
/// Throws std::runtime_error naming the line number on malformed input.
RawNetwork read_edge_list(std::istream& in, EdgeListColumns columns = {});

/// Writes "# nodes N" followed by the edges as label pairs, ascending.
void write_edge_list(std::ostream& out, const Graph& g);

/// Minimal GML reader: the "directed" flag, node ids and edge source/target.
/// Other keys and nested lists are skipped.
RawNetwork read_gml(std::istream& in);

Graph read_graph_file(const std::filesystem::path& path);
void write_graph_file(const std::filesystem::path& path, const Graph& g);

/// "node_id value" per line, node ids as graph labels in ascending order.
void write_assignment(std::ostream& out, const Graph& g, const AttributeAssignment& a);
/// Every node of g must appear exactly once.
AttributeAssignment read_assignment(std::istream& in, const Graph& g);

/// Keeps (u, v) iff (v, u) is also present; each reciprocal pair once, as
/// (min, max), sorted.
std::vector<LabeledEdge> mutualize(const std::vector<LabeledEdge>& directed);

/// Induced subgraph on the largest connected component. Ties go to the
/// component containing the smallest label.
Graph largest_component(const Graph& g);

enum class DatasetFormat { edge_list, gml };
enum class PreprocessStep { mutualize, largest_component, simplify };

std::string to_string(PreprocessStep step);
std::string to_string(DatasetFormat format);

struct DatasetSpec {
  std::string name;
  std::filesystem::path path;
  DatasetFormat format = DatasetFormat::edge_list;
  bool directed = false;
  std::vector<PreprocessStep> preprocessing;
  EdgeListColumns columns;

  /// Throws std::invalid_argument if mutualize is requested on an undirected
  /// dataset.
  void validate() const;
};

struct ProvenanceStep {
  std::string step;
  std::size_t nodes = 0;
  std::size_t edges = 0;
};

struct ProvenanceReport {
  std::string name;
  std::string path;
  std::vector<ProvenanceStep> steps;
  BuildReport build;
};

struct LoadedDataset {
  Graph graph;
  ProvenanceReport provenance;
};

/// Environment variable naming the dataset root directory.
inline constexpr const char* kDataDirEnv = "MAJORITY_DATA_DIR";

/// Relative paths resolve against data_root, else $MAJORITY_DATA_DIR, else
/// the working directory.
std::filesystem::path resolve_data_path(const std::filesystem::path& path,
                                        const std::optional<std::filesystem::path>& data_root = std::nullopt);

/// Parses the file and applies the preprocessing steps in order. A graph is
/// always simplified before graph-level steps and at the end.
LoadedDataset load_dataset(const DatasetSpec& spec,
                           const std::optional<std::filesystem::path>& data_root = std::nullopt);

}  // namespace majority
