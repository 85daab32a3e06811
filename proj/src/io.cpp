#include "majority/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace majority {

namespace {

std::runtime_error parse_error(std::size_t line, const std::string& what) {
  return std::runtime_error("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ',' || line[i] == '"')) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ',' && line[i] != '"') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::optional<Label> parse_label(std::string_view token) {
  Label value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) return std::nullopt;
  return value;
}

}  // namespace

RawNetwork read_edge_list(std::istream& in, EdgeListColumns columns) {
  RawNetwork net;
  std::string line;
  std::size_t line_no = 0;
  const std::size_t needed = std::max(columns.source, columns.target) + 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (view[first] == '#') {
      const auto tokens = split_tokens(view.substr(first + 1));
      if (tokens.size() == 2 && tokens[0] == "nodes") {
        const auto n = parse_label(tokens[1]);
        if (!n) throw parse_error(line_no, "bad node count");
        net.declared_nodes.resize(static_cast<std::size_t>(*n));
        for (Label i = 0; i < *n; ++i) net.declared_nodes[static_cast<std::size_t>(i)] = i;
      }
      continue;
    }
    const auto tokens = split_tokens(view);
    if (tokens.size() < needed) throw parse_error(line_no, "expected at least " + std::to_string(needed) + " fields");
    const auto u = parse_label(tokens[columns.source]);
    const auto v = parse_label(tokens[columns.target]);
    if (!u || !v) {
      if (net.edges.empty() && !parse_label(tokens[0])) continue;  // header row
      throw parse_error(line_no, "node ids must be non-negative integers");
    }
    net.edges.emplace_back(*u, *v);
  }
  return net;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.node_count() << '\n';
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

RawNetwork read_gml(std::istream& in) {
  // Tokenize: brackets, quoted strings and bare words, tracking line numbers.
  struct Token {
    std::string text;
    std::size_t line;
    bool quoted;
  };
  std::vector<Token> tokens;
  std::size_t line = 1;
  char c;
  while (in.get(c)) {
    if (c == '\n') {
      ++line;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
    } else if (c == '[' || c == ']') {
      tokens.push_back({std::string(1, c), line, false});
    } else if (c == '"') {
      std::string text;
      const std::size_t start = line;
      bool closed = false;
      while (in.get(c)) {
        if (c == '"') {
          closed = true;
          break;
        }
        if (c == '\n') ++line;
        text.push_back(c);
      }
      if (!closed) throw parse_error(start, "unterminated string");
      tokens.push_back({std::move(text), start, true});
    } else {
      std::string text(1, c);
      while (in.peek() != EOF && !std::isspace(in.peek()) && in.peek() != '[' && in.peek() != ']') {
        in.get(c);
        text.push_back(c);
      }
      tokens.push_back({std::move(text), line, false});
    }
  }

  RawNetwork net;
  std::size_t i = 0;
  auto expect_value = [&](std::size_t at) -> const Token& {
    if (at >= tokens.size()) throw parse_error(tokens.empty() ? line : tokens.back().line, "unexpected end of file");
    return tokens[at];
  };
  auto skip_value = [&](std::size_t at) {
    // Returns the index just past the value starting at `at`.
    if (expect_value(at).text != "[" || expect_value(at).quoted) return at + 1;
    int depth = 0;
    for (; at < tokens.size(); ++at) {
      if (tokens[at].quoted) continue;
      if (tokens[at].text == "[") ++depth;
      if (tokens[at].text == "]" && --depth == 0) return at + 1;
    }
    throw parse_error(line, "unbalanced brackets");
  };
  auto integer = [&](const Token& t) {
    const auto v = parse_label(t.text);
    if (!v || t.quoted) throw parse_error(t.line, "expected non-negative integer, got '" + t.text + "'");
    return *v;
  };

  while (i < tokens.size() && tokens[i].text != "graph") i = skip_value(i + 1);
  if (i >= tokens.size()) throw parse_error(line, "no graph block");
  if (expect_value(i + 1).text != "[") throw parse_error(tokens[i].line, "expected '[' after graph");
  i += 2;
  while (i < tokens.size() && !(tokens[i].text == "]" && !tokens[i].quoted)) {
    const Token& key = tokens[i];
    if (key.text == "directed") {
      net.directed = integer(expect_value(i + 1)) != 0;
      i += 2;
    } else if (key.text == "node" || key.text == "edge") {
      if (expect_value(i + 1).text != "[") throw parse_error(key.line, "expected '[' after " + key.text);
      std::optional<Label> id, source, target;
      std::size_t j = i + 2;
      while (j < tokens.size() && !(tokens[j].text == "]" && !tokens[j].quoted)) {
        const Token& field = tokens[j];
        if (field.text == "id") id = integer(expect_value(j + 1));
        if (field.text == "source") source = integer(expect_value(j + 1));
        if (field.text == "target") target = integer(expect_value(j + 1));
        j = skip_value(j + 1);
      }
      if (j >= tokens.size()) throw parse_error(key.line, "unterminated " + key.text + " block");
      if (key.text == "node") {
        if (!id) throw parse_error(key.line, "node without id");
        net.declared_nodes.push_back(*id);
      } else {
        if (!source || !target) throw parse_error(key.line, "edge without source/target");
        net.edges.emplace_back(*source, *target);
      }
      i = j + 1;
    } else {
      i = skip_value(i + 1);
    }
  }
  if (i >= tokens.size()) throw parse_error(line, "unterminated graph block");
  return net;
}

Graph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const RawNetwork net = read_edge_list(in);
  return build_graph(net.edges, net.declared_nodes).graph;
}

void write_graph_file(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_edge_list(out, g);
}

void write_assignment(std::ostream& out, const Graph& g, const AttributeAssignment& a) {
  if (a.size() != g.node_count()) throw std::invalid_argument("assignment size does not match graph");
  for (std::size_t v = 0; v < g.node_count(); ++v)
    out << g.label(static_cast<NodeId>(v)) << ' ' << (a.active(static_cast<NodeId>(v)) ? 1 : 0) << '\n';
}

AttributeAssignment read_assignment(std::istream& in, const Graph& g) {
  std::vector<std::uint8_t> states(g.node_count(), 0);
  std::vector<bool> seen(g.node_count(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (tokens.size() != 2) throw parse_error(line_no, "expected 'node_id value'");
    const auto label = parse_label(tokens[0]);
    if (!label) throw parse_error(line_no, "bad node id");
    const auto node = g.find(*label);
    if (!node) throw parse_error(line_no, "node " + std::string(tokens[0]) + " not in graph");
    if (tokens[1] != "0" && tokens[1] != "1") throw parse_error(line_no, "value must be 0 or 1");
    const auto idx = static_cast<std::size_t>(*node);
    if (seen[idx]) throw parse_error(line_no, "node listed twice");
    seen[idx] = true;
    states[idx] = tokens[1] == "1";
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::runtime_error("assignment does not cover every node");
  return AttributeAssignment(std::move(states));
}

std::vector<LabeledEdge> mutualize(const std::vector<LabeledEdge>& directed) {
  std::vector<LabeledEdge> arcs;
  arcs.reserve(directed.size());
  for (auto [u, v] : directed)
    if (u != v) arcs.emplace_back(u, v);
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  std::vector<LabeledEdge> out;
  for (auto [u, v] : arcs)
    if (u < v && std::binary_search(arcs.begin(), arcs.end(), LabeledEdge{v, u})) out.emplace_back(u, v);
  return out;
}

Graph largest_component(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<int> component(n, -1);
  std::vector<std::size_t> sizes;
  std::vector<NodeId> stack;
  // Nodes are visited in id order, which is label order, so component ids
  // increase with their smallest label.
  for (std::size_t s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    std::size_t size = 0;
    component[s] = id;
    stack.push_back(static_cast<NodeId>(s));
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      ++size;
      for (NodeId u : g.neighbors(v)) {
        if (component[static_cast<std::size_t>(u)] < 0) {
          component[static_cast<std::size_t>(u)] = id;
          stack.push_back(u);
        }
      }
    }
    sizes.push_back(size);
  }
  if (sizes.size() <= 1) return g;
  const int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  std::vector<NodeId> remap(n, -1);
  std::vector<Label> labels;
  for (std::size_t v = 0; v < n; ++v) {
    if (component[v] != best) continue;
    remap[v] = static_cast<NodeId>(labels.size());
    labels.push_back(g.label(static_cast<NodeId>(v)));
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (component[static_cast<std::size_t>(u)] == best)
      edges.emplace_back(remap[static_cast<std::size_t>(u)], remap[static_cast<std::size_t>(v)]);
  return Graph::from_dense(std::move(labels), edges);
}

std::string to_string(PreprocessStep step) {
  switch (step) {
    case PreprocessStep::mutualize: return "mutualize";
    case PreprocessStep::largest_component: return "largest_component";
    case PreprocessStep::simplify: return "simplify";
  }
  return "?";
}

std::string to_string(DatasetFormat format) { return format == DatasetFormat::gml ? "gml" : "edge_list"; }

void DatasetSpec::validate() const {
  for (auto step : preprocessing)
    if (step == PreprocessStep::mutualize && !directed)
      throw std::invalid_argument("dataset '" + name + "': mutualize requires a directed dataset");
}

std::filesystem::path resolve_data_path(const std::filesystem::path& path,
                                        const std::optional<std::filesystem::path>& data_root) {
  if (path.is_absolute()) return path;
  if (data_root) return *data_root / path;
  if (const char* env = std::getenv(kDataDirEnv); env && *env) return std::filesystem::path(env) / path;
  return path;
}

LoadedDataset load_dataset(const DatasetSpec& spec, const std::optional<std::filesystem::path>& data_root) {
  spec.validate();
  const auto path = resolve_data_path(spec.path, data_root);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file " + path.string());
  RawNetwork raw = spec.format == DatasetFormat::gml ? read_gml(in) : read_edge_list(in, spec.columns);

  LoadedDataset out;
  out.provenance.name = spec.name;
  out.provenance.path = path.string();

  auto raw_node_count = [](const RawNetwork& net) {
    std::vector<Label> labels = net.declared_nodes;
    for (auto [u, v] : net.edges) {
      labels.push_back(u);
      labels.push_back(v);
    }
    std::sort(labels.begin(), labels.end());
    return static_cast<std::size_t>(std::unique(labels.begin(), labels.end()) - labels.begin());
  };
  out.provenance.steps.push_back({"parse", raw_node_count(raw), raw.edges.size()});

  std::optional<Graph> graph;
  auto ensure_graph = [&]() {
    if (graph) return;
    BuiltGraph built = build_graph(raw.edges, raw.declared_nodes);
    out.provenance.build = built.report;
    graph = std::move(built.graph);
  };

  for (auto step : spec.preprocessing) {
    switch (step) {
      case PreprocessStep::mutualize:
        if (graph) throw std::invalid_argument("mutualize must precede graph-level steps");
        raw.edges = mutualize(raw.edges);
        // Nodes with no reciprocated link drop out along with their edges.
        raw.declared_nodes.clear();
        out.provenance.steps.push_back({"mutualize", raw_node_count(raw), raw.edges.size()});
        break;
      case PreprocessStep::simplify:
        ensure_graph();
        out.provenance.steps.push_back({"simplify", graph->node_count(), graph->edge_count()});
        break;
      case PreprocessStep::largest_component:
        ensure_graph();
        graph = largest_component(*graph);
        out.provenance.steps.push_back({"largest_component", graph->node_count(), graph->edge_count()});
        break;
    }
  }
  if (!graph) {
    ensure_graph();
    out.provenance.steps.push_back({"simplify", graph->node_count(), graph->edge_count()});
  }
  out.graph = std::move(*graph);
  return out;
}

}  // namespace majority
