#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "l2match/error.hpp"

namespace l2match {

using VertexId = std::uint32_t;
using Label = std::uint32_t;

struct Edge {
  VertexId source;
  VertexId target;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected vertex-labeled simple graph in CSR form. Every adjacency slice
// is sorted by (neighbor label, neighbor id), so the neighbors sharing a
// label form one contiguous range.
class LabeledGraph {
 public:
  LabeledGraph() : offsets_{0} {}

  // Builds a graph from a label per vertex and an undirected edge list.
  // Throws std::invalid_argument on self-loops, parallel edges or
  // out-of-range endpoints.
  static LabeledGraph from_edges(std::vector<Label> labels, std::span<const Edge> edges) {
    const auto n = static_cast<VertexId>(labels.size());
    LabeledGraph g;
    g.labels_ = std::move(labels);
    g.offsets_.assign(std::size_t{n} + 1, 0);
    for (const Edge& e : edges) {
      if (e.source >= n || e.target >= n) throw std::invalid_argument("edge endpoint out of range");
      if (e.source == e.target) throw std::invalid_argument("self-loop");
      ++g.offsets_[e.source + 1];
      ++g.offsets_[e.target + 1];
    }
    for (VertexId v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
    g.adjacency_.resize(g.offsets_[n]);
    std::vector<std::uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : edges) {
      g.adjacency_[fill[e.source]++] = e.target;
      g.adjacency_[fill[e.target]++] = e.source;
    }
    g.degrees_.resize(n);
    for (VertexId v = 0; v < n; ++v) {
      auto first = g.adjacency_.begin() + g.offsets_[v];
      auto last = g.adjacency_.begin() + g.offsets_[v + 1];
      std::sort(first, last, [&](VertexId a, VertexId b) {
        return std::pair{g.labels_[a], a} < std::pair{g.labels_[b], b};
      });
      if (std::adjacent_find(first, last) != last) throw std::invalid_argument("parallel edge");
      g.degrees_[v] = g.offsets_[v + 1] - g.offsets_[v];
    }
    g.edge_count_ = edges.size();
    return g;
  }

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  Label label(VertexId v) const { return labels_[v]; }
  std::uint32_t degree(VertexId v) const { return degrees_[v]; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  bool has_edge(VertexId a, VertexId b) const {
    auto adj = neighbors(a);
    auto key = std::pair{labels_[b], b};
    auto it = std::lower_bound(adj.begin(), adj.end(), key, [&](VertexId w, const auto& k) {
      return std::pair{labels_[w], w} < k;
    });
    return it != adj.end() && *it == b;
  }

  // Each undirected edge once, as (smaller id, larger id), ascending.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId v = 0; v < vertex_count(); ++v)
      for (VertexId w : neighbors(v))
        if (v < w) out.push_back({v, w});
    std::sort(out.begin(), out.end());
    return out;
  }

  // Sorted distinct labels (the alphabet actually in use).
  std::vector<Label> distinct_labels() const {
    std::vector<Label> out(labels_);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::span<const Label> labels() const noexcept { return labels_; }
  std::span<const std::uint32_t> offsets() const noexcept { return offsets_; }
  std::span<const VertexId> adjacency() const noexcept { return adjacency_; }
  std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }

 private:
  std::size_t edge_count_ = 0;
  std::vector<Label> labels_;
  std::vector<std::uint32_t> offsets_;
  std::vector<VertexId> adjacency_;
  std::vector<std::uint32_t> degrees_;
};

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view token) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

}  // namespace detail

// Reads one graph in the `t`/`v`/`e` line format. Blank lines are skipped.
inline LabeledGraph parse_graph(std::istream& in) {
  using detail::parse_number;
  std::string raw;
  std::size_t line_no = 0;
  auto next_line = [&](std::vector<std::string_view>& tokens) {
    while (std::getline(in, raw)) {
      ++line_no;
      tokens = detail::split_tokens(raw);
      if (!tokens.empty()) return true;
    }
    return false;
  };
  auto fail = [&](ParseErrorKind kind, std::size_t line, std::string detail = {}) -> GraphParseError {
    return GraphParseError(kind, line, detail);
  };

  std::vector<std::string_view> tok;
  if (!next_line(tok)) throw fail(ParseErrorKind::malformed_line, line_no + 1, "missing header");
  if (tok.size() != 3 || tok[0] != "t") throw fail(ParseErrorKind::malformed_line, line_no, "expected 't <|V|> <|E|>'");
  auto nv = parse_number<std::uint32_t>(tok[1]);
  auto ne = parse_number<std::uint64_t>(tok[2]);
  if (!nv || !ne) throw fail(ParseErrorKind::malformed_line, line_no, "bad header counts");
  const std::size_t header_line = line_no;

  std::vector<Label> labels(*nv);
  std::vector<std::uint32_t> declared_degree(*nv);
  std::vector<std::size_t> vertex_line(*nv);
  for (VertexId expected = 0; expected < *nv; ++expected) {
    if (!next_line(tok)) throw fail(ParseErrorKind::vertex_count_mismatch, line_no + 1, "too few 'v' lines");
    if (tok[0] == "e") throw fail(ParseErrorKind::vertex_count_mismatch, line_no, "too few 'v' lines");
    if (tok.size() != 4 || tok[0] != "v") throw fail(ParseErrorKind::malformed_line, line_no, "expected 'v <id> <label> <degree>'");
    auto id = parse_number<std::uint32_t>(tok[1]);
    auto label = parse_number<Label>(tok[2]);
    auto degree = parse_number<std::uint32_t>(tok[3]);
    if (!id || !label || !degree) throw fail(ParseErrorKind::malformed_line, line_no, "bad vertex fields");
    if (*id >= *nv) throw fail(ParseErrorKind::vertex_out_of_range, line_no, "vertex " + std::string(tok[1]));
    if (*id != expected) throw fail(ParseErrorKind::malformed_line, line_no, "vertex ids must be listed in order");
    labels[*id] = *label;
    declared_degree[*id] = *degree;
    vertex_line[*id] = line_no;
  }

  struct LineEdge {
    Edge edge;
    std::size_t line;
  };
  std::vector<LineEdge> edges;
  edges.reserve(*ne);
  while (next_line(tok)) {
    if (tok[0] == "v") throw fail(ParseErrorKind::vertex_count_mismatch, line_no, "too many 'v' lines");
    if (tok.size() != 3 || tok[0] != "e") throw fail(ParseErrorKind::malformed_line, line_no, "expected 'e <src> <dst>'");
    auto s = parse_number<VertexId>(tok[1]);
    auto t = parse_number<VertexId>(tok[2]);
    if (!s || !t) throw fail(ParseErrorKind::malformed_line, line_no, "bad edge endpoints");
    if (*s >= *nv || *t >= *nv) throw fail(ParseErrorKind::vertex_out_of_range, line_no);
    if (*s == *t) throw fail(ParseErrorKind::self_loop, line_no, "vertex " + std::to_string(*s));
    if (edges.size() == *ne) throw fail(ParseErrorKind::edge_count_mismatch, line_no, "more 'e' lines than declared");
    edges.push_back({{std::min(*s, *t), std::max(*s, *t)}, line_no});
  }
  if (edges.size() != *ne)
    throw fail(ParseErrorKind::edge_count_mismatch, header_line,
               "declared " + std::to_string(*ne) + ", found " + std::to_string(edges.size()));

  std::vector<LineEdge> sorted = edges;
  std::sort(sorted.begin(), sorted.end(), [](const LineEdge& a, const LineEdge& b) {
    return std::tie(a.edge, a.line) < std::tie(b.edge, b.line);
  });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].edge == sorted[i - 1].edge)
      throw fail(ParseErrorKind::duplicate_edge, sorted[i].line,
                 std::to_string(sorted[i].edge.source) + "-" + std::to_string(sorted[i].edge.target));

  std::vector<std::uint32_t> degree(*nv, 0);
  for (const auto& le : edges) {
    ++degree[le.edge.source];
    ++degree[le.edge.target];
  }
  for (VertexId v = 0; v < *nv; ++v)
    if (degree[v] != declared_degree[v])
      throw fail(ParseErrorKind::degree_mismatch, vertex_line[v],
                 "declared " + std::to_string(declared_degree[v]) + ", found " + std::to_string(degree[v]));

  std::vector<Edge> plain;
  plain.reserve(edges.size());
  for (const auto& le : edges) plain.push_back(le.edge);
  return LabeledGraph::from_edges(std::move(labels), plain);
}

inline LabeledGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

// Canonical text form: vertices in id order, edges as (low, high) ascending.
inline void write_graph(std::ostream& out, const LabeledGraph& g) {
  out << "t " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    out << "v " << v << ' ' << g.label(v) << ' ' << g.degree(v) << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.source << ' ' << e.target << '\n';
}

inline std::string to_text(const LabeledGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

// One neighbor-label range of a vertex: offset inside the vertex's adjacency
// slice and the number of neighbors carrying `label`.
struct LabelRange {
  Label label;
  std::uint32_t offset;
  std::uint32_t frequency;

  friend bool operator==(const LabelRange&, const LabelRange&) = default;
};

// Per-vertex sorted (label, offset, frequency) triples.
class NeighborLabelIndex {
 public:
  NeighborLabelIndex() : starts_{0} {}

  explicit NeighborLabelIndex(const LabeledGraph& g) {
    starts_.reserve(g.vertex_count() + 1);
    starts_.push_back(0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      auto adj = g.neighbors(v);
      for (std::uint32_t i = 0; i < adj.size(); ++i) {
        Label l = g.label(adj[i]);
        if (i == 0 || g.label(adj[i - 1]) != l)
          entries_.push_back({l, i, 1});
        else
          ++entries_.back().frequency;
      }
      starts_.push_back(static_cast<std::uint32_t>(entries_.size()));
    }
  }

  std::size_t vertex_count() const noexcept { return starts_.size() - 1; }

  std::span<const LabelRange> entries(VertexId v) const {
    return {entries_.data() + starts_[v], entries_.data() + starts_[v + 1]};
  }

  std::optional<LabelRange> find(VertexId v, Label l) const {
    auto es = entries(v);
    auto it = std::lower_bound(es.begin(), es.end(), l,
                               [](const LabelRange& r, Label key) { return r.label < key; });
    if (it == es.end() || it->label != l) return std::nullopt;
    return *it;
  }

  std::uint32_t frequency(VertexId v, Label l) const {
    auto r = find(v, l);
    return r ? r->frequency : 0;
  }

 private:
  std::vector<std::uint32_t> starts_;
  std::vector<LabelRange> entries_;
};

inline NeighborLabelIndex build_neighbor_label_index(const LabeledGraph& g) { return NeighborLabelIndex(g); }

// N_l(v): the neighbors of v with label l, ascending by id.
inline std::span<const VertexId> neighbors_with_label(const LabeledGraph& g, const NeighborLabelIndex& index,
                                                      VertexId v, Label l) {
  if (v >= g.vertex_count()) throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
  auto r = index.find(v, l);
  if (!r) return {};
  return g.neighbors(v).subspan(r->offset, r->frequency);
}

struct GraphStats {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t label_count = 0;
  double average_degree = 0.0;
  std::optional<double> density;  // undefined below two vertices
};

inline std::optional<double> graph_density(std::size_t vertices, std::size_t edges) {
  if (vertices < 2) return std::nullopt;
  auto n = static_cast<double>(vertices);
  return 2.0 * static_cast<double>(edges) / (n * (n - 1.0));
}

inline GraphStats compute_stats(std::size_t vertices, std::size_t edges, std::size_t labels) {
  GraphStats s;
  s.vertex_count = vertices;
  s.edge_count = edges;
  s.label_count = labels;
  s.average_degree = vertices == 0 ? 0.0 : 2.0 * static_cast<double>(edges) / static_cast<double>(vertices);
  s.density = graph_density(vertices, edges);
  return s;
}

inline GraphStats compute_stats(const LabeledGraph& g) {
  return compute_stats(g.vertex_count(), g.edge_count(), g.distinct_labels().size());
}

}  // namespace l2match
