#pragma once

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <optional>
#include <vector>

#include "l2match/error.hpp"
#include "l2match/filter.hpp"
#include "l2match/graph.hpp"

namespace l2match {

inline constexpr std::size_t oracle_max_query_vertices = 8;
inline constexpr std::size_t oracle_max_data_vertices = 64;

struct OracleOptions {
  std::optional<std::uint64_t> cap;
  bool collect = true;
};

struct OracleResult {
  std::uint64_t embedding_count = 0;
  std::vector<std::vector<VertexId>> mappings;  // indexed by query vertex, sorted
};

// Plain backtracking over query vertices in id order. Uses nothing from the
// engine: adjacency is re-derived into bit rows and every constraint (label,
// degree, edges to already-assigned vertices, injectivity) is checked directly.
inline OracleResult brute_force_enumerate(const LabeledGraph& q, const LabeledGraph& d, OracleOptions options = {}) {
  const std::size_t nq = q.vertex_count();
  const std::size_t nd = d.vertex_count();
  if (nq > oracle_max_query_vertices || nd > oracle_max_data_vertices)
    throw std::invalid_argument("brute-force oracle limited to 8 query and 64 data vertices");

  using Row = std::bitset<oracle_max_data_vertices>;
  std::vector<Row> adjacent(nd);
  for (const Edge& e : d.edges()) {
    adjacent[e.source].set(e.target);
    adjacent[e.target].set(e.source);
  }
  std::vector<std::vector<std::size_t>> earlier(nq);
  for (const Edge& e : q.edges()) earlier[std::max(e.source, e.target)].push_back(std::min(e.source, e.target));

  OracleResult out;
  if (nq == 0) return out;
  std::vector<VertexId> mapping(nq, 0);
  Row used;
  bool stop = false;

  auto extend = [&](auto& self, std::size_t u) -> void {
    for (VertexId s = 0; s < nd && !stop; ++s) {
      if (used.test(s) || d.label(s) != q.label(static_cast<VertexId>(u)) ||
          d.degree(s) < q.degree(static_cast<VertexId>(u)))
        continue;
      bool edges_ok = std::all_of(earlier[u].begin(), earlier[u].end(),
                                  [&](std::size_t w) { return adjacent[s].test(mapping[w]); });
      if (!edges_ok) continue;
      mapping[u] = s;
      if (u + 1 == nq) {
        ++out.embedding_count;
        if (options.collect) out.mappings.push_back(mapping);
        if (options.cap && out.embedding_count >= *options.cap) stop = true;
        continue;
      }
      used.set(s);
      self(self, u + 1);
      used.reset(s);
    }
  };
  extend(extend, 0);
  std::sort(out.mappings.begin(), out.mappings.end());
  return out;
}

struct FilterCounts {
  std::vector<CandidateSet> candidates;  // per query vertex
  std::size_t total = 0;                 // sum |C(u)|
};

// One filter applied uniformly to every query vertex, nothing else.
inline FilterCounts count_by_filter(const LabeledGraph& q, const DataGraph& data, FilterKind kind) {
  NeighborLabelIndex q_index(q);
  FilterCounts out;
  out.candidates = initial_candidates(q, q_index, data, kind);
  for (const auto& c : out.candidates) out.total += c.size();
  return out;
}

}  // namespace l2match
