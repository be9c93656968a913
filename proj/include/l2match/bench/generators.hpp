#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "l2match/error.hpp"
#include "l2match/graph.hpp"

namespace l2match::bench {

// Raw mt19937_64 draws mapped to ranges by hand, no std distributions.
namespace detail {

inline bool bernoulli(std::mt19937_64& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  auto threshold = static_cast<std::uint64_t>(std::ldexp(p, 64));
  return rng() < threshold;
}

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

}  // namespace detail

// Erdos-Renyi G(n, p) with labels drawn uniformly from [0, label_count).
// The expected density equals p.
inline LabeledGraph gen_er_graph(std::uint32_t n, double p, std::uint32_t label_count, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("vertex count must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  if (label_count < 1) throw std::invalid_argument("label count must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<Label> labels(n);
  for (auto& l : labels) l = static_cast<Label>(detail::below(rng, label_count));
  std::vector<Edge> edges;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      if (detail::bernoulli(rng, p)) edges.push_back({a, b});
  return LabeledGraph::from_edges(std::move(labels), edges);
}

inline constexpr std::uint32_t max_query_vertices = 64;

// Induced subgraph on k vertices collected by a random walk. The start is
// drawn uniformly among vertices whose connected component holds at least k
// vertices; after a long run without discovering anything new the walk
// restarts from a random collected vertex. Vertex i of the result is the i-th
// vertex collected, so the collection order itself is an embedding.
inline LabeledGraph gen_random_walk_query(const LabeledGraph& d, std::uint32_t k, std::uint64_t seed,
                                          std::vector<VertexId>* source_vertices = nullptr) {
  if (k < 1 || k > max_query_vertices) throw std::invalid_argument("query size must lie in [1, 64]");
  const auto n = static_cast<VertexId>(d.vertex_count());

  std::vector<std::uint32_t> component(n, n), component_size;
  for (VertexId s = 0; s < n; ++s) {
    if (component[s] != n) continue;
    auto id = static_cast<std::uint32_t>(component_size.size());
    std::vector<VertexId> stack{s};
    component[s] = id;
    std::uint32_t size = 0;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      ++size;
      for (VertexId w : d.neighbors(v))
        if (component[w] == n) {
          component[w] = id;
          stack.push_back(w);
        }
    }
    component_size.push_back(size);
  }
  std::vector<VertexId> eligible;
  for (VertexId v = 0; v < n; ++v)
    if (component_size[component[v]] >= k) eligible.push_back(v);
  if (eligible.empty()) throw InputError("no connected component with " + std::to_string(k) + " vertices");

  std::mt19937_64 rng(seed);
  VertexId current = eligible[detail::below(rng, eligible.size())];
  std::vector<VertexId> collected{current};
  std::unordered_map<VertexId, VertexId> local{{current, 0}};
  const std::uint64_t patience = 8ull * k + 64;
  std::uint64_t idle = 0;
  while (collected.size() < k) {
    auto adj = d.neighbors(current);
    current = adj[detail::below(rng, adj.size())];
    if (local.emplace(current, static_cast<VertexId>(collected.size())).second) {
      collected.push_back(current);
      idle = 0;
    } else if (++idle > patience) {
      current = collected[detail::below(rng, collected.size())];
      idle = 0;
    }
  }

  std::vector<Label> labels;
  for (VertexId v : collected) labels.push_back(d.label(v));
  std::vector<Edge> edges;
  for (VertexId a = 0; a < k; ++a)
    for (VertexId b = a + 1; b < k; ++b)
      if (d.has_edge(collected[a], collected[b])) edges.push_back({a, b});
  if (source_vertices) *source_vertices = collected;
  return LabeledGraph::from_edges(std::move(labels), edges);
}

}  // namespace l2match::bench
