#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "l2match/error.hpp"
#include "l2match/filter.hpp"

namespace l2match {

using Embedding = std::vector<VertexId>;  // indexed by query vertex

struct EnumerateOptions {
  std::uint64_t max_embeddings = 1'000'000;
  std::chrono::nanoseconds time_limit = std::chrono::seconds(300);
  bool jump_redo = true;
  bool collect = false;
  std::size_t collect_limit = 1000;
};

inline constexpr std::uint64_t unlimited_embeddings = std::numeric_limits<std::uint64_t>::max();

struct EnumerationResult {
  std::uint64_t embedding_count = 0;
  std::uint64_t search_nodes = 0;  // candidates assigned to a query vertex
  bool halted_by_cap = false;
  bool timed_out = false;
  std::vector<Embedding> embeddings;
  std::chrono::nanoseconds elapsed{0};
};

// No-op instrumentation; the enumerator calls these hooks on every index
// lookup and on every local candidate set it builds or reuses.
struct NullProbe {
  void index_lookup(const CandidateSpace&, QueryVertex, QueryVertex, std::uint32_t, std::uint32_t) {}
  void local_candidates(const CandidateSpace&, QueryVertex, std::span<const std::uint32_t>) {}
};

// Counts lookups keyed by pruned or unmapped candidates and pruned candidates
// surfacing in a local candidate set. Both stay zero on a refined space.
struct AuditProbe {
  std::uint64_t lookups = 0;
  std::uint64_t stale_key_lookups = 0;
  std::uint64_t pruned_in_local = 0;

  void index_lookup(const CandidateSpace& cs, QueryVertex, QueryVertex b, std::uint32_t key_slot,
                    std::uint32_t mapped_slot) {
    ++lookups;
    if (key_slot != mapped_slot || !cs.alive(b, key_slot)) ++stale_key_lookups;
  }
  void local_candidates(const CandidateSpace& cs, QueryVertex u, std::span<const std::uint32_t> slots) {
    for (std::uint32_t s : slots)
      if (!cs.alive(u, s)) ++pruned_in_local;
  }
};

namespace detail {

inline void intersect_into(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                           std::vector<std::uint32_t>& out) {
  out.clear();
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
}

}  // namespace detail

// LC(u): the intersection of I_u^b(mapping[b]) over u's backward neighbors,
// or C(root) for the root. Injectivity is left to the caller.
inline std::vector<VertexId> local_candidates(QueryVertex u, std::span<const std::optional<VertexId>> mapping,
                                              const CandidateSpace& cs, const QueryPlan& plan) {
  std::vector<VertexId> out;
  if (plan.is_root(u)) {
    auto c = cs.candidates(u);
    return {c.begin(), c.end()};
  }
  std::vector<std::uint32_t> acc, tmp;
  bool first = true;
  for (QueryVertex b : plan.backward[u]) {
    if (!mapping[b]) throw std::invalid_argument("backward neighbor u" + std::to_string(b) + " is unmapped");
    const auto* e = cs.edge(u, b);
    auto key = cs.slot_of(b, *mapping[b]);
    if (!e || !key) throw InvariantViolation("no index entry for u" + std::to_string(b) + " -> " + std::to_string(*mapping[b]));
    auto list = e->at(*key);
    if (first) {
      acc.assign(list.begin(), list.end());
      first = false;
    } else {
      detail::intersect_into(acc, list, tmp);
      acc.swap(tmp);
    }
  }
  for (std::uint32_t s : acc) out.push_back(cs.slots(u)[s]);
  return out;
}

// Backtracking over the static order with local candidate intersection.
//
// With jump_redo, an empty LC(u) sends the search straight back to the
// latest backward neighbor of u: nothing assigned in between can change LC(u).
// Local candidate lists are cached per vertex and rebuilt only after one of
// the vertex's backward neighbors got a new mapping. Injectivity failures and
// exhausted lists backtrack chronologically in both modes.
template <typename Probe = NullProbe>
EnumerationResult enumerate(const CandidateSpace& cs, const QueryPlan& plan, const EnumerateOptions& options,
                            Probe& probe) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  EnumerationResult result;
  const std::size_t n = plan.size();
  if (n == 0 || cs.query_size() != n) throw std::invalid_argument("candidate space does not match the plan");
  if (options.max_embeddings == 0) throw std::invalid_argument("max_embeddings must be positive");

  // Per position: index lists of the backward edges and the positions of their keys.
  struct Source {
    std::uint32_t position;
    const CandidateSpace::EdgeIndex* edge;
  };
  std::vector<std::vector<Source>> sources(n);
  std::vector<std::uint32_t> jump_target(n, 0);
  std::vector<std::vector<std::uint32_t>> dependents(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const QueryVertex u = plan.order[i];
    for (QueryVertex b : plan.backward[u]) {
      const auto* e = cs.edge(u, b);
      if (!e || e->offsets.size() != cs.slots(b).size() + 1)
        throw InvariantViolation("missing index for query edge u" + std::to_string(b) + " -> u" + std::to_string(u));
      const auto bp = plan.position[b];
      sources[i].push_back({bp, e});
      jump_target[i] = std::max(jump_target[i], bp);
      dependents[bp].push_back(i);
    }
    if (i > 0 && sources[i].empty()) throw InvariantViolation("non-root vertex without backward neighbors");
  }

  std::vector<std::vector<std::uint32_t>> local(n);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<std::uint8_t> dirty(n, 1);
  std::vector<std::uint32_t> mapped(n, 0);  // slot of the vertex at each position
  std::vector<std::uint8_t> visited(cs.data_vertex_count(), 0);
  std::vector<std::uint32_t> scratch;

  auto vertex_at = [&](std::uint32_t i, std::uint32_t slot) { return cs.slots(plan.order[i])[slot]; };

  auto compute_local = [&](std::uint32_t i) {
    const QueryVertex u = plan.order[i];
    auto& lc = local[i];
    lc.clear();
    if (i == 0) {
      for (std::uint32_t k = 0; k < cs.slots(u).size(); ++k)
        if (cs.alive(u, k)) lc.push_back(k);
    } else {
      // Start from the shortest list to keep the intersection cheap.
      const Source* shortest = &sources[i][0];
      for (const auto& src : sources[i])
        if (src.edge->at(mapped[src.position]).size() < shortest->edge->at(mapped[shortest->position]).size())
          shortest = &src;
      probe.index_lookup(cs, u, shortest->edge->backward, mapped[shortest->position], mapped[shortest->position]);
      auto base = shortest->edge->at(mapped[shortest->position]);
      lc.assign(base.begin(), base.end());
      for (const auto& src : sources[i]) {
        if (&src == shortest) continue;
        if (lc.empty()) break;
        probe.index_lookup(cs, u, src.edge->backward, mapped[src.position], mapped[src.position]);
        detail::intersect_into(lc, src.edge->at(mapped[src.position]), scratch);
        lc.swap(scratch);
      }
    }
    dirty[i] = 0;
  };

  auto out_of_time = [&] { return Clock::now() - started > options.time_limit; };

  std::uint32_t i = 0;
  bool entering = true;
  for (;;) {
    if (out_of_time()) {
      result.timed_out = true;
      break;
    }
    if (entering) {
      entering = false;
      if (!options.jump_redo || dirty[i]) compute_local(i);
      probe.local_candidates(cs, plan.order[i], local[i]);
      cursor[i] = 0;
      if (local[i].empty()) {
        if (i == 0) break;
        const std::uint32_t target = options.jump_redo ? jump_target[i] : i - 1;
        for (std::uint32_t k = target; k < i; ++k) visited[vertex_at(k, mapped[k])] = 0;
        i = target;
        continue;
      }
    }

    auto& lc = local[i];
    while (cursor[i] < lc.size() && visited[vertex_at(i, lc[cursor[i]])]) ++cursor[i];
    if (cursor[i] == lc.size()) {
      if (i == 0) break;
      --i;
      visited[vertex_at(i, mapped[i])] = 0;
      continue;
    }

    const std::uint32_t slot = lc[cursor[i]++];
    ++result.search_nodes;
    mapped[i] = slot;
    if (options.jump_redo)
      for (std::uint32_t k : dependents[i]) dirty[k] = 1;

    if (i + 1 == n) {
      ++result.embedding_count;
      if (options.collect && result.embeddings.size() < options.collect_limit) {
        Embedding emb(n);
        for (std::uint32_t k = 0; k < n; ++k) emb[plan.order[k]] = vertex_at(k, mapped[k]);
        result.embeddings.push_back(std::move(emb));
      }
      if (result.embedding_count >= options.max_embeddings) {
        result.halted_by_cap = true;
        break;
      }
      continue;
    }
    visited[vertex_at(i, slot)] = 1;
    ++i;
    entering = true;
  }

  result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - started);
  return result;
}

inline EnumerationResult enumerate(const CandidateSpace& cs, const QueryPlan& plan,
                                   const EnumerateOptions& options = {}) {
  NullProbe probe;
  return enumerate(cs, plan, options, probe);
}

struct JumpRedoComparison {
  EnumerationResult with_jump_redo;
  EnumerationResult without_jump_redo;
};

// Runs the same search with and without Jump-Redo, uncapped.
inline JumpRedoComparison jr_soundness_probe(const CandidateSpace& cs, const QueryPlan& plan,
                                             EnumerateOptions options = {}) {
  options.max_embeddings = unlimited_embeddings;
  JumpRedoComparison out;
  options.jump_redo = true;
  out.with_jump_redo = enumerate(cs, plan, options);
  options.jump_redo = false;
  out.without_jump_redo = enumerate(cs, plan, options);
  return out;
}

}  // namespace l2match
