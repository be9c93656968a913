#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "l2match/error.hpp"
#include "l2match/graph.hpp"
#include "l2match/label_pair_index.hpp"

namespace l2match {

using QueryVertex = std::uint32_t;
using CandidateSet = std::vector<VertexId>;

enum class FilterKind { ldf, nlf, lpf };

inline const char* to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::ldf: return "ldf";
    case FilterKind::nlf: return "nlf";
    case FilterKind::lpf: return "lpf";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Candidate generation

// {s : L(s) = L(u), |s| >= |u|}
inline CandidateSet ldf_candidates(const LabeledGraph& q, const LabeledGraph& d, QueryVertex u) {
  CandidateSet out;
  for (VertexId s = 0; s < d.vertex_count(); ++s)
    if (d.label(s) == q.label(u) && d.degree(s) >= q.degree(u)) out.push_back(s);
  return out;
}

namespace detail {

inline bool dominates_neighbor_labels(const NeighborLabelIndex& q_index, const NeighborLabelIndex& d_index,
                                      QueryVertex u, VertexId s) {
  for (const LabelRange& need : q_index.entries(u))
    if (d_index.frequency(s, need.label) < need.frequency) return false;
  return true;
}

}  // namespace detail

inline CandidateSet nlf_candidates(const LabeledGraph& q, const LabeledGraph& d, const NeighborLabelIndex& q_index,
                                   const NeighborLabelIndex& d_index, QueryVertex u) {
  CandidateSet out = ldf_candidates(q, d, u);
  std::erase_if(out, [&](VertexId s) { return !detail::dominates_neighbor_labels(q_index, d_index, u, s); });
  return out;
}

// Label pair with the smallest bucket among u's neighbor labels; ties go to
// the smaller label id.
inline Label min_label_pair(const LabeledGraph& q, const NeighborLabelIndex& q_index, const LabelPairIndex& pairs,
                            QueryVertex u) {
  auto needed = q_index.entries(u);
  Label best = needed.front().label;
  std::size_t best_size = std::numeric_limits<std::size_t>::max();
  for (const LabelRange& r : needed) {
    auto size = pairs.edges_with_label_pair(q.label(u), r.label).size();
    if (size < best_size) {
      best = r.label;
      best_size = size;
    }
  }
  return best;
}

// Scans only the smallest label-pair bucket touching u, then applies degree
// and neighbor-label-frequency checks to the distinct bucket sources.
inline CandidateSet lpf_candidates(const LabeledGraph& q, const LabeledGraph& d, const LabelPairIndex& pairs,
                                   const NeighborLabelIndex& q_index, const NeighborLabelIndex& d_index,
                                   QueryVertex u) {
  if (q.degree(u) == 0) return nlf_candidates(q, d, q_index, d_index, u);
  Label l_min = min_label_pair(q, q_index, pairs, u);
  CandidateSet out;
  bool first = true;
  VertexId last = 0;
  for (const Edge& e : pairs.edges_with_label_pair(q.label(u), l_min)) {
    if (!first && e.source == last) continue;
    first = false;
    last = e.source;
    if (d.degree(e.source) < q.degree(u)) continue;
    if (!detail::dominates_neighbor_labels(q_index, d_index, u, e.source)) continue;
    out.push_back(e.source);
  }
  return out;
}

// Prepared data graph shared by every query run against it.
struct DataGraph {
  LabeledGraph graph;
  NeighborLabelIndex labels;
  LabelPairIndex pairs;

  explicit DataGraph(LabeledGraph g) : graph(std::move(g)), labels(graph), pairs(graph) {}
};

inline std::vector<CandidateSet> initial_candidates(const LabeledGraph& q, const NeighborLabelIndex& q_index,
                                                    const DataGraph& data, FilterKind kind) {
  std::vector<CandidateSet> out(q.vertex_count());
  for (QueryVertex u = 0; u < q.vertex_count(); ++u) {
    switch (kind) {
      case FilterKind::ldf: out[u] = ldf_candidates(q, data.graph, u); break;
      case FilterKind::nlf: out[u] = nlf_candidates(q, data.graph, q_index, data.labels, u); break;
      case FilterKind::lpf: out[u] = lpf_candidates(q, data.graph, data.pairs, q_index, data.labels, u); break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ordering

// BFS tree of the query together with the static enumeration order and the
// backward/forward split of every vertex's neighborhood.
struct QueryPlan {
  QueryVertex root = 0;
  std::vector<std::int64_t> parent;  // -1 for the root
  std::vector<std::vector<QueryVertex>> children;
  std::vector<QueryVertex> order;
  std::vector<std::uint32_t> position;
  std::vector<std::vector<QueryVertex>> backward;
  std::vector<std::vector<QueryVertex>> forward;

  std::size_t size() const noexcept { return order.size(); }
  bool is_root(QueryVertex u) const { return parent[u] < 0; }
  QueryVertex parent_of(QueryVertex u) const { return static_cast<QueryVertex>(parent[u]); }
};

// Root minimises |C(u)| / |u|; BFS visits each vertex's unvisited neighbors
// in ascending candidate count. All ties go to the smaller vertex id.
inline QueryPlan build_query_plan(const LabeledGraph& q, std::span<const std::size_t> candidate_sizes) {
  const auto n = static_cast<QueryVertex>(q.vertex_count());
  if (n == 0) throw InputError("query graph has no vertices");
  if (candidate_sizes.size() != n) throw std::invalid_argument("one candidate size per query vertex required");

  QueryPlan plan;
  plan.root = 0;
  for (QueryVertex u = 1; u < n; ++u) {
    // |C(u)|/|u| < |C(root)|/|root| without division
    auto lhs = static_cast<unsigned __int128>(candidate_sizes[u]) * q.degree(plan.root);
    auto rhs = static_cast<unsigned __int128>(candidate_sizes[plan.root]) * q.degree(u);
    if (lhs < rhs) plan.root = u;
  }

  plan.parent.assign(n, -1);
  plan.children.assign(n, {});
  plan.position.assign(n, 0);
  std::vector<bool> seen(n, false);
  plan.order.push_back(plan.root);
  seen[plan.root] = true;
  for (std::size_t head = 0; head < plan.order.size(); ++head) {
    QueryVertex v = plan.order[head];
    std::vector<QueryVertex> fresh;
    for (VertexId w : q.neighbors(v))
      if (!seen[w]) {
        seen[w] = true;
        fresh.push_back(w);
      }
    std::sort(fresh.begin(), fresh.end(), [&](QueryVertex a, QueryVertex b) {
      return std::pair{candidate_sizes[a], a} < std::pair{candidate_sizes[b], b};
    });
    for (QueryVertex w : fresh) {
      plan.parent[w] = v;
      plan.children[v].push_back(w);
      plan.order.push_back(w);
    }
  }
  if (plan.order.size() != n) throw InputError("query graph is disconnected");

  for (std::uint32_t i = 0; i < n; ++i) plan.position[plan.order[i]] = i;
  plan.backward.assign(n, {});
  plan.forward.assign(n, {});
  for (QueryVertex u = 0; u < n; ++u) {
    for (VertexId w : q.neighbors(u)) (plan.position[w] < plan.position[u] ? plan.backward : plan.forward)[u].push_back(w);
    std::sort(plan.backward[u].begin(), plan.backward[u].end());
    std::sort(plan.forward[u].begin(), plan.forward[u].end());
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Candidate space

// Candidate sets C(u) plus, for every query edge (b, u) with b before u in the
// order, the adjacency lists I_u^b(t): members of C(u) adjacent to t, for each
// t in C(b).
//
// Index lists are keyed and valued by candidate slots: positions in the
// candidate array C(u) had when forward candidate generation finished. Later
// pruning only flips `alive` bits and compacts the parent-edge lists, so a
// slot stays a stable handle for the same data vertex.
class CandidateSpace {
 public:
  struct EdgeIndex {
    QueryVertex backward;
    std::vector<std::uint32_t> offsets;  // one range per slot of `backward`
    std::vector<std::uint32_t> slots;    // slots of the later vertex

    std::span<const std::uint32_t> at(std::uint32_t key_slot) const {
      return {slots.data() + offsets[key_slot], slots.data() + offsets[key_slot + 1]};
    }
  };

  CandidateSpace() = default;

  std::size_t query_size() const noexcept { return slots_.size(); }
  std::size_t data_vertex_count() const noexcept { return data_vertex_count_; }

  // Current C(u), ascending.
  std::span<const VertexId> candidates(QueryVertex u) const { return candidates_[u]; }
  // C(u) as it stood after forward candidate generation; index keys/values refer to it.
  std::span<const VertexId> slots(QueryVertex u) const { return slots_[u]; }
  bool alive(QueryVertex u, std::uint32_t slot) const { return alive_[u][slot] != 0; }

  std::optional<std::uint32_t> slot_of(QueryVertex u, VertexId s) const {
    auto it = std::lower_bound(slots_[u].begin(), slots_[u].end(), s);
    if (it == slots_[u].end() || *it != s) return std::nullopt;
    return static_cast<std::uint32_t>(it - slots_[u].begin());
  }

  // Index of the query edge (b, u); null when b is not a backward neighbor of u.
  const EdgeIndex* edge(QueryVertex u, QueryVertex b) const {
    for (const auto& e : edges_[u])
      if (e.backward == b) return &e;
    return nullptr;
  }
  std::span<const EdgeIndex> edges(QueryVertex u) const { return edges_[u]; }

  // I_u^b(t) as data vertex ids; empty when t is not a candidate key of b.
  std::vector<VertexId> adjacent_candidates(QueryVertex u, QueryVertex b, VertexId t) const {
    const EdgeIndex* e = edge(u, b);
    if (!e) throw std::invalid_argument("no index for this query edge orientation");
    auto key = slot_of(b, t);
    std::vector<VertexId> out;
    if (!key) return out;
    for (std::uint32_t s : e->at(*key)) out.push_back(slots_[u][s]);
    return out;
  }

  std::size_t total_candidates() const {
    std::size_t n = 0;
    for (const auto& c : candidates_) n += c.size();
    return n;
  }

  bool has_empty_set() const {
    return std::any_of(candidates_.begin(), candidates_.end(), [](const auto& c) { return c.empty(); });
  }

  // Debug dump: candidate counts per query vertex and index sizes per edge.
  void dump(std::ostream& out) const {
    for (QueryVertex u = 0; u < query_size(); ++u) {
      out << "u" << u << ": " << candidates_[u].size() << " candidates";
      for (const auto& e : edges_[u]) out << ", I[u" << e.backward << "->u" << u << "]=" << e.slots.size();
      out << '\n';
    }
  }

 private:
  friend CandidateSpace fcg(const LabeledGraph&, const DataGraph&, const QueryPlan&, std::span<const CandidateSet>);
  friend CandidateSpace bcprefine(const LabeledGraph&, const DataGraph&, const QueryPlan&, CandidateSpace);

  std::size_t data_vertex_count_ = 0;
  std::vector<std::vector<VertexId>> slots_;
  std::vector<std::vector<std::uint8_t>> alive_;
  std::vector<std::vector<VertexId>> candidates_;
  std::vector<std::vector<EdgeIndex>> edges_;
};

namespace detail {

// Membership marks over data vertices, reset in O(1) by bumping a stamp.
class StampSet {
 public:
  explicit StampSet(std::size_t n) : marks_(n, 0) {}
  void clear() {
    if (++stamp_ == 0) {
      std::fill(marks_.begin(), marks_.end(), 0);
      stamp_ = 1;
    }
  }
  void insert(VertexId v) { marks_[v] = stamp_; }
  bool contains(VertexId v) const { return marks_[v] == stamp_; }

 private:
  std::vector<std::uint32_t> marks_;
  std::uint32_t stamp_ = 0;
};

}  // namespace detail

// Forward candidate generation. Walks the order; C(u) keeps the seeds that
// are adjacent to some candidate of u's tree parent and to some candidate of
// every other backward neighbor, then the index lists for all backward edges
// of u are built from neighbor-label ranges.
inline CandidateSpace fcg(const LabeledGraph& q, const DataGraph& data, const QueryPlan& plan,
                          std::span<const CandidateSet> seeds) {
  const auto n = plan.size();
  if (seeds.size() != n) throw std::invalid_argument("one seed candidate set per query vertex required");
  const LabeledGraph& d = data.graph;

  CandidateSpace cs;
  cs.data_vertex_count_ = d.vertex_count();
  cs.slots_.assign(n, {});
  cs.alive_.assign(n, {});
  cs.candidates_.assign(n, {});
  cs.edges_.assign(n, {});

  detail::StampSet seed_mark(d.vertex_count());
  detail::StampSet support(d.vertex_count());
  std::vector<std::int64_t> slot_of(d.vertex_count(), -1);

  for (QueryVertex u : plan.order) {
    auto& c = cs.slots_[u];
    if (plan.is_root(u)) {
      c = seeds[u];
    } else {
      const QueryVertex p = plan.parent_of(u);
      seed_mark.clear();
      for (VertexId s : seeds[u]) seed_mark.insert(s);
      for (VertexId t : cs.slots_[p])
        for (VertexId s : neighbors_with_label(d, data.labels, t, q.label(u)))
          if (seed_mark.contains(s)) c.push_back(s);
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());

      for (QueryVertex b : plan.backward[u]) {
        if (b == p) continue;
        support.clear();
        for (VertexId t : cs.slots_[b]) support.insert(t);
        std::erase_if(c, [&](VertexId s) {
          for (VertexId w : neighbors_with_label(d, data.labels, s, q.label(b)))
            if (support.contains(w)) return false;
          return true;
        });
      }

      for (std::uint32_t i = 0; i < c.size(); ++i) slot_of[c[i]] = i;
      for (QueryVertex b : plan.backward[u]) {
        CandidateSpace::EdgeIndex e;
        e.backward = b;
        e.offsets.reserve(cs.slots_[b].size() + 1);
        e.offsets.push_back(0);
        for (VertexId t : cs.slots_[b]) {
          for (VertexId s : neighbors_with_label(d, data.labels, t, q.label(u)))
            if (slot_of[s] >= 0) e.slots.push_back(static_cast<std::uint32_t>(slot_of[s]));
          e.offsets.push_back(static_cast<std::uint32_t>(e.slots.size()));
        }
        cs.edges_[u].push_back(std::move(e));
      }
      for (VertexId s : c) slot_of[s] = -1;
    }
    cs.alive_[u].assign(c.size(), 1);
    cs.candidates_[u] = c;
  }
  return cs;
}

// One reverse pass over the order (root excluded). A candidate s of u with no
// neighbor in the current C(w) of some later neighbor w is dropped from C(u)
// and from the parent-edge lists I_u^{parent}(t). Lists of the other edges
// keep it; the parent edge already shields it from every local candidate set.
inline CandidateSpace bcprefine(const LabeledGraph& q, const DataGraph& data, const QueryPlan& plan,
                                CandidateSpace cs) {
  const LabeledGraph& d = data.graph;
  detail::StampSet current(d.vertex_count());

  for (std::size_t i = plan.size(); i-- > 1;) {
    const QueryVertex u = plan.order[i];
    if (plan.forward[u].empty()) continue;
    auto& alive = cs.alive_[u];
    const auto& slots = cs.slots_[u];
    bool pruned = false;
    for (QueryVertex w : plan.forward[u]) {
      current.clear();
      for (VertexId t : cs.candidates_[w]) current.insert(t);
      for (std::uint32_t k = 0; k < slots.size(); ++k) {
        if (!alive[k]) continue;
        bool supported = false;
        for (VertexId x : neighbors_with_label(d, data.labels, slots[k], q.label(w)))
          if (current.contains(x)) {
            supported = true;
            break;
          }
        if (!supported) {
          alive[k] = 0;
          pruned = true;
        }
      }
    }
    if (!pruned) continue;

    auto& c = cs.candidates_[u];
    c.clear();
    for (std::uint32_t k = 0; k < slots.size(); ++k)
      if (alive[k]) c.push_back(slots[k]);

    for (auto& e : cs.edges_[u]) {
      if (e.backward != plan.parent_of(u)) continue;
      std::uint32_t write = 0;
      std::uint32_t begin = 0;
      for (std::size_t key = 0; key + 1 < e.offsets.size(); ++key) {
        std::uint32_t end = e.offsets[key + 1];
        for (std::uint32_t r = begin; r < end; ++r)
          if (alive[e.slots[r]]) e.slots[write++] = e.slots[r];
        begin = end;
        e.offsets[key + 1] = write;
      }
      e.slots.resize(write);
    }
  }
  return cs;
}

// Structural audit of a refined candidate space. Returns one message per
// violated invariant; empty means the space is consistent.
//
// Parent-edge coverage is checked against every key of the parent edge (the
// parent's candidate set as it stood when u was refined): a single reverse
// pass may later prune a parent candidate without revisiting u.
inline std::vector<std::string> audit_candidate_space(const LabeledGraph& q, const DataGraph& data,
                                                      const QueryPlan& plan, const CandidateSpace& cs) {
  const LabeledGraph& d = data.graph;
  std::vector<std::string> issues;
  auto report = [&](QueryVertex u, const std::string& what) { issues.push_back("u" + std::to_string(u) + ": " + what); };

  for (QueryVertex u = 0; u < plan.size(); ++u) {
    auto slots = cs.slots(u);
    auto cand = cs.candidates(u);
    if (!std::is_sorted(slots.begin(), slots.end()) || std::adjacent_find(slots.begin(), slots.end()) != slots.end())
      report(u, "slots not strictly ascending");
    std::vector<VertexId> live;
    for (std::uint32_t k = 0; k < slots.size(); ++k)
      if (cs.alive(u, k)) live.push_back(slots[k]);
    if (!std::equal(live.begin(), live.end(), cand.begin(), cand.end())) report(u, "candidates disagree with alive slots");
    for (VertexId s : cand)
      if (d.label(s) != q.label(u) || d.degree(s) < q.degree(u)) report(u, "candidate " + std::to_string(s) + " fails label/degree");

    if (cs.edges(u).size() != plan.backward[u].size()) report(u, "missing backward edge index");
    for (const auto& e : cs.edges(u)) {
      auto keys = cs.slots(e.backward);
      if (e.offsets.size() != keys.size() + 1) {
        report(u, "edge index offsets size mismatch");
        continue;
      }
      for (std::uint32_t key = 0; key < keys.size(); ++key)
        for (std::uint32_t s : e.at(key)) {
          if (s >= slots.size()) {
            report(u, "index entry slot out of range");
            continue;
          }
          if (d.label(slots[s]) != q.label(u) || !d.has_edge(slots[s], keys[key]))
            report(u, "index entry " + std::to_string(slots[s]) + " not adjacent to key " + std::to_string(keys[key]));
        }
      for (std::uint32_t key = 0; key < keys.size(); ++key) {
        auto list = e.at(key);
        if (!std::is_sorted(list.begin(), list.end())) report(u, "index list not sorted");
      }
    }

    if (plan.is_root(u)) continue;
    const auto* parent_edge = cs.edge(u, plan.parent_of(u));
    if (!parent_edge) continue;
    std::vector<std::uint8_t> covered(slots.size(), 0);
    for (std::uint32_t key = 0; key + 1 < parent_edge->offsets.size(); ++key)
      for (std::uint32_t s : parent_edge->at(key)) {
        if (s < slots.size() && !cs.alive(u, s)) report(u, "pruned candidate left in parent index");
        if (s < slots.size()) covered[s] = 1;
      }
    for (std::uint32_t k = 0; k < slots.size(); ++k)
      if (cs.alive(u, k) && !covered[k]) report(u, "candidate " + std::to_string(slots[k]) + " missing from parent index");
  }
  return issues;
}

// ---------------------------------------------------------------------------
// Whole filtering step

struct FilterOutput {
  QueryPlan plan;
  CandidateSpace space;
  std::size_t seed_count = 0;     // sum |C(u)| after the initial filter
  std::size_t fcg_count = 0;      // ... after forward generation
  std::size_t refined_count = 0;  // ... after refinement

  bool unsatisfiable() const { return space.has_empty_set(); }
};

inline FilterOutput run_filter(const LabeledGraph& q, const NeighborLabelIndex& q_index, const DataGraph& data,
                               FilterKind kind = FilterKind::lpf) {
  FilterOutput out;
  auto seeds = initial_candidates(q, q_index, data, kind);
  std::vector<std::size_t> sizes;
  for (const auto& s : seeds) {
    sizes.push_back(s.size());
    out.seed_count += s.size();
  }
  out.plan = build_query_plan(q, sizes);
  out.space = fcg(q, data, out.plan, seeds);
  out.fcg_count = out.space.total_candidates();
  if (!out.space.has_empty_set()) out.space = bcprefine(q, data, out.plan, std::move(out.space));
  out.refined_count = out.space.total_candidates();
  return out;
}

}  // namespace l2match
