#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <unordered_map>
#include <vector>

#include "l2match/graph.hpp"

namespace l2match {

// Directed edge entries of a data graph grouped by (source label, target
// label), plus the data vertices grouped by label. Both orientations of every
// undirected edge are stored, so a bucket can be scanned from either end.
class LabelPairIndex {
 public:
  // Pair buckets use a dense (labels x labels) table up to this many cells.
  static constexpr std::uint64_t dense_cell_limit = std::uint64_t{1} << 16;

  LabelPairIndex() = default;

  explicit LabelPairIndex(const LabeledGraph& g) {
    const auto n = static_cast<VertexId>(g.vertex_count());
    label_span_ = 0;
    for (VertexId v = 0; v < n; ++v) label_span_ = std::max<std::uint64_t>(label_span_, std::uint64_t{g.label(v)} + 1);
    dense_ = label_span_ * label_span_ <= dense_cell_limit;

    vertices_.resize(n);
    for (VertexId v = 0; v < n; ++v) vertices_[v] = v;
    std::stable_sort(vertices_.begin(), vertices_.end(),
                     [&](VertexId a, VertexId b) { return g.label(a) < g.label(b); });
    for (std::uint32_t i = 0; i < n; ++i) {
      Label l = g.label(vertices_[i]);
      if (vertex_ranges_.empty() || vertex_ranges_.back().label != l) vertex_ranges_.push_back({l, i, i});
      ++vertex_ranges_.back().end;
    }

    // Visiting sources in ascending id, each adjacency in ascending
    // (label, id), keeps every bucket sorted by (source, target) once the
    // entries are distributed by pair key in visit order.
    if (dense_) {
      dense_offsets_.assign(label_span_ * label_span_ + 1, 0);
      for (VertexId s = 0; s < n; ++s)
        for (VertexId t : g.neighbors(s)) ++dense_offsets_[cell(g.label(s), g.label(t)) + 1];
      for (std::size_t i = 1; i < dense_offsets_.size(); ++i) dense_offsets_[i] += dense_offsets_[i - 1];
      entries_.resize(dense_offsets_.back());
      std::vector<std::uint32_t> fill(dense_offsets_.begin(), dense_offsets_.end() - 1);
      for (VertexId s = 0; s < n; ++s)
        for (VertexId t : g.neighbors(s)) entries_[fill[cell(g.label(s), g.label(t))]++] = {s, t};
    } else {
      entries_.reserve(g.adjacency().size());
      for (VertexId s = 0; s < n; ++s)
        for (VertexId t : g.neighbors(s)) entries_.push_back({s, t});
      std::stable_sort(entries_.begin(), entries_.end(), [&](const Edge& a, const Edge& b) {
        return std::pair{g.label(a.source), g.label(a.target)} < std::pair{g.label(b.source), g.label(b.target)};
      });
      for (std::uint32_t i = 0; i < entries_.size();) {
        std::uint32_t j = i;
        Label l1 = g.label(entries_[i].source), l2 = g.label(entries_[i].target);
        while (j < entries_.size() && g.label(entries_[j].source) == l1 && g.label(entries_[j].target) == l2) ++j;
        sparse_[key(l1, l2)] = {i, j};
        i = j;
      }
    }
  }

  // Phi^{l1}_{l2}: directed entries (s, t) with L(s) = l1, L(t) = l2.
  std::span<const Edge> edges_with_label_pair(Label l1, Label l2) const {
    if (dense_) {
      if (l1 >= label_span_ || l2 >= label_span_) return {};
      auto c = cell(l1, l2);
      return {entries_.data() + dense_offsets_[c], entries_.data() + dense_offsets_[c + 1]};
    }
    auto it = sparse_.find(key(l1, l2));
    if (it == sparse_.end()) return {};
    return {entries_.data() + it->second.first, entries_.data() + it->second.second};
  }

  // Phi_l: data vertices with label l, ascending.
  std::span<const VertexId> vertices_with_label(Label l) const {
    auto it = std::lower_bound(vertex_ranges_.begin(), vertex_ranges_.end(), l,
                               [](const VertexRange& r, Label k) { return r.label < k; });
    if (it == vertex_ranges_.end() || it->label != l) return {};
    return {vertices_.data() + it->begin, vertices_.data() + it->end};
  }

  std::vector<Label> labels() const {
    std::vector<Label> out;
    for (const auto& r : vertex_ranges_) out.push_back(r.label);
    return out;
  }

  std::size_t entry_count() const noexcept { return entries_.size(); }
  bool dense() const noexcept { return dense_; }

  // Debug dump: one line per non-empty bucket.
  void dump(std::ostream& out) const {
    for (const auto& r : vertex_ranges_) out << "label " << r.label << ": " << (r.end - r.begin) << " vertices\n";
    for (const auto& a : vertex_ranges_)
      for (const auto& b : vertex_ranges_) {
        auto bucket = edges_with_label_pair(a.label, b.label);
        if (!bucket.empty()) out << "pair (" << a.label << ',' << b.label << "): " << bucket.size() << " entries\n";
      }
  }

 private:
  struct VertexRange {
    Label label;
    std::uint32_t begin;
    std::uint32_t end;
  };

  std::size_t cell(Label l1, Label l2) const { return static_cast<std::size_t>(l1 * label_span_ + l2); }
  static std::uint64_t key(Label l1, Label l2) { return (std::uint64_t{l1} << 32) | l2; }

  std::uint64_t label_span_ = 0;
  bool dense_ = true;
  std::vector<VertexId> vertices_;
  std::vector<VertexRange> vertex_ranges_;
  std::vector<Edge> entries_;
  std::vector<std::uint32_t> dense_offsets_;
  std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> sparse_;
};

inline LabelPairIndex build_label_pair_index(const LabeledGraph& g) { return LabelPairIndex(g); }

inline std::span<const Edge> edges_with_label_pair(const LabelPairIndex& index, Label l1, Label l2) {
  return index.edges_with_label_pair(l1, l2);
}

inline std::span<const VertexId> vertices_with_label(const LabelPairIndex& index, Label l) {
  return index.vertices_with_label(l);
}

}  // namespace l2match
