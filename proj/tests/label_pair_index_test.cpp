#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "l2match/bench/generators.hpp"
#include "l2match/label_pair_index.hpp"

using namespace l2match;
using namespace l2match::testing;

namespace {

std::vector<Edge> entries(std::span<const Edge> s) { return {s.begin(), s.end()}; }
std::vector<VertexId> ids(std::span<const VertexId> s) { return {s.begin(), s.end()}; }

void expect_index_invariants(const LabeledGraph& g, const LabelPairIndex& idx) {
  NeighborLabelIndex nli(g);
  auto labels = g.distinct_labels();
  std::size_t vertex_total = 0, entry_total = 0;
  std::set<Edge> recovered;
  for (Label l1 : labels) {
    auto vs = idx.vertices_with_label(l1);
    vertex_total += vs.size();
    EXPECT_TRUE(std::is_sorted(vs.begin(), vs.end()));
    for (VertexId v : vs) EXPECT_EQ(g.label(v), l1);
    for (Label l2 : labels) {
      auto bucket = idx.edges_with_label_pair(l1, l2);
      entry_total += bucket.size();
      EXPECT_TRUE(std::is_sorted(bucket.begin(), bucket.end()));
      std::size_t nlf_sum = 0;
      for (VertexId s : vs) nlf_sum += nli.frequency(s, l2);
      EXPECT_EQ(bucket.size(), nlf_sum);
      auto mirror = idx.edges_with_label_pair(l2, l1);
      for (const Edge& e : bucket) {
        EXPECT_EQ(g.label(e.source), l1);
        EXPECT_EQ(g.label(e.target), l2);
        EXPECT_TRUE(std::binary_search(mirror.begin(), mirror.end(), Edge{e.target, e.source}));
        recovered.insert({std::min(e.source, e.target), std::max(e.source, e.target)});
      }
    }
  }
  EXPECT_EQ(vertex_total, g.vertex_count());
  EXPECT_EQ(entry_total, 2 * g.edge_count());
  auto edges = g.edges();
  EXPECT_EQ(std::vector<Edge>(recovered.begin(), recovered.end()), edges);
}

}  // namespace

TEST(LabelPairIndex, FixtureBuckets) {
  LabeledGraph g = d0();
  LabelPairIndex idx = build_label_pair_index(g);
  EXPECT_EQ(ids(vertices_with_label(idx, A)), (std::vector<VertexId>{0, 2, 5}));
  EXPECT_EQ(ids(vertices_with_label(idx, B)), (std::vector<VertexId>{1, 3}));
  EXPECT_EQ(ids(vertices_with_label(idx, C)), (std::vector<VertexId>{4}));
  EXPECT_TRUE(vertices_with_label(idx, 9).empty());

  EXPECT_EQ(entries(edges_with_label_pair(idx, C, B)), (std::vector<Edge>{{4, 1}, {4, 3}}));
  EXPECT_EQ(entries(edges_with_label_pair(idx, A, B)), (std::vector<Edge>{{0, 1}, {0, 3}, {2, 1}, {2, 3}}));
  EXPECT_EQ(entries(edges_with_label_pair(idx, C, A)), (std::vector<Edge>{{4, 5}}));
  EXPECT_EQ(entries(edges_with_label_pair(idx, B, B)), (std::vector<Edge>{{1, 3}, {3, 1}}));
  EXPECT_TRUE(edges_with_label_pair(idx, C, C).empty());
  EXPECT_TRUE(edges_with_label_pair(idx, 9, A).empty());
  expect_index_invariants(g, idx);
}

TEST(LabelPairIndex, EmptyGraph) {
  LabelPairIndex idx(parse_graph("t 0 0\n"));
  EXPECT_EQ(idx.entry_count(), 0u);
  EXPECT_TRUE(idx.vertices_with_label(0).empty());
  EXPECT_TRUE(idx.edges_with_label_pair(0, 0).empty());
}

TEST(LabelPairIndex, UnlabeledGraphIsOneBucket) {
  LabeledGraph g = bench::gen_er_graph(40, 0.3, 1, 11);
  LabelPairIndex idx(g);
  EXPECT_EQ(idx.vertices_with_label(0).size(), 40u);
  EXPECT_EQ(idx.edges_with_label_pair(0, 0).size(), 2 * g.edge_count());
}

TEST(LabelPairIndex, InvariantsOnGeneratedGraphs) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    LabeledGraph g = bench::gen_er_graph(30, 0.2, 1 + seed % 6, seed);
    LabelPairIndex idx(g);
    EXPECT_TRUE(idx.dense());
    expect_index_invariants(g, idx);
  }
}

TEST(LabelPairIndex, SparseTableMatchesDense) {
  // Same topology with labels spread far apart forces the sparse table.
  LabeledGraph g = bench::gen_er_graph(30, 0.3, 4, 5);
  std::vector<Label> wide;
  for (Label l : g.labels()) wide.push_back(l * 100'000);
  auto edges = g.edges();
  LabeledGraph h = LabeledGraph::from_edges(wide, edges);
  LabelPairIndex dense(g), sparse(h);
  ASSERT_TRUE(dense.dense());
  ASSERT_FALSE(sparse.dense());
  expect_index_invariants(h, sparse);
  for (Label a = 0; a < 4; ++a)
    for (Label b = 0; b < 4; ++b)
      EXPECT_EQ(entries(dense.edges_with_label_pair(a, b)), entries(sparse.edges_with_label_pair(a * 100'000, b * 100'000)));
}
