#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "l2match/bench/generators.hpp"
#include "l2match/oracle.hpp"
#include "random_suite.hpp"

using namespace l2match;
using namespace l2match::testing;

TEST(BruteForce, FixtureCounts) {
  auto r0 = brute_force_enumerate(q0(), d0());
  EXPECT_EQ(r0.embedding_count, 2u);
  EXPECT_EQ(r0.mappings, (std::vector<std::vector<VertexId>>{{1, 4, 3}, {3, 4, 1}}));
  EXPECT_EQ(brute_force_enumerate(q1(), d0()).embedding_count, 4u);
  auto r2 = brute_force_enumerate(q2(), d2());
  EXPECT_EQ(r2.embedding_count, 1u);
  EXPECT_EQ(r2.mappings, (std::vector<std::vector<VertexId>>{{0, 1, 2}}));
}

TEST(BruteForce, SizeGuard) {
  LabeledGraph big = bench::gen_er_graph(65, 0.1, 1, 1);
  EXPECT_THROW(brute_force_enumerate(q0(), big), std::invalid_argument);
  LabeledGraph nine = bench::gen_er_graph(9, 1.0, 1, 1);
  EXPECT_THROW(brute_force_enumerate(nine, d0()), std::invalid_argument);
  LabeledGraph sixty_four = bench::gen_er_graph(64, 0.05, 1, 1);
  EXPECT_NO_THROW(brute_force_enumerate(parse_graph("t 1 0\nv 0 0 0\n"), sixty_four));
}

TEST(BruteForce, CapStopsEarly) {
  LabeledGraph k5 = bench::gen_er_graph(5, 1.0, 1, 0);
  LabeledGraph edge = parse_graph("t 2 1\nv 0 0 1\nv 1 0 1\ne 0 1\n");
  EXPECT_EQ(brute_force_enumerate(edge, k5).embedding_count, 20u);
  EXPECT_EQ(brute_force_enumerate(edge, k5, {.cap = 3, .collect = true}).embedding_count, 3u);
}

TEST(BruteForce, CountIsInvariantUnderDataRelabeling) {
  // Renumbering data vertices maps embeddings one to one.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomInstance ri = random_instance(seed);
    const auto n = ri.data.vertex_count();
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Label> labels(n);
    for (VertexId v = 0; v < n; ++v) labels[perm[v]] = ri.data.label(v);
    std::vector<Edge> edges;
    for (const Edge& e : ri.data.edges()) edges.push_back({perm[e.source], perm[e.target]});
    LabeledGraph shuffled = LabeledGraph::from_edges(labels, edges);

    auto a = brute_force_enumerate(ri.query, ri.data);
    auto b = brute_force_enumerate(ri.query, shuffled);
    ASSERT_EQ(a.embedding_count, b.embedding_count) << ri.describe();
    for (auto& m : a.mappings)
      for (auto& v : m) v = perm[v];
    std::sort(a.mappings.begin(), a.mappings.end());
    EXPECT_EQ(a.mappings, b.mappings) << ri.describe();
  }
}

TEST(BruteForce, MappingsAreInjectiveAndEdgePreserving) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    RandomInstance ri = random_instance(seed);
    auto r = brute_force_enumerate(ri.query, ri.data, {.cap = 5000, .collect = true});
    for (const auto& m : r.mappings) {
      auto sorted = m;
      std::sort(sorted.begin(), sorted.end());
      EXPECT_TRUE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      for (VertexId u = 0; u < m.size(); ++u) EXPECT_EQ(ri.query.label(u), ri.data.label(m[u]));
      for (const Edge& e : ri.query.edges()) EXPECT_TRUE(ri.data.has_edge(m[e.source], m[e.target]));
    }
  }
}

TEST(CountByFilter, Q1OnD0) {
  DataGraph data(d0());
  auto ldf = count_by_filter(q1(), data, FilterKind::ldf);
  auto nlf = count_by_filter(q1(), data, FilterKind::nlf);
  auto lpf = count_by_filter(q1(), data, FilterKind::lpf);
  std::vector<std::size_t> ldf_sizes, nlf_sizes;
  for (const auto& c : ldf.candidates) ldf_sizes.push_back(c.size());
  for (const auto& c : nlf.candidates) nlf_sizes.push_back(c.size());
  EXPECT_EQ(ldf_sizes, (std::vector<std::size_t>{3, 2, 1}));
  EXPECT_EQ(ldf.total, 6u);
  EXPECT_EQ(nlf_sizes, (std::vector<std::size_t>{2, 2, 1}));
  EXPECT_EQ(nlf.total, 5u);
  EXPECT_EQ(lpf.candidates, nlf.candidates);
}

TEST(CountByFilter, Q2OnD2LdfAndLpfAgree) {
  DataGraph data(d2());
  EXPECT_EQ(count_by_filter(q2(), data, FilterKind::ldf).total, 5u);
  EXPECT_EQ(count_by_filter(q2(), data, FilterKind::lpf).total, 5u);
}
