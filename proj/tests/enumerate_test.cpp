#include <gtest/gtest.h>

#include <chrono>
#include <optional>

#include "fixtures.hpp"
#include "l2match/bench/generators.hpp"
#include "l2match/l2match.hpp"
#include "random_suite.hpp"

using namespace l2match;
using namespace l2match::testing;

namespace {

struct Prepared {
  LabeledGraph q;
  DataGraph data;
  FilterOutput filter;

  Prepared(LabeledGraph query, LabeledGraph d, FilterKind kind = FilterKind::lpf)
      : q(std::move(query)), data(std::move(d)), filter(run_filter(q, NeighborLabelIndex(q), data, kind)) {}

  EnumerationResult run(EnumerateOptions options = {}) const { return enumerate(filter.space, filter.plan, options); }
};

using Mapping = std::vector<std::optional<VertexId>>;

}  // namespace

TEST(LocalCandidates, Q0OnD0) {
  Prepared p(q0(), d0());
  Mapping mu(3);
  EXPECT_EQ(local_candidates(1, mu, p.filter.space, p.filter.plan), (std::vector<VertexId>{4}));
  mu[1] = 4;
  mu[0] = 1;
  EXPECT_EQ(local_candidates(2, mu, p.filter.space, p.filter.plan), (std::vector<VertexId>{3}));
}

TEST(LocalCandidates, Q2OnD2AfterRefine) {
  Prepared p(q2(), d2());
  Mapping mu(3);
  mu[0] = 0;
  EXPECT_EQ(local_candidates(1, mu, p.filter.space, p.filter.plan), (std::vector<VertexId>{1}));
}

TEST(LocalCandidates, MissingIndexEntryIsAnInvariantViolation) {
  Prepared p(q0(), d0());
  Mapping mu(3);
  mu[1] = 2;  // not a candidate of u1
  EXPECT_THROW(local_candidates(0, mu, p.filter.space, p.filter.plan), InvariantViolation);
  Mapping unmapped(3);
  EXPECT_THROW(local_candidates(0, unmapped, p.filter.space, p.filter.plan), std::invalid_argument);
}

TEST(Enumerate, FixtureCounts) {
  EnumerateOptions collect;
  collect.collect = true;
  auto r0 = Prepared(q0(), d0()).run(collect);
  EXPECT_EQ(r0.embedding_count, 2u);
  EXPECT_FALSE(r0.halted_by_cap);
  EXPECT_FALSE(r0.timed_out);
  EXPECT_EQ(r0.embeddings, (std::vector<Embedding>{{1, 4, 3}, {3, 4, 1}}));

  auto r1 = Prepared(q1(), d0()).run(collect);
  EXPECT_EQ(r1.embedding_count, 4u);
  auto got = r1.embeddings;
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<Embedding>{{0, 1, 4}, {0, 3, 4}, {2, 1, 4}, {2, 3, 4}}));

  auto r2 = Prepared(q2(), d2()).run(collect);
  EXPECT_EQ(r2.embedding_count, 1u);
  EXPECT_EQ(r2.embeddings, (std::vector<Embedding>{{0, 1, 2}}));
}

TEST(Enumerate, CapHaltsExactly) {
  EnumerateOptions opts;
  opts.max_embeddings = 1;
  auto r = Prepared(q0(), d0()).run(opts);
  EXPECT_EQ(r.embedding_count, 1u);
  EXPECT_TRUE(r.halted_by_cap);
}

TEST(Enumerate, DefaultLimits) {
  EnumerateOptions opts;
  EXPECT_EQ(opts.max_embeddings, 1'000'000u);
  EXPECT_EQ(opts.time_limit, std::chrono::seconds(300));
  EXPECT_TRUE(opts.jump_redo);
  EXPECT_FALSE(opts.collect);
  EXPECT_EQ(opts.collect_limit, 1000u);
}

TEST(Enumerate, SingleVertexQuery) {
  auto r = Prepared(parse_graph("t 1 0\nv 0 2 0\n"), d0()).run();
  EXPECT_EQ(r.embedding_count, 1u);
  EXPECT_EQ(r.search_nodes, 1u);
}

TEST(Enumerate, NonInducedSemantics) {
  // Data triangle, query 2-edge path, one label: every ordered path counts.
  LabeledGraph tri = parse_graph("t 3 3\nv 0 0 2\nv 1 0 2\nv 2 0 2\ne 0 1\ne 1 2\ne 0 2\n");
  LabeledGraph path = parse_graph("t 3 2\nv 0 0 1\nv 1 0 2\nv 2 0 1\ne 0 1\ne 1 2\n");
  EXPECT_EQ(Prepared(path, tri).run().embedding_count, 6u);
  EXPECT_EQ(brute_force_enumerate(path, tri).embedding_count, 6u);
}

TEST(Enumerate, CollectBufferIsBounded) {
  LabeledGraph data = bench::gen_er_graph(20, 0.6, 1, 3);
  LabeledGraph edge = parse_graph("t 2 1\nv 0 0 1\nv 1 0 1\ne 0 1\n");
  EnumerateOptions opts;
  opts.collect = true;
  opts.collect_limit = 5;
  auto r = Prepared(edge, data).run(opts);
  EXPECT_EQ(r.embedding_count, 2 * data.edge_count());
  EXPECT_EQ(r.embeddings.size(), 5u);
}

TEST(Enumerate, TimeLimitSetsFlag) {
  LabeledGraph data = bench::gen_er_graph(120, 0.5, 1, 1);
  LabeledGraph q = bench::gen_random_walk_query(data, 12, 2);
  EnumerateOptions opts;
  opts.max_embeddings = unlimited_embeddings;
  opts.time_limit = std::chrono::milliseconds(50);
  auto r = Prepared(q, data).run(opts);
  EXPECT_TRUE(r.timed_out);
  EXPECT_FALSE(r.halted_by_cap);
  EXPECT_LT(r.elapsed, std::chrono::seconds(2));
}

TEST(JumpRedo, ProbeOnFixtures) {
  Prepared p(q0(), d0());
  auto cmp = jr_soundness_probe(p.filter.space, p.filter.plan);
  EXPECT_EQ(cmp.with_jump_redo.embedding_count, 2u);
  EXPECT_EQ(cmp.without_jump_redo.embedding_count, 2u);

  Prepared one(parse_graph("t 1 0\nv 0 0 0\n"), d0());
  auto single = jr_soundness_probe(one.filter.space, one.filter.plan);
  EXPECT_EQ(single.with_jump_redo.embedding_count, single.without_jump_redo.embedding_count);
  EXPECT_EQ(single.with_jump_redo.search_nodes, single.without_jump_redo.search_nodes);
}

TEST(JumpRedo, SkipsDeadBranches) {
  // Order u0 (A), u1 (B), u2 (C), u3 (D); u3 hangs off u0 only. Each u0
  // candidate but the last has no D neighbor, so LC(u3) is empty and the
  // search jumps from u3 straight back to u0 instead of cycling u1/u2.
  std::vector<Label> labels{0, 1, 1, 1, 2, 2, 2, 0, 3};
  std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}, {3, 6}, {7, 1}, {7, 2}, {7, 3}, {7, 8}};
  LabeledGraph d = LabeledGraph::from_edges(labels, edges);
  LabeledGraph q = LabeledGraph::from_edges({0, 1, 2, 3}, std::vector<Edge>{{0, 1}, {1, 2}, {0, 3}});
  Prepared p(q, d, FilterKind::ldf);
  auto cmp = jr_soundness_probe(p.filter.space, p.filter.plan);
  EXPECT_EQ(cmp.with_jump_redo.embedding_count, brute_force_enumerate(q, d).embedding_count);
  EXPECT_EQ(cmp.with_jump_redo.embedding_count, cmp.without_jump_redo.embedding_count);
  EXPECT_LE(cmp.with_jump_redo.search_nodes, cmp.without_jump_redo.search_nodes);
}

TEST(Enumerate, RandomSuiteAgreesWithOracleInBothModes) {
  std::uint64_t nodes_on = 0, nodes_off = 0;
  for (std::uint64_t seed = 1000; seed < 1150; ++seed) {
    RandomInstance ri = random_instance(seed);
    SCOPED_TRACE(ri.describe());
    Prepared p(ri.query, ri.data);
    auto expected = brute_force_enumerate(ri.query, ri.data, {.cap = std::nullopt, .collect = false}).embedding_count;
    ASSERT_FALSE(p.filter.unsatisfiable());
    auto cmp = jr_soundness_probe(p.filter.space, p.filter.plan);
    EXPECT_EQ(cmp.with_jump_redo.embedding_count, expected);
    EXPECT_EQ(cmp.without_jump_redo.embedding_count, expected);
    EXPECT_LE(cmp.with_jump_redo.search_nodes, cmp.without_jump_redo.search_nodes);
    nodes_on += cmp.with_jump_redo.search_nodes;
    nodes_off += cmp.without_jump_redo.search_nodes;
  }
  EXPECT_LE(nodes_on, nodes_off);
}

TEST(Enumerate, StaleAndPrunedEntriesNeverUsed) {
  for (std::uint64_t seed = 2000; seed < 2100; ++seed) {
    RandomInstance ri = random_instance(seed);
    Prepared p(ri.query, ri.data);
    for (bool jr : {true, false}) {
      AuditProbe probe;
      EnumerateOptions opts;
      opts.jump_redo = jr;
      opts.max_embeddings = unlimited_embeddings;
      enumerate(p.filter.space, p.filter.plan, opts, probe);
      EXPECT_EQ(probe.stale_key_lookups, 0u) << ri.describe();
      EXPECT_EQ(probe.pruned_in_local, 0u) << ri.describe();
    }
  }
}

TEST(Enumerate, Deterministic) {
  RandomInstance ri = random_instance(77);
  Prepared p(ri.query, ri.data);
  EnumerateOptions opts;
  opts.collect = true;
  auto a = p.run(opts);
  auto b = p.run(opts);
  EXPECT_EQ(a.embedding_count, b.embedding_count);
  EXPECT_EQ(a.search_nodes, b.search_nodes);
  EXPECT_EQ(a.embeddings, b.embeddings);
}

TEST(Enumerate, EmbeddingsAreValid) {
  for (std::uint64_t seed = 3000; seed < 3040; ++seed) {
    RandomInstance ri = random_instance(seed);
    Prepared p(ri.query, ri.data);
    EnumerateOptions opts;
    opts.collect = true;
    auto r = p.run(opts);
    auto oracle = brute_force_enumerate(ri.query, ri.data, {.cap = 1000, .collect = true});
    auto got = r.embeddings;
    std::sort(got.begin(), got.end());
    for (const auto& e : got) EXPECT_TRUE(std::binary_search(oracle.mappings.begin(), oracle.mappings.end(), e) ||
                                          oracle.embedding_count == 1000);
    EXPECT_TRUE(std::adjacent_find(got.begin(), got.end()) == got.end());
  }
}
