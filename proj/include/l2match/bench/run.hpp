#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "l2match/error.hpp"
#include "l2match/graph.hpp"
#include "l2match/pipeline.hpp"

namespace l2match::bench {

enum class ReportFormat { csv, json };

struct RunConfig {
  std::string data_path;
  std::vector<std::string> query_paths;
  FilterKind filter = FilterKind::lpf;
  bool jump_redo = true;
  std::uint64_t max_embeddings = 1'000'000;
  std::chrono::duration<double> time_limit{300.0};
  ReportFormat format = ReportFormat::csv;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  void validate() const {
    if (max_embeddings < 1) throw InputError("max embeddings must be at least 1");
    if (!(time_limit.count() > 0.0)) throw InputError("time limit must be positive");
    if (threads < 1) throw InputError("thread count must be at least 1");
  }
};

struct QueryRecord {
  std::string query_id;
  std::uint64_t qv = 0;
  std::uint64_t qe = 0;
  std::optional<double> density;
  std::uint64_t filter_ns = 0;
  std::uint64_t enum_ns = 0;
  std::uint64_t total_ns = 0;
  std::uint64_t candidate_count = 0;  // sum |C(u)| after refinement
  std::uint64_t search_nodes = 0;
  std::uint64_t embeddings = 0;
  bool halted = false;
  bool timed_out = false;

  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

struct QueryFailure {
  std::string query_id;
  std::string message;
};

struct BatchResult {
  std::vector<QueryRecord> records;
  std::vector<QueryFailure> failures;
};

inline LabeledGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return parse_graph(in);
  } catch (const GraphParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline std::string query_id_for(const std::string& path) { return std::filesystem::path(path).stem().string(); }

inline MatchOptions match_options(const RunConfig& cfg) {
  MatchOptions opts;
  opts.filter = cfg.filter;
  opts.enumeration.jump_redo = cfg.jump_redo;
  opts.enumeration.max_embeddings = cfg.max_embeddings;
  opts.enumeration.time_limit = std::chrono::duration_cast<std::chrono::nanoseconds>(cfg.time_limit);
  return opts;
}

inline QueryRecord run_query(const DataGraph& data, const LabeledGraph& q, std::string query_id, const RunConfig& cfg) {
  MatchResult m = match(q, data, match_options(cfg));
  QueryRecord r;
  r.query_id = std::move(query_id);
  r.qv = q.vertex_count();
  r.qe = q.edge_count();
  r.density = graph_density(q.vertex_count(), q.edge_count());
  r.filter_ns = static_cast<std::uint64_t>(m.filter_time.count());
  r.enum_ns = static_cast<std::uint64_t>(m.enumeration_time.count());
  r.total_ns = static_cast<std::uint64_t>(m.total_time.count());
  r.candidate_count = m.filter.refined_count;
  r.search_nodes = m.enumeration.search_nodes;
  r.embeddings = m.enumeration.embedding_count;
  r.halted = m.enumeration.halted_by_cap;
  r.timed_out = m.enumeration.timed_out;
  return r;
}

// Runs every query path against an already prepared data graph. Records and
// failures come back in input order whatever the thread count.
inline BatchResult run_queries(const DataGraph& data, const std::vector<std::string>& query_paths,
                               const RunConfig& cfg) {
  cfg.validate();
  const std::size_t n = query_paths.size();
  std::vector<std::optional<QueryRecord>> records(n);
  std::vector<std::optional<std::string>> errors(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        LabeledGraph q = load_graph(query_paths[i]);
        records[i] = run_query(data, q, query_id_for(query_paths[i]), cfg);
      } catch (const InputError& e) {
        errors[i] = e.what();
      }
    }
  };
  if (cfg.threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < cfg.threads; ++t) pool.emplace_back(worker);
  }

  BatchResult out;
  for (std::size_t i = 0; i < n; ++i) {
    if (records[i]) out.records.push_back(std::move(*records[i]));
    if (errors[i]) out.failures.push_back({query_id_for(query_paths[i]), *errors[i]});
  }
  return out;
}

inline BatchResult run_batch(const RunConfig& cfg) {
  cfg.validate();
  DataGraph data(load_graph(cfg.data_path));
  return run_queries(data, cfg.query_paths, cfg);
}

}  // namespace l2match::bench
