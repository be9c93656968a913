#pragma once

#include <cmath>
#include <cstdint>
#include <array>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <optional>
#include <vector>

#include "l2match/bench/run.hpp"
#include "l2match/error.hpp"

namespace l2match::bench {

enum class Hardness { easy, easy_or_hard, hard, unsolved };

inline const char* to_string(Hardness h) {
  switch (h) {
    case Hardness::easy: return "E";
    case Hardness::easy_or_hard: return "EH";
    case Hardness::hard: return "H";
    case Hardness::unsolved: return "U";
  }
  return "?";
}

// Hardness from how many of `total` configurations solved a query.
inline Hardness hardness_from_solved(std::size_t solved, std::size_t total) {
  if (solved == total) return Hardness::easy;
  if (solved == 0) return Hardness::unsolved;
  if (solved == 1) return Hardness::hard;
  return Hardness::easy_or_hard;
}

struct ConfigurationRecords {
  std::string name;
  std::vector<QueryRecord> records;
};

struct QueryHardness {
  std::string query_id;
  Hardness hardness;
  std::size_t solved_by;
};

// A query counts as solved by a configuration unless it timed out there.
// Output follows the record order of the first configuration.
inline std::vector<QueryHardness> classify_hardness(std::span<const ConfigurationRecords> configs) {
  if (configs.size() < 2) throw InputError("hardness needs at least two configurations");
  std::vector<std::unordered_map<std::string, bool>> solved(configs.size());
  for (std::size_t c = 0; c < configs.size(); ++c)
    for (const auto& r : configs[c].records)
      if (!solved[c].emplace(r.query_id, !r.timed_out).second)
        throw InputError(configs[c].name + ": duplicate query id " + r.query_id);
  for (std::size_t c = 1; c < configs.size(); ++c) {
    bool same = solved[c].size() == solved[0].size();
    for (const auto& [id, ok] : solved[0]) same = same && solved[c].count(id);
    if (!same) throw InputError(configs[c].name + ": query set differs from " + configs[0].name);
  }
  std::vector<QueryHardness> out;
  for (const auto& r : configs[0].records) {
    std::size_t count = 0;
    for (const auto& s : solved) count += s.at(r.query_id) ? 1 : 0;
    out.push_back({r.query_id, hardness_from_solved(count, configs.size()), count});
  }
  return out;
}

struct MetricSummary {
  std::string metric;
  std::size_t samples = 0;    // queries contributing a percentage
  double mean_decrease = 0;   // mean of per-query 100 * (base - treat) / base
  double stddev_decrease = 0; // population standard deviation of the same
};

struct BucketSummary {
  std::uint64_t query_edges = 0;
  std::size_t queries = 0;
  std::vector<MetricSummary> metrics;
};

struct ImprovementSummary {
  std::size_t paired = 0;    // queries solved on both sides
  std::size_t excluded = 0;  // queries timed out on either side or unpaired
  std::vector<MetricSummary> metrics;
  std::vector<BucketSummary> by_query_edges;
};

namespace detail {

struct Metric {
  const char* name;
  std::uint64_t QueryRecord::*field;
};

inline constexpr std::array<Metric, 4> improvement_metrics{{
    {"query_time", &QueryRecord::total_ns},
    {"filter_time", &QueryRecord::filter_ns},
    {"candidate_count", &QueryRecord::candidate_count},
    {"search_nodes", &QueryRecord::search_nodes},
}};

// Per-query percentage decrease. A zero baseline only yields a value when the
// treatment is zero too (0%); otherwise the query is skipped for that metric.
inline std::optional<double> percent_decrease(std::uint64_t base, std::uint64_t treat) {
  if (base == 0) return treat == 0 ? std::optional<double>(0.0) : std::nullopt;
  return 100.0 * (static_cast<double>(base) - static_cast<double>(treat)) / static_cast<double>(base);
}

using Pair = std::pair<const QueryRecord*, const QueryRecord*>;

inline std::vector<MetricSummary> summarize(const std::vector<Pair>& pairs) {
  std::vector<MetricSummary> out;
  for (const Metric& m : improvement_metrics) {
    std::vector<double> values;
    for (const auto& [b, t] : pairs)
      if (auto p = percent_decrease(b->*m.field, t->*m.field)) values.push_back(*p);
    MetricSummary s;
    s.metric = m.name;
    s.samples = values.size();
    if (!values.empty()) {
      double sum = 0;
      for (double v : values) sum += v;
      s.mean_decrease = sum / static_cast<double>(values.size());
      double sq = 0;
      for (double v : values) sq += (v - s.mean_decrease) * (v - s.mean_decrease);
      s.stddev_decrease = std::sqrt(sq / static_cast<double>(values.size()));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

// Mean per-query percentage decrease from baseline to treatment for query
// time, filter time, candidate count and search nodes. Only queries present
// on both sides and timed out on neither are used.
inline ImprovementSummary improvement_stats(const std::vector<QueryRecord>& baseline,
                                            const std::vector<QueryRecord>& treatment) {
  std::unordered_map<std::string, const QueryRecord*> by_id;
  for (const auto& r : treatment) by_id.emplace(r.query_id, &r);

  ImprovementSummary out;
  std::vector<detail::Pair> pairs;
  std::map<std::uint64_t, std::vector<detail::Pair>> buckets;
  for (const auto& b : baseline) {
    auto it = by_id.find(b.query_id);
    if (it == by_id.end() || b.timed_out || it->second->timed_out) {
      ++out.excluded;
      continue;
    }
    pairs.emplace_back(&b, it->second);
    buckets[b.qe].emplace_back(&b, it->second);
  }
  if (pairs.empty()) throw InputError("no query solved by both baseline and treatment");
  out.paired = pairs.size();
  out.metrics = detail::summarize(pairs);
  for (const auto& [qe, group] : buckets) out.by_query_edges.push_back({qe, group.size(), detail::summarize(group)});
  return out;
}

}  // namespace l2match::bench
