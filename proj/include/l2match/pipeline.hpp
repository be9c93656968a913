#pragma once

#include <chrono>

#include "l2match/enumerate.hpp"
#include "l2match/filter.hpp"

namespace l2match {

struct MatchOptions {
  FilterKind filter = FilterKind::lpf;
  EnumerateOptions enumeration;
};

struct MatchResult {
  FilterOutput filter;
  EnumerationResult enumeration;
  std::chrono::nanoseconds filter_time{0};
  std::chrono::nanoseconds enumeration_time{0};
  std::chrono::nanoseconds total_time{0};
};

// Query index, filtering step, then enumeration (skipped when filtering
// already emptied a candidate set).
inline MatchResult match(const LabeledGraph& q, const DataGraph& data, const MatchOptions& options = {}) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  MatchResult out;
  NeighborLabelIndex q_index(q);

  const auto filter_start = Clock::now();
  out.filter = run_filter(q, q_index, data, options.filter);
  const auto filter_end = Clock::now();
  out.filter_time = filter_end - filter_start;

  if (!out.filter.unsatisfiable()) out.enumeration = enumerate(out.filter.space, out.filter.plan, options.enumeration);
  const auto end = Clock::now();
  out.enumeration_time = end - filter_end;
  out.total_time = end - start;
  return out;
}

}  // namespace l2match
