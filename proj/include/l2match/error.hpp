#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace l2match {

// Bad user input: unreadable files, malformed graphs, unsupported queries.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structure produced by this library failed one of its own invariants.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class ParseErrorKind {
  malformed_line,
  vertex_out_of_range,
  duplicate_edge,
  self_loop,
  degree_mismatch,
  edge_count_mismatch,
  vertex_count_mismatch,
};

inline const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::malformed_line: return "malformed line";
    case ParseErrorKind::vertex_out_of_range: return "vertex id out of range";
    case ParseErrorKind::duplicate_edge: return "duplicate edge";
    case ParseErrorKind::self_loop: return "self-loop";
    case ParseErrorKind::degree_mismatch: return "degree mismatch";
    case ParseErrorKind::edge_count_mismatch: return "edge count mismatch";
    case ParseErrorKind::vertex_count_mismatch: return "vertex count mismatch";
  }
  return "parse error";
}

class GraphParseError : public InputError {
 public:
  GraphParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
      : InputError("line " + std::to_string(line) + ": " + to_string(kind) +
                   (detail.empty() ? "" : " (" + detail + ")")),
        kind_(kind),
        line_(line) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  // 1-based line number of the offending line.
  std::size_t line() const noexcept { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

}  // namespace l2match
