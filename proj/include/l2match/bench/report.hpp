#pragma once

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "l2match/bench/run.hpp"
#include "l2match/error.hpp"

namespace l2match::bench {

inline constexpr std::array<const char*, 12> report_columns{
    "query_id", "qv",           "qe",           "density",    "filter_ns", "enum_ns",
    "total_ns", "candidate_count", "search_nodes", "embeddings", "halted",    "timed_out"};

inline constexpr std::array<const char*, 3> timing_columns{"filter_ns", "enum_ns", "total_ns"};

namespace detail {

// Shortest representation that reads back to the same double.
inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

inline std::uint64_t to_u64(const std::string& s, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw InputError("report line " + std::to_string(line) + ": bad integer '" + s + "'");
  return v;
}

inline bool to_flag(const std::string& s, std::size_t line) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw InputError("report line " + std::to_string(line) + ": bad flag '" + s + "'");
}

}  // namespace detail

inline void emit_csv(std::ostream& out, const std::vector<QueryRecord>& records) {
  for (std::size_t i = 0; i < report_columns.size(); ++i) out << (i ? "," : "") << report_columns[i];
  out << '\n';
  for (const auto& r : records) {
    out << detail::csv_escape(r.query_id) << ',' << r.qv << ',' << r.qe << ','
        << (r.density ? detail::format_double(*r.density) : "") << ',' << r.filter_ns << ',' << r.enum_ns << ','
        << r.total_ns << ',' << r.candidate_count << ',' << r.search_nodes << ',' << r.embeddings << ','
        << (r.halted ? 1 : 0) << ',' << (r.timed_out ? 1 : 0) << '\n';
  }
}

inline void emit_json(std::ostream& out, const std::vector<QueryRecord>& records) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json o;
    o["query_id"] = r.query_id;
    o["qv"] = r.qv;
    o["qe"] = r.qe;
    o["density"] = r.density ? nlohmann::ordered_json(*r.density) : nlohmann::ordered_json(nullptr);
    o["filter_ns"] = r.filter_ns;
    o["enum_ns"] = r.enum_ns;
    o["total_ns"] = r.total_ns;
    o["candidate_count"] = r.candidate_count;
    o["search_nodes"] = r.search_nodes;
    o["embeddings"] = r.embeddings;
    o["halted"] = r.halted;
    o["timed_out"] = r.timed_out;
    arr.push_back(std::move(o));
  }
  out << arr.dump(2) << '\n';
}

inline void emit_report(std::ostream& out, const std::vector<QueryRecord>& records, ReportFormat format) {
  if (format == ReportFormat::csv)
    emit_csv(out, records);
  else
    emit_json(out, records);
}

inline void emit_report(const std::string& path, const std::vector<QueryRecord>& records, ReportFormat format) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  emit_report(out, records, format);
  out.flush();
  if (!out) throw InputError(path + ": write failed");
}

inline std::vector<QueryRecord> parse_csv_report(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw InputError("empty report");
  auto header = detail::csv_split(line);
  if (header.size() != report_columns.size()) throw InputError("report header has wrong column count");
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] != report_columns[i]) throw InputError("unexpected report column '" + header[i] + "'");

  std::vector<QueryRecord> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto f = detail::csv_split(line);
    if (f.size() != report_columns.size()) throw InputError("report line " + std::to_string(line_no) + ": wrong field count");
    QueryRecord r;
    r.query_id = f[0];
    r.qv = detail::to_u64(f[1], line_no);
    r.qe = detail::to_u64(f[2], line_no);
    if (!f[3].empty()) {
      double d = 0;
      auto [ptr, ec] = std::from_chars(f[3].data(), f[3].data() + f[3].size(), d);
      if (ec != std::errc{} || ptr != f[3].data() + f[3].size())
        throw InputError("report line " + std::to_string(line_no) + ": bad density");
      r.density = d;
    }
    r.filter_ns = detail::to_u64(f[4], line_no);
    r.enum_ns = detail::to_u64(f[5], line_no);
    r.total_ns = detail::to_u64(f[6], line_no);
    r.candidate_count = detail::to_u64(f[7], line_no);
    r.search_nodes = detail::to_u64(f[8], line_no);
    r.embeddings = detail::to_u64(f[9], line_no);
    r.halted = detail::to_flag(f[10], line_no);
    r.timed_out = detail::to_flag(f[11], line_no);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<QueryRecord> parse_json_report(std::istream& in) {
  std::vector<QueryRecord> out;
  try {
    auto arr = nlohmann::json::parse(in);
    if (!arr.is_array()) throw InputError("JSON report must be an array");
    for (const auto& o : arr) {
      QueryRecord r;
      r.query_id = o.at("query_id").get<std::string>();
      r.qv = o.at("qv").get<std::uint64_t>();
      r.qe = o.at("qe").get<std::uint64_t>();
      if (!o.at("density").is_null()) r.density = o.at("density").get<double>();
      r.filter_ns = o.at("filter_ns").get<std::uint64_t>();
      r.enum_ns = o.at("enum_ns").get<std::uint64_t>();
      r.total_ns = o.at("total_ns").get<std::uint64_t>();
      r.candidate_count = o.at("candidate_count").get<std::uint64_t>();
      r.search_nodes = o.at("search_nodes").get<std::uint64_t>();
      r.embeddings = o.at("embeddings").get<std::uint64_t>();
      r.halted = o.at("halted").get<bool>();
      r.timed_out = o.at("timed_out").get<bool>();
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad JSON report: ") + e.what());
  }
  return out;
}

// Format is sniffed from the first non-blank character.
inline std::vector<QueryRecord> parse_report(std::istream& in) {
  in >> std::ws;
  if (in.peek() == '[') return parse_json_report(in);
  return parse_csv_report(in);
}

inline std::vector<QueryRecord> load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return parse_report(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Copy of the records with the timing columns zeroed, for reproducibility checks.
inline std::vector<QueryRecord> without_timings(std::vector<QueryRecord> records) {
  for (auto& r : records) r.filter_ns = r.enum_ns = r.total_ns = 0;
  return records;
}

}  // namespace l2match::bench
