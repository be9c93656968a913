// l2match command line: instance generation, batch runs, hardness and
// improvement summaries.
//
// Exit codes: 0 success, 1 input error, 2 internal invariant violation.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "l2match/bench/analysis.hpp"
#include "l2match/bench/generators.hpp"
#include "l2match/bench/report.hpp"
#include "l2match/bench/run.hpp"
#include "l2match/l2match.hpp"

namespace fs = std::filesystem;
using namespace l2match;
using namespace l2match::bench;

namespace {

constexpr int exit_input_error = 1;
constexpr int exit_invariant = 2;

// Writes to `path`, or stdout for "" / "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  fn(out);
  out.flush();
  if (!out) throw InputError(path + ": write failed");
}

std::vector<std::string> graph_files_in(const std::string& dir) {
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) throw InputError(dir + ": cannot list directory");
  std::vector<std::string> out;
  for (const auto& entry : it)
    if (entry.is_regular_file() && entry.path().extension() == ".graph") out.push_back(entry.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void print_summary(std::ostream& out, const ImprovementSummary& s) {
  out << "paired queries: " << s.paired << ", excluded: " << s.excluded << '\n';
  out << std::fixed << std::setprecision(2);
  for (const auto& m : s.metrics)
    out << "  " << std::left << std::setw(16) << m.metric << std::right << std::setw(9) << m.mean_decrease
        << "% +/- " << m.stddev_decrease << "% (n=" << m.samples << ")\n";
  for (const auto& b : s.by_query_edges) {
    out << "|E(Q)|=" << b.query_edges << " (" << b.queries << " queries):";
    for (const auto& m : b.metrics) out << ' ' << m.metric << '=' << m.mean_decrease << '%';
    out << '\n';
  }
}

nlohmann::ordered_json summary_json(const ImprovementSummary& s) {
  auto metrics = [](const std::vector<MetricSummary>& ms) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& m : ms)
      arr.push_back({{"metric", m.metric},
                     {"samples", m.samples},
                     {"mean_decrease_pct", m.mean_decrease},
                     {"stddev_decrease_pct", m.stddev_decrease}});
    return arr;
  };
  nlohmann::ordered_json j;
  j["paired"] = s.paired;
  j["excluded"] = s.excluded;
  j["metrics"] = metrics(s.metrics);
  j["by_query_edges"] = nlohmann::ordered_json::array();
  for (const auto& b : s.by_query_edges)
    j["by_query_edges"].push_back({{"query_edges", b.query_edges}, {"queries", b.queries}, {"metrics", metrics(b.metrics)}});
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l2match: subgraph matching engine and benchmark harness"};
  app.require_subcommand(1);

  // gen-data
  auto* gen_data = app.add_subcommand("gen-data", "Generate an Erdos-Renyi labeled data graph");
  std::uint32_t er_vertices = 0, er_labels = 1;
  double er_p = -1.0, er_density = -1.0;
  std::uint64_t er_seed = 0;
  std::string er_out;
  gen_data->add_option("-n,--vertices", er_vertices, "Vertex count")->required()->check(CLI::PositiveNumber);
  auto* p_opt = gen_data->add_option("-p,--probability", er_p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  auto* d_opt = gen_data->add_option("--density", er_density, "Target expected density (same as the probability)")
                    ->check(CLI::Range(0.0, 1.0));
  p_opt->excludes(d_opt);
  gen_data->add_option("-l,--labels", er_labels, "Label alphabet size")->check(CLI::PositiveNumber);
  gen_data->add_option("-s,--seed", er_seed, "Random seed");
  gen_data->add_option("-o,--output", er_out, "Output file (default stdout)");

  // gen-query
  auto* gen_query = app.add_subcommand("gen-query", "Extract random-walk induced query graphs");
  std::string gq_data, gq_dir = ".", gq_prefix = "query";
  std::uint32_t gq_size = 0, gq_count = 1;
  std::uint64_t gq_seed = 0;
  gen_query->add_option("-d,--data", gq_data, "Data graph file")->required();
  gen_query->add_option("-k,--size", gq_size, "Query vertex count")->required()->check(CLI::Range(1u, max_query_vertices));
  gen_query->add_option("-c,--count", gq_count, "Number of queries")->check(CLI::PositiveNumber);
  gen_query->add_option("-s,--seed", gq_seed, "Random seed");
  gen_query->add_option("--out-dir", gq_dir, "Output directory");
  gen_query->add_option("--prefix", gq_prefix, "Output file name prefix");

  // run
  auto* run = app.add_subcommand("run", "Run queries against a data graph and report metrics");
  RunConfig cfg;
  std::vector<std::string> query_dirs;
  std::string filter_name = "lpf", jr_name = "on", format_name = "csv", run_out;
  double time_limit_s = 300.0;
  run->add_option("-d,--data", cfg.data_path, "Data graph file")->required();
  run->add_option("-q,--query", cfg.query_paths, "Query graph file(s)");
  run->add_option("--query-dir", query_dirs, "Directory of *.graph query files");
  run->add_option("--filter", filter_name, "Candidate filter")->check(CLI::IsMember({"lpf", "nlf", "ldf"}));
  run->add_option("--jr", jr_name, "Jump-Redo enumeration")->check(CLI::IsMember({"on", "off"}));
  run->add_option("--max-embeddings", cfg.max_embeddings, "Embedding cap")->check(CLI::PositiveNumber);
  run->add_option("--time-limit", time_limit_s, "Enumeration time limit in seconds")->check(CLI::PositiveNumber);
  run->add_option("--format", format_name, "Report format")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("-s,--seed", cfg.seed, "Recorded seed");
  run->add_option("-j,--threads", cfg.threads, "Worker threads (1 = single-threaded)")->check(CLI::PositiveNumber);
  run->add_option("-o,--output", run_out, "Report file (default stdout)");

  // classify
  auto* classify = app.add_subcommand("classify", "Hardness classes (E/EH/H/U) across configuration reports");
  std::vector<std::string> classify_reports;
  std::string classify_out;
  classify->add_option("reports", classify_reports, "Reports, as PATH or NAME=PATH (at least two)")->required();
  classify->add_option("-o,--output", classify_out, "Output file (default stdout)");

  // report-diff
  auto* diff = app.add_subcommand("report-diff", "Percentage decrease from a baseline report to a treatment report");
  std::string diff_base, diff_treat, diff_out;
  bool diff_json = false;
  diff->add_option("-b,--baseline", diff_base, "Baseline report")->required();
  diff->add_option("-t,--treatment", diff_treat, "Treatment report")->required();
  diff->add_flag("--json", diff_json, "Emit JSON");
  diff->add_option("-o,--output", diff_out, "Output file (default stdout)");

  // stats
  auto* stats = app.add_subcommand("stats", "Print graph statistics");
  std::string stats_graph;
  stats->add_option("graph", stats_graph, "Graph file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_input_error;
  }

  try {
    if (*gen_data) {
      double p = er_density >= 0 ? er_density : er_p;
      if (p < 0) throw InputError("one of --probability or --density is required");
      LabeledGraph g = gen_er_graph(er_vertices, p, er_labels, er_seed);
      with_output(er_out, [&](std::ostream& out) { write_graph(out, g); });
    } else if (*gen_query) {
      LabeledGraph d = load_graph(gq_data);
      fs::create_directories(gq_dir);
      for (std::uint32_t i = 0; i < gq_count; ++i) {
        LabeledGraph q = gen_random_walk_query(d, gq_size, derive_seed(gq_seed, i));
        char name[32];
        std::snprintf(name, sizeof name, "_%03u.graph", i);
        with_output((fs::path(gq_dir) / (gq_prefix + name)).string(), [&](std::ostream& out) { write_graph(out, q); });
      }
    } else if (*run) {
      for (const auto& dir : query_dirs) {
        auto files = graph_files_in(dir);
        cfg.query_paths.insert(cfg.query_paths.end(), files.begin(), files.end());
      }
      if (cfg.query_paths.empty()) throw InputError("no query files given");
      cfg.filter = filter_name == "ldf" ? FilterKind::ldf : filter_name == "nlf" ? FilterKind::nlf : FilterKind::lpf;
      cfg.jump_redo = jr_name == "on";
      cfg.format = format_name == "json" ? ReportFormat::json : ReportFormat::csv;
      cfg.time_limit = std::chrono::duration<double>(time_limit_s);
      BatchResult result = run_batch(cfg);
      with_output(run_out, [&](std::ostream& out) { emit_report(out, result.records, cfg.format); });
      for (const auto& f : result.failures) std::cerr << "error: " << f.query_id << ": " << f.message << '\n';
      if (!result.failures.empty()) return exit_input_error;
    } else if (*classify) {
      std::vector<ConfigurationRecords> configs;
      for (const auto& arg : classify_reports) {
        auto eq = arg.find('=');
        std::string name = eq == std::string::npos ? fs::path(arg).stem().string() : arg.substr(0, eq);
        std::string path = eq == std::string::npos ? arg : arg.substr(eq + 1);
        configs.push_back({name, load_report(path)});
      }
      auto labels = classify_hardness(configs);
      std::map<std::string, std::size_t> totals;
      with_output(classify_out, [&](std::ostream& out) {
        out << "query_id,hardness,solved_by\n";
        for (const auto& h : labels) {
          out << h.query_id << ',' << to_string(h.hardness) << ',' << h.solved_by << '\n';
          ++totals[to_string(h.hardness)];
        }
      });
      std::cerr << "E=" << totals["E"] << " EH=" << totals["EH"] << " H=" << totals["H"] << " U=" << totals["U"] << '\n';
    } else if (*diff) {
      auto summary = improvement_stats(load_report(diff_base), load_report(diff_treat));
      with_output(diff_out, [&](std::ostream& out) {
        if (diff_json)
          out << summary_json(summary).dump(2) << '\n';
        else
          print_summary(out, summary);
      });
    } else if (*stats) {
      GraphStats s = compute_stats(load_graph(stats_graph));
      std::cout << "vertices " << s.vertex_count << "\nedges " << s.edge_count << "\nlabels " << s.label_count
                << "\naverage_degree " << std::setprecision(6) << s.average_degree << "\ndensity ";
      if (s.density)
        std::cout << *s.density << '\n';
      else
        std::cout << "undefined\n";
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input_error;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return exit_invariant;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input_error;
  }
  return 0;
}
