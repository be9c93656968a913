// Matches a triangle query against a small data graph and prints every
// embedding together with the candidate space the filter produced.

#include <iostream>

#include "l2match/l2match.hpp"

int main() {
  using namespace l2match;

  DataGraph data(parse_graph(
      "t 6 8\n"
      "v 0 0 2\nv 1 1 4\nv 2 0 2\nv 3 1 4\nv 4 2 3\nv 5 0 1\n"
      "e 0 1\ne 1 2\ne 2 3\ne 0 3\ne 1 3\ne 1 4\ne 3 4\ne 4 5\n"));
  LabeledGraph query = parse_graph("t 3 3\nv 0 1 2\nv 1 2 2\nv 2 1 2\ne 0 1\ne 1 2\ne 0 2\n");

  MatchOptions options;
  options.enumeration.collect = true;
  MatchResult result = match(query, data, options);

  std::cout << "order:";
  for (QueryVertex u : result.filter.plan.order) std::cout << " u" << u;
  std::cout << '\n';
  result.filter.space.dump(std::cout);
  std::cout << result.enumeration.embedding_count << " embeddings, " << result.enumeration.search_nodes
            << " search nodes\n";
  for (const Embedding& e : result.enumeration.embeddings) {
    for (QueryVertex u = 0; u < e.size(); ++u) std::cout << (u ? " " : "") << "u" << u << "->" << e[u];
    std::cout << '\n';
  }
}
