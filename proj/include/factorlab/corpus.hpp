#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "factorlab/hypergraph.hpp"

namespace factorlab::corpus {

inline Hypergraph single_edge(int k = 3) {
  VertexSet e(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(i)] = i;
  return Hypergraph(k, k, {e});
}

/// {012, 234}
inline Hypergraph loose_path() { return Hypergraph(3, 5, {{0, 1, 2}, {2, 3, 4}}); }

/// {012, 034}
inline Hypergraph cherry() { return Hypergraph(3, 5, {{0, 1, 2}, {0, 3, 4}}); }

/// K4^(3) minus one edge: {012, 013, 023}.
inline Hypergraph k4_minus() { return Hypergraph(3, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}}); }

inline Hypergraph k4() { return Hypergraph::complete(3, 4); }

/// Complete 3-partite 3-graph with parts {0,1}, {2,3}, {4,5}.
inline Hypergraph k222() {
  std::vector<VertexSet> edges;
  for (Vertex a : {0, 1})
    for (Vertex b : {2, 3})
      for (Vertex c : {4, 5}) edges.push_back({a, b, c});
  return Hypergraph(3, 6, std::move(edges));
}

inline Hypergraph two_disjoint_edges() { return Hypergraph(3, 6, {{0, 1, 2}, {3, 4, 5}}); }

inline const std::map<std::string, Hypergraph (*)()>& named() {
  static const std::map<std::string, Hypergraph (*)()> table = {
      {"edge", [] { return single_edge(3); }},
      {"loose-path", loose_path},
      {"cherry", cherry},
      {"k4-minus", k4_minus},
      {"k4", k4},
      {"k222", k222},
      {"two-edges", two_disjoint_edges},
  };
  return table;
}

inline Hypergraph by_name(const std::string& name) {
  const auto& table = named();
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown corpus graph '" + name + "'");
  return it->second();
}

}  // namespace factorlab::corpus
