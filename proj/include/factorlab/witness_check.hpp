#pragma once

// Witness validators. Each check re-derives the defining condition straight
// from the raw edge list; none of them call into the search code that
// produced the witness.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "factorlab/hypergraph.hpp"
#include "factorlab/report.hpp"

namespace factorlab {

namespace detail {

/// Pairs {a, b} with {v, a, b} an edge, by direct scan over all edges.
inline std::set<std::pair<Vertex, Vertex>> raw_pair_link(const Hypergraph& f, Vertex v) {
  std::set<std::pair<Vertex, Vertex>> out;
  for (const auto& e : f.edges()) {
    if (std::find(e.begin(), e.end(), v) == e.end()) continue;
    std::vector<Vertex> rest;
    for (Vertex u : e)
      if (u != v) rest.push_back(u);
    out.insert({std::min(rest[0], rest[1]), std::max(rest[0], rest[1])});
  }
  return out;
}

template <typename T>
bool disjoint(const std::set<T>& a, const std::set<T>& b) {
  for (const auto& x : a)
    if (b.count(x)) return false;
  return true;
}

/// part[v] for v in 0..n-1 from an explicit list of parts; -1 entries mean
/// the parts do not cover V; returns false on overlap or out-of-range ids.
inline bool assign_parts(int n, const std::vector<VertexSet>& parts, std::vector<int>& part) {
  part.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (Vertex v : parts[i]) {
      if (v < 0 || v >= n || part[static_cast<std::size_t>(v)] != -1) return false;
      part[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
  }
  return std::find(part.begin(), part.end(), -1) == part.end();
}

}  // namespace detail

/// Ordering is a permutation, the coloring is defined on exactly the pairs
/// covered by edges, and every edge v_i v_j v_l (i < j < l) has
/// (v_i, v_j) red, (v_i, v_l) blue, (v_j, v_l) green.
inline bool validate_ordering_witness(const Hypergraph& f, const OrderingWitness& w) {
  if (f.k() != 3) return false;
  const int n = f.n();
  if (static_cast<int>(w.ordering.sequence.size()) != n) return false;
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < w.ordering.sequence.size(); ++i) {
    const Vertex v = w.ordering.sequence[i];
    if (v < 0 || v >= n || pos[static_cast<std::size_t>(v)] != -1) return false;
    pos[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  std::set<std::pair<Vertex, Vertex>> covered;
  for (const auto& e : f.edges()) {
    std::vector<Vertex> byPos = e;
    std::sort(byPos.begin(), byPos.end(),
              [&](Vertex a, Vertex b) { return pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)]; });
    const std::pair<std::pair<Vertex, Vertex>, Color> required[3] = {
        {{byPos[0], byPos[1]}, Color::red}, {{byPos[0], byPos[2]}, Color::blue}, {{byPos[1], byPos[2]}, Color::green}};
    for (const auto& [pair, color] : required) {
      const std::pair<Vertex, Vertex> key{std::min(pair.first, pair.second), std::max(pair.first, pair.second)};
      covered.insert(key);
      auto it = w.coloring.colors.find(key);
      if (it == w.coloring.colors.end() || it->second != color) return false;
    }
  }
  return covered.size() == w.coloring.colors.size();
}

/// {X, Y, {vstar}} partitions V(F); N(vstar) is contained in X x Y; for all
/// x in X and y in Y the links N(x), N(y), N(vstar) are pairwise disjoint.
inline bool validate_cover_witness3(const Hypergraph& f, const CoverWitness3& w) {
  if (f.k() != 3) return false;
  std::vector<int> part;
  if (!detail::assign_parts(f.n(), {w.x, w.y, {w.vstar}}, part)) return false;
  const auto nstar = detail::raw_pair_link(f, w.vstar);
  for (const auto& [a, b] : nstar) {
    const int pa = part[static_cast<std::size_t>(a)];
    const int pb = part[static_cast<std::size_t>(b)];
    if (!((pa == 0 && pb == 1) || (pa == 1 && pb == 0))) return false;
  }
  std::vector<std::set<std::pair<Vertex, Vertex>>> links;
  for (Vertex v = 0; v < f.n(); ++v) links.push_back(detail::raw_pair_link(f, v));
  for (Vertex x : w.x) {
    if (!detail::disjoint(links[static_cast<std::size_t>(x)], nstar)) return false;
    for (Vertex y : w.y) {
      if (!detail::disjoint(links[static_cast<std::size_t>(x)], links[static_cast<std::size_t>(y)])) return false;
    }
  }
  for (Vertex y : w.y) {
    if (!detail::disjoint(links[static_cast<std::size_t>(y)], nstar)) return false;
  }
  return true;
}

/// {X_1, ..., X_{k-1}, {vstar}} partitions V(F); each edge through vstar meets
/// every X_i exactly once; edges sharing at least two vertices have equal
/// index vectors.
inline bool validate_partition_witness_k(const Hypergraph& f, const PartitionWitnessK& w) {
  const int k = f.k();
  if (static_cast<int>(w.parts.size()) != k - 1) return false;
  auto all_parts = w.parts;
  all_parts.push_back({w.vstar});
  std::vector<int> part;
  if (!detail::assign_parts(f.n(), all_parts, part)) return false;
  auto vec = [&](const VertexSet& e) {
    std::vector<int> c(static_cast<std::size_t>(k), 0);
    for (Vertex v : e) ++c[static_cast<std::size_t>(part[static_cast<std::size_t>(v)])];
    return c;
  };
  std::vector<int> rainbow(static_cast<std::size_t>(k), 1);
  const auto& edges = f.edges();
  for (const auto& e : edges) {
    if (std::find(e.begin(), e.end(), w.vstar) != e.end() && vec(e) != rainbow) return false;
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      std::size_t common = 0;
      for (Vertex v : edges[i])
        if (std::find(edges[j].begin(), edges[j].end(), v) != edges[j].end()) ++common;
      if (common >= 2 && vec(edges[i]) != vec(edges[j])) return false;
    }
  }
  return true;
}

/// Every edge through vstar meets every edge avoiding vstar in at most one
/// vertex, and the attached partition is a proper k-partition of F.
inline bool validate_linkdisjoint_witness(const Hypergraph& f, const LinkDisjointWitness& w) {
  if (w.vstar < 0 || w.vstar >= f.n()) return false;
  if (w.kpartition.num_vertices() != f.n() || w.kpartition.num_parts() != f.k()) return false;
  for (const auto& e : f.edges()) {
    std::set<int> seen;
    for (Vertex v : e) seen.insert(w.kpartition.part_of(v));
    if (static_cast<int>(seen.size()) != f.k()) return false;
  }
  for (const auto& e : f.edges()) {
    if (std::find(e.begin(), e.end(), w.vstar) == e.end()) continue;
    for (const auto& g : f.edges()) {
      if (std::find(g.begin(), g.end(), w.vstar) != g.end()) continue;
      std::size_t common = 0;
      for (Vertex v : e)
        if (std::find(g.begin(), g.end(), v) != g.end()) ++common;
      if (common > 1) return false;
    }
  }
  return true;
}

inline bool validate_lattice_combination(const LatticeCombination& w) {
  if (w.generators.size() != w.coefficients.size()) return false;
  std::array<std::int64_t, 2> sum{0, 0};
  for (std::size_t i = 0; i < w.generators.size(); ++i) {
    sum[0] += w.coefficients[i] * w.generators[i][0];
    sum[1] += w.coefficients[i] * w.generators[i][1];
  }
  return sum == w.target;
}

}  // namespace factorlab
