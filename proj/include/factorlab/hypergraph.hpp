#pragma once

#include <algorithm>
#include <bit>
#include <iterator>
#include <limits>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "factorlab/combinatorics.hpp"

namespace factorlab {

using Vertex = std::int32_t;

/// Sorted list of distinct vertex ids. Used for edges, links and arbitrary
/// vertex subsets alike.
using VertexSet = std::vector<Vertex>;

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Vertex v : s) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

inline VertexSet sorted_set(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline std::size_t intersection_size(const VertexSet& a, const VertexSet& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

inline bool contains_all(const VertexSet& haystack, const VertexSet& needles) {
  return std::includes(haystack.begin(), haystack.end(), needles.begin(), needles.end());
}

/// k-uniform hypergraph on vertices {0, ..., n-1}.
///
/// Immutable after construction. Edges are stored sorted and the edge list is
/// sorted lexicographically, so two hypergraphs compare equal iff they have the
/// same labeled edge set. The edge lookup table and vertex incidence lists are
/// built eagerly, which makes a constructed value safe to share across threads.
class Hypergraph {
 public:
  Hypergraph() : Hypergraph(2, 0, {}) {}

  Hypergraph(int k, int n, std::vector<VertexSet> edges) : k_(k), n_(n), edges_(std::move(edges)) {
    if (k < 2) throw std::invalid_argument("uniformity k must be at least 2, got " + std::to_string(k));
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
    for (auto& e : edges_) {
      std::sort(e.begin(), e.end());
      if (static_cast<int>(e.size()) != k) {
        throw std::invalid_argument("edge has " + std::to_string(e.size()) + " vertices, expected " + std::to_string(k));
      }
      if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
        throw std::invalid_argument("edge contains a repeated vertex");
      }
      if (e.front() < 0 || e.back() >= n) {
        throw std::invalid_argument("edge vertex out of range [0, " + std::to_string(n) + ")");
      }
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
      throw std::invalid_argument("duplicate edge");
    }
    incidence_.assign(static_cast<std::size_t>(n), {});
    lookup_.reserve(edges_.size() * 2);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      lookup_.insert(edges_[i]);
      for (Vertex v : edges_[i]) incidence_[static_cast<std::size_t>(v)].push_back(i);
    }
  }

  static Hypergraph complete(int k, int n) {
    std::vector<VertexSet> edges;
    for_each_combination<Vertex>(n, static_cast<std::size_t>(k), [&](const VertexSet& c) { edges.push_back(c); });
    return Hypergraph(k, n, std::move(edges));
  }

  int k() const { return k_; }
  int n() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<VertexSet>& edges() const { return edges_; }
  const VertexSet& edge(std::size_t i) const { return edges_[i]; }

  /// True iff the given vertices (any order) form an edge.
  bool has_edge(std::span<const Vertex> vertices) const {
    if (static_cast<int>(vertices.size()) != k_) return false;
    VertexSet key(vertices.begin(), vertices.end());
    std::sort(key.begin(), key.end());
    return lookup_.count(key) != 0;
  }
  bool has_sorted_edge(const VertexSet& sorted) const { return lookup_.count(sorted) != 0; }

  /// Indices of the edges containing v.
  const std::vector<std::size_t>& incident_edges(Vertex v) const { return incidence_.at(static_cast<std::size_t>(v)); }
  std::size_t vertex_degree(Vertex v) const { return incident_edges(v).size(); }

  VertexSet isolated_vertices() const {
    VertexSet out;
    for (Vertex v = 0; v < n_; ++v) {
      if (incidence_[static_cast<std::size_t>(v)].empty()) out.push_back(v);
    }
    return out;
  }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int k_;
  int n_;
  std::vector<VertexSet> edges_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::unordered_set<VertexSet, VertexSetHash> lookup_;
};

/// Vertex partition into labeled parts. Parts may be empty.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<int> part_of, int num_parts) : part_of_(std::move(part_of)), num_parts_(num_parts) {
    for (int p : part_of_) {
      if (p < 0 || p >= num_parts_) throw std::invalid_argument("part label out of range");
    }
  }

  static Partition from_parts(int n, const std::vector<VertexSet>& parts) {
    std::vector<int> part_of(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (Vertex v : parts[i]) {
        if (v < 0 || v >= n) throw std::invalid_argument("partition vertex out of range");
        if (part_of[static_cast<std::size_t>(v)] != -1) throw std::invalid_argument("partition parts overlap");
        part_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
      }
    }
    if (std::find(part_of.begin(), part_of.end(), -1) != part_of.end()) {
      throw std::invalid_argument("partition does not cover every vertex");
    }
    return Partition(std::move(part_of), static_cast<int>(parts.size()));
  }

  int num_parts() const { return num_parts_; }
  int num_vertices() const { return static_cast<int>(part_of_.size()); }
  int part_of(Vertex v) const { return part_of_.at(static_cast<std::size_t>(v)); }
  const std::vector<int>& labels() const { return part_of_; }

  std::vector<VertexSet> parts() const {
    std::vector<VertexSet> out(static_cast<std::size_t>(num_parts_));
    for (std::size_t v = 0; v < part_of_.size(); ++v) out[static_cast<std::size_t>(part_of_[v])].push_back(static_cast<Vertex>(v));
    return out;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> part_of_;
  int num_parts_ = 0;
};

/// Per-part intersection sizes of a vertex set with a partition.
using IndexVector = std::vector<int>;

inline IndexVector index_vector(const Partition& partition, const VertexSet& s) {
  IndexVector coords(static_cast<std::size_t>(partition.num_parts()), 0);
  for (Vertex v : s) ++coords[static_cast<std::size_t>(partition.part_of(v))];
  return coords;
}

struct DensenessParams {
  double p = 0.5;
  double mu = 0.1;
  std::optional<double> alpha;

  void validate() const {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0, 1)");
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("mu must lie in (0, 1)");
    if (alpha && !(*alpha > 0.0 && *alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  }
};

/// All r-subsets contained in some edge of F, sorted.
inline std::vector<VertexSet> shadow(const Hypergraph& f, int r) {
  if (r < 1 || r >= f.k()) {
    throw std::invalid_argument("shadow size r must satisfy 1 <= r < k, got r=" + std::to_string(r));
  }
  std::set<VertexSet> out;
  for (const auto& e : f.edges()) {
    for_each_subset_of(e, static_cast<std::size_t>(r), [&](const VertexSet& s) { out.insert(s); });
  }
  return {out.begin(), out.end()};
}

/// N_F(S): the (k - |S|)-sets completing S to an edge, sorted.
inline std::vector<VertexSet> link(const Hypergraph& f, VertexSet s) {
  s = sorted_set(std::move(s));
  if (static_cast<int>(s.size()) >= f.k()) {
    throw std::invalid_argument("link set must have fewer than k vertices");
  }
  std::vector<VertexSet> out;
  if (s.empty()) return f.edges();
  for (std::size_t idx : f.incident_edges(s.front())) {
    const auto& e = f.edge(idx);
    if (!contains_all(e, s)) continue;
    VertexSet rest;
    std::set_difference(e.begin(), e.end(), s.begin(), s.end(), std::back_inserter(rest));
    out.push_back(std::move(rest));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of edges containing S.
inline std::size_t degree(const Hypergraph& f, VertexSet s) {
  s = sorted_set(std::move(s));
  if (s.empty() || static_cast<int>(s.size()) >= f.k()) {
    throw std::invalid_argument("degree requires 1 <= |S| <= k-1");
  }
  std::size_t count = 0;
  for (std::size_t idx : f.incident_edges(s.front())) {
    if (contains_all(f.edge(idx), s)) ++count;
  }
  return count;
}

/// Minimum s-degree over all s-subsets of V(F). Zero when n < s.
inline std::size_t min_s_degree(const Hypergraph& f, int s) {
  if (s < 1 || s >= f.k()) throw std::invalid_argument("min_s_degree requires 1 <= s <= k-1");
  if (f.n() < s) return 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for_each_combination<Vertex>(f.n(), static_cast<std::size_t>(s), [&](const VertexSet& c) {
    best = std::min(best, degree(f, c));
    return best != 0;
  });
  return best;
}

/// e_H(X_1, ..., X_k): ordered tuples (x_1, ..., x_k) in X_1 x ... x X_k whose
/// underlying set is an edge. Sets may overlap; tuples with repeats never
/// match an edge, so each edge contributes the number of bijections placing
/// its vertices into admissible slots.
inline std::uint64_t count_tuple_edges(const Hypergraph& h, std::span<const VertexSet> sets) {
  const int k = h.k();
  if (static_cast<int>(sets.size()) != k) throw std::invalid_argument("count_tuple_edges needs exactly k vertex sets");
  std::vector<std::vector<char>> member(static_cast<std::size_t>(k), std::vector<char>(static_cast<std::size_t>(h.n()), 0));
  for (int i = 0; i < k; ++i) {
    for (Vertex v : sets[static_cast<std::size_t>(i)]) {
      if (v < 0 || v >= h.n()) throw std::invalid_argument("vertex set member out of range");
      member[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] = 1;
    }
  }
  // Permanent of the k x k admissibility matrix via subset DP over slots.
  std::vector<std::uint64_t> ways(std::size_t{1} << k);
  std::uint64_t total = 0;
  for (const auto& e : h.edges()) {
    std::fill(ways.begin(), ways.end(), 0);
    ways[0] = 1;
    for (std::uint32_t mask = 0; mask < ways.size(); ++mask) {
      if (ways[mask] == 0) continue;
      const int row = std::popcount(mask);
      if (row == k) continue;
      const auto v = static_cast<std::size_t>(e[static_cast<std::size_t>(row)]);
      for (int slot = 0; slot < k; ++slot) {
        if ((mask >> slot) & 1U) continue;
        if (member[static_cast<std::size_t>(slot)][v]) ways[mask | (1U << slot)] += ways[mask];
      }
    }
    total += ways.back();
  }
  return total;
}

/// A k-part partition with every edge meeting each part at most once, if one
/// exists. Parts an edge misses are allowed (and may be empty). Search assigns
/// vertices in ascending id order with labels canonicalized up to relabeling.
inline std::optional<Partition> is_k_partite(const Hypergraph& f) {
  const int k = f.k();
  const int n = f.n();
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  auto ok = [&](Vertex v) {
    for (std::size_t idx : f.incident_edges(v)) {
      for (Vertex u : f.edge(idx)) {
        if (u != v && color[static_cast<std::size_t>(u)] == color[static_cast<std::size_t>(v)]) return false;
      }
    }
    return true;
  };
  auto search = [&](auto&& self, Vertex v, int used) -> bool {
    if (v == n) return true;
    const int limit = std::min(k, used + 1);
    for (int c = 0; c < limit; ++c) {
      color[static_cast<std::size_t>(v)] = c;
      if (ok(v) && self(self, v + 1, std::max(used, c + 1))) return true;
    }
    color[static_cast<std::size_t>(v)] = -1;
    return false;
  };
  if (!search(search, 0, 0)) return std::nullopt;
  return Partition(std::move(color), k);
}

/// Adds t clones of w (ids n, ..., n+t-1). Each clone receives exactly the
/// link of w over the original vertices.
inline Hypergraph duplicate_vertex(const Hypergraph& h, Vertex w, int t) {
  if (w < 0 || w >= h.n()) throw std::invalid_argument("duplicate_vertex: vertex out of range");
  if (t < 1) throw std::invalid_argument("duplicate_vertex: clone count must be at least 1");
  std::vector<VertexSet> edges = h.edges();
  const auto w_link = link(h, {w});
  for (int c = 0; c < t; ++c) {
    const Vertex clone = h.n() + c;
    for (const auto& rest : w_link) {
      VertexSet e = rest;
      e.push_back(clone);
      edges.push_back(std::move(e));
    }
  }
  return Hypergraph(h.k(), h.n() + t, std::move(edges));
}

/// H[S] relabeled so that the i-th smallest member of S becomes vertex i.
inline Hypergraph induced_subgraph(const Hypergraph& h, const VertexSet& s) {
  const VertexSet sorted = sorted_set(s);
  std::vector<Vertex> new_id(static_cast<std::size_t>(h.n()), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) new_id[static_cast<std::size_t>(sorted[i])] = static_cast<Vertex>(i);
  std::vector<VertexSet> edges;
  for (const auto& e : h.edges()) {
    VertexSet mapped;
    for (Vertex v : e) {
      if (new_id[static_cast<std::size_t>(v)] < 0) break;
      mapped.push_back(new_id[static_cast<std::size_t>(v)]);
    }
    if (mapped.size() == e.size()) edges.push_back(std::move(mapped));
  }
  return Hypergraph(h.k(), static_cast<int>(sorted.size()), std::move(edges));
}

/// Image of H under the vertex bijection v -> perm[v].
inline Hypergraph relabel(const Hypergraph& h, const std::vector<Vertex>& perm) {
  if (static_cast<int>(perm.size()) != h.n()) throw std::invalid_argument("relabel: permutation size mismatch");
  std::vector<VertexSet> edges;
  edges.reserve(h.num_edges());
  for (const auto& e : h.edges()) {
    VertexSet mapped;
    for (Vertex v : e) mapped.push_back(perm[static_cast<std::size_t>(v)]);
    edges.push_back(std::move(mapped));
  }
  return Hypergraph(h.k(), h.n(), std::move(edges));
}

}  // namespace factorlab
