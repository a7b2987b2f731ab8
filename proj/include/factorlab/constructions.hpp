#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "factorlab/combinatorics.hpp"
#include "factorlab/hypergraph.hpp"
#include "factorlab/rng.hpp"

namespace factorlab {

struct ConstructionParams {
  int n = 0;
  int k = 3;
  int s = 2;  // shadow parameter, shadow-disjoint construction only
  std::uint64_t seed = 0;
  std::optional<std::vector<int>> part_sizes = std::nullopt;
};

/// Output of the partite random-coloring construction.
struct PartiteColoring {
  Hypergraph h;
  Vertex z = 0;
  Partition q;                            // parts V_1..V_{k-1}, then {z}
  int palette_size = 0;                   // r + 1
  std::vector<IndexVector> index_vectors;  // index_vectors[j] is paired with color c_j; [0] = (1, ..., 1)
};

struct ShadowDisjointConstruction {
  Hypergraph h;
  Partition xy;  // part 0 = X, part 1 = Y
  int palette_size = 0;
};

namespace detail {

inline void enumerate_compositions(int total, int parts, std::vector<int>& current, std::vector<IndexVector>& out) {
  if (static_cast<int>(current.size()) == parts - 1) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int a = 0; a <= total; ++a) {
    current.push_back(a);
    enumerate_compositions(total - a, parts, current, out);
    current.pop_back();
  }
}

/// Uniform color per pair {a, b}, a < b, drawn in lexicographic pair order.
inline std::vector<int> color_pairs(int n, int palette, Rng& rng) {
  std::vector<int> colors(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      colors[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)] =
          static_cast<int>(rng.below(static_cast<std::uint64_t>(palette)));
    }
  }
  return colors;
}

}  // namespace detail

/// Index vectors (a_1, ..., a_{k-1}, 0) with sum k, in lexicographic order.
/// There are C(2k-2, k) of them.
inline std::vector<IndexVector> zero_last_index_vectors(int k) {
  std::vector<IndexVector> out;
  std::vector<int> current;
  detail::enumerate_compositions(k, k - 1, current, out);
  for (auto& v : out) v.push_back(0);
  return out;
}

inline std::vector<int> default_partite_sizes(int n, int k) {
  std::vector<int> sizes(static_cast<std::size_t>(k - 1), (n - 1) / (k - 1));
  for (int i = 0; i < (n - 1) % (k - 1); ++i) ++sizes[static_cast<std::size_t>(i)];
  sizes.push_back(1);
  return sizes;
}

/// Random (r+1)-coloring construction, r = C(2k-2, k).
///
/// Vertices 0..n-2 are split into V_1..V_{k-1} (consecutive id blocks) and
/// z = n-1. Each pair of K_n gets a uniform color from c_0..c_r, drawn in
/// lexicographic pair order. A k-set e becomes an edge iff its index vector
/// is i_j (i_0 = (1,...,1), i_1..i_r the zero-last vectors in lexicographic
/// order) and every pair inside e has color c_j.
inline PartiteColoring construct_partite_coloring(const ConstructionParams& params) {
  const int n = params.n;
  const int k = params.k;
  if (k < 3) throw std::invalid_argument("construct_partite_coloring requires k >= 3");
  if (n < k) throw std::invalid_argument("construct_partite_coloring requires n >= k");
  std::vector<int> sizes = params.part_sizes.value_or(default_partite_sizes(n, k));
  if (static_cast<int>(sizes.size()) != k) throw std::invalid_argument("part sizes must list n_1..n_{k-1} followed by 1");
  if (sizes.back() != 1) throw std::invalid_argument("the last part must be the single vertex z");
  int total = 0;
  const int min_size = (n + k - 1) / k;
  for (int i = 0; i + 1 < k; ++i) {
    if (sizes[static_cast<std::size_t>(i)] < min_size) {
      throw std::invalid_argument("part size " + std::to_string(sizes[static_cast<std::size_t>(i)]) + " below ceil(n/k) = " +
                                  std::to_string(min_size));
    }
    total += sizes[static_cast<std::size_t>(i)];
  }
  if (total + 1 != n) throw std::invalid_argument("part sizes must sum to n");

  std::vector<int> labels;
  for (int i = 0; i < k; ++i) labels.insert(labels.end(), static_cast<std::size_t>(sizes[static_cast<std::size_t>(i)]), i);
  Partition q(labels, k);
  const Vertex z = n - 1;

  std::vector<IndexVector> vectors;
  vectors.push_back(IndexVector(static_cast<std::size_t>(k), 1));
  for (auto& v : zero_last_index_vectors(k)) vectors.push_back(std::move(v));
  const int palette = static_cast<int>(vectors.size());

  Rng rng(params.seed);
  const auto colors = detail::color_pairs(n, palette, rng);
  auto color = [&](Vertex a, Vertex b) {
    return colors[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)];
  };

  std::vector<VertexSet> edges;
  for_each_combination<Vertex>(n, static_cast<std::size_t>(k), [&](const VertexSet& e) {
    const int c = color(e[0], e[1]);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j)
        if (color(e[i], e[j]) != c) return;
    if (vectors[static_cast<std::size_t>(c)] == index_vector(q, e)) edges.push_back(e);
  });
  return {Hypergraph(k, n, std::move(edges)), z, std::move(q), palette, std::move(vectors)};
}

/// Default split for the shadow-disjoint construction: |X| = floor(n/2).
inline std::vector<int> default_bipartition_sizes(int n) { return {n / 2, n - n / 2}; }

/// Random (k+1)-coloring of the complete s-graph. X is the first n_1
/// vertices, Y the rest. Each s-set gets a uniform color from c_0..c_k,
/// drawn in lexicographic s-set order; a k-set e becomes an edge iff all
/// its s-subsets have color c_j with j = |e intersect X|.
inline ShadowDisjointConstruction construct_shadow_disjoint(const ConstructionParams& params) {
  const int n = params.n;
  const int k = params.k;
  const int s = params.s;
  if (k < 3) throw std::invalid_argument("construct_shadow_disjoint requires k >= 3");
  if (s < 2 || s > k - 1) throw std::invalid_argument("shadow parameter s must satisfy 2 <= s <= k-1");
  if (n < k) throw std::invalid_argument("construct_shadow_disjoint requires n >= k");
  const std::vector<int> sizes = params.part_sizes.value_or(default_bipartition_sizes(n));
  if (sizes.size() != 2 || sizes[0] + sizes[1] != n) throw std::invalid_argument("bipartition sizes must be (n_1, n_2) summing to n");
  if (3 * sizes[0] < n || 3 * sizes[1] < n) throw std::invalid_argument("bipartition sizes must both be at least n/3");

  std::vector<int> labels(static_cast<std::size_t>(n), 1);
  for (int v = 0; v < sizes[0]; ++v) labels[static_cast<std::size_t>(v)] = 0;
  Partition xy(labels, 2);
  const int palette = k + 1;

  Rng rng(params.seed);
  std::vector<int> colors(binomial(n, s));
  // Lexicographic draw order; stored by colex rank for lookup.
  for_each_combination<Vertex>(n, static_cast<std::size_t>(s), [&](const VertexSet& c) {
    colors[colex_rank(c)] = static_cast<int>(rng.below(static_cast<std::uint64_t>(palette)));
  });

  std::vector<VertexSet> edges;
  for_each_combination<Vertex>(n, static_cast<std::size_t>(k), [&](const VertexSet& e) {
    int in_x = 0;
    for (Vertex v : e) in_x += labels[static_cast<std::size_t>(v)] == 0 ? 1 : 0;
    const bool mono = for_each_subset_of(e, static_cast<std::size_t>(s), [&](const VertexSet& sub) {
      return colors[colex_rank(sub)] == in_x;
    });
    if (mono) edges.push_back(e);
  });
  return {Hypergraph(k, n, std::move(edges)), std::move(xy), palette};
}

/// Binomial random k-graph: each k-set (lexicographic order) is an edge with
/// probability p.
inline Hypergraph random_uniform_hypergraph(int n, int k, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<VertexSet> edges;
  for_each_combination<Vertex>(n, static_cast<std::size_t>(k), [&](const VertexSet& e) {
    if (rng.bernoulli(p)) edges.push_back(e);
  });
  return Hypergraph(k, n, std::move(edges));
}

/// Property (dagger): every edge through z is rainbow over V_1..V_{k-1}, and
/// edges sharing at least two vertices have equal index vectors. Exhaustive
/// edge-pair scan.
inline bool check_partite_property(const Hypergraph& h, Vertex z, const Partition& q) {
  const auto& edges = h.edges();
  const IndexVector rainbow(static_cast<std::size_t>(q.num_parts()), 1);
  for (const auto& e : edges) {
    if (std::binary_search(e.begin(), e.end(), z) && index_vector(q, e) != rainbow) return false;
  }
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j)
      if (intersection_size(edges[i], edges[j]) >= 2 && index_vector(q, edges[i]) != index_vector(q, edges[j])) return false;
  return true;
}

/// {X, Y} is s-shadow disjoint for H: edges with different index vectors
/// share fewer than s vertices. Exhaustive edge-pair scan.
inline bool check_shadow_disjoint(const Hypergraph& h, const Partition& xy, int s) {
  const auto& edges = h.edges();
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j)
      if (static_cast<int>(intersection_size(edges[i], edges[j])) >= s && index_vector(xy, edges[i]) != index_vector(xy, edges[j]))
        return false;
  return true;
}

}  // namespace factorlab
