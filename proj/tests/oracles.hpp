#pragma once

// Brute-force reference implementations. These only read the raw edge list
// of a Hypergraph and never call the library's search code.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>
#include <vector>

#include "factorlab/hypergraph.hpp"
#include "factorlab/rng.hpp"

namespace oracle {

using factorlab::Hypergraph;
using factorlab::Vertex;
using factorlab::VertexSet;
using Pair = std::pair<Vertex, Vertex>;

inline std::set<VertexSet> edge_set(const Hypergraph& h) { return {h.edges().begin(), h.edges().end()}; }

inline bool is_edge(const std::set<VertexSet>& edges, VertexSet s) {
  std::sort(s.begin(), s.end());
  return edges.count(s) > 0;
}

inline std::set<Pair> pair_link(const Hypergraph& f, Vertex v) {
  std::set<Pair> out;
  for (const auto& e : f.edges()) {
    VertexSet rest;
    bool has = false;
    for (Vertex u : e) {
      if (u == v)
        has = true;
      else
        rest.push_back(u);
    }
    if (has) out.insert({std::min(rest[0], rest[1]), std::max(rest[0], rest[1])});
  }
  return out;
}

inline bool disjoint(const std::set<Pair>& a, const std::set<Pair>& b) {
  return std::none_of(a.begin(), a.end(), [&](const Pair& p) { return b.count(p) > 0; });
}

/// Forced coloring consistency for one ordering, by direct per-edge check.
inline bool ordering_consistent(const Hypergraph& f, const std::vector<Vertex>& order) {
  std::vector<int> pos(static_cast<std::size_t>(f.n()));
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::map<Pair, int> color;
  for (const auto& e : f.edges()) {
    VertexSet s = e;
    std::sort(s.begin(), s.end(), [&](Vertex a, Vertex b) { return pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)]; });
    const Pair pairs[3] = {{s[0], s[1]}, {s[0], s[2]}, {s[1], s[2]}};
    for (int c = 0; c < 3; ++c) {
      Pair key{std::min(pairs[c].first, pairs[c].second), std::max(pairs[c].first, pairs[c].second)};
      auto [it, inserted] = color.emplace(key, c);
      if (!inserted && it->second != c) return false;
    }
  }
  return true;
}

/// Exhaustive f! scan.
inline bool turan_zero(const Hypergraph& f) {
  std::vector<Vertex> order(static_cast<std::size_t>(f.n()));
  std::iota(order.begin(), order.end(), 0);
  do {
    if (ordering_consistent(f, order)) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

/// Condition (ii) by trying every v* and all 2^{f-1} splits of the rest.
inline bool cover_partition(const Hypergraph& f) {
  const int n = f.n();
  std::vector<std::set<Pair>> links;
  for (Vertex v = 0; v < n; ++v) links.push_back(pair_link(f, v));
  for (Vertex vstar = 0; vstar < n; ++vstar) {
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v)
      if (v != vstar) rest.push_back(v);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest.size()); ++mask) {
      std::vector<int> side(static_cast<std::size_t>(n), -1);
      for (std::size_t i = 0; i < rest.size(); ++i) side[static_cast<std::size_t>(rest[i])] = static_cast<int>((mask >> i) & 1U);
      bool ok = true;
      for (const auto& [a, b] : links[static_cast<std::size_t>(vstar)])
        if (side[static_cast<std::size_t>(a)] == side[static_cast<std::size_t>(b)]) ok = false;
      for (Vertex u = 0; u < n && ok; ++u) {
        if (u == vstar) continue;
        if (!disjoint(links[static_cast<std::size_t>(u)], links[static_cast<std::size_t>(vstar)])) ok = false;
        for (Vertex w = 0; w < n && ok; ++w) {
          const bool cross = w != vstar && side[static_cast<std::size_t>(u)] == 0 && side[static_cast<std::size_t>(w)] == 1;
          if (cross && !disjoint(links[static_cast<std::size_t>(u)], links[static_cast<std::size_t>(w)])) ok = false;
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

/// Partition condition by trying every v* and all (k-1)^{f-1} assignments.
inline bool partition_condition(const Hypergraph& f) {
  const int n = f.n();
  const int k = f.k();
  const auto& edges = f.edges();
  for (Vertex vstar = 0; vstar < n; ++vstar) {
    std::vector<int> part(static_cast<std::size_t>(n), 0);
    std::uint64_t total = 1;
    for (int i = 0; i + 1 < n; ++i) total *= static_cast<std::uint64_t>(k - 1);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (Vertex v = 0; v < n; ++v) {
        if (v == vstar) {
          part[static_cast<std::size_t>(v)] = k - 1;
          continue;
        }
        part[static_cast<std::size_t>(v)] = static_cast<int>(c % static_cast<std::uint64_t>(k - 1));
        c /= static_cast<std::uint64_t>(k - 1);
      }
      auto vec = [&](const VertexSet& e) {
        std::vector<int> out(static_cast<std::size_t>(k), 0);
        for (Vertex v : e) ++out[static_cast<std::size_t>(part[static_cast<std::size_t>(v)])];
        return out;
      };
      bool ok = true;
      for (const auto& e : edges) {
        if (std::find(e.begin(), e.end(), vstar) == e.end()) continue;
        auto iv = vec(e);
        if (std::any_of(iv.begin(), iv.end(), [](int x) { return x != 1; })) ok = false;
      }
      for (std::size_t i = 0; i < edges.size() && ok; ++i)
        for (std::size_t j = i + 1; j < edges.size() && ok; ++j) {
          std::size_t common = 0;
          for (Vertex v : edges[i]) common += static_cast<std::size_t>(std::count(edges[j].begin(), edges[j].end(), v));
          if (common >= 2 && vec(edges[i]) != vec(edges[j])) ok = false;
        }
      if (ok) return true;
    }
  }
  return false;
}

inline bool link_disjoint(const Hypergraph& f) {
  for (Vertex vstar = 0; vstar < f.n(); ++vstar) {
    bool ok = true;
    for (const auto& e : f.edges()) {
      if (std::find(e.begin(), e.end(), vstar) == e.end()) continue;
      for (const auto& g : f.edges()) {
        if (std::find(g.begin(), g.end(), vstar) != g.end()) continue;
        int common = 0;
        for (Vertex v : e) common += static_cast<int>(std::count(g.begin(), g.end(), v));
        if (common > 1) ok = false;
      }
    }
    if (ok) return true;
  }
  return false;
}

inline bool k_partite(const Hypergraph& f) {
  const int n = f.n();
  const int k = f.k();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(k);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<int> part(static_cast<std::size_t>(n));
    std::uint64_t c = code;
    for (auto& p : part) {
      p = static_cast<int>(c % static_cast<std::uint64_t>(k));
      c /= static_cast<std::uint64_t>(k);
    }
    bool ok = true;
    for (const auto& e : f.edges()) {
      std::set<int> seen;
      for (Vertex v : e) seen.insert(part[static_cast<std::size_t>(v)]);
      if (static_cast<int>(seen.size()) != k) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

/// e_H(X_1..X_k) by enumerating the product.
inline std::uint64_t tuple_edges(const Hypergraph& h, const std::vector<VertexSet>& sets) {
  const auto edges = edge_set(h);
  std::uint64_t count = 0;
  std::vector<Vertex> tuple;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == sets.size()) {
      VertexSet s = tuple;
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) == s.end() && edges.count(s)) ++count;
      return;
    }
    for (Vertex v : sets[i]) {
      tuple.push_back(v);
      rec(i + 1);
      tuple.pop_back();
    }
  };
  rec(0);
  return count;
}

/// All bipartitions (as masks of A) that are s-shadow disjoint.
inline std::vector<std::uint64_t> shadow_disjoint_masks(const Hypergraph& f, int s) {
  std::vector<std::uint64_t> out;
  const auto& edges = f.edges();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.n()); ++mask) {
    auto a_count = [&](const VertexSet& e) {
      int c = 0;
      for (Vertex v : e) c += static_cast<int>((mask >> v) & 1U);
      return c;
    };
    bool ok = true;
    for (std::size_t i = 0; i < edges.size() && ok; ++i)
      for (std::size_t j = i + 1; j < edges.size() && ok; ++j) {
        int common = 0;
        for (Vertex v : edges[i]) common += static_cast<int>(std::count(edges[j].begin(), edges[j].end(), v));
        if (common >= s && a_count(edges[i]) != a_count(edges[j])) ok = false;
      }
    if (ok) out.push_back(mask);
  }
  return out;
}

/// Is target = sum c_i g_i with every c_i in [-bound, bound]? Dynamic
/// programming over the reachable set, one generator at a time.
inline bool bounded_combination(const std::vector<std::array<std::int64_t, 2>>& gens, std::array<std::int64_t, 2> target, int bound = 10) {
  auto key = [](std::int64_t x, std::int64_t y) { return (static_cast<std::uint64_t>(x + (1 << 20)) << 32) | static_cast<std::uint64_t>(y + (1 << 20)); };
  std::vector<std::array<std::int64_t, 2>> reach{{0, 0}};
  for (const auto& g : gens) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::array<std::int64_t, 2>> next;
    for (const auto& r : reach)
      for (int c = -bound; c <= bound; ++c) {
        const std::array<std::int64_t, 2> p{r[0] + c * g[0], r[1] + c * g[1]};
        if (seen.insert(key(p[0], p[1])).second) next.push_back(p);
      }
    reach = std::move(next);
  }
  return std::find(reach.begin(), reach.end(), target) != reach.end();
}

/// All injective maps V(F) -> V(H) sending edges to edges.
inline std::vector<std::vector<Vertex>> embeddings(const Hypergraph& f, const Hypergraph& h) {
  const auto host = edge_set(h);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> map;
  std::vector<char> used(static_cast<std::size_t>(h.n()), 0);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(map.size()) == f.n()) {
      for (const auto& e : f.edges()) {
        VertexSet img;
        for (Vertex v : e) img.push_back(map[static_cast<std::size_t>(v)]);
        if (!is_edge(host, img)) return;
      }
      out.push_back(map);
      return;
    }
    for (Vertex w = 0; w < h.n(); ++w) {
      if (used[static_cast<std::size_t>(w)]) continue;
      used[static_cast<std::size_t>(w)] = 1;
      map.push_back(w);
      rec();
      map.pop_back();
      used[static_cast<std::size_t>(w)] = 0;
    }
  };
  rec();
  return out;
}

/// F-factor existence: choose copies (vertex images) in increasing index
/// order, keeping them pairwise disjoint, until v(H)/v(F) are chosen.
inline bool has_factor(const Hypergraph& f, const Hypergraph& h) {
  if (f.n() == 0 || h.n() % f.n() != 0) return false;
  std::set<VertexSet> images;
  for (const auto& m : embeddings(f, h)) {
    VertexSet s = m;
    std::sort(s.begin(), s.end());
    images.insert(s);
  }
  const std::vector<VertexSet> sets(images.begin(), images.end());
  const std::size_t need = static_cast<std::size_t>(h.n() / f.n());
  std::vector<char> used(static_cast<std::size_t>(h.n()), 0);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t chosen) {
    if (chosen == need) return true;
    for (std::size_t i = from; i < sets.size(); ++i) {
      if (std::any_of(sets[i].begin(), sets[i].end(), [&](Vertex v) { return used[static_cast<std::size_t>(v)] != 0; })) continue;
      for (Vertex v : sets[i]) used[static_cast<std::size_t>(v)] = 1;
      const bool ok = rec(i + 1, chosen + 1);
      for (Vertex v : sets[i]) used[static_cast<std::size_t>(v)] = 0;
      if (ok) return true;
    }
    return false;
  };
  return rec(0, 0);
}

/// max over all (X_1, X_2, X_3) of (p|X_1||X_2||X_3| - e(X_1,X_2,X_3)) / n^3.
inline double exhaustive_deficit_3(const Hypergraph& h, double p) {
  const int n = h.n();
  const auto edges = edge_set(h);
  double worst = 0.0;
  const std::uint64_t full = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < full; ++a)
    for (std::uint64_t b = 0; b < full; ++b)
      for (std::uint64_t c = 0; c < full; ++c) {
        std::uint64_t e = 0;
        for (Vertex x = 0; x < n; ++x) {
          if (!((a >> x) & 1U)) continue;
          for (Vertex y = 0; y < n; ++y) {
            if (!((b >> y) & 1U) || y == x) continue;
            for (Vertex z = 0; z < n; ++z)
              if (((c >> z) & 1U) && z != x && z != y && is_edge(edges, {x, y, z})) ++e;
          }
        }
        const double prod = static_cast<double>(std::popcount(a) * std::popcount(b) * std::popcount(c));
        worst = std::max(worst, (p * prod - static_cast<double>(e)) / (n * n * n));
      }
  return worst;
}

/// Random 3-graph on f vertices: each triple present with probability 1/2.
inline Hypergraph random_3graph(int f, factorlab::Rng& rng) {
  std::vector<VertexSet> edges;
  for (Vertex a = 0; a < f; ++a)
    for (Vertex b = a + 1; b < f; ++b)
      for (Vertex c = b + 1; c < f; ++c)
        if (rng.coin()) edges.push_back({a, b, c});
  return Hypergraph(3, f, edges);
}

/// All 3-graphs on f vertices (f <= 5 keeps this at most 2^10).
inline std::vector<Hypergraph> all_3graphs(int f) {
  std::vector<VertexSet> triples;
  for (Vertex a = 0; a < f; ++a)
    for (Vertex b = a + 1; b < f; ++b)
      for (Vertex c = b + 1; c < f; ++c) triples.push_back({a, b, c});
  std::vector<Hypergraph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << triples.size()); ++mask) {
    std::vector<VertexSet> edges;
    for (std::size_t i = 0; i < triples.size(); ++i)
      if ((mask >> i) & 1U) edges.push_back(triples[i]);
    out.emplace_back(3, f, edges);
  }
  return out;
}

inline Hypergraph permuted(const Hypergraph& h, const std::vector<Vertex>& perm) {
  std::vector<VertexSet> edges;
  for (const auto& e : h.edges()) {
    VertexSet img;
    for (Vertex v : e) img.push_back(perm[static_cast<std::size_t>(v)]);
    std::sort(img.begin(), img.end());
    edges.push_back(img);
  }
  return Hypergraph(h.k(), h.n(), edges);
}

}  // namespace oracle
