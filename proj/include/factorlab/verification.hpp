#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "factorlab/combinatorics.hpp"
#include "factorlab/hypergraph.hpp"
#include "factorlab/parallel.hpp"
#include "factorlab/report.hpp"
#include "factorlab/rng.hpp"

namespace factorlab {

/// Injection V(F) -> V(H): map[v] is the image of F-vertex v.
struct Embedding {
  std::vector<Vertex> map;

  VertexSet image() const { return sorted_set(map); }
  friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

struct FactorCertificate {
  std::vector<Embedding> copies;
};

inline constexpr std::uint64_t kDefaultCopyCap = 1'000'000;

inline bool validate_embedding(const Hypergraph& f, const Hypergraph& h, const Embedding& emb) {
  if (f.k() != h.k() || static_cast<int>(emb.map.size()) != f.n()) return false;
  std::set<Vertex> used;
  for (Vertex w : emb.map) {
    if (w < 0 || w >= h.n() || !used.insert(w).second) return false;
  }
  for (const auto& e : f.edges()) {
    VertexSet mapped;
    for (Vertex v : e) mapped.push_back(emb.map[static_cast<std::size_t>(v)]);
    if (!h.has_edge(mapped)) return false;
  }
  return true;
}

inline bool validate_factor_certificate(const Hypergraph& f, const Hypergraph& h, const FactorCertificate& cert) {
  std::vector<int> hits(static_cast<std::size_t>(h.n()), 0);
  for (const auto& emb : cert.copies) {
    if (!validate_embedding(f, h, emb)) return false;
    for (Vertex w : emb.map) ++hits[static_cast<std::size_t>(w)];
  }
  return std::all_of(hits.begin(), hits.end(), [](int c) { return c == 1; });
}

/// (k-1)-set -> sorted list of vertices completing it to an edge of H.
class HostIndex {
 public:
  explicit HostIndex(const Hypergraph& h) : h_(h) {
    for (const auto& e : h.edges()) {
      for (std::size_t drop = 0; drop < e.size(); ++drop) {
        VertexSet rest;
        for (std::size_t i = 0; i < e.size(); ++i)
          if (i != drop) rest.push_back(e[i]);
        completions_[rest].push_back(e[drop]);
      }
    }
    for (auto& [key, list] : completions_) std::sort(list.begin(), list.end());
  }

  const Hypergraph& graph() const { return h_; }

  const VertexSet& completions(const VertexSet& sorted_rest) const {
    static const VertexSet empty;
    auto it = completions_.find(sorted_rest);
    return it == completions_.end() ? empty : it->second;
  }

 private:
  const Hypergraph& h_;
  std::unordered_map<VertexSet, VertexSet, VertexSetHash> completions_;
};

namespace detail {

/// Backtracking non-induced embedding of F into H. F's vertices are placed in
/// a connectivity-greedy order; an F-vertex that closes an edge draws its
/// candidates from the H-completions of that edge's already-mapped part,
/// otherwise from all unused H-vertices. Candidates with smaller degree than
/// the F-vertex are pruned.
class EmbeddingSearch {
 public:
  EmbeddingSearch(const Hypergraph& f, const HostIndex& host, std::optional<Vertex> root) : f_(f), host_(host) {
    if (f.k() != host.graph().k()) throw std::invalid_argument("F and H must have the same uniformity");
    build_order(root);
  }

  /// Calls visit(map) for every embedding (respecting the root constraint
  /// given to run). Stops when visit returns false. Returns false if stopped.
  template <typename Visit>
  bool run(std::optional<Vertex> root_image, Visit&& visit) {
    const int fn = f_.n();
    map_.assign(static_cast<std::size_t>(fn), -1);
    used_.assign(static_cast<std::size_t>(host_.graph().n()), 0);
    if (fn > host_.graph().n()) return true;
    root_image_ = root_image;
    return extend(0, visit);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void build_order(std::optional<Vertex> root) {
    const int fn = f_.n();
    std::vector<char> placed(static_cast<std::size_t>(fn), 0);
    std::vector<int> links_to_placed(static_cast<std::size_t>(fn), 0);
    auto pick = [&]() {
      Vertex best = -1;
      for (Vertex v = 0; v < fn; ++v) {
        if (placed[static_cast<std::size_t>(v)]) continue;
        if (best < 0) {
          best = v;
          continue;
        }
        const auto key = [&](Vertex u) {
          return std::make_pair(links_to_placed[static_cast<std::size_t>(u)], f_.vertex_degree(u));
        };
        if (key(v) > key(best)) best = v;
      }
      return best;
    };
    position_.assign(static_cast<std::size_t>(fn), 0);
    for (int i = 0; i < fn; ++i) {
      Vertex v = (i == 0 && root) ? *root : pick();
      placed[static_cast<std::size_t>(v)] = 1;
      position_[static_cast<std::size_t>(v)] = i;
      order_.push_back(v);
      for (std::size_t idx : f_.incident_edges(v))
        for (Vertex u : f_.edge(idx))
          if (!placed[static_cast<std::size_t>(u)]) ++links_to_placed[static_cast<std::size_t>(u)];
    }
    closing_.assign(static_cast<std::size_t>(fn), {});
    for (const auto& e : f_.edges()) {
      Vertex last = e.front();
      for (Vertex v : e)
        if (position_[static_cast<std::size_t>(v)] > position_[static_cast<std::size_t>(last)]) last = v;
      VertexSet others;
      for (Vertex v : e)
        if (v != last) others.push_back(v);
      closing_[static_cast<std::size_t>(last)].push_back(std::move(others));
    }
  }

  VertexSet mapped_sorted(const VertexSet& f_vertices) const {
    VertexSet out;
    out.reserve(f_vertices.size());
    for (Vertex v : f_vertices) out.push_back(map_[static_cast<std::size_t>(v)]);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool admissible(Vertex fv, Vertex hw) const {
    if (used_[static_cast<std::size_t>(hw)]) return false;
    if (host_.graph().vertex_degree(hw) < f_.vertex_degree(fv)) return false;
    const auto& closing = closing_[static_cast<std::size_t>(fv)];
    for (std::size_t i = 1; i < closing.size(); ++i) {
      VertexSet e = mapped_sorted(closing[i]);
      e.insert(std::lower_bound(e.begin(), e.end(), hw), hw);
      if (!host_.graph().has_sorted_edge(e)) return false;
    }
    return true;
  }

  template <typename Visit>
  bool extend(std::size_t depth, Visit& visit) {
    if (depth == order_.size()) return visit(static_cast<const std::vector<Vertex>&>(map_));
    const Vertex fv = order_[depth];
    auto try_candidate = [&](Vertex hw) {
      ++nodes_;
      map_[static_cast<std::size_t>(fv)] = hw;
      used_[static_cast<std::size_t>(hw)] = 1;
      const bool keep_going = extend(depth + 1, visit);
      used_[static_cast<std::size_t>(hw)] = 0;
      map_[static_cast<std::size_t>(fv)] = -1;
      return keep_going;
    };
    const auto& closing = closing_[static_cast<std::size_t>(fv)];
    if (depth == 0 && root_image_) {
      const Vertex hw = *root_image_;
      if (!closing.empty()) {
        const auto& cands = host_.completions(mapped_sorted(closing.front()));
        if (!std::binary_search(cands.begin(), cands.end(), hw)) return true;
      }
      return admissible(fv, hw) ? try_candidate(hw) : true;
    }
    if (!closing.empty()) {
      const VertexSet cands = host_.completions(mapped_sorted(closing.front()));
      for (Vertex hw : cands) {
        if (admissible(fv, hw) && !try_candidate(hw)) return false;
      }
      return true;
    }
    for (Vertex hw = 0; hw < host_.graph().n(); ++hw) {
      if (admissible(fv, hw) && !try_candidate(hw)) return false;
    }
    return true;
  }

  const Hypergraph& f_;
  const HostIndex& host_;
  std::vector<Vertex> order_;
  std::vector<int> position_;
  std::vector<std::vector<VertexSet>> closing_;
  std::vector<Vertex> map_;
  std::vector<char> used_;
  std::optional<Vertex> root_image_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

struct CopyEnumeration {
  std::vector<Embedding> embeddings;
  bool truncated = false;
  std::uint64_t nodes = 0;
};

/// Labeled embeddings of F into H, up to `cap`, sorted by image map.
inline CopyEnumeration enumerate_copies(const Hypergraph& f, const Hypergraph& h, std::uint64_t cap = kDefaultCopyCap) {
  HostIndex host(h);
  detail::EmbeddingSearch search(f, host, std::nullopt);
  CopyEnumeration out;
  search.run(std::nullopt, [&](const std::vector<Vertex>& map) {
    if (out.embeddings.size() == cap) {
      out.truncated = true;
      return false;
    }
    out.embeddings.push_back({map});
    return true;
  });
  out.nodes = search.nodes();
  std::sort(out.embeddings.begin(), out.embeddings.end());
  return out;
}

struct RootedCount {
  std::uint64_t count = 0;
  bool truncated = false;
};

/// Number of embeddings with vstar -> w, stopping at `cap`.
inline RootedCount rooted_copies(const Hypergraph& f, Vertex vstar, const HostIndex& host, Vertex w,
                                 std::uint64_t cap = kDefaultCopyCap) {
  if (vstar < 0 || vstar >= f.n()) throw std::invalid_argument("rooted_copies: vstar out of range");
  if (w < 0 || w >= host.graph().n()) throw std::invalid_argument("rooted_copies: w out of range");
  detail::EmbeddingSearch search(f, host, vstar);
  RootedCount out;
  search.run(w, [&](const std::vector<Vertex>&) {
    if (out.count == cap) {
      out.truncated = true;
      return false;
    }
    ++out.count;
    return true;
  });
  return out;
}

inline RootedCount rooted_copies(const Hypergraph& f, Vertex vstar, const Hypergraph& h, Vertex w,
                                 std::uint64_t cap = kDefaultCopyCap) {
  HostIndex host(h);
  return rooted_copies(f, vstar, host, w, cap);
}

/// Some embedding with vstar -> w, if any.
inline std::optional<Embedding> first_rooted_copy(const Hypergraph& f, Vertex vstar, const HostIndex& host, Vertex w) {
  detail::EmbeddingSearch search(f, host, vstar);
  std::optional<Embedding> found;
  search.run(w, [&](const std::vector<Vertex>& map) {
    found = Embedding{map};
    return false;
  });
  return found;
}

struct CoverReport {
  std::vector<char> covered;
  std::vector<std::optional<Embedding>> witness;
  bool all_covered = false;
};

/// For each vertex w of H, whether some copy of F contains w.
inline CoverReport find_cover(const Hypergraph& f, const Hypergraph& h, unsigned workers = 1) {
  if (f.k() != h.k()) throw std::invalid_argument("F and H must have the same uniformity");
  HostIndex host(h);
  CoverReport report;
  report.covered.assign(static_cast<std::size_t>(h.n()), 0);
  report.witness.assign(static_cast<std::size_t>(h.n()), std::nullopt);
  parallel_for(static_cast<std::size_t>(h.n()), workers, [&](std::size_t wi) {
    const auto w = static_cast<Vertex>(wi);
    for (Vertex vstar = 0; vstar < f.n(); ++vstar) {
      if (auto emb = first_rooted_copy(f, vstar, host, w)) {
        report.covered[wi] = 1;
        report.witness[wi] = std::move(emb);
        return;
      }
    }
  });
  report.all_covered = std::all_of(report.covered.begin(), report.covered.end(), [](char c) { return c != 0; });
  return report;
}

struct CopySets {
  std::vector<VertexSet> sets;  // sorted, distinct
  std::vector<Embedding> representative;
  bool truncated = false;
};

/// Distinct vertex images of copies of F, each with one representative
/// embedding. Counts labeled embeddings against `cap`.
inline CopySets copy_vertex_sets(const Hypergraph& f, const Hypergraph& h, std::uint64_t cap = kDefaultCopyCap) {
  HostIndex host(h);
  detail::EmbeddingSearch search(f, host, std::nullopt);
  std::map<VertexSet, Embedding> found;
  std::uint64_t seen = 0;
  CopySets out;
  search.run(std::nullopt, [&](const std::vector<Vertex>& map) {
    if (seen == cap) {
      out.truncated = true;
      return false;
    }
    ++seen;
    found.emplace(sorted_set(map), Embedding{map});
    return true;
  });
  for (auto& [set, emb] : found) {
    out.sets.push_back(set);
    out.representative.push_back(std::move(emb));
  }
  return out;
}

enum class FactorStatus { found, absent, inconclusive };

inline const char* to_string(FactorStatus s) {
  switch (s) {
    case FactorStatus::found:
      return "found";
    case FactorStatus::absent:
      return "absent";
    case FactorStatus::inconclusive:
      return "inconclusive";
  }
  return "?";
}

struct FactorResult {
  FactorStatus status = FactorStatus::absent;
  std::optional<FactorCertificate> certificate;
  std::size_t candidate_copies = 0;
  std::uint64_t nodes = 0;
  std::string reason;
};

namespace detail {

class ExactCover {
 public:
  ExactCover(int n, const std::vector<VertexSet>& sets) : n_(n), sets_(sets), words_((static_cast<std::size_t>(n) + 63) / 64) {
    containing_.assign(static_cast<std::size_t>(n), {});
    masks_.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::vector<std::uint64_t> m(words_, 0);
      for (Vertex v : sets[i]) {
        m[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (static_cast<std::size_t>(v) % 64);
        containing_[static_cast<std::size_t>(v)].push_back(i);
      }
      masks_.push_back(std::move(m));
    }
    covered_.assign(words_, 0);
  }

  std::optional<std::vector<std::size_t>> solve() {
    chosen_.clear();
    if (search()) return chosen_;
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool is_covered(Vertex v) const { return (covered_[static_cast<std::size_t>(v) / 64] >> (static_cast<std::size_t>(v) % 64)) & 1U; }
  bool available(std::size_t set) const {
    for (std::size_t w = 0; w < words_; ++w)
      if (masks_[set][w] & covered_[w]) return false;
    return true;
  }
  void toggle(std::size_t set) {
    for (std::size_t w = 0; w < words_; ++w) covered_[w] ^= masks_[set][w];
  }

  bool search() {
    ++nodes_;
    Vertex best = -1;
    std::size_t best_count = 0;
    for (Vertex v = 0; v < n_; ++v) {
      if (is_covered(v)) continue;
      std::size_t count = 0;
      for (std::size_t s : containing_[static_cast<std::size_t>(v)])
        if (available(s)) ++count;
      if (best < 0 || count < best_count) {
        best = v;
        best_count = count;
        if (count == 0) return false;
      }
    }
    if (best < 0) return true;
    for (std::size_t s : containing_[static_cast<std::size_t>(best)]) {
      if (!available(s)) continue;
      toggle(s);
      chosen_.push_back(s);
      if (search()) return true;
      chosen_.pop_back();
      toggle(s);
    }
    return false;
  }

  int n_;
  const std::vector<VertexSet>& sets_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> masks_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<std::uint64_t> covered_;
  std::vector<std::size_t> chosen_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// F-factor of H by exact cover over the vertex sets of copies of F. Branches
/// on the uncovered vertex with the fewest still-available copies (lowest id
/// on ties). Inconclusive if copy enumeration hits `cap`.
inline FactorResult find_factor(const Hypergraph& f, const Hypergraph& h, std::uint64_t cap = kDefaultCopyCap) {
  if (f.k() != h.k()) throw std::invalid_argument("F and H must have the same uniformity");
  FactorResult result;
  if (f.n() == 0) throw std::invalid_argument("find_factor: F has no vertices");
  if (h.n() % f.n() != 0) {
    result.reason = "v(F) does not divide v(H)";
    return result;
  }
  const CopySets copies = copy_vertex_sets(f, h, cap);
  result.candidate_copies = copies.sets.size();
  if (copies.truncated) {
    result.status = FactorStatus::inconclusive;
    result.reason = "copy enumeration cap reached";
    return result;
  }
  detail::ExactCover cover(h.n(), copies.sets);
  auto chosen = cover.solve();
  result.nodes = cover.nodes();
  if (!chosen) {
    result.reason = "exact cover search exhausted";
    return result;
  }
  FactorCertificate cert;
  std::sort(chosen->begin(), chosen->end());
  for (std::size_t idx : *chosen) cert.copies.push_back(copies.representative[idx]);
  result.status = FactorStatus::found;
  result.certificate = std::move(cert);
  return result;
}

enum class DensenessMode { sampled, exhaustive };

struct DensenessEstimate {
  double p = 0.0;
  std::uint64_t samples = 0;
  double worst_deficit = 0.0;  // max over examined families of (p*|K| - e) / n^k
  DensenessMode mode = DensenessMode::sampled;
  std::uint64_t seed = 0;
  std::uint64_t worst_sample = 0;
  std::vector<VertexSet> worst_sets;  // exhaustive mode and singleton-family sampling

  /// Only an exhaustive scan certifies (p, mu)-denseness.
  std::optional<bool> verdict(double mu) const {
    if (mode != DensenessMode::exhaustive) return std::nullopt;
    return worst_deficit <= mu;
  }
};

namespace detail {

inline std::vector<char> sample_membership(Rng& rng, std::size_t count) {
  std::vector<char> out(count);
  for (auto& c : out) c = rng.coin() ? 1 : 0;
  return out;
}

inline double deficit(double p, double family_size, double edge_count, double scale) {
  return (p * family_size - edge_count) / scale;
}

inline double power(int n, int k) { return std::pow(static_cast<double>(n), k); }

}  // namespace detail

/// Sampled (p, mu)-denseness deficit: each sample draws X_1..X_k with every
/// vertex in each X_i independently with probability 1/2, from the stream
/// seeded by derive_seed(seed, sample index). Reports the worst deficit.
inline DensenessEstimate estimate_denseness(const Hypergraph& h, double p, std::uint64_t samples, std::uint64_t seed,
                                            unsigned workers = 1) {
  if (h.n() == 0) throw std::invalid_argument("estimate_denseness: empty vertex set");
  if (samples == 0) throw std::invalid_argument("estimate_denseness: need at least one sample");
  const int k = h.k();
  const auto n = static_cast<std::size_t>(h.n());
  const double scale = detail::power(h.n(), k);
  std::vector<double> deficits(samples);
  parallel_for(samples, workers, [&](std::size_t j) {
    Rng rng(derive_seed(seed, j));
    std::vector<VertexSet> sets(static_cast<std::size_t>(k));
    double product = 1.0;
    for (int i = 0; i < k; ++i) {
      const auto member = detail::sample_membership(rng, n);
      for (std::size_t v = 0; v < n; ++v)
        if (member[v]) sets[static_cast<std::size_t>(i)].push_back(static_cast<Vertex>(v));
      product *= static_cast<double>(sets[static_cast<std::size_t>(i)].size());
    }
    deficits[j] = detail::deficit(p, product, static_cast<double>(count_tuple_edges(h, sets)), scale);
  });
  DensenessEstimate out;
  out.p = p;
  out.samples = samples;
  out.seed = seed;
  out.mode = DensenessMode::sampled;
  out.worst_sample = static_cast<std::uint64_t>(std::max_element(deficits.begin(), deficits.end()) - deficits.begin());
  out.worst_deficit = deficits[out.worst_sample];
  return out;
}

/// Generalized denseness against families {G_S : S in family}, G_S a set of
/// functions S -> V. Each G_S is sampled by including every function with
/// probability 1/2 (functions in lexicographic order of their value tuple),
/// members of `family` in the given order, using the same per-sample streams
/// as estimate_denseness. Family members are 1-based subsets of [k].
inline DensenessEstimate estimate_S_denseness(const Hypergraph& h, double p, const std::vector<std::vector<int>>& family,
                                              std::uint64_t samples, std::uint64_t seed, unsigned workers = 1) {
  if (h.n() == 0) throw std::invalid_argument("estimate_S_denseness: empty vertex set");
  if (samples == 0) throw std::invalid_argument("estimate_S_denseness: need at least one sample");
  const int k = h.k();
  const int n = h.n();
  std::vector<std::vector<int>> members;
  for (const auto& s : family) {
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (static_cast<int>(sorted.size()) > k) throw std::invalid_argument("family member larger than k");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw std::invalid_argument("family member repeats an index");
    for (int i : sorted)
      if (i < 1 || i > k) throw std::invalid_argument("family member index outside [1, k]");
    if (detail::power(n, static_cast<int>(sorted.size())) > 1e7) throw std::invalid_argument("family member too large to sample");
    members.push_back(std::move(sorted));
  }
  if (detail::power(n, k) > 2e6) throw std::invalid_argument("estimate_S_denseness: n^k too large for tuple enumeration");
  const double scale = detail::power(n, k);
  std::vector<double> deficits(samples);
  parallel_for(samples, workers, [&](std::size_t j) {
    Rng rng(derive_seed(seed, j));
    std::vector<std::vector<char>> g;
    for (const auto& s : members) {
      std::size_t count = 1;
      for (std::size_t t = 0; t < s.size(); ++t) count *= static_cast<std::size_t>(n);
      g.push_back(detail::sample_membership(rng, count));
    }
    std::vector<Vertex> tuple(static_cast<std::size_t>(k), 0);
    std::uint64_t family_size = 0;
    std::uint64_t edge_count = 0;
    VertexSet sorted;
    while (true) {
      bool inside = true;
      for (std::size_t m = 0; m < members.size() && inside; ++m) {
        std::size_t index = 0;
        for (int i : members[m]) index = index * static_cast<std::size_t>(n) + static_cast<std::size_t>(tuple[static_cast<std::size_t>(i - 1)]);
        inside = g[m][index] != 0;
      }
      if (inside) {
        ++family_size;
        sorted.assign(tuple.begin(), tuple.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && h.has_sorted_edge(sorted)) ++edge_count;
      }
      int pos = k - 1;
      while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == n) tuple[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
    }
    deficits[j] = detail::deficit(p, static_cast<double>(family_size), static_cast<double>(edge_count), scale);
  });
  DensenessEstimate out;
  out.p = p;
  out.samples = samples;
  out.seed = seed;
  out.mode = DensenessMode::sampled;
  out.worst_sample = static_cast<std::uint64_t>(std::max_element(deficits.begin(), deficits.end()) - deficits.begin());
  out.worst_deficit = deficits[out.worst_sample];
  return out;
}

/// The family {{1}, ..., {k}} under which S-denseness is (p, mu)-denseness.
inline std::vector<std::vector<int>> singleton_family(int k) {
  std::vector<std::vector<int>> out;
  for (int i = 1; i <= k; ++i) out.push_back({i});
  return out;
}

/// Exact worst deficit over all k-tuples of vertex subsets. For fixed
/// X_1..X_{k-1} the deficit is linear in the indicator of X_k, so the best
/// X_k takes exactly the vertices v with p * prod|X_i| > e(X_1..X_{k-1}, {v});
/// only the first k-1 sets are enumerated. 3-graphs use a Gray-code walk over
/// X_2 with incremental per-vertex counts (n <= 12); other k require
/// (k-1) * n <= 24.
inline DensenessEstimate exact_denseness_small(const Hypergraph& h, double p) {
  const int n = h.n();
  const int k = h.k();
  if (n == 0) throw std::invalid_argument("exact_denseness_small: empty vertex set");
  if (n > 62) throw std::invalid_argument("exact_denseness_small: n too large");
  if (k == 3 ? n > 12 : (k - 1) * n > 24) throw std::invalid_argument("exact_denseness_small: instance too large for exhaustive mode");
  const double scale = detail::power(n, k);
  DensenessEstimate out;
  out.p = p;
  out.mode = DensenessMode::exhaustive;
  out.worst_deficit = 0.0;  // all-empty sets
  out.worst_sets.assign(static_cast<std::size_t>(k), {});
  auto mask_to_set = [n](std::uint64_t m) {
    VertexSet s;
    for (Vertex v = 0; v < n; ++v)
      if ((m >> v) & 1U) s.push_back(v);
    return s;
  };
  auto record = [&](double total, const std::vector<std::uint64_t>& masks, const std::vector<double>& per_vertex) {
    const double d = total / scale;
    if (d > out.worst_deficit) {
      out.worst_deficit = d;
      out.worst_sets.clear();
      for (auto m : masks) out.worst_sets.push_back(mask_to_set(m));
      VertexSet last;
      for (Vertex v = 0; v < n; ++v)
        if (per_vertex[static_cast<std::size_t>(v)] > 0) last.push_back(v);
      out.worst_sets.push_back(std::move(last));
    }
  };
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::vector<double> gain(static_cast<std::size_t>(n));

  if (k == 3) {
    // link_mask[v][x]: vertices y with {v, x, y} an edge.
    std::vector<std::vector<std::uint64_t>> link_mask(static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
    for (const auto& e : h.edges()) {
      for (int i = 0; i < 3; ++i) {
        const Vertex v = e[static_cast<std::size_t>(i)];
        const Vertex a = e[static_cast<std::size_t>((i + 1) % 3)];
        const Vertex b = e[static_cast<std::size_t>((i + 2) % 3)];
        link_mask[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
        link_mask[static_cast<std::size_t>(v)][static_cast<std::size_t>(b)] |= std::uint64_t{1} << a;
      }
    }
    std::vector<std::vector<int>> weight(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    std::vector<long long> count(static_cast<std::size_t>(n));
    for (std::uint64_t x1 = 0; x1 < subsets; ++x1) {
      const int size1 = std::popcount(x1);
      if (size1 == 0) continue;
      // weight[v][x2] = |{x1 in X1 : {x1, x2, v} in E}|
      for (int v = 0; v < n; ++v)
        for (int x = 0; x < n; ++x)
          weight[static_cast<std::size_t>(v)][static_cast<std::size_t>(x)] =
              std::popcount(link_mask[static_cast<std::size_t>(v)][static_cast<std::size_t>(x)] & x1);
      std::fill(count.begin(), count.end(), 0);
      std::uint64_t x2 = 0;
      for (std::uint64_t step = 1; step < subsets; ++step) {
        const int bit = std::countr_zero(step);
        x2 ^= std::uint64_t{1} << bit;
        const long long sign = ((x2 >> bit) & 1U) ? 1 : -1;
        for (int v = 0; v < n; ++v) count[static_cast<std::size_t>(v)] += sign * weight[static_cast<std::size_t>(v)][static_cast<std::size_t>(bit)];
        const double base = p * static_cast<double>(size1) * static_cast<double>(std::popcount(x2));
        double total = 0.0;
        for (int v = 0; v < n; ++v) {
          gain[static_cast<std::size_t>(v)] = base - static_cast<double>(count[static_cast<std::size_t>(v)]);
          if (gain[static_cast<std::size_t>(v)] > 0) total += gain[static_cast<std::size_t>(v)];
        }
        if (total / scale > out.worst_deficit) record(total, {x1, x2}, gain);
      }
    }
    return out;
  }

  std::vector<std::uint64_t> masks(static_cast<std::size_t>(k - 1), 0);
  while (true) {
    double base = p;
    for (auto m : masks) base *= static_cast<double>(std::popcount(m));
    if (base > 0) {
      double total = 0.0;
      for (Vertex v = 0; v < n; ++v) {
        // Ordered placements of e \ {v} into slots 1..k-1 with membership.
        std::uint64_t c = 0;
        for (std::size_t idx : h.incident_edges(v)) {
          VertexSet rest;
          for (Vertex u : h.edge(idx))
            if (u != v) rest.push_back(u);
          std::sort(rest.begin(), rest.end());
          do {
            bool ok = true;
            for (std::size_t i = 0; i < rest.size() && ok; ++i) ok = (masks[i] >> rest[i]) & 1U;
            if (ok) ++c;
          } while (std::next_permutation(rest.begin(), rest.end()));
        }
        gain[static_cast<std::size_t>(v)] = base - static_cast<double>(c);
        if (gain[static_cast<std::size_t>(v)] > 0) total += gain[static_cast<std::size_t>(v)];
      }
      record(total, masks, gain);
    }
    std::size_t pos = 0;
    while (pos < masks.size() && ++masks[pos] == subsets) masks[pos++] = 0;
    if (pos == masks.size()) break;
  }
  return out;
}

/// Number of (f-1)-sets W avoiding u and v such that both H[{u} + W] and
/// H[{v} + W] contain a spanning copy of F.
inline std::uint64_t count_reachable_sets(const Hypergraph& h, const Hypergraph& f, Vertex u, Vertex v) {
  if (h.n() > 14) throw std::invalid_argument("count_reachable_sets: host limited to 14 vertices");
  if (f.n() < 1) throw std::invalid_argument("count_reachable_sets: F has no vertices");
  if (u < 0 || u >= h.n() || v < 0 || v >= h.n() || u == v) throw std::invalid_argument("count_reachable_sets: u and v must be distinct vertices of H");
  if (f.k() != h.k()) throw std::invalid_argument("F and H must have the same uniformity");
  VertexSet rest;
  for (Vertex x = 0; x < h.n(); ++x)
    if (x != u && x != v) rest.push_back(x);
  std::uint64_t count = 0;
  for_each_subset_of(rest, static_cast<std::size_t>(f.n() - 1), [&](const VertexSet& w) {
    VertexSet with_u = w;
    with_u.push_back(u);
    if (find_factor(f, induced_subgraph(h, with_u)).status != FactorStatus::found) return;
    VertexSet with_v = w;
    with_v.push_back(v);
    if (find_factor(f, induced_subgraph(h, with_v)).status == FactorStatus::found) ++count;
  });
  return count;
}

inline nlohmann::json to_json(const Embedding& e) { return e.map; }

inline nlohmann::json to_json(const FactorCertificate& c) {
  auto out = nlohmann::json::array();
  for (const auto& e : c.copies) out.push_back(e.map);
  return out;
}

inline nlohmann::json to_json(const DensenessEstimate& d) {
  return {{"p", d.p},
          {"mode", d.mode == DensenessMode::exhaustive ? "exhaustive" : "sampled"},
          {"samples", d.samples},
          {"seed", d.seed},
          {"worst_deficit", d.worst_deficit},
          {"worst_sample", d.worst_sample},
          {"worst_sets", d.worst_sets}};
}

}  // namespace factorlab
