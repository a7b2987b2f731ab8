#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "factorlab/hypergraph.hpp"
#include "factorlab/report.hpp"
#include "factorlab/witness_check.hpp"

namespace factorlab {

/// A decider was asked to build something whose mathematical precondition
/// fails for the given input (e.g. a compatible enumeration for a 3-graph
/// without a consistent shadow coloring).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require_k3(const Hypergraph& f, const char* what) {
  if (f.k() != 3) throw std::invalid_argument(std::string(what) + " requires a 3-graph, got k=" + std::to_string(f.k()));
}

inline void flag_isolated(const Hypergraph& f, std::vector<std::string>& flags) {
  if (!f.isolated_vertices().empty()) flags.push_back("isolated_vertices_present");
}

/// Pair links N({v}) of a 3-graph, one sorted list per vertex.
inline std::vector<std::vector<VertexSet>> vertex_links(const Hypergraph& f) {
  std::vector<std::vector<VertexSet>> out;
  out.reserve(static_cast<std::size_t>(f.n()));
  for (Vertex v = 0; v < f.n(); ++v) out.push_back(link(f, {v}));
  return out;
}

inline bool sorted_lists_intersect(const std::vector<VertexSet>& a, const std::vector<VertexSet>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

/// Backtracking search for an ordering whose forced shadow coloring is
/// consistent. When an edge gets its second vertex placed, all three of its
/// pair colors are determined (the unplaced vertex comes last), so conflicts
/// are detected as early as possible. `blocks`, if non-empty, restricts the
/// ordering to list the blocks' vertices block by block.
class OrderingSearch {
 public:
  OrderingSearch(const Hypergraph& f, std::vector<VertexSet> blocks) : f_(f), n_(f.n()), blocks_(std::move(blocks)) {
    if (blocks_.empty()) {
      VertexSet all(static_cast<std::size_t>(n_));
      std::iota(all.begin(), all.end(), 0);
      blocks_.push_back(std::move(all));
    }
    color_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), -1);
    placed_.assign(static_cast<std::size_t>(n_), 0);
  }

  std::optional<Ordering> run() {
    sequence_.clear();
    if (!extend(0, 0)) return std::nullopt;
    return Ordering{sequence_};
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  int& color_at(Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return color_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)];
  }

  bool force(Vertex a, Vertex b, Color c, std::vector<std::pair<Vertex, Vertex>>& trail) {
    int& slot = color_at(a, b);
    if (slot == -1) {
      slot = static_cast<int>(c);
      trail.emplace_back(a, b);
      return true;
    }
    return slot == static_cast<int>(c);
  }

  bool place(Vertex v, std::vector<std::pair<Vertex, Vertex>>& trail) {
    for (std::size_t idx : f_.incident_edges(v)) {
      const auto& e = f_.edge(idx);
      Vertex earlier = -1;
      Vertex later = -1;
      int placed_others = 0;
      for (Vertex u : e) {
        if (u == v) continue;
        if (placed_[static_cast<std::size_t>(u)]) {
          earlier = u;
          ++placed_others;
        } else {
          later = u;
        }
      }
      if (placed_others != 1) continue;
      if (!force(earlier, v, Color::red, trail) || !force(earlier, later, Color::blue, trail) ||
          !force(v, later, Color::green, trail)) {
        return false;
      }
    }
    return true;
  }

  bool extend(std::size_t block, std::size_t within) {
    while (block < blocks_.size() && within == blocks_[block].size()) {
      ++block;
      within = 0;
    }
    if (block == blocks_.size()) return true;
    for (Vertex v : blocks_[block]) {
      if (placed_[static_cast<std::size_t>(v)]) continue;
      ++nodes_;
      std::vector<std::pair<Vertex, Vertex>> trail;
      const bool ok = place(v, trail);
      placed_[static_cast<std::size_t>(v)] = 1;
      sequence_.push_back(v);
      if (ok && extend(block, within + 1)) return true;
      sequence_.pop_back();
      placed_[static_cast<std::size_t>(v)] = 0;
      for (auto [a, b] : trail) color_at(a, b) = -1;
    }
    return false;
  }

  const Hypergraph& f_;
  int n_;
  std::vector<VertexSet> blocks_;
  std::vector<int> color_;
  std::vector<char> placed_;
  std::vector<Vertex> sequence_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Colors each edge's pairs by position under `ord`: the two earliest red,
/// earliest and latest blue, the two latest green. Absent when some pair
/// would receive two different colors.
inline std::optional<ShadowColoring> forced_coloring(const Hypergraph& f, const Ordering& ord) {
  detail::require_k3(f, "forced_coloring");
  const auto pos = ord.positions(f.n());
  ShadowColoring out;
  for (const auto& e : f.edges()) {
    VertexSet s = e;
    std::sort(s.begin(), s.end(), [&](Vertex a, Vertex b) { return pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)]; });
    const std::pair<std::pair<Vertex, Vertex>, Color> assignments[3] = {
        {{s[0], s[1]}, Color::red}, {{s[0], s[2]}, Color::blue}, {{s[1], s[2]}, Color::green}};
    for (const auto& [pair, color] : assignments) {
      const std::pair<Vertex, Vertex> key{std::min(pair.first, pair.second), std::max(pair.first, pair.second)};
      auto [it, inserted] = out.colors.emplace(key, color);
      if (!inserted && it->second != color) return std::nullopt;
    }
  }
  return out;
}

/// Vanishing Turan density for 3-graphs in uniformly dense hosts: true iff
/// some vertex ordering yields a consistent forced shadow coloring.
inline DecisionReport decide_turan_zero_3(const Hypergraph& f) {
  detail::require_k3(f, "decide_turan_zero_3");
  Stopwatch clock;
  DecisionReport report;
  report.property = "turan-zero";
  detail::flag_isolated(f, report.flags);
  detail::OrderingSearch search(f, {});
  auto ord = search.run();
  report.stats.nodes = search.nodes();
  if (ord) {
    report.verdict = true;
    report.witness = OrderingWitness{*ord, *forced_coloring(f, *ord)};
  } else {
    report.details["refutation"] = {{"reason", "every vertex ordering forces some shadow pair to receive two colors"}};
  }
  report.stats.elapsed_ms = clock.elapsed_ms();
  return report;
}

/// Link-disjointness criterion for k-partite F: some vstar such that every
/// edge through vstar meets every edge avoiding vstar in at most one vertex.
/// Refuses input that is not k-partite.
inline DecisionReport decide_linkdisjoint_kpartite(const Hypergraph& f) {
  Stopwatch clock;
  auto partition = is_k_partite(f);
  if (!partition) {
    throw std::invalid_argument("decide_linkdisjoint_kpartite: F is not k-partite; the criterion only characterizes k-partite F");
  }
  DecisionReport report;
  report.property = "kpartite-link";
  detail::flag_isolated(f, report.flags);
  for (Vertex v = 0; v < f.n(); ++v) {
    ++report.stats.nodes;
    bool ok = true;
    for (std::size_t i = 0; i < f.num_edges() && ok; ++i) {
      const auto& e = f.edge(i);
      if (!std::binary_search(e.begin(), e.end(), v)) continue;
      for (std::size_t j = 0; j < f.num_edges(); ++j) {
        const auto& g = f.edge(j);
        if (std::binary_search(g.begin(), g.end(), v)) continue;
        if (intersection_size(e, g) > 1) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      report.verdict = true;
      report.witness = LinkDisjointWitness{v, *partition};
      break;
    }
  }
  if (!report.verdict) {
    report.details["refutation"] = {{"reason", "for every vstar some edge through vstar shares two vertices with an edge avoiding it"}};
  }
  report.stats.elapsed_ms = clock.elapsed_ms();
  return report;
}

/// Cover condition for 3-graphs: a vertex vstar and partition {X, Y, {vstar}}
/// with N(vstar) inside X x Y and N(x), N(y), N(vstar) pairwise disjoint for
/// all x in X, y in Y.
///
/// Every other vertex lies in X or Y, so N(v) and N(vstar) must be disjoint
/// for all v != vstar; candidates failing this are skipped. For the rest the
/// problem is 2-coloring V - vstar where intersecting links force equal
/// sides and each pair of N(vstar) forces opposite sides, solved with a
/// parity union-find. Within each component the smallest vertex goes to X.
inline DecisionReport decide_cover_partition_3(const Hypergraph& f) {
  detail::require_k3(f, "decide_cover_partition_3");
  Stopwatch clock;
  DecisionReport report;
  report.property = "cover-partition";
  detail::flag_isolated(f, report.flags);
  report.flags.push_back("disjointness_checked_on_cross_pairs_only");
  const int n = f.n();
  const auto links = detail::vertex_links(f);

  std::vector<int> parent(static_cast<std::size_t>(n));
  std::vector<int> parity(static_cast<std::size_t>(n));
  auto find = [&](auto&& self, int v) -> std::pair<int, int> {
    if (parent[static_cast<std::size_t>(v)] == v) return {v, 0};
    auto [root, p] = self(self, parent[static_cast<std::size_t>(v)]);
    parent[static_cast<std::size_t>(v)] = root;
    parity[static_cast<std::size_t>(v)] ^= p;
    return {root, parity[static_cast<std::size_t>(v)]};
  };
  // Joins u and w with side(u) xor side(w) == diff; false on contradiction.
  auto unite = [&](int u, int w, int diff) {
    auto [ru, pu] = find(find, u);
    auto [rw, pw] = find(find, w);
    if (ru == rw) return (pu ^ pw) == diff;
    parent[static_cast<std::size_t>(rw)] = ru;
    parity[static_cast<std::size_t>(rw)] = pu ^ pw ^ diff;
    return true;
  };

  std::vector<Vertex> rejected_by_filter;
  std::vector<Vertex> rejected_by_coloring;
  for (Vertex vstar = 0; vstar < n && !report.verdict; ++vstar) {
    ++report.stats.nodes;
    const auto& nstar = links[static_cast<std::size_t>(vstar)];
    bool filter_ok = true;
    for (Vertex v = 0; v < n && filter_ok; ++v) {
      if (v != vstar && detail::sorted_lists_intersect(links[static_cast<std::size_t>(v)], nstar)) filter_ok = false;
    }
    if (!filter_ok) {
      rejected_by_filter.push_back(vstar);
      continue;
    }
    std::iota(parent.begin(), parent.end(), 0);
    std::fill(parity.begin(), parity.end(), 0);
    bool ok = true;
    for (const auto& pair : nstar) ok = ok && unite(pair[0], pair[1], 1);
    for (Vertex u = 0; u < n && ok; ++u) {
      if (u == vstar) continue;
      for (Vertex w = u + 1; w < n && ok; ++w) {
        if (w == vstar) continue;
        if (detail::sorted_lists_intersect(links[static_cast<std::size_t>(u)], links[static_cast<std::size_t>(w)])) {
          ok = unite(u, w, 0);
        }
      }
    }
    if (!ok) {
      rejected_by_coloring.push_back(vstar);
      continue;
    }
    // Root side chosen so that the smallest member of each component is in X.
    std::vector<int> root_side(static_cast<std::size_t>(n), -1);
    CoverWitness3 w;
    w.vstar = vstar;
    for (Vertex v = 0; v < n; ++v) {
      if (v == vstar) continue;
      auto [root, p] = find(find, v);
      if (root_side[static_cast<std::size_t>(root)] == -1) root_side[static_cast<std::size_t>(root)] = p;
      const int side = p ^ root_side[static_cast<std::size_t>(root)];
      (side == 0 ? w.x : w.y).push_back(v);
    }
    report.verdict = true;
    report.witness = std::move(w);
  }
  if (!report.verdict) {
    report.details["refutation"] = {{"rejected_by_link_filter", rejected_by_filter},
                         {"rejected_by_two_coloring", rejected_by_coloring}};
  }
  report.stats.elapsed_ms = clock.elapsed_ms();
  return report;
}

/// Ordering v*, then X, then Y (each block ordered as in a consistent ordering
/// of F) whose forced coloring is consistent. Falls back to a block-restricted
/// backtracking search if the reordered sequence is not consistent.
inline OrderingWitness build_compatible_enumeration(const Hypergraph& f, const CoverWitness3& w) {
  detail::require_k3(f, "build_compatible_enumeration");
  if (!validate_cover_witness3(f, w)) {
    throw PreconditionError("build_compatible_enumeration: the supplied partition is not a valid cover witness");
  }
  detail::OrderingSearch unrestricted(f, {});
  auto tau = unrestricted.run();
  if (!tau) {
    throw PreconditionError("build_compatible_enumeration: F has no consistent shadow coloring (condition (i) fails)");
  }
  const auto pos = tau->positions(f.n());
  auto by_tau = [&](VertexSet block) {
    std::sort(block.begin(), block.end(), [&](Vertex a, Vertex b) { return pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)]; });
    return block;
  };
  Ordering ordering;
  ordering.sequence.push_back(w.vstar);
  for (Vertex v : by_tau(w.x)) ordering.sequence.push_back(v);
  for (Vertex v : by_tau(w.y)) ordering.sequence.push_back(v);
  if (auto coloring = forced_coloring(f, ordering)) return {ordering, *coloring};

  detail::OrderingSearch blocked(f, {{w.vstar}, w.x, w.y});
  auto found = blocked.run();
  if (!found) throw std::logic_error("build_compatible_enumeration: no block-structured consistent ordering exists");
  return {*found, *forced_coloring(f, *found)};
}

/// Both 3-graph conditions: consistent shadow coloring and the cover partition.
inline DecisionReport decide_factor_3(const Hypergraph& f) {
  detail::require_k3(f, "decide_factor_3");
  Stopwatch clock;
  auto turan = decide_turan_zero_3(f);
  auto cover = decide_cover_partition_3(f);
  DecisionReport report;
  report.property = "factor3";
  report.flags = cover.flags;
  report.stats.nodes = turan.stats.nodes + cover.stats.nodes;
  report.verdict = turan.verdict && cover.verdict;
  if (report.verdict) {
    const auto& cw = std::get<CoverWitness3>(cover.witness);
    report.witness = Factor3Witness{std::get<OrderingWitness>(turan.witness), cw, build_compatible_enumeration(f, cw)};
  } else {
    auto failing = nlohmann::json::array();
    if (!turan.verdict) failing.push_back("turan_zero");
    if (!cover.verdict) failing.push_back("cover_partition");
    report.details["refutation"] = {{"failing_clauses", failing},
                         {"turan_zero", turan.details.value("refutation", nlohmann::json())},
                         {"cover_partition", cover.details.value("refutation", nlohmann::json())}};
  }
  report.stats.elapsed_ms = clock.elapsed_ms();
  return report;
}

namespace detail {

/// Assigns V - vstar to k-1 interchangeable parts, ascending vertex order,
/// labels canonicalized (a vertex may open at most one new part).
class PartitionSearch {
 public:
  PartitionSearch(const Hypergraph& f, Vertex vstar, const std::vector<int>& edge_class,
                  const std::vector<std::vector<std::size_t>>& classes)
      : f_(f), vstar_(vstar), parts_(f.k() - 1), edge_class_(edge_class), classes_(classes) {
    part_.assign(static_cast<std::size_t>(f.n()), -1);
    part_[static_cast<std::size_t>(vstar)] = parts_;
    unassigned_in_edge_.resize(f.num_edges());
    for (std::size_t i = 0; i < f.num_edges(); ++i) {
      const auto& e = f.edge(i);
      unassigned_in_edge_[i] = static_cast<int>(e.size()) - (std::binary_search(e.begin(), e.end(), vstar) ? 1 : 0);
    }
    for (Vertex v = 0; v < f.n(); ++v)
      if (v != vstar) order_.push_back(v);
  }

  std::optional<std::vector<VertexSet>> run() {
    if (!extend(0, 0)) return std::nullopt;
    std::vector<VertexSet> out(static_cast<std::size_t>(parts_));
    for (Vertex v : order_) out[static_cast<std::size_t>(part_[static_cast<std::size_t>(v)])].push_back(v);
    return out;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  std::vector<int> counts(const VertexSet& e) const {
    std::vector<int> c(static_cast<std::size_t>(parts_) + 1, 0);
    for (Vertex v : e) {
      const int p = part_[static_cast<std::size_t>(v)];
      if (p >= 0) ++c[static_cast<std::size_t>(p)];
    }
    return c;
  }

  bool consistent_after(Vertex u) const {
    for (std::size_t idx : f_.incident_edges(u)) {
      const auto& e = f_.edge(idx);
      const auto c = counts(e);
      if (std::binary_search(e.begin(), e.end(), vstar_)) {
        for (int p = 0; p < parts_; ++p)
          if (c[static_cast<std::size_t>(p)] > 1) return false;
      }
      // Compare against any fully assigned edge of the same class.
      for (std::size_t other : classes_[static_cast<std::size_t>(edge_class_[idx])]) {
        if (other == idx || unassigned_in_edge_[other] != 0) continue;
        const auto target = counts(f_.edge(other));
        for (std::size_t p = 0; p < target.size(); ++p) {
          if (unassigned_in_edge_[idx] == 0 ? c[p] != target[p] : c[p] > target[p]) return false;
        }
        break;
      }
    }
    return true;
  }

  bool extend(std::size_t i, int used) {
    if (i == order_.size()) return true;
    const Vertex u = order_[i];
    const int limit = std::min(parts_, used + 1);
    for (int p = 0; p < limit; ++p) {
      ++nodes_;
      part_[static_cast<std::size_t>(u)] = p;
      for (std::size_t idx : f_.incident_edges(u)) --unassigned_in_edge_[idx];
      const bool ok = consistent_after(u) && extend(i + 1, std::max(used, p + 1));
      if (ok) return true;
      for (std::size_t idx : f_.incident_edges(u)) ++unassigned_in_edge_[idx];
    }
    part_[static_cast<std::size_t>(u)] = -1;
    return false;
  }

  const Hypergraph& f_;
  Vertex vstar_;
  int parts_;
  const std::vector<int>& edge_class_;
  const std::vector<std::vector<std::size_t>>& classes_;
  std::vector<int> part_;
  std::vector<int> unassigned_in_edge_;
  std::vector<Vertex> order_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Partition condition for k-graphs: vstar and {X_1, ..., X_{k-1}, {vstar}}
/// with N(vstar) rainbow across the X_i and equal index vectors on every two
/// edges sharing at least two vertices. Edges linked by such intersections
/// are grouped with union-find; each group must share one index vector.
inline DecisionReport decide_partition_condition_k(const Hypergraph& f) {
  if (f.k() < 3) throw std::invalid_argument("decide_partition_condition_k requires k >= 3");
  Stopwatch clock;
  DecisionReport report;
  report.property = "partition-k";
  detail::flag_isolated(f, report.flags);
  if (f.k() >= 4) report.flags.push_back("conjectural_for_k_ge_4");

  const std::size_t m = f.num_edges();
  std::vector<std::size_t> uf(m);
  std::iota(uf.begin(), uf.end(), 0);
  auto root = [&](std::size_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (intersection_size(f.edge(i), f.edge(j)) >= 2) uf[root(i)] = root(j);
  std::vector<int> edge_class(m);
  std::vector<std::vector<std::size_t>> classes;
  std::vector<int> class_of_root(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = root(i);
    if (class_of_root[r] == -1) {
      class_of_root[r] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    edge_class[i] = class_of_root[r];
    classes[static_cast<std::size_t>(class_of_root[r])].push_back(i);
  }

  for (Vertex vstar = 0; vstar < f.n() && !report.verdict; ++vstar) {
    bool mixed = false;
    for (const auto& cls : classes) {
      const auto& first = f.edge(cls.front());
      const bool has = std::binary_search(first.begin(), first.end(), vstar);
      for (std::size_t idx : cls) {
        const auto& e = f.edge(idx);
        if (std::binary_search(e.begin(), e.end(), vstar) != has) mixed = true;
      }
    }
    ++report.stats.nodes;
    if (mixed) continue;
    detail::PartitionSearch search(f, vstar, edge_class, classes);
    auto parts = search.run();
    report.stats.nodes += search.nodes();
    if (parts) {
      report.verdict = true;
      report.witness = PartitionWitnessK{vstar, std::move(*parts)};
    }
  }
  if (!report.verdict) {
    report.details["refutation"] = {{"reason", "no vstar admits a partition with rainbow link and class-constant index vectors"},
                         {"edge_classes", classes.size()}};
  }
  report.stats.elapsed_ms = clock.elapsed_ms();
  return report;
}

/// For every vertex v and positions i < j < l (v distinct from the three),
/// not both {v, v_i, v_j} and {v, v_j, v_l} are edges. Requires `ord` to
/// force a consistent coloring.
inline bool check_observation_4_1(const Hypergraph& f, const Ordering& ord) {
  detail::require_k3(f, "check_observation_4_1");
  if (!forced_coloring(f, ord)) {
    throw std::invalid_argument("check_observation_4_1: ordering does not force a consistent coloring");
  }
  const auto& seq = ord.sequence;
  const std::size_t len = seq.size();
  for (Vertex v = 0; v < f.n(); ++v) {
    for (std::size_t j = 0; j < len; ++j) {
      const Vertex vj = seq[j];
      if (vj == v) continue;
      bool before = false;
      for (std::size_t i = 0; i < j && !before; ++i) {
        if (seq[i] != v && f.has_edge(std::vector<Vertex>{v, seq[i], vj})) before = true;
      }
      if (!before) continue;
      for (std::size_t l = j + 1; l < len; ++l) {
        if (seq[l] != v && f.has_edge(std::vector<Vertex>{v, vj, seq[l]})) return false;
      }
    }
  }
  return true;
}

}  // namespace factorlab
