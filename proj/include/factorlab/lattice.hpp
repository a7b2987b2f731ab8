#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "factorlab/hypergraph.hpp"
#include "factorlab/report.hpp"

namespace factorlab {

using Vec2 = std::array<std::int64_t, 2>;

/// Bipartition {A, B} of V(F), stored as the membership mask of A.
struct Bipartition {
  std::uint64_t a_mask = 0;
  int n = 0;

  bool in_a(Vertex v) const { return (a_mask >> v) & 1U; }
  VertexSet a() const {
    VertexSet out;
    for (Vertex v = 0; v < n; ++v)
      if (in_a(v)) out.push_back(v);
    return out;
  }
  VertexSet b() const {
    VertexSet out;
    for (Vertex v = 0; v < n; ++v)
      if (!in_a(v)) out.push_back(v);
    return out;
  }
  int a_size() const { return std::popcount(a_mask); }
  Bipartition swapped() const {
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    return {full & ~a_mask, n};
  }
  friend auto operator<=>(const Bipartition&, const Bipartition&) = default;
};

/// All bipartitions {A, B} such that any two edges with different index
/// vectors meet in fewer than s vertices. Vertices are assigned in ascending
/// order; a pair of edges sharing at least s vertices is checked as soon as
/// their symmetric difference is fully assigned, and pruned earlier when the
/// A-counts on the two private sides can no longer be equalized.
inline std::vector<Bipartition> enumerate_shadow_disjoint_bipartitions(const Hypergraph& f, int s) {
  if (s < 2 || s > f.k() - 1) {
    throw std::invalid_argument("shadow-disjointness parameter s must satisfy 2 <= s <= k-1, got s=" + std::to_string(s));
  }
  if (f.n() > 62) throw std::invalid_argument("bipartition enumeration supports at most 62 vertices");
  struct Constraint {
    VertexSet left;   // e \ e'
    VertexSet right;  // e' \ e
  };
  std::vector<std::vector<Constraint>> by_vertex(static_cast<std::size_t>(f.n()));
  const auto& edges = f.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (static_cast<int>(intersection_size(edges[i], edges[j])) < s) continue;
      Constraint c;
      std::set_difference(edges[i].begin(), edges[i].end(), edges[j].begin(), edges[j].end(), std::back_inserter(c.left));
      std::set_difference(edges[j].begin(), edges[j].end(), edges[i].begin(), edges[i].end(), std::back_inserter(c.right));
      // Register at every vertex of the symmetric difference for early pruning.
      std::set<Vertex> members(c.left.begin(), c.left.end());
      members.insert(c.right.begin(), c.right.end());
      for (Vertex v : members) by_vertex[static_cast<std::size_t>(v)].push_back(c);
    }
  }
  std::vector<Bipartition> out;
  const int n = f.n();
  // After vertices 0..v are assigned, check the constraints touching v.
  auto feasible = [&](std::uint64_t mask, Vertex v) {
    for (const auto& c : by_vertex[static_cast<std::size_t>(v)]) {
      int left_a = 0, left_free = 0, right_a = 0, right_free = 0;
      for (Vertex u : c.left) {
        if (u > v) ++left_free;
        else if ((mask >> u) & 1U) ++left_a;
      }
      for (Vertex u : c.right) {
        if (u > v) ++right_free;
        else if ((mask >> u) & 1U) ++right_a;
      }
      if (left_a > right_a + right_free || right_a > left_a + left_free) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, Vertex v, std::uint64_t mask) -> void {
    if (v == n) {
      out.push_back({mask, n});
      return;
    }
    for (int side = 0; side < 2; ++side) {
      const std::uint64_t next = side ? (mask | (std::uint64_t{1} << v)) : mask;
      if (feasible(next, v)) self(self, v + 1, next);
    }
  };
  search(search, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Sublattice of Z^2 spanned by integer generators, with a Hermite-style
/// basis: rows (a, b) and (0, c) with a > 0, c > 0 and 0 <= b < c when both
/// exist. Each basis row carries its expression over the generators.
struct Lattice2 {
  std::vector<Vec2> generators;
  std::vector<Vec2> basis;
  std::vector<std::vector<std::int64_t>> basis_coefficients;  // basis[i] = sum_j coeff[i][j] * generators[j]
};

inline Lattice2 lattice_from_generators(const std::vector<Vec2>& gens) {
  if (gens.empty()) throw std::invalid_argument("lattice_from_generators: empty generator set");
  const std::size_t m = gens.size();
  struct Row {
    Vec2 v;
    std::vector<std::int64_t> coeff;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::int64_t> c(m, 0);
    c[i] = 1;
    rows.push_back({gens[i], std::move(c)});
  }
  auto sub = [](Row& target, const Row& pivot, std::int64_t q) {
    target.v[0] -= q * pivot.v[0];
    target.v[1] -= q * pivot.v[1];
    for (std::size_t j = 0; j < target.coeff.size(); ++j) target.coeff[j] -= q * pivot.coeff[j];
  };
  auto negate = [](Row& r) {
    r.v[0] = -r.v[0];
    r.v[1] = -r.v[1];
    for (auto& c : r.coeff) c = -c;
  };
  // Euclid on a column over the given rows; returns index of the surviving
  // nonzero row or -1 when the column is all zero.
  auto reduce_column = [&](std::vector<std::size_t> idx, int col) -> long {
    while (true) {
      long pivot = -1;
      for (std::size_t i : idx) {
        if (rows[i].v[static_cast<std::size_t>(col)] == 0) continue;
        if (pivot < 0 || std::llabs(rows[i].v[static_cast<std::size_t>(col)]) <
                             std::llabs(rows[static_cast<std::size_t>(pivot)].v[static_cast<std::size_t>(col)])) {
          pivot = static_cast<long>(i);
        }
      }
      if (pivot < 0) return -1;
      bool done = true;
      const Row& p = rows[static_cast<std::size_t>(pivot)];
      for (std::size_t i : idx) {
        if (static_cast<long>(i) == pivot || rows[i].v[static_cast<std::size_t>(col)] == 0) continue;
        sub(rows[i], p, rows[i].v[static_cast<std::size_t>(col)] / p.v[static_cast<std::size_t>(col)]);
        if (rows[i].v[static_cast<std::size_t>(col)] != 0) done = false;
      }
      if (done) return pivot;
    }
  };
  std::vector<std::size_t> all(m);
  std::iota(all.begin(), all.end(), 0);
  Lattice2 out;
  out.generators = gens;
  const long first = reduce_column(all, 0);
  std::vector<std::size_t> rest;
  for (std::size_t i : all)
    if (static_cast<long>(i) != first) rest.push_back(i);
  const long second = reduce_column(rest, 1);
  if (second >= 0 && rows[static_cast<std::size_t>(second)].v[1] < 0) negate(rows[static_cast<std::size_t>(second)]);
  if (first >= 0) {
    Row& r = rows[static_cast<std::size_t>(first)];
    if (r.v[0] < 0) negate(r);
    if (second >= 0) {
      const Row& c = rows[static_cast<std::size_t>(second)];
      std::int64_t q = r.v[1] / c.v[1];
      if (r.v[1] - q * c.v[1] < 0) --q;
      sub(r, c, q);
    }
    out.basis.push_back(r.v);
    out.basis_coefficients.push_back(r.coeff);
  }
  if (second >= 0) {
    out.basis.push_back(rows[static_cast<std::size_t>(second)].v);
    out.basis_coefficients.push_back(rows[static_cast<std::size_t>(second)].coeff);
  }
  return out;
}

/// Coefficients over L.generators expressing v, via the triangular basis.
inline std::optional<std::vector<std::int64_t>> lattice_express(const Lattice2& lattice, Vec2 v) {
  std::vector<std::int64_t> coeff(lattice.generators.size(), 0);
  Vec2 rest = v;
  std::size_t b = 0;
  auto add = [&](std::size_t basis_index, std::int64_t times) {
    for (std::size_t j = 0; j < coeff.size(); ++j) coeff[j] += times * lattice.basis_coefficients[basis_index][j];
    rest[0] -= times * lattice.basis[basis_index][0];
    rest[1] -= times * lattice.basis[basis_index][1];
  };
  if (b < lattice.basis.size() && lattice.basis[b][0] != 0) {
    if (rest[0] % lattice.basis[b][0] != 0) return std::nullopt;
    add(b, rest[0] / lattice.basis[b][0]);
    ++b;
  }
  if (rest[0] != 0) return std::nullopt;
  if (b < lattice.basis.size()) {
    if (rest[1] % lattice.basis[b][1] != 0) return std::nullopt;
    add(b, rest[1] / lattice.basis[b][1]);
  }
  if (rest[1] != 0) return std::nullopt;
  return coeff;
}

inline bool lattice_contains(const Lattice2& lattice, Vec2 v) { return lattice_express(lattice, v).has_value(); }

/// Membership when every generator has the same coordinate sum f: v is in the
/// lattice iff v0 + v1 = c * f for an integer c and v0 - c * a_0 is divisible
/// by g = gcd_i(a_i - a_0). Returns the coefficients over `gens`.
inline std::optional<std::vector<std::int64_t>> lattice_express_by_gcd(const std::vector<Vec2>& gens, Vec2 v) {
  if (gens.empty()) throw std::invalid_argument("lattice_express_by_gcd: empty generator set");
  const std::int64_t f = gens[0][0] + gens[0][1];
  for (const auto& g : gens) {
    if (g[0] + g[1] != f) throw std::invalid_argument("lattice_express_by_gcd: generators must share one coordinate sum");
  }
  std::int64_t c = 0;
  if (f == 0) {
    if (v[0] + v[1] != 0) return std::nullopt;
  } else {
    if ((v[0] + v[1]) % f != 0) return std::nullopt;
    c = (v[0] + v[1]) / f;
  }
  // Extended gcd over differences d_i = a_i - a_0 with Bezout coefficients.
  std::int64_t g = 0;
  std::vector<std::int64_t> bezout(gens.size(), 0);
  for (std::size_t i = 1; i < gens.size(); ++i) {
    const std::int64_t d = gens[i][0] - gens[0][0];
    if (d == 0) continue;
    // Solve x * g + y * d = gcd(g, d).
    std::int64_t old_r = g, r = d, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      const std::int64_t q = old_r / r;
      std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
      std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
      std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r < 0) {
      old_r = -old_r;
      old_s = -old_s;
      old_t = -old_t;
    }
    for (auto& b : bezout) b *= old_s;
    bezout[i] += old_t;
    g = old_r;
  }
  const std::int64_t residual = v[0] - c * gens[0][0];
  std::vector<std::int64_t> coeff(gens.size(), 0);
  coeff[0] = c;
  if (g == 0) {
    if (residual != 0) return std::nullopt;
    if (f == 0 && v[0] != 0) return std::nullopt;
    return coeff;
  }
  if (residual % g != 0) return std::nullopt;
  const std::int64_t t = residual / g;
  // sum_i bezout[i] * (gen_i - gen_0) = g * (1, -1)
  for (std::size_t i = 1; i < gens.size(); ++i) {
    coeff[i] += t * bezout[i];
    coeff[0] -= t * bezout[i];
  }
  return coeff;
}

inline std::int64_t difference_gcd(const std::vector<Vec2>& gens) {
  std::int64_t g = 0;
  for (const auto& v : gens) g = std::gcd(g, v[0] - gens.front()[0]);
  return g;
}

/// Generators (|A|, f - |A|) of L^s_F, one per achievable |A|, ascending.
inline std::vector<Vec2> trans_generators(const Hypergraph& f, int s) {
  std::set<int> sizes;
  for (const auto& b : enumerate_shadow_disjoint_bipartitions(f, s)) sizes.insert(b.a_size());
  std::vector<Vec2> gens;
  for (int a : sizes) gens.push_back({a, f.n() - a});
  return gens;
}

/// (1, -1) in the lattice spanned by index vectors of s-shadow-disjoint
/// bipartitions. Membership is computed by the basis route and by the gcd
/// route; disagreement is an internal error.
inline DecisionReport decide_trans(const Hypergraph& f, int s) {
  Stopwatch clock;
  DecisionReport report;
  report.property = "trans";
  if (!f.isolated_vertices().empty()) report.flags.push_back("isolated_vertices_present");
  const auto bipartitions = enumerate_shadow_disjoint_bipartitions(f, s);
  report.stats.nodes = bipartitions.size();
  std::set<int> sizes;
  for (const auto& b : bipartitions) sizes.insert(b.a_size());
  std::vector<Vec2> gens;
  for (int a : sizes) gens.push_back({a, f.n() - a});
  if (gens.empty()) throw std::logic_error("decide_trans: no shadow-disjoint bipartition found (A = {} always qualifies)");
  const Lattice2 lattice = lattice_from_generators(gens);
  const Vec2 target{1, -1};
  const auto by_basis = lattice_express(lattice, target);
  const auto by_gcd = lattice_express_by_gcd(gens, target);
  if (by_basis.has_value() != by_gcd.has_value()) {
    throw std::logic_error("decide_trans: basis and gcd membership routes disagree");
  }
  report.verdict = by_gcd.has_value();
  report.details = {{"s", s},
                    {"generators", gens},
                    {"basis", lattice.basis},
                    {"difference_gcd", difference_gcd(gens)},
                    {"bipartitions", bipartitions.size()}};
  if (report.verdict) {
    report.witness = LatticeCombination{gens, *by_gcd, target};
  } else {
    report.details["refutation"] = {
        {"reason", gens.size() == 1 ? "single generator" : "gcd of first-coordinate differences exceeds 1"}};
  }
  report.stats.elapsed_ms = clock.elapsed_ms();
  return report;
}

}  // namespace factorlab
