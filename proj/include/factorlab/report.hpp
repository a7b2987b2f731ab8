#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "factorlab/hypergraph.hpp"

namespace factorlab {

enum class Color { red, blue, green };

inline const char* to_string(Color c) {
  switch (c) {
    case Color::red:
      return "red";
    case Color::blue:
      return "blue";
    case Color::green:
      return "green";
  }
  return "?";
}

/// Enumeration v_1, ..., v_f of V(F): sequence[i] is the vertex at position i.
struct Ordering {
  std::vector<Vertex> sequence;

  /// Inverse map vertex -> position; throws unless sequence is a permutation of {0..n-1}.
  std::vector<int> positions(int n) const {
    if (static_cast<int>(sequence.size()) != n) throw std::invalid_argument("ordering length differs from vertex count");
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < sequence.size(); ++i) {
      const Vertex v = sequence[i];
      if (v < 0 || v >= n || pos[static_cast<std::size_t>(v)] != -1) throw std::invalid_argument("ordering is not a permutation");
      pos[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    return pos;
  }
  friend bool operator==(const Ordering&, const Ordering&) = default;
};

/// Colors of the shadow pairs, keyed by (smaller, larger) vertex id.
struct ShadowColoring {
  std::map<std::pair<Vertex, Vertex>, Color> colors;
  friend bool operator==(const ShadowColoring&, const ShadowColoring&) = default;
};

struct OrderingWitness {
  Ordering ordering;
  ShadowColoring coloring;
};

/// Partition {X, Y, {vstar}} for the 3-graph cover condition.
struct CoverWitness3 {
  Vertex vstar = 0;
  VertexSet x;
  VertexSet y;
};

/// Partition {X_1, ..., X_{k-1}, {vstar}} with rainbow vstar-link and equal
/// index vectors on 2-intersecting edges.
struct PartitionWitnessK {
  Vertex vstar = 0;
  std::vector<VertexSet> parts;
};

struct LinkDisjointWitness {
  Vertex vstar = 0;
  Partition kpartition;
};

struct Factor3Witness {
  OrderingWitness turan_zero;
  CoverWitness3 cover;
  OrderingWitness compatible;
};

/// Integer combination sum_i coefficients[i] * generators[i] = target.
struct LatticeCombination {
  std::vector<std::array<std::int64_t, 2>> generators;
  std::vector<std::int64_t> coefficients;
  std::array<std::int64_t, 2> target{};
};

using Witness = std::variant<std::monostate, OrderingWitness, CoverWitness3, PartitionWitnessK, LinkDisjointWitness,
                             Factor3Witness, LatticeCombination>;

struct SearchStats {
  std::uint64_t nodes = 0;
  double elapsed_ms = 0.0;
};

struct DecisionReport {
  std::string property;
  bool verdict = false;
  Witness witness;
  std::vector<std::string> flags;
  SearchStats stats;
  /// Property-specific audit data; "refutation" explains a false verdict.
  nlohmann::json details = nlohmann::json::object();
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline nlohmann::json to_json(const ShadowColoring& c) {
  auto out = nlohmann::json::array();
  for (const auto& [pair, color] : c.colors) {
    out.push_back({{"pair", {pair.first, pair.second}}, {"color", to_string(color)}});
  }
  return out;
}

inline nlohmann::json to_json(const OrderingWitness& w) {
  return {{"ordering", w.ordering.sequence}, {"coloring", to_json(w.coloring)}};
}

inline nlohmann::json to_json(const CoverWitness3& w) { return {{"vstar", w.vstar}, {"X", w.x}, {"Y", w.y}}; }

inline nlohmann::json to_json(const PartitionWitnessK& w) { return {{"vstar", w.vstar}, {"parts", w.parts}}; }

inline nlohmann::json to_json(const LinkDisjointWitness& w) {
  return {{"vstar", w.vstar}, {"kpartition", w.kpartition.parts()}};
}

inline nlohmann::json to_json(const Factor3Witness& w) {
  return {{"turan_zero", to_json(w.turan_zero)},
          {"cover_partition", to_json(w.cover)},
          {"compatible_enumeration", to_json(w.compatible)}};
}

inline nlohmann::json to_json(const LatticeCombination& w) {
  auto terms = nlohmann::json::array();
  for (std::size_t i = 0; i < w.generators.size(); ++i) {
    terms.push_back({{"generator", w.generators[i]}, {"coefficient", w.coefficients[i]}});
  }
  return {{"target", w.target}, {"combination", terms}};
}

inline nlohmann::json to_json(const DecisionReport& r) {
  nlohmann::json witness = std::visit(
      [](const auto& w) -> nlohmann::json {
        if constexpr (std::is_same_v<std::decay_t<decltype(w)>, std::monostate>) {
          return nullptr;
        } else {
          return to_json(w);
        }
      },
      r.witness);
  return {{"property", r.property},
          {"verdict", r.verdict},
          {"witness", witness},
          {"flags", r.flags},
          {"stats", {{"nodes", r.stats.nodes}, {"elapsed_ms", r.stats.elapsed_ms}}},
          {"details", r.details}};
}

}  // namespace factorlab
