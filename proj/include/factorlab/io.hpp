#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "factorlab/hypergraph.hpp"

namespace factorlab {

/// Malformed hypergraph input. line() is 1-based, or 0 when the error is not
/// tied to a particular line (JSON input, missing lines at end of file).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline long long parse_int(std::string_view token, int line) {
  long long value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "non-integer token '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses the text format: header "k n m", then m edge lines of k strictly
/// increasing 0-based vertex ids. Lines starting with '#' and blank lines are
/// skipped.
inline Hypergraph parse_hypergraph_text(std::string_view text) {
  int line_no = 0;
  bool have_header = false;
  long long k = 0, n = 0, m = 0;
  std::vector<VertexSet> edges;
  std::unordered_set<VertexSet, VertexSetHash> seen;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    auto tokens = detail::split_tokens(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (!have_header) {
      if (tokens.size() != 3) throw ParseError(line_no, "header must be 'k n m'");
      k = detail::parse_int(tokens[0], line_no);
      n = detail::parse_int(tokens[1], line_no);
      m = detail::parse_int(tokens[2], line_no);
      if (k < 2) throw ParseError(line_no, "uniformity k must be at least 2");
      if (n < 0 || m < 0) throw ParseError(line_no, "vertex and edge counts must be non-negative");
      have_header = true;
      continue;
    }
    if (static_cast<long long>(edges.size()) == m) throw ParseError(line_no, "more edge lines than declared m");
    if (static_cast<long long>(tokens.size()) != k) {
      throw ParseError(line_no, "edge has " + std::to_string(tokens.size()) + " vertices, expected " + std::to_string(k));
    }
    VertexSet e;
    for (auto tok : tokens) {
      const long long v = detail::parse_int(tok, line_no);
      if (v < 0 || v >= n) throw ParseError(line_no, "vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
      if (!e.empty() && v == e.back()) throw ParseError(line_no, "repeated vertex " + std::to_string(v) + " in edge");
      if (!e.empty() && v < e.back()) throw ParseError(line_no, "edge vertices must be strictly increasing");
      e.push_back(static_cast<Vertex>(v));
    }
    if (!seen.insert(e).second) throw ParseError(line_no, "duplicate edge");
    edges.push_back(std::move(e));
  }
  if (!have_header) throw ParseError(0, "missing header line 'k n m'");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(0, "declared " + std::to_string(m) + " edges but found " + std::to_string(edges.size()));
  }
  return Hypergraph(static_cast<int>(k), static_cast<int>(n), std::move(edges));
}

inline std::string to_text(const Hypergraph& h) {
  std::ostringstream out;
  out << h.k() << ' ' << h.n() << ' ' << h.num_edges() << '\n';
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
  return out.str();
}

inline nlohmann::json to_json(const Hypergraph& h) {
  return {{"k", h.k()}, {"n", h.n()}, {"edges", h.edges()}};
}

inline Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  try {
    const int k = j.at("k").get<int>();
    const int n = j.at("n").get<int>();
    auto edges = j.at("edges").get<std::vector<VertexSet>>();
    std::unordered_set<VertexSet, VertexSetHash> seen;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      VertexSet sorted = edges[i];
      std::sort(sorted.begin(), sorted.end());
      if (!seen.insert(sorted).second) throw ParseError(0, "duplicate edge at index " + std::to_string(i));
    }
    return Hypergraph(k, n, std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(0, std::string("invalid hypergraph JSON: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ParseError(0, ex.what());
  }
}

/// Accepts either the text format or the JSON mirror (detected by a leading '{').
inline Hypergraph load_hypergraph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(0, std::string("invalid JSON: ") + ex.what());
    }
    return hypergraph_from_json(j);
  }
  return parse_hypergraph_text(text);
}

inline Hypergraph load_hypergraph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_hypergraph(buffer.str());
}

}  // namespace factorlab
