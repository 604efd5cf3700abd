// Copyright 2026 The alproute Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "alp/graph.hpp"

namespace alp {

/// Malformed input line; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

struct DimacsOptions {
  /// Insert the reverse of every arc (shortest-path distances then form a
  /// metric). With false the digraph is stored as-is.
  bool symmetrize = true;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

inline bool next_token(std::string_view& s, std::string_view& tok) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  if (s.empty()) return false;
  std::size_t end = 0;
  while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
  tok = s.substr(0, end);
  s.remove_prefix(end);
  return true;
}

inline bool parse_u64(std::string_view tok, std::uint64_t& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && p == last;
}

inline bool parse_f64(std::string_view tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && p == last;
}

}  // namespace detail

/// Parses the DIMACS shortest-path format: `c` comments, one `p sp <n> <m>`
/// problem line, and `a <u> <v> <w>` arcs with 1-based vertex ids.
inline Graph parse_dimacs(std::istream& in, DimacsOptions opt = {}) {
  std::string line;
  std::size_t lineno = 0;
  bool have_problem = false;
  std::uint64_t n = 0;
  std::uint64_t declared_arcs = 0;
  std::vector<WeightedArc> arcs;

  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = detail::trim(line);
    if (s.empty() || s.front() == 'c') continue;
    if (s.front() == 'p') {
      if (have_problem) throw ParseError(lineno, "duplicate problem line");
      s.remove_prefix(1);
      std::string_view kind, ntok, mtok, extra;
      if (!detail::next_token(s, kind) || kind != "sp" || !detail::next_token(s, ntok) ||
          !detail::next_token(s, mtok) || detail::next_token(s, extra) ||
          !detail::parse_u64(ntok, n) || !detail::parse_u64(mtok, declared_arcs)) {
        throw ParseError(lineno, "malformed problem line, expected 'p sp <n> <m>'");
      }
      have_problem = true;
      arcs.reserve(declared_arcs);
      continue;
    }
    if (s.front() == 'a') {
      if (!have_problem) throw ParseError(lineno, "arc before problem line");
      s.remove_prefix(1);
      std::string_view utok, vtok, wtok, extra;
      std::uint64_t u = 0, v = 0;
      double w = 0;
      if (!detail::next_token(s, utok) || !detail::next_token(s, vtok) ||
          !detail::next_token(s, wtok) || detail::next_token(s, extra) ||
          !detail::parse_u64(utok, u) || !detail::parse_u64(vtok, v) ||
          !detail::parse_f64(wtok, w)) {
        throw ParseError(lineno, "malformed arc line, expected 'a <u> <v> <w>'");
      }
      if (u < 1 || u > n || v < 1 || v > n) {
        throw std::out_of_range("line " + std::to_string(lineno) +
                                ": vertex id outside [1," + std::to_string(n) + "]");
      }
      if (w < 0 || !std::isfinite(w)) {
        throw std::domain_error("line " + std::to_string(lineno) + ": invalid arc weight");
      }
      arcs.push_back({static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1), w});
      continue;
    }
    throw ParseError(lineno, std::string("unknown line type '") + std::string(1, s.front()) + "'");
  }
  if (!have_problem) throw ParseError(lineno, "missing problem line");
  return Graph::from_arcs(n, std::move(arcs), opt.symmetrize);
}

inline Graph parse_dimacs(const std::string& text, DimacsOptions opt = {}) {
  std::istringstream in(text);
  return parse_dimacs(in, opt);
}

inline void format_weight(char* buf, std::size_t cap, double w) {
  if (w == std::floor(w) && std::abs(w) < 0x1p53) {
    std::snprintf(buf, cap, "%lld", static_cast<long long>(w));
  } else {
    std::snprintf(buf, cap, "%.17g", w);
  }
}

/// Writes every stored arc; re-parsing yields the same graph.
inline void write_dimacs(std::ostream& out, const Graph& g) {
  out << "p sp " << g.vertex_count() << ' ' << g.arc_count() << '\n';
  char wbuf[40];
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    const auto ns = g.neighbors(static_cast<VertexId>(u));
    const auto ws = g.arc_weights(static_cast<VertexId>(u));
    for (std::size_t i = 0; i < ns.size(); ++i) {
      format_weight(wbuf, sizeof(wbuf), ws[i]);
      out << "a " << u + 1 << ' ' << ns[i] + 1 << ' ' << wbuf << '\n';
    }
  }
}

// --- little-endian binary primitives -------------------------------------

namespace detail {

inline void put_u32(std::ostream& out, std::uint32_t x) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b, 4);
}

inline void put_u64(std::ostream& out, std::uint64_t x) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b, 8);
}

inline void put_f64(std::ostream& out, double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, 8);
  put_u64(out, bits);
}

inline std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw std::runtime_error("truncated binary input");
  std::uint32_t x = 0;
  for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return x;
}

inline std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw std::runtime_error("truncated binary input");
  std::uint64_t x = 0;
  for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return x;
}

inline double get_f64(std::istream& in) {
  const std::uint64_t bits = get_u64(in);
  double x;
  std::memcpy(&x, &bits, 8);
  return x;
}

inline void expect_magic(std::istream& in, const char* magic) {
  char buf[4];
  in.read(buf, 4);
  if (!in || std::memcmp(buf, magic, 4) != 0) {
    throw std::runtime_error(std::string("bad magic, expected ") + magic);
  }
}

}  // namespace detail

inline constexpr std::uint32_t kGraphCacheVersion = 1;

/// Binary cache: "ALPG", version, vertex count, edge count, CSR arrays.
inline void write_graph_cache(std::ostream& out, const Graph& g) {
  out.write("ALPG", 4);
  detail::put_u32(out, kGraphCacheVersion);
  detail::put_u64(out, g.vertex_count());
  detail::put_u64(out, g.arc_count());
  for (std::uint64_t o : g.offsets()) detail::put_u64(out, o);
  for (VertexId t : g.targets()) detail::put_u32(out, t);
  for (double w : g.weights()) detail::put_f64(out, w);
}

inline Graph read_graph_cache(std::istream& in) {
  detail::expect_magic(in, "ALPG");
  const std::uint32_t version = detail::get_u32(in);
  if (version != kGraphCacheVersion) throw std::runtime_error("unsupported graph cache version");
  const std::uint64_t n = detail::get_u64(in);
  const std::uint64_t m = detail::get_u64(in);
  std::vector<std::uint64_t> offsets(n + 1);
  for (auto& o : offsets) o = detail::get_u64(in);
  if (offsets.front() != 0 || offsets.back() != m) {
    throw std::runtime_error("corrupt graph cache offsets");
  }
  std::vector<WeightedArc> arcs;
  arcs.reserve(m);
  std::vector<VertexId> targets(m);
  for (auto& t : targets) t = detail::get_u32(in);
  for (std::uint64_t u = 0, k = 0; u < n; ++u) {
    for (; k < offsets[u + 1]; ++k) {
      arcs.push_back({static_cast<VertexId>(u), targets[k], 0});
    }
  }
  for (std::uint64_t k = 0; k < m; ++k) arcs[k].weight = detail::get_f64(in);
  return Graph::from_arcs(n, std::move(arcs), /*symmetrize=*/false);
}

inline void write_graph_cache_file(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  write_graph_cache(out, g);
}

/// Loads either a binary cache or DIMACS text, sniffing the magic bytes.
inline Graph load_graph_file(const std::string& path, DimacsOptions opt = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  in.clear();
  in.seekg(0);
  if (std::memcmp(magic, "ALPG", 4) == 0) return read_graph_cache(in);
  return parse_dimacs(in, opt);
}

}  // namespace alp
