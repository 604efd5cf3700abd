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

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>

#include "alp/graph.hpp"
#include "alp/io.hpp"
#include "alp/rng.hpp"

namespace alp {

enum class GraphFamily { grid, erdos_renyi, barabasi_albert, watts_strogatz, random_geometric };

inline const char* family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::grid: return "grid";
    case GraphFamily::erdos_renyi: return "erdos_renyi";
    case GraphFamily::barabasi_albert: return "barabasi_albert";
    case GraphFamily::watts_strogatz: return "watts_strogatz";
    case GraphFamily::random_geometric: return "random_geometric";
  }
  return "?";
}

/// Family plus parameters, parseable from "family:key=value,...".
struct GeneratorSpec {
  GraphFamily family = GraphFamily::grid;
  std::uint64_t rows = 0, cols = 0;     // grid
  std::uint64_t n = 0;                  // all random families
  double p = 0;                         // erdos_renyi edge probability
  std::uint64_t attach = 0;             // barabasi_albert edges per new vertex
  std::uint64_t k = 0;                  // watts_strogatz ring degree (even)
  double beta = 0;                      // watts_strogatz rewiring probability
  double radius = 0;                    // random_geometric connection radius

  static GeneratorSpec parse(std::string_view text) {
    const std::size_t colon = text.find(':');
    const std::string_view fam = text.substr(0, colon);
    GeneratorSpec spec;
    if (fam == "grid") spec.family = GraphFamily::grid;
    else if (fam == "erdos_renyi") spec.family = GraphFamily::erdos_renyi;
    else if (fam == "barabasi_albert") spec.family = GraphFamily::barabasi_albert;
    else if (fam == "watts_strogatz") spec.family = GraphFamily::watts_strogatz;
    else if (fam == "random_geometric") spec.family = GraphFamily::random_geometric;
    else throw std::invalid_argument("unknown graph family: " + std::string(fam));

    std::map<std::string, double> kv;
    if (colon != std::string_view::npos) {
      std::string_view rest = text.substr(colon + 1);
      while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) {
          throw std::invalid_argument("generator spec: expected key=value, got '" +
                                      std::string(item) + "'");
        }
        double value = 0;
        if (!detail::parse_f64(item.substr(eq + 1), value)) {
          throw std::invalid_argument("generator spec: bad number in '" + std::string(item) + "'");
        }
        kv[std::string(item.substr(0, eq))] = value;
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    }
    auto take_u64 = [&kv](const char* key, std::uint64_t& slot) {
      auto it = kv.find(key);
      if (it != kv.end()) {
        slot = static_cast<std::uint64_t>(it->second);
        kv.erase(it);
      }
    };
    auto take_f64 = [&kv](const char* key, double& slot) {
      auto it = kv.find(key);
      if (it != kv.end()) {
        slot = it->second;
        kv.erase(it);
      }
    };
    take_u64("rows", spec.rows);
    take_u64("cols", spec.cols);
    take_u64("n", spec.n);
    take_f64("p", spec.p);
    take_u64("attach", spec.attach);
    take_u64("k", spec.k);
    take_f64("beta", spec.beta);
    take_f64("radius", spec.radius);
    if (!kv.empty()) {
      throw std::invalid_argument("generator spec: unknown key '" + kv.begin()->first + "'");
    }
    return spec;
  }

  std::string to_string() const {
    char buf[160];
    switch (family) {
      case GraphFamily::grid:
        std::snprintf(buf, sizeof(buf), "grid:rows=%llu,cols=%llu",
                      static_cast<unsigned long long>(rows),
                      static_cast<unsigned long long>(cols));
        break;
      case GraphFamily::erdos_renyi:
        std::snprintf(buf, sizeof(buf), "erdos_renyi:n=%llu,p=%.17g",
                      static_cast<unsigned long long>(n), p);
        break;
      case GraphFamily::barabasi_albert:
        std::snprintf(buf, sizeof(buf), "barabasi_albert:n=%llu,attach=%llu",
                      static_cast<unsigned long long>(n),
                      static_cast<unsigned long long>(attach));
        break;
      case GraphFamily::watts_strogatz:
        std::snprintf(buf, sizeof(buf), "watts_strogatz:n=%llu,k=%llu,beta=%.17g",
                      static_cast<unsigned long long>(n),
                      static_cast<unsigned long long>(k), beta);
        break;
      case GraphFamily::random_geometric:
        std::snprintf(buf, sizeof(buf), "random_geometric:n=%llu,radius=%.17g",
                      static_cast<unsigned long long>(n), radius);
        break;
    }
    return buf;
  }
};

namespace detail {

inline Graph grid_graph(std::uint64_t rows, std::uint64_t cols) {
  if (rows < 1 || cols < 1) throw std::domain_error("grid: dims must be >= 1");
  const std::uint64_t n = rows * cols;
  std::vector<WeightedArc> arcs;
  arcs.reserve(2 * n);
  for (std::uint64_t r = 0; r < rows; ++r) {
    for (std::uint64_t c = 0; c < cols; ++c) {
      const VertexId v = static_cast<VertexId>(r * cols + c);
      if (c + 1 < cols) arcs.push_back({v, v + 1, 1.0});
      if (r + 1 < rows) arcs.push_back({v, static_cast<VertexId>(v + cols), 1.0});
    }
  }
  return Graph::from_arcs(n, std::move(arcs), /*symmetrize=*/true);
}

inline Graph erdos_renyi_graph(std::uint64_t n, double p, Rng& rng) {
  if (p < 0 || p > 1) throw std::domain_error("erdos_renyi: p must be in [0,1]");
  std::vector<WeightedArc> arcs;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < n; ++i) {
      for (std::uint64_t j = i + 1; j < n; ++j) {
        arcs.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j), 1.0});
      }
    }
  } else if (p > 0.0) {
    // geometric skips across the linearized pair sequence (v, w), w < v
    const double log1mp = std::log1p(-p);
    std::uint64_t v = 1;
    std::uint64_t w = std::uint64_t(-1);
    while (v < n) {
      const double r = std::log1p(-rng.next_unit());
      const std::uint64_t skip = static_cast<std::uint64_t>(std::floor(r / log1mp));
      w += 1 + skip;
      while (v < n && w >= v) {
        w -= v;
        ++v;
      }
      if (v < n) {
        arcs.push_back({static_cast<VertexId>(w), static_cast<VertexId>(v), 1.0});
      }
    }
  }
  return Graph::from_arcs(n, std::move(arcs), /*symmetrize=*/true);
}

inline Graph barabasi_albert_graph(std::uint64_t n, std::uint64_t attach, Rng& rng) {
  if (attach < 1 || attach >= n) {
    throw std::domain_error("barabasi_albert: need 1 <= attach < n");
  }
  std::vector<WeightedArc> arcs;
  std::vector<VertexId> repeated;  // endpoint list; sampling from it is preferential
  repeated.reserve(2 * n * attach);
  for (std::uint64_t v = 0; v < attach; ++v) repeated.push_back(static_cast<VertexId>(v));
  std::vector<VertexId> picks;
  for (std::uint64_t v = attach; v < n; ++v) {
    picks.clear();
    while (picks.size() < attach) {
      const VertexId cand = repeated[rng.next_below(repeated.size())];
      if (std::find(picks.begin(), picks.end(), cand) == picks.end()) picks.push_back(cand);
    }
    for (VertexId u : picks) {
      arcs.push_back({static_cast<VertexId>(v), u, 1.0});
      repeated.push_back(u);
      repeated.push_back(static_cast<VertexId>(v));
    }
  }
  return Graph::from_arcs(n, std::move(arcs), /*symmetrize=*/true);
}

inline Graph watts_strogatz_graph(std::uint64_t n, std::uint64_t k, double beta, Rng& rng) {
  if (k < 2 || k % 2 != 0 || k >= n) {
    throw std::domain_error("watts_strogatz: need even k with 2 <= k < n");
  }
  if (beta < 0 || beta > 1) throw std::domain_error("watts_strogatz: beta must be in [0,1]");
  auto key = [](std::uint64_t a, std::uint64_t b) {
    return (std::min(a, b) << 32) | std::max(a, b);
  };
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<std::uint64_t> keys;
  for (std::uint64_t u = 0; u < n; ++u) {
    for (std::uint64_t j = 1; j <= k / 2; ++j) {
      const std::uint64_t v = (u + j) % n;
      edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
      keys.push_back(key(u, v));
    }
  }
  std::sort(keys.begin(), keys.end());
  auto has_edge = [&keys, &key](std::uint64_t a, std::uint64_t b) {
    return std::binary_search(keys.begin(), keys.end(), key(a, b));
  };
  for (auto& [u, v] : edges) {
    if (rng.next_unit() >= beta) continue;
    for (std::uint64_t attempt = 0; attempt < n; ++attempt) {
      const std::uint64_t w = rng.next_below(n);
      if (w == u || has_edge(u, w)) continue;
      auto it = std::lower_bound(keys.begin(), keys.end(), key(u, v));
      keys.erase(it);
      keys.insert(std::lower_bound(keys.begin(), keys.end(), key(u, w)), key(u, w));
      v = static_cast<VertexId>(w);
      break;
    }
  }
  std::vector<WeightedArc> arcs;
  arcs.reserve(edges.size());
  for (auto [u, v] : edges) arcs.push_back({u, v, 1.0});
  return Graph::from_arcs(n, std::move(arcs), /*symmetrize=*/true);
}

inline Graph random_geometric_graph(std::uint64_t n, double radius, Rng& rng) {
  if (radius <= 0) throw std::domain_error("random_geometric: radius must be > 0");
  std::vector<double> xs(n), ys(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    xs[i] = rng.next_unit();
    ys[i] = rng.next_unit();
  }
  const std::uint64_t cells = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(1.0 / radius));
  auto cell_of = [&](double x) {
    return std::min(cells - 1, static_cast<std::uint64_t>(x * static_cast<double>(cells)));
  };
  std::vector<std::vector<VertexId>> bucket(cells * cells);
  for (std::uint64_t i = 0; i < n; ++i) {
    bucket[cell_of(xs[i]) * cells + cell_of(ys[i])].push_back(static_cast<VertexId>(i));
  }
  std::vector<WeightedArc> arcs;
  const double r2 = radius * radius;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t cx = cell_of(xs[i]);
    const std::uint64_t cy = cell_of(ys[i]);
    for (std::uint64_t dx = (cx == 0 ? 0 : cx - 1); dx <= std::min(cells - 1, cx + 1); ++dx) {
      for (std::uint64_t dy = (cy == 0 ? 0 : cy - 1); dy <= std::min(cells - 1, cy + 1); ++dy) {
        for (VertexId j : bucket[dx * cells + dy]) {
          if (j <= i) continue;
          const double ddx = xs[i] - xs[j];
          const double ddy = ys[i] - ys[j];
          const double d2 = ddx * ddx + ddy * ddy;
          if (d2 <= r2) {
            arcs.push_back({static_cast<VertexId>(i), j, std::sqrt(d2)});
          }
        }
      }
    }
  }
  return Graph::from_arcs(n, std::move(arcs), /*symmetrize=*/true);
}

}  // namespace detail

/// Generates a connected symmetric graph: the largest component of the raw
/// draw, so all pairwise distances are finite. Deterministic per
/// (spec, seed). Unit weights except random_geometric (Euclidean lengths).
inline Graph generate(const GeneratorSpec& spec, std::uint64_t seed) {
  Rng rng(seed ^ 0xa5a5a5a55a5a5a5aull);
  Graph g;
  switch (spec.family) {
    case GraphFamily::grid:
      g = detail::grid_graph(spec.rows, spec.cols);
      break;
    case GraphFamily::erdos_renyi:
      g = detail::erdos_renyi_graph(spec.n, spec.p, rng);
      break;
    case GraphFamily::barabasi_albert:
      g = detail::barabasi_albert_graph(spec.n, spec.attach, rng);
      break;
    case GraphFamily::watts_strogatz:
      g = detail::watts_strogatz_graph(spec.n, spec.k, spec.beta, rng);
      break;
    case GraphFamily::random_geometric:
      g = detail::random_geometric_graph(spec.n, spec.radius, rng);
      break;
  }
  return largest_component(g);
}

inline Graph generate(std::string_view spec_text, std::uint64_t seed) {
  return generate(GeneratorSpec::parse(spec_text), seed);
}

}  // namespace alp
