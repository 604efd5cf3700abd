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

#include <array>
#include <cmath>

#include "alp/embedding.hpp"

namespace alp {

/// The three known sides of the quadrilateral walk v -> l_v -> l_t -> t:
///   a = d(v, l_v)   the query vertex's stored label distance
///   b = d(l_v, l_t) from the landmark distance matrix
///   c = d(t, l_t)   the target's stored label distance
/// The side being bounded is d(v, t).
struct QuadSides {
  double a = 0;
  double b = 0;
  double c = 0;
};

struct HeuristicConfig {
  bool use_ptolemy = true;        // include the product-form bound
  bool clamp_nonnegative = true;  // always on for search use
};

/// Single-landmark lower bound: max over landmarks of |d(l,v) - d(l,t)|.
/// Rows with an unreachable entry contribute nothing.
inline double alt_h(const AltIndex& index, VertexId v, VertexId t) {
  if (v == t) return 0;
  double best = 0;
  const std::size_t L = index.landmark_count();
  const std::size_t n = index.vertex_count;
  for (std::size_t l = 0; l < L; ++l) {
    const double dv = index.table[l * n + v];
    const double dt = index.table[l * n + t];
    if (dv == kInf || dt == kInf) continue;
    const double bound = std::abs(dv - dt);
    if (bound > best) best = bound;
  }
  return best;
}

/// The six dual-landmark lower bounds on d(v,t), raw (possibly negative).
/// Requires finite sides; b == 0 disables the product bound.
///
/// Every shortest-path metric gives, for any x,y,z:
///   d(x,z) <= d(x,y) + d(y,z)        (triangle)
///   d(x,z) >= |d(x,y) - d(y,z)|      (reverse triangle)
/// Applied to the quadrilateral with known sides a, b, c:
inline std::array<double, 6> alp_bounds(const QuadSides& q, const HeuristicConfig& cfg) {
  const double a = q.a, b = q.b, c = q.c;
  // b = d(l_v,l_t) <= a + d(v,t) + c, isolating the unknown side:
  const double l1 = b - a - c;
  // a = d(v,l_v) <= d(v,t) + c + b:
  const double l2 = a - b - c;
  // c = d(t,l_t) <= d(v,t) + a + b:
  const double l3 = c - a - b;
  // diagonal d(v,l_t) >= |a - b|, then d(v,l_t) <= d(v,t) + c:
  const double l4 = std::abs(a - b) - c;
  // diagonal d(l_v,t) >= |b - c|, then d(l_v,t) <= a + d(v,t):
  const double l5 = std::abs(b - c) - a;
  // product form: d(v,l_t) * d(l_v,t) <= a*c + b * d(v,t) in Ptolemaic
  // metrics; each diagonal is replaced by its nonnegative triangle lower
  // bound before solving for d(v,t).
  double l6 = -kInf;
  if (cfg.use_ptolemy && b > 0) {
    l6 = (std::max(0.0, b - a) * std::max(0.0, b - c) - a * c) / b;
  }
  return {l1, l2, l3, l4, l5, l6};
}

/// Dual-landmark heuristic: the maximum of the six bounds when v and t sit
/// in different partitions, or the single shared-landmark triangle bound
/// |a - c| when they share one. Unreachable labels carry no information and
/// yield 0. Negative estimates clamp to 0 at this level (not per bound), so
/// diagnostics can still see raw values via alp_bounds.
inline double alp_h(const AlpIndex& index, VertexId v, VertexId t, const HeuristicConfig& cfg) {
  if (v == t) return 0;
  const double a = index.label_dist[v];
  const double c = index.label_dist[t];
  if (a == kInf || c == kInf) return 0;
  const std::uint32_t lv = index.label_ordinal[v];
  const std::uint32_t lt = index.label_ordinal[t];
  double h;
  if (lv == lt) {
    h = std::abs(a - c);
  } else {
    const double b = index.matrix(lv, lt);
    if (b == kInf) return 0;
    const std::array<double, 6> bounds = alp_bounds({a, b, c}, cfg);
    h = bounds[0];
    for (std::size_t i = 1; i < bounds.size(); ++i) h = std::max(h, bounds[i]);
  }
  if (cfg.clamp_nonnegative) h = std::max(0.0, h);
  return h;
}

/// Target-bound adapters for astar_query.
struct AltHeuristic {
  const AltIndex* index;
  VertexId target;
  double operator()(VertexId v) const { return alt_h(*index, v, target); }
};

struct AlpHeuristic {
  const AlpIndex* index;
  VertexId target;
  HeuristicConfig cfg;
  double operator()(VertexId v) const { return alp_h(*index, v, target, cfg); }
};

}  // namespace alp
