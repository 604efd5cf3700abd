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

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace alp {

using VertexId = std::uint32_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

struct WeightedArc {
  VertexId from;
  VertexId to;
  double weight;
};

/// Immutable weighted graph in CSR form. Vertex ids are dense in
/// [0, vertex_count); adjacency lists are sorted by target so construction
/// is canonical: equal input edge multisets produce identical storage.
/// Safe for concurrent reads once built.
class Graph {
 public:
  Graph() = default;

  /// Builds from an arc list. Parallel arcs with the same endpoints collapse
  /// to the minimum weight; self-loops are dropped. With `symmetrize` every
  /// arc is also inserted reversed.
  static Graph from_arcs(std::size_t vertex_count, std::vector<WeightedArc> arcs,
                         bool symmetrize) {
    for (const WeightedArc& a : arcs) {
      if (a.from >= vertex_count || a.to >= vertex_count) {
        throw std::out_of_range("arc endpoint out of range");
      }
      if (a.weight < 0) {
        throw std::domain_error("negative edge weight");
      }
    }
    if (symmetrize) {
      const std::size_t m = arcs.size();
      arcs.reserve(2 * m);
      for (std::size_t i = 0; i < m; ++i) {
        arcs.push_back({arcs[i].to, arcs[i].from, arcs[i].weight});
      }
    }
    std::sort(arcs.begin(), arcs.end(), [](const WeightedArc& x, const WeightedArc& y) {
      return std::tie(x.from, x.to, x.weight) < std::tie(y.from, y.to, y.weight);
    });

    Graph g;
    g.offsets_.assign(vertex_count + 1, 0);
    g.targets_.reserve(arcs.size());
    g.weights_.reserve(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (arcs[i].from == arcs[i].to) continue;
      if (i > 0 && arcs[i].from == arcs[i - 1].from && arcs[i].to == arcs[i - 1].to) {
        continue;  // parallel arc; the sort put the minimum weight first
      }
      g.targets_.push_back(arcs[i].to);
      g.weights_.push_back(arcs[i].weight);
      g.offsets_[arcs[i].from + 1]++;
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
      g.offsets_[v + 1] += g.offsets_[v];
    }
    g.symmetric_ = symmetrize ? true : g.check_symmetric();
    return g;
  }

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t arc_count() const { return targets_.size(); }

  /// Number of undirected edges; only meaningful on symmetric graphs.
  std::size_t undirected_edge_count() const { return targets_.size() / 2; }

  bool is_symmetric() const { return symmetric_; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const double> arc_weights(VertexId v) const {
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  /// Weight of arc u->v, or infinity when absent.
  double arc_weight(VertexId u, VertexId v) const {
    const auto ns = neighbors(u);
    const auto it = std::lower_bound(ns.begin(), ns.end(), v);
    if (it == ns.end() || *it != v) return kInf;
    return weights_[offsets_[u] + static_cast<std::size_t>(it - ns.begin())];
  }

  bool has_arc(VertexId u, VertexId v) const { return arc_weight(u, v) < kInf; }

  double weighted_degree(VertexId v) const {
    double s = 0;
    for (double w : arc_weights(v)) s += w;
    return s;
  }

  /// Total edge weight m (each undirected edge counted once).
  double total_edge_weight() const {
    double s = 0;
    for (double w : weights_) s += w;
    return symmetric_ ? s / 2 : s;
  }

  const std::vector<std::uint64_t>& offsets() const { return offsets_; }
  const std::vector<VertexId>& targets() const { return targets_; }
  const std::vector<double>& weights() const { return weights_; }

  /// FNV-1a over the CSR arrays; used to bind indices to the graph they
  /// were built from.
  std::uint64_t fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t x) {
      for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 0x100000001b3ull;
      }
    };
    mix(vertex_count());
    mix(arc_count());
    for (std::uint64_t o : offsets_) mix(o);
    for (VertexId t : targets_) mix(t);
    for (double w : weights_) {
      std::uint64_t bits;
      static_assert(sizeof(bits) == sizeof(w));
      __builtin_memcpy(&bits, &w, sizeof(bits));
      mix(bits);
    }
    return h;
  }

  bool connected() const {
    const std::size_t n = vertex_count();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (VertexId v : neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          ++reached;
          stack.push_back(v);
        }
      }
    }
    return reached == n;
  }

 private:
  bool check_symmetric() const {
    for (std::size_t u = 0; u < vertex_count(); ++u) {
      const auto ns = neighbors(static_cast<VertexId>(u));
      const auto ws = arc_weights(static_cast<VertexId>(u));
      for (std::size_t i = 0; i < ns.size(); ++i) {
        if (arc_weight(ns[i], static_cast<VertexId>(u)) != ws[i]) return false;
      }
    }
    return true;
  }

  std::vector<std::uint64_t> offsets_;
  std::vector<VertexId> targets_;
  std::vector<double> weights_;
  bool symmetric_ = false;
};

/// Ordered set of distinct vertex ids with O(1) membership.
class VertexSet {
 public:
  VertexSet() = default;

  VertexSet(std::vector<VertexId> ids, std::size_t universe) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
      throw std::invalid_argument("VertexSet: duplicate vertex id");
    }
    if (!ids_.empty() && ids_.back() >= universe) {
      throw std::invalid_argument("VertexSet: vertex id outside universe");
    }
    bitmap_.assign(universe, false);
    for (VertexId v : ids_) bitmap_[v] = true;
  }

  const std::vector<VertexId>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  std::size_t universe_size() const { return bitmap_.size(); }
  bool contains(VertexId v) const { return v < bitmap_.size() && bitmap_[v]; }

 private:
  std::vector<VertexId> ids_;
  std::vector<bool> bitmap_;
};

/// Induced subgraph plus the id maps between sub ids and host ids.
struct SubgraphView {
  Graph graph;
  std::vector<VertexId> to_host;  // sub id -> host id
  std::vector<VertexId> to_sub;   // host id -> sub id, kNoVertex outside the set
};

inline SubgraphView induced_subgraph(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw std::domain_error("induced_subgraph: empty vertex set");
  if (s.universe_size() != g.vertex_count()) {
    throw std::invalid_argument("induced_subgraph: set universe mismatch");
  }
  SubgraphView view;
  view.to_host = s.ids();
  view.to_sub.assign(g.vertex_count(), kNoVertex);
  for (std::size_t i = 0; i < view.to_host.size(); ++i) {
    view.to_sub[view.to_host[i]] = static_cast<VertexId>(i);
  }
  std::vector<WeightedArc> arcs;
  for (std::size_t i = 0; i < view.to_host.size(); ++i) {
    const VertexId host = view.to_host[i];
    const auto ns = g.neighbors(host);
    const auto ws = g.arc_weights(host);
    for (std::size_t k = 0; k < ns.size(); ++k) {
      const VertexId sub = view.to_sub[ns[k]];
      if (sub != kNoVertex) {
        arcs.push_back({static_cast<VertexId>(i), sub, ws[k]});
      }
    }
  }
  view.graph = Graph::from_arcs(view.to_host.size(), std::move(arcs), /*symmetrize=*/false);
  return view;
}

/// Largest connected component, vertex order preserved.
inline Graph largest_component(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return g;
  std::vector<std::uint32_t> comp(n, std::numeric_limits<std::uint32_t>::max());
  std::uint32_t comp_count = 0;
  std::vector<VertexId> stack;
  std::vector<std::size_t> comp_size;
  for (std::size_t r = 0; r < n; ++r) {
    if (comp[r] != std::numeric_limits<std::uint32_t>::max()) continue;
    comp[r] = comp_count;
    comp_size.push_back(1);
    stack.push_back(static_cast<VertexId>(r));
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (VertexId v : g.neighbors(u)) {
        if (comp[v] == std::numeric_limits<std::uint32_t>::max()) {
          comp[v] = comp_count;
          ++comp_size[comp_count];
          stack.push_back(v);
        }
      }
    }
    ++comp_count;
  }
  const std::uint32_t best = static_cast<std::uint32_t>(
      std::max_element(comp_size.begin(), comp_size.end()) - comp_size.begin());
  if (comp_size[best] == n) return g;

  std::vector<VertexId> remap(n, kNoVertex);
  VertexId next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (comp[v] == best) remap[v] = next++;
  }
  std::vector<WeightedArc> arcs;
  for (std::size_t u = 0; u < n; ++u) {
    if (comp[u] != best) continue;
    const auto ns = g.neighbors(static_cast<VertexId>(u));
    const auto ws = g.arc_weights(static_cast<VertexId>(u));
    for (std::size_t k = 0; k < ns.size(); ++k) {
      arcs.push_back({remap[u], remap[ns[k]], ws[k]});
    }
  }
  return Graph::from_arcs(next, std::move(arcs), /*symmetrize=*/false);
}

}  // namespace alp
