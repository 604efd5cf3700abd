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

#include <chrono>
#include <cmath>
#include <queue>
#include <vector>

#include "alp/graph.hpp"

namespace alp {

struct QueryStats {
  std::uint64_t expanded = 0;         // settle events
  std::uint64_t reopened = 0;         // re-expansions of previously settled vertices
  std::uint64_t heap_pushes = 0;
  std::uint64_t heuristic_evals = 0;  // memoized: one per touched vertex
  std::chrono::nanoseconds wall_time{0};
};

struct QueryResult {
  double distance = kInf;
  std::vector<VertexId> path;  // s..t when reachable, else empty
  QueryStats stats;
  bool reachable() const { return distance < kInf; }
};

namespace detail {

struct HeapEntry {
  double priority;
  VertexId vertex;
  double g;
};

// min-heap on (priority, vertex id); the id tie-break keeps runs reproducible
struct HeapAfter {
  bool operator()(const HeapEntry& x, const HeapEntry& y) const {
    return x.priority > y.priority || (x.priority == y.priority && x.vertex > y.vertex);
  }
};

using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapAfter>;

struct DistEntry {
  double dist;
  VertexId vertex;
};
struct DistAfter {
  bool operator()(const DistEntry& x, const DistEntry& y) const {
    return x.dist > y.dist || (x.dist == y.dist && x.vertex > y.vertex);
  }
};
using DistHeap = std::priority_queue<DistEntry, std::vector<DistEntry>, DistAfter>;

}  // namespace detail

/// Exact shortest-path distances from `source`; infinity where unreachable.
inline std::vector<double> sssp(const Graph& g, VertexId source) {
  const std::size_t n = g.vertex_count();
  if (source >= n) throw std::invalid_argument("sssp: source out of range");
  std::vector<double> dist(n, kInf);
  detail::DistHeap heap;
  dist[source] = 0;
  heap.push({0, source});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    const auto ns = g.neighbors(u);
    const auto ws = g.arc_weights(u);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double nd = d + ws[i];
      if (nd < dist[ns[i]]) {
        dist[ns[i]] = nd;
        heap.push({nd, ns[i]});
      }
    }
  }
  return dist;
}

/// Distances up to `limit`; vertices farther than that keep infinity.
inline std::vector<double> sssp_bounded(const Graph& g, VertexId source, double limit) {
  const std::size_t n = g.vertex_count();
  std::vector<double> dist(n, kInf);
  detail::DistHeap heap;
  dist[source] = 0;
  heap.push({0, source});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    const auto ns = g.neighbors(u);
    const auto ws = g.arc_weights(u);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double nd = d + ws[i];
      if (nd < dist[ns[i]] && nd <= limit) {
        dist[ns[i]] = nd;
        heap.push({nd, ns[i]});
      }
    }
  }
  return dist;
}

/// Distances from `source` to each of `targets`, stopping once all are
/// settled; unreachable targets report infinity.
inline std::vector<double> sssp_to_targets(const Graph& g, VertexId source,
                                           std::span<const VertexId> targets) {
  const std::size_t n = g.vertex_count();
  std::vector<double> dist(n, kInf);
  std::vector<char> wanted(n, 0);
  std::size_t remaining = 0;
  for (VertexId t : targets) {
    if (!wanted[t]) {
      wanted[t] = 1;
      ++remaining;
    }
  }
  detail::DistHeap heap;
  dist[source] = 0;
  heap.push({0, source});
  std::vector<char> settled(n, 0);
  while (!heap.empty() && remaining > 0) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u] || settled[u]) continue;
    settled[u] = 1;
    if (wanted[u]) --remaining;
    const auto ns = g.neighbors(u);
    const auto ws = g.arc_weights(u);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double nd = d + ws[i];
      if (nd < dist[ns[i]]) {
        dist[ns[i]] = nd;
        heap.push({nd, ns[i]});
      }
    }
  }
  std::vector<double> out;
  out.reserve(targets.size());
  for (VertexId t : targets) out.push_back(dist[t]);
  return out;
}

/// Hop counts from `source` out to `max_hops` (UINT32_MAX beyond).
inline std::vector<std::uint32_t> bfs_hops(const Graph& g, VertexId source,
                                           std::uint32_t max_hops) {
  constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> hops(g.vertex_count(), kUnreached);
  hops[source] = 0;
  std::vector<VertexId> frontier{source}, next;
  std::uint32_t level = 0;
  while (!frontier.empty() && level < max_hops) {
    ++level;
    next.clear();
    for (VertexId u : frontier) {
      for (VertexId v : g.neighbors(u)) {
        if (hops[v] == kUnreached) {
          hops[v] = level;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  return hops;
}

namespace detail {

/// Shared engine for Dijkstra and A*. Settled vertices are reinserted
/// whenever a strictly smaller g-value appears, so results stay optimal for
/// admissible heuristics that are not consistent. Stale heap entries are
/// skipped without counting as expansions. Requires h(t) == 0.
template <bool kUseHeuristic, class H>
QueryResult point_to_point(const Graph& g, VertexId s, VertexId t, H&& h) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = g.vertex_count();
  if (s >= n || t >= n) throw std::invalid_argument("query endpoints out of range");

  QueryResult result;
  QueryStats& stats = result.stats;
  std::vector<double> dist(n, kInf);
  std::vector<VertexId> parent(n, kNoVertex);
  std::vector<char> settled(n, 0);
  std::vector<char> was_settled(n, 0);
  std::vector<double> h_memo;
  if constexpr (kUseHeuristic) h_memo.assign(n, std::numeric_limits<double>::quiet_NaN());

  auto h_of = [&](VertexId v) -> double {
    if constexpr (kUseHeuristic) {
      double& slot = h_memo[v];
      if (std::isnan(slot)) {
        slot = h(v);
        ++stats.heuristic_evals;
      }
      return slot;
    } else {
      return 0.0;
    }
  };

  MinHeap heap;
  dist[s] = 0;
  heap.push({h_of(s), s, 0});
  ++stats.heap_pushes;

  while (!heap.empty()) {
    const HeapEntry e = heap.top();
    heap.pop();
    if (e.g > dist[e.vertex] || settled[e.vertex]) continue;  // stale
    settled[e.vertex] = 1;
    ++stats.expanded;
    if (was_settled[e.vertex]) {
      ++stats.reopened;
    } else {
      was_settled[e.vertex] = 1;
    }
    if (e.vertex == t) break;

    const auto ns = g.neighbors(e.vertex);
    const auto ws = g.arc_weights(e.vertex);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const VertexId v = ns[i];
      const double ng = e.g + ws[i];
      if (ng < dist[v]) {
        dist[v] = ng;
        parent[v] = e.vertex;
        settled[v] = 0;  // reopen if it was settled
        heap.push({ng + h_of(v), v, ng});
        ++stats.heap_pushes;
      }
    }
  }

  result.distance = dist[t];
  if (result.reachable()) {
    for (VertexId v = t; v != kNoVertex; v = parent[v]) result.path.push_back(v);
    std::reverse(result.path.begin(), result.path.end());
  }
  stats.wall_time = std::chrono::steady_clock::now() - t0;
  return result;
}

struct ZeroHeuristic {
  double operator()(VertexId) const { return 0.0; }
};

}  // namespace detail

/// A* with priority g + h(v). `h` must be admissible for optimality and
/// evaluate to 0 at the target.
template <class H>
QueryResult astar_query(const Graph& g, VertexId s, VertexId t, H&& h) {
  return detail::point_to_point<true>(g, s, t, std::forward<H>(h));
}

/// Exact baseline; identical engine with a zero heuristic, so expansion
/// counts are directly comparable with astar_query.
inline QueryResult dijkstra_query(const Graph& g, VertexId s, VertexId t) {
  return detail::point_to_point<false>(g, s, t, detail::ZeroHeuristic{});
}

}  // namespace alp
