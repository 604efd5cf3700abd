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

#include <istream>
#include <numeric>
#include <ostream>

#include "alp/graph.hpp"
#include "alp/io.hpp"
#include "alp/rng.hpp"

namespace alp {

/// Disjoint cover of the vertex set; community ids dense in
/// [0, community_count).
struct Partition {
  std::vector<std::uint32_t> assignment;  // vertex -> community
  std::vector<VertexSet> communities;     // community -> members

  std::size_t community_count() const { return communities.size(); }

  /// Builds from an assignment vector; community ids must be dense and every
  /// community nonempty.
  static Partition from_assignment(std::vector<std::uint32_t> assignment) {
    Partition p;
    std::uint32_t max_id = 0;
    for (std::uint32_t c : assignment) max_id = std::max(max_id, c);
    const std::uint32_t count = assignment.empty() ? 0 : max_id + 1;
    std::vector<std::vector<VertexId>> members(count);
    for (std::size_t v = 0; v < assignment.size(); ++v) {
      members[assignment[v]].push_back(static_cast<VertexId>(v));
    }
    p.communities.reserve(count);
    for (std::uint32_t c = 0; c < count; ++c) {
      if (members[c].empty()) {
        throw std::invalid_argument("partition: community ids are not dense");
      }
      p.communities.emplace_back(std::move(members[c]), assignment.size());
    }
    p.assignment = std::move(assignment);
    return p;
  }

  static Partition singletons(std::size_t n) {
    std::vector<std::uint32_t> a(n);
    std::iota(a.begin(), a.end(), 0u);
    return from_assignment(std::move(a));
  }

  static Partition whole(std::size_t n) {
    return from_assignment(std::vector<std::uint32_t>(n, 0));
  }
};

/// Newman modularity Q = sum_c [ e_c/m - (d_c/2m)^2 ] with edge weights:
/// e_c is the intra-community edge weight, d_c the community's total
/// weighted degree, m the total edge weight.
inline double modularity(const Graph& g, const Partition& p) {
  if (!g.is_symmetric()) throw std::domain_error("modularity: graph must be symmetric");
  if (p.assignment.size() != g.vertex_count()) {
    throw std::invalid_argument("modularity: partition size mismatch");
  }
  const double m = g.total_edge_weight();
  if (m <= 0) throw std::domain_error("modularity: graph has no edges");

  std::vector<double> intra(p.community_count(), 0.0);
  std::vector<double> degree(p.community_count(), 0.0);
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    const std::uint32_t cu = p.assignment[u];
    const auto ns = g.neighbors(static_cast<VertexId>(u));
    const auto ws = g.arc_weights(static_cast<VertexId>(u));
    for (std::size_t i = 0; i < ns.size(); ++i) {
      degree[cu] += ws[i];
      if (p.assignment[ns[i]] == cu) intra[cu] += ws[i];  // both arcs counted: 2*e_c
    }
  }
  double q = 0;
  for (std::size_t c = 0; c < p.community_count(); ++c) {
    const double ec = intra[c] / 2;
    q += ec / m - (degree[c] / (2 * m)) * (degree[c] / (2 * m));
  }
  return q;
}

struct LouvainOptions {
  std::uint64_t seed = 0;
  double min_gain = 1e-7;  // a move must improve Q by more than this
};

namespace detail {

// Aggregated working graph for the contraction phases. Self-loops carry the
// weight of edges internal to a super-vertex (counted once); they add twice
// their weight to the vertex degree.
struct LouvainGraph {
  std::vector<std::uint64_t> offsets;
  std::vector<VertexId> targets;
  std::vector<double> weights;
  std::vector<double> self_weight;
  std::vector<double> degree;  // weighted degree incl. 2*self_weight
  double m = 0;                // total edge weight incl. self-loops

  std::size_t size() const { return self_weight.size(); }

  static LouvainGraph from_graph(const Graph& g) {
    LouvainGraph lg;
    lg.offsets = g.offsets();
    lg.targets = g.targets();
    lg.weights = g.weights();
    lg.self_weight.assign(g.vertex_count(), 0.0);
    lg.finish();
    return lg;
  }

  void finish() {
    const std::size_t n = self_weight.size();
    degree.assign(n, 0.0);
    double arc_sum = 0;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::uint64_t i = offsets[u]; i < offsets[u + 1]; ++i) {
        degree[u] += weights[i];
        arc_sum += weights[i];
      }
      degree[u] += 2 * self_weight[u];
    }
    m = arc_sum / 2;
    for (double s : self_weight) m += s;
  }
};

// One pass of local moves. Returns the number of moves applied.
inline std::size_t louvain_local_moves(const LouvainGraph& lg,
                                       std::vector<std::uint32_t>& node2com,
                                       std::vector<double>& com_tot, double min_gain,
                                       Rng& rng) {
  const std::size_t n = lg.size();
  const double m = lg.m;
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(order);

  std::vector<double> w2c(n, 0.0);  // scratch: weight from v to community
  std::vector<std::uint32_t> touched;
  std::size_t moves = 0;

  for (VertexId v : order) {
    const std::uint32_t old_com = node2com[v];
    touched.clear();
    for (std::uint64_t i = lg.offsets[v]; i < lg.offsets[v + 1]; ++i) {
      const std::uint32_t c = node2com[lg.targets[i]];
      if (w2c[c] == 0.0 && std::find(touched.begin(), touched.end(), c) == touched.end()) {
        touched.push_back(c);
      }
      w2c[c] += lg.weights[i];
    }
    if (std::find(touched.begin(), touched.end(), old_com) == touched.end()) {
      touched.push_back(old_com);
    }

    // detach v, then compare reinsertion gains
    com_tot[old_com] -= lg.degree[v];
    const double kv = lg.degree[v];
    auto insert_gain = [&](std::uint32_t c) {
      return w2c[c] / m - kv * com_tot[c] / (2 * m * m);
    };
    const double stay_gain = insert_gain(old_com);
    std::uint32_t best_com = old_com;
    double best_gain = stay_gain;
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t c : touched) {
      const double gain = insert_gain(c);
      // strict >: on equal gain the earliest (lowest) community id wins
      if (gain > best_gain) {
        best_gain = gain;
        best_com = c;
      }
    }
    if (best_com != old_com && best_gain - stay_gain > min_gain) {
      node2com[v] = best_com;
      ++moves;
    } else {
      node2com[v] = old_com;
    }
    com_tot[node2com[v]] += lg.degree[v];

    for (std::uint32_t c : touched) w2c[c] = 0.0;
  }
  return moves;
}

inline double louvain_q(const LouvainGraph& lg, const std::vector<std::uint32_t>& node2com,
                        std::size_t com_count) {
  std::vector<double> intra(com_count, 0.0), tot(com_count, 0.0);
  for (std::size_t u = 0; u < lg.size(); ++u) {
    const std::uint32_t cu = node2com[u];
    tot[cu] += lg.degree[u];
    intra[cu] += 2 * lg.self_weight[u];
    for (std::uint64_t i = lg.offsets[u]; i < lg.offsets[u + 1]; ++i) {
      if (node2com[lg.targets[i]] == cu) intra[cu] += lg.weights[i];
    }
  }
  double q = 0;
  for (std::size_t c = 0; c < com_count; ++c) {
    q += (intra[c] / 2) / lg.m - (tot[c] / (2 * lg.m)) * (tot[c] / (2 * lg.m));
  }
  return q;
}

// Renumber communities to dense ids in order of first appearance by node id.
inline std::size_t densify(std::vector<std::uint32_t>& node2com) {
  std::vector<std::uint32_t> remap(node2com.size(), std::numeric_limits<std::uint32_t>::max());
  std::uint32_t next = 0;
  for (auto& c : node2com) {
    if (remap[c] == std::numeric_limits<std::uint32_t>::max()) remap[c] = next++;
    c = remap[c];
  }
  return next;
}

inline LouvainGraph contract(const LouvainGraph& lg, const std::vector<std::uint32_t>& node2com,
                             std::size_t com_count) {
  LouvainGraph out;
  out.self_weight.assign(com_count, 0.0);
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(com_count);
  for (std::size_t u = 0; u < lg.size(); ++u) {
    const std::uint32_t cu = node2com[u];
    out.self_weight[cu] += lg.self_weight[u];
    for (std::uint64_t i = lg.offsets[u]; i < lg.offsets[u + 1]; ++i) {
      const std::uint32_t cv = node2com[lg.targets[i]];
      if (cu == cv) {
        out.self_weight[cu] += lg.weights[i] / 2;  // both arcs visit: once total
      } else {
        adj[cu].push_back({cv, lg.weights[i]});
      }
    }
  }
  out.offsets.assign(com_count + 1, 0);
  for (std::size_t c = 0; c < com_count; ++c) {
    auto& row = adj[c];
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t kept = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (kept > 0 && row[kept - 1].first == row[i].first) {
        row[kept - 1].second += row[i].second;
      } else {
        row[kept++] = row[i];
      }
    }
    row.resize(kept);
    out.offsets[c + 1] = out.offsets[c] + kept;
  }
  out.targets.reserve(out.offsets.back());
  out.weights.reserve(out.offsets.back());
  for (std::size_t c = 0; c < com_count; ++c) {
    for (const auto& [t, w] : adj[c]) {
      out.targets.push_back(t);
      out.weights.push_back(w);
    }
  }
  out.finish();
  return out;
}

}  // namespace detail

/// Two-phase Louvain: seed-shuffled local moves until no move improves Q by
/// more than min_gain, then contraction; repeated until Q stops improving.
/// Deterministic for a fixed seed (equal-gain ties go to the lowest
/// community id).
inline Partition louvain(const Graph& g, LouvainOptions opt = {}) {
  if (!g.is_symmetric()) throw std::domain_error("louvain: graph must be symmetric");
  if (!g.connected()) throw std::domain_error("louvain: graph must be connected");
  if (opt.min_gain < 0) throw std::invalid_argument("louvain: min_gain must be >= 0");
  const std::size_t n = g.vertex_count();
  if (n == 0) throw std::domain_error("louvain: empty graph");
  if (g.arc_count() == 0) {
    // single vertex: the only possible partition
    return Partition::whole(n);
  }

  Rng rng(opt.seed ^ 0x51e8c7a31b3cull);
  detail::LouvainGraph work = detail::LouvainGraph::from_graph(g);
  if (work.m <= 0) throw std::domain_error("louvain: total edge weight must be positive");
  std::vector<std::uint32_t> flat(n);
  std::iota(flat.begin(), flat.end(), 0u);

  double q_prev = detail::louvain_q(work, flat, n);
  for (;;) {
    std::vector<std::uint32_t> node2com(work.size());
    std::iota(node2com.begin(), node2com.end(), 0u);
    std::vector<double> com_tot = work.degree;

    std::size_t passes_with_moves = 0;
    while (detail::louvain_local_moves(work, node2com, com_tot, opt.min_gain, rng) > 0) {
      ++passes_with_moves;
    }
    const std::size_t com_count = detail::densify(node2com);
    const double q_now = detail::louvain_q(work, node2com, com_count);
    if (passes_with_moves == 0 || q_now - q_prev <= opt.min_gain) break;
    q_prev = q_now;

    for (auto& c : flat) c = node2com[c];
    if (com_count == work.size()) break;
    work = detail::contract(work, node2com, com_count);
  }

  detail::densify(flat);
  return Partition::from_assignment(std::move(flat));
}

/// Multi-source BFS regions from k random seeds: a controlled-|L| override
/// for experiments that need a fixed landmark count.
inline Partition bfs_partition(const Graph& g, std::uint32_t k, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  if (k < 1 || k > n) throw std::domain_error("bfs_partition: need 1 <= k <= |V|");
  if (!g.connected()) throw std::domain_error("bfs_partition: graph must be connected");
  Rng rng(seed ^ 0x9d2c5680ca876465ull);
  std::vector<VertexId> seeds;
  std::vector<char> used(n, 0);
  while (seeds.size() < k) {
    const VertexId v = static_cast<VertexId>(rng.next_below(n));
    if (!used[v]) {
      used[v] = 1;
      seeds.push_back(v);
    }
  }
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> assignment(n, kUnset);
  std::vector<VertexId> queue;
  queue.reserve(n);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    assignment[seeds[i]] = static_cast<std::uint32_t>(i);
    queue.push_back(seeds[i]);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    for (VertexId v : g.neighbors(u)) {
      if (assignment[v] == kUnset) {
        assignment[v] = assignment[u];
        queue.push_back(v);
      }
    }
  }
  return Partition::from_assignment(std::move(assignment));
}

/// Text format: one `<vertex-id> <community-id>` line per vertex.
inline void write_partition(std::ostream& out, const Partition& p) {
  for (std::size_t v = 0; v < p.assignment.size(); ++v) {
    out << v << ' ' << p.assignment[v] << '\n';
  }
}

inline Partition read_partition(std::istream& in, std::size_t vertex_count) {
  std::vector<std::uint32_t> assignment(vertex_count, std::numeric_limits<std::uint32_t>::max());
  std::string line;
  std::size_t lineno = 0, seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = detail::trim(line);
    if (s.empty()) continue;
    std::string_view vtok, ctok, extra;
    std::uint64_t v = 0, c = 0;
    if (!detail::next_token(s, vtok) || !detail::next_token(s, ctok) ||
        detail::next_token(s, extra) || !detail::parse_u64(vtok, v) ||
        !detail::parse_u64(ctok, c)) {
      throw ParseError(lineno, "expected '<vertex-id> <community-id>'");
    }
    if (v >= vertex_count) throw std::out_of_range("partition: vertex id out of range");
    if (assignment[v] != std::numeric_limits<std::uint32_t>::max()) {
      throw ParseError(lineno, "duplicate vertex id");
    }
    assignment[v] = static_cast<std::uint32_t>(c);
    ++seen;
  }
  if (seen != vertex_count) {
    throw std::invalid_argument("partition: assignment does not cover every vertex");
  }
  return Partition::from_assignment(std::move(assignment));
}

}  // namespace alp
