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

#include <catch2/catch_amalgamated.hpp>

#include "alp/embedding.hpp"
#include "alp/generate.hpp"
#include "alp/heuristics.hpp"
#include "alp/search.hpp"
#include "oracles.hpp"

using namespace alp;

namespace {

Graph path_graph(std::size_t n) {
  std::vector<WeightedArc> arcs;
  for (std::size_t v = 0; v + 1 < n; ++v) {
    arcs.push_back({static_cast<VertexId>(v), static_cast<VertexId>(v + 1), 1.0});
  }
  return Graph::from_arcs(n, std::move(arcs), true);
}

void check_path(const Graph& g, const QueryResult& r, VertexId s, VertexId t) {
  REQUIRE(r.path.front() == s);
  REQUIRE(r.path.back() == t);
  double sum = 0;
  for (std::size_t i = 0; i + 1 < r.path.size(); ++i) {
    const double w = g.arc_weight(r.path[i], r.path[i + 1]);
    REQUIRE(w < kInf);
    sum += w;
  }
  REQUIRE(sum == Catch::Approx(r.distance).epsilon(1e-9).margin(1e-12));
}

}  // namespace

TEST_CASE("sssp: line graph distances") {
  const Graph g = path_graph(3);
  REQUIRE(sssp(g, 0) == std::vector<double>{0, 1, 2});
}

TEST_CASE("sssp: source distance is zero") {
  const Graph g = generate("erdos_renyi:n=30,p=0.2", 2);
  for (VertexId s = 0; s < g.vertex_count(); s += 5) REQUIRE(sssp(g, s)[s] == 0.0);
}

TEST_CASE("sssp agrees with Floyd-Warshall on assorted graphs") {
  for (const char* spec : {"grid:rows=4,cols=5", "erdos_renyi:n=30,p=0.15",
                           "random_geometric:n=30,radius=0.35"}) {
    const Graph g = generate(spec, 13);
    const auto fw = oracle::floyd_warshall(g);
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
      const auto d = sssp(g, s);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        REQUIRE(d[v] == Catch::Approx(fw[s][v]).epsilon(1e-12).margin(1e-12));
      }
    }
  }
}

TEST_CASE("sssp: grid corner to corner via exhaustive path enumeration") {
  const Graph g = generate("grid:rows=3,cols=3", 0);
  REQUIRE(sssp(g, 0)[8] == oracle::min_simple_path(g, 0, 8));
}

TEST_CASE("sssp_bounded settles exactly the ring") {
  const Graph g = generate("grid:rows=6,cols=6", 0);
  const auto full = sssp(g, 0);
  const auto ring = sssp_bounded(g, 0, 4.0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (full[v] <= 4.0) {
      REQUIRE(ring[v] == full[v]);
    } else {
      REQUIRE(ring[v] == kInf);
    }
  }
}

TEST_CASE("sssp_to_targets matches full runs") {
  const Graph g = generate("watts_strogatz:n=40,k=4,beta=0.2", 8);
  const std::vector<VertexId> targets{3, 17, 31};
  const auto got = sssp_to_targets(g, 5, targets);
  const auto full = sssp(g, 5);
  for (std::size_t i = 0; i < targets.size(); ++i) REQUIRE(got[i] == full[targets[i]]);
}

TEST_CASE("bfs_hops: grid hop counts equal unit-weight distances") {
  const Graph g = generate("grid:rows=5,cols=5", 0);
  const auto hops = bfs_hops(g, 0, 100);
  const auto dist = sssp(g, 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    REQUIRE(double(hops[v]) == dist[v]);
  }
  const auto capped = bfs_hops(g, 0, 3);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] <= 3) {
      REQUIRE(capped[v] == dist[v]);
    } else {
      REQUIRE(capped[v] == std::numeric_limits<std::uint32_t>::max());
    }
  }
}

TEST_CASE("dijkstra_query: identity query") {
  const Graph g = path_graph(3);
  const QueryResult r = dijkstra_query(g, 1, 1);
  REQUIRE(r.distance == 0.0);
  REQUIRE(r.path == std::vector<VertexId>{1});
}

TEST_CASE("dijkstra_query: line graph end to end") {
  const Graph g = path_graph(3);
  const QueryResult r = dijkstra_query(g, 0, 2);
  REQUIRE(r.distance == 2.0);
  REQUIRE(r.path == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("dijkstra_query: grid corner distance and path validity") {
  const Graph g = generate("grid:rows=3,cols=3", 0);
  const QueryResult r = dijkstra_query(g, 0, 8);
  REQUIRE(r.distance == oracle::min_simple_path(g, 0, 8));
  check_path(g, r, 0, 8);
}

TEST_CASE("dijkstra_query: unreachable target") {
  const Graph g = Graph::from_arcs(4, {{0, 1, 1.0}, {2, 3, 1.0}}, true);
  const QueryResult r = dijkstra_query(g, 0, 3);
  REQUIRE_FALSE(r.reachable());
  REQUIRE(r.path.empty());
}

TEST_CASE("astar with a zero heuristic matches Dijkstra exactly, expansions included") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const Graph g = generate("erdos_renyi:n=50,p=0.1", seed);
    Rng rng(seed);
    for (int trial = 0; trial < 20; ++trial) {
      const auto s = static_cast<VertexId>(rng.next_below(g.vertex_count()));
      const auto t = static_cast<VertexId>(rng.next_below(g.vertex_count()));
      const QueryResult dj = dijkstra_query(g, s, t);
      const QueryResult as = astar_query(g, s, t, [](VertexId) { return 0.0; });
      REQUIRE(as.distance == dj.distance);
      REQUIRE(as.stats.expanded == dj.stats.expanded);
      REQUIRE(as.stats.heap_pushes == dj.stats.heap_pushes);
      REQUIRE(as.path == dj.path);
    }
  }
}

TEST_CASE("astar with the exact heuristic expands only the shortest path") {
  const Graph g = path_graph(3);
  const auto to_t = sssp(g, 2);
  const QueryResult r = astar_query(g, 0, 2, [&](VertexId v) { return to_t[v]; });
  REQUIRE(r.distance == 2.0);
  REQUIRE(r.stats.expanded == 3);  // the path vertices and nothing else
}

TEST_CASE("astar: equal-priority ties settle the smaller vertex id first") {
  // diamond: 0-1-3 and 0-2-3; both relaxations reach 3 at g=2, the parent
  // must come from vertex 1
  const Graph g = Graph::from_arcs(4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}}, true);
  const QueryResult r = dijkstra_query(g, 0, 3);
  REQUIRE(r.path == std::vector<VertexId>{0, 1, 3});
}

TEST_CASE("astar distances equal Dijkstra's under admissible heuristics (sweep)") {
  // 200 seeded graphs up to ~60 vertices, all-pairs equality
  std::size_t graphs = 0;
  for (std::uint64_t seed = 1; graphs < 200; ++seed) {
    const char* spec;
    switch (seed % 4) {
      case 0: spec = "erdos_renyi:n=28,p=0.14"; break;
      case 1: spec = "watts_strogatz:n=32,k=4,beta=0.2"; break;
      case 2: spec = "random_geometric:n=30,radius=0.33"; break;
      default: spec = "barabasi_albert:n=26,attach=2"; break;
    }
    const Graph g = generate(spec, seed);
    if (g.vertex_count() < 8 || g.vertex_count() > 60) continue;
    ++graphs;
    const Partition p = bfs_partition(g, 2 + seed % 3, seed);
    const auto landmarks = select_landmarks(g, p, LandmarkMethod::random, seed);
    const AlpIndex alp = build_alp_index(g, p, landmarks, LabelMode::exact);
    const AltIndex alt = build_alt_index(g, landmarks);
    const bool real_weights = seed % 4 == 2;
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
      const auto want = sssp(g, s);
      for (VertexId t = 0; t < g.vertex_count(); ++t) {
        const QueryResult via_alt = astar_query(g, s, t, AltHeuristic{&alt, t});
        const QueryResult via_alp = astar_query(g, s, t, AlpHeuristic{&alp, t, {}});
        if (real_weights) {
          REQUIRE(via_alt.distance == Catch::Approx(want[t]).epsilon(1e-9));
          REQUIRE(via_alp.distance == Catch::Approx(want[t]).epsilon(1e-9));
        } else {
          REQUIRE(via_alt.distance == want[t]);
          REQUIRE(via_alp.distance == want[t]);
        }
      }
    }
  }
  REQUIRE(graphs == 200);
}

TEST_CASE("reopening never happens under a consistent heuristic") {
  const Graph g = generate("grid:rows=6,cols=6", 0);
  const Partition p = bfs_partition(g, 3, 2);
  const auto landmarks = select_landmarks(g, p, LandmarkMethod::farthest, 2);
  const AltIndex alt = build_alt_index(g, landmarks);
  for (VertexId s = 0; s < g.vertex_count(); s += 3) {
    for (VertexId t = 0; t < g.vertex_count(); t += 5) {
      REQUIRE(dijkstra_query(g, s, t).stats.reopened == 0);
      REQUIRE(astar_query(g, s, t, AltHeuristic{&alt, t}).stats.reopened == 0);
    }
  }
}

TEST_CASE("query stats invariants") {
  const Graph g = generate("watts_strogatz:n=50,k=4,beta=0.3", 6);
  const Partition p = bfs_partition(g, 4, 3);
  const auto landmarks = select_landmarks(g, p, LandmarkMethod::random, 4);
  const AlpIndex alp = build_alp_index(g, p, landmarks, LabelMode::exact);
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = static_cast<VertexId>(rng.next_below(g.vertex_count()));
    const auto t = static_cast<VertexId>(rng.next_below(g.vertex_count()));
    const QueryResult r = astar_query(g, s, t, AlpHeuristic{&alp, t, {}});
    REQUIRE(r.stats.reopened <= r.stats.expanded);
    REQUIRE(r.stats.heuristic_evals <= g.vertex_count());
    if (r.reachable()) check_path(g, r, s, t);
  }
}
