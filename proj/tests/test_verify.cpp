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

#include "alp/verify.hpp"
#include "oracles.hpp"

using namespace alp;

namespace {

// Weighted square whose landmarks sit across heavy edges: 0 and 2 are the
// landmarks of {0,1} and {2,3}. The label of vertex 2 is 10 away from the
// label of its neighbor 1 across a unit edge, which breaks consistency.
struct InconsistencyFixture {
  Graph graph = Graph::from_arcs(
      4, {{0, 1, 10}, {1, 2, 1}, {2, 3, 10}, {3, 0, 1}}, true);
  Partition partition = Partition::from_assignment({0, 0, 1, 1});
  AlpIndex index = build_alp_index(graph, partition, {0, 2}, LabelMode::exact);
};

}  // namespace

TEST_CASE("check_admissible: the zero heuristic is admissible everywhere") {
  const Graph g = generate("erdos_renyi:n=30,p=0.15", 2);
  REQUIRE(check_admissible(g, [](VertexId, VertexId) { return 0.0; }).empty());
}

TEST_CASE("check_admissible: a constructed violator is caught on every pair") {
  const Graph g = generate("watts_strogatz:n=12,k=4,beta=0.1", 3);
  const auto fw = oracle::floyd_warshall(g);
  const auto violator = [&fw](VertexId v, VertexId t) { return fw[v][t] + 1.0; };
  const auto reports = check_admissible(g, violator);
  const std::size_t n = g.vertex_count();
  REQUIRE(reports.size() == n * (n - 1));
  for (const auto& r : reports) {
    REQUIRE(r.kind == ViolationKind::admissibility);
    REQUIRE(r.lhs == Catch::Approx(r.rhs + 1.0));
  }
}

TEST_CASE("check_admissible: exact-label dual heuristic passes seeded graphs") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const TrialSetup setup = [&] {
      TrialSetup s;
      s.spec = GeneratorSpec::parse("erdos_renyi:n=30,p=0.15");
      s.graph_seed = seed;
      s.partition_kind = PartitionKind::bfs;
      s.bfs_k = 2 + seed % 3;
      s.partition_seed = seed;
      s.landmark_seed = seed;
      return s;
    }();
    const TrialArtifacts art = build_trial(setup);
    const auto h = [&](VertexId v, VertexId t) { return alp_h(art.alp, v, t, art.cfg); };
    REQUIRE(check_admissible(art.graph, h).empty());
  }
}

TEST_CASE("check_consistency: zero heuristic and full-table bounds are consistent") {
  const Graph g = generate("random_geometric:n=30,radius=0.35", 5);
  REQUIRE(check_consistency(g, [](VertexId, VertexId) { return 0.0; }, 3).empty());

  const Partition p = bfs_partition(g, 3, 1);
  const auto landmarks = select_landmarks(g, p, LandmarkMethod::random, 2);
  const AltIndex alt = build_alt_index(g, landmarks);
  const auto h = [&](VertexId v, VertexId t) { return alt_h(alt, v, t); };
  for (VertexId t = 0; t < g.vertex_count(); ++t) {
    REQUIRE(check_consistency(g, h, t).empty());
  }
}

TEST_CASE("inconsistency fixture: the dual heuristic drops faster than the edge weight") {
  InconsistencyFixture fx;
  // h(2 -> 0 target ... ) around target 3: vertex 2 reads its own label a=10
  // via |a - c|; its neighbor 1 reads three negative quad bounds and clamps
  const auto h = [&](VertexId v, VertexId t) { return alp_h(fx.index, v, t, {}); };
  REQUIRE(h(2, 3) == 10.0);
  REQUIRE(h(1, 3) == 0.0);
  const auto reports = check_consistency(fx.graph, h, 3);
  REQUIRE_FALSE(reports.empty());
  bool found = false;
  for (const auto& r : reports) {
    if (r.u == 2 && r.v == 1) {
      found = true;
      REQUIRE(r.lhs == 10.0);
      REQUIRE(r.rhs == 1.0);
    }
  }
  REQUIRE(found);
  // the heuristic is still admissible here; inconsistency is the only defect
  REQUIRE(check_admissible(fx.graph, h).empty());
}

TEST_CASE("trial setups serialize and parse back") {
  TrialSetup setup;
  setup.spec = GeneratorSpec::parse("watts_strogatz:n=24,k=4,beta=0.25");
  setup.graph_seed = 77;
  setup.partition_kind = PartitionKind::bfs;
  setup.bfs_k = 3;
  setup.partition_seed = 5;
  setup.method = LandmarkMethod::farthest;
  setup.landmark_seed = 9;
  setup.mode = LabelMode::induced;
  setup.ptolemy = false;
  const TrialSetup back = TrialSetup::parse(setup.serialize());
  REQUIRE(back.spec.to_string() == setup.spec.to_string());
  REQUIRE(back.graph_seed == 77);
  REQUIRE(back.partition_kind == PartitionKind::bfs);
  REQUIRE(back.bfs_k == 3);
  REQUIRE(back.method == LandmarkMethod::farthest);
  REQUIRE(back.mode == LabelMode::induced);
  REQUIRE_FALSE(back.ptolemy);

  TrialSetup manual;
  manual.spec = GeneratorSpec::parse("grid:rows=1,cols=5");
  manual.partition_kind = PartitionKind::manual;
  manual.manual_assignment = {0, 0, 0, 1, 1};
  manual.manual_landmarks = {0, 4};
  manual.alt_landmarks = {2};
  const TrialSetup mback = TrialSetup::parse(manual.serialize());
  REQUIRE(mback.partition_kind == PartitionKind::manual);
  REQUIRE(mback.manual_assignment == manual.manual_assignment);
  REQUIRE(mback.manual_landmarks == manual.manual_landmarks);
  REQUIRE(mback.alt_landmarks == manual.alt_landmarks);
}

TEST_CASE("violation reports round trip through their text form") {
  ViolationReport r;
  r.kind = ViolationKind::consistency;
  r.trial = "trial_spec=grid:rows=2,cols=3 graph_seed=1 partition=bfs bfs_k=2 "
            "partition_seed=2 method=random landmark_seed=3 mode=exact ptolemy=on";
  r.u = 4;
  r.v = 5;
  r.t = 1;
  r.edge_weight = 1.25;
  r.lhs = 3.5;
  r.rhs = 2.25;
  const std::string line = r.to_line();
  REQUIRE(line.find("kind=consistency") == 0);
  REQUIRE(line.find("u=4") != std::string::npos);
  REQUIRE(line.find("lhs=3.5") != std::string::npos);
  REQUIRE(line.find("trial_spec=grid:rows=2,cols=3") != std::string::npos);
  // the embedded trial is recoverable
  const TrialSetup setup = TrialSetup::parse(line);
  REQUIRE(setup.graph_seed == 1);
}

TEST_CASE("randomized consistency search finds and replays a witness") {
  const ConsistencySearchOutcome outcome = find_consistency_witness(2000, 1);
  REQUIRE(outcome.witness.has_value());
  REQUIRE(outcome.trials_run <= 2000);
  const auto replayed = replay_consistency_witness(*outcome.witness);
  REQUIRE(replayed.has_value());
  REQUIRE(replayed->lhs == outcome.witness->lhs);
  REQUIRE(replayed->rhs == outcome.witness->rhs);
}

TEST_CASE("consistency search is deterministic per seed") {
  const auto a = find_consistency_witness(2000, 9);
  const auto b = find_consistency_witness(2000, 9);
  REQUIRE(a.trials_run == b.trials_run);
  REQUIRE(a.witness.has_value() == b.witness.has_value());
  if (a.witness) REQUIRE(a.witness->to_line() == b.witness->to_line());
}

TEST_CASE("dominance search produces both directions, including the five-path witness") {
  const DominanceWitnesses dom = find_dominance_counterexamples(10000, 7);
  REQUIRE_FALSE(dom.l_over_dl.empty());
  REQUIRE_FALSE(dom.dl_over_l.empty());

  bool five_path = false;
  for (const auto& r : dom.dl_over_l) {
    if (r.trial.find("rows=1,cols=5") != std::string::npos && r.v == 1 && r.t == 3) {
      five_path = true;
      REQUIRE(r.lhs == 2.0);  // dual bound, tight
      REQUIRE(r.rhs == 0.0);  // lone mid-path landmark
    }
  }
  REQUIRE(five_path);

  for (const auto& r : {dom.l_over_dl.front(), dom.dl_over_l.front()}) {
    REQUIRE(replay_dominance_witness(r));
  }
}

TEST_CASE("single shared landmark: both heuristics coincide, no witness possible") {
  const Graph g = generate("erdos_renyi:n=20,p=0.25", 3);
  const Partition p = Partition::whole(g.vertex_count());
  const auto landmarks = select_landmarks(g, p, LandmarkMethod::random, 1);
  const AlpIndex alp = build_alp_index(g, p, landmarks, LabelMode::exact);
  const AltIndex alt = build_alt_index(g, landmarks);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId t = 0; t < g.vertex_count(); ++t) {
      REQUIRE(alp_h(alp, v, t, {}) == Catch::Approx(alt_h(alt, v, t)).margin(1e-12));
    }
  }
}
