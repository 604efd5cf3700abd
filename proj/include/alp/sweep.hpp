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

#include "alp/verify.hpp"

namespace alp {

struct SweepConfig {
  std::uint64_t seed = 1;
  std::size_t graphs_per_family = 42;
  std::size_t min_vertices = 10;
  std::size_t max_vertices = 200;
  bool run_queries = true;  // point-to-point equality against the oracle rows
  bool run_induced = true;  // measure induced-label admissibility violation rate
  unsigned threads = 1;
};

struct FamilySweepStats {
  GraphFamily family = GraphFamily::grid;
  std::uint64_t graphs = 0;
  std::uint64_t pairs = 0;
  std::uint64_t alt_admissibility_violations = 0;
  std::uint64_t alp_exact_violations = 0;          // product bound off
  std::uint64_t alp_exact_ptolemy_violations = 0;  // product bound on
  std::uint64_t alp_induced_violations = 0;
  std::uint64_t alp_induced_pairs = 0;
  std::uint64_t alt_distance_mismatches = 0;
  std::uint64_t alp_distance_mismatches = 0;
  std::uint64_t alp_queries_with_reopens = 0;
  std::vector<ViolationReport> samples;

  void merge(const FamilySweepStats& o) {
    graphs += o.graphs;
    pairs += o.pairs;
    alt_admissibility_violations += o.alt_admissibility_violations;
    alp_exact_violations += o.alp_exact_violations;
    alp_exact_ptolemy_violations += o.alp_exact_ptolemy_violations;
    alp_induced_violations += o.alp_induced_violations;
    alp_induced_pairs += o.alp_induced_pairs;
    alt_distance_mismatches += o.alt_distance_mismatches;
    alp_distance_mismatches += o.alp_distance_mismatches;
    alp_queries_with_reopens += o.alp_queries_with_reopens;
    for (const auto& r : o.samples) {
      if (samples.size() < 8) samples.push_back(r);
    }
  }
};

struct SweepResult {
  std::vector<FamilySweepStats> families;

  std::uint64_t total_graphs() const {
    std::uint64_t s = 0;
    for (const auto& f : families) s += f.graphs;
    return s;
  }
  std::uint64_t total_pairs() const {
    std::uint64_t s = 0;
    for (const auto& f : families) s += f.pairs;
    return s;
  }
  std::uint64_t exact_violations() const {
    std::uint64_t s = 0;
    for (const auto& f : families) s += f.alt_admissibility_violations + f.alp_exact_violations;
    return s;
  }
  std::uint64_t distance_mismatches() const {
    std::uint64_t s = 0;
    for (const auto& f : families) s += f.alt_distance_mismatches + f.alp_distance_mismatches;
    return s;
  }
};

namespace detail {

inline constexpr GraphFamily kSweepFamilies[] = {
    GraphFamily::grid, GraphFamily::erdos_renyi, GraphFamily::barabasi_albert,
    GraphFamily::watts_strogatz, GraphFamily::random_geometric};

inline TrialSetup sweep_trial(const SweepConfig& cfg, GraphFamily family, std::size_t index) {
  Rng rng(cfg.seed * 0x100000001b3ull + static_cast<std::uint64_t>(family) * 7919 + index);
  TrialSetup setup;
  const std::uint64_t span = cfg.max_vertices - cfg.min_vertices + 1;
  const std::uint64_t n = cfg.min_vertices + rng.next_below(span);
  setup.spec.family = family;
  switch (family) {
    case GraphFamily::grid: {
      const std::uint64_t rows = 2 + rng.next_below(13);
      setup.spec.rows = rows;
      setup.spec.cols = std::max<std::uint64_t>(2, n / rows);
      break;
    }
    case GraphFamily::erdos_renyi:
      setup.spec.n = n;
      setup.spec.p = std::min(1.0, (1.1 + rng.next_unit()) * std::log(double(n)) / double(n));
      break;
    case GraphFamily::barabasi_albert:
      setup.spec.n = n;
      setup.spec.attach = 1 + rng.next_below(3);
      break;
    case GraphFamily::watts_strogatz:
      setup.spec.n = n;
      setup.spec.k = 2 + 2 * rng.next_below(2);
      setup.spec.beta = 0.3 * rng.next_unit();
      break;
    case GraphFamily::random_geometric:
      setup.spec.n = n;
      setup.spec.radius =
          std::sqrt(std::log(double(n)) / double(n)) * (1.0 + 0.5 * rng.next_unit());
      break;
  }
  setup.graph_seed = rng.next_u64() >> 16;
  setup.partition_kind = index % 2 == 0 ? PartitionKind::louvain : PartitionKind::bfs;
  setup.bfs_k = static_cast<std::uint32_t>(2 + rng.next_below(5));
  setup.partition_seed = rng.next_u64() >> 16;
  setup.method = (index / 2) % 2 == 0 ? LandmarkMethod::random : LandmarkMethod::farthest;
  setup.landmark_seed = rng.next_u64() >> 16;
  setup.mode = LabelMode::exact;
  return setup;
}

inline bool distances_agree(double got, double want, bool integer_weights) {
  if (integer_weights) return got == want;
  if (got == kInf || want == kInf) return got == want;
  return std::abs(got - want) <= 1e-9 * std::max(1.0, want);
}

}  // namespace detail

/// Runs the seeded multi-family audit: admissibility of both heuristics on
/// all ordered pairs against SSSP oracle rows, the induced-label violation
/// rate, and (optionally) point-to-point distance equality of both A*
/// engines against the oracle.
inline SweepResult run_verification_sweep(const SweepConfig& cfg) {
  constexpr std::size_t kFamilyCount = std::size(detail::kSweepFamilies);
  const std::size_t jobs = kFamilyCount * cfg.graphs_per_family;
  std::vector<FamilySweepStats> per_job(jobs);

  parallel_for(jobs, cfg.threads, [&](std::size_t job) {
    const GraphFamily family = detail::kSweepFamilies[job % kFamilyCount];
    const std::size_t index = job / kFamilyCount;
    FamilySweepStats& stats = per_job[job];
    stats.family = family;

    TrialSetup setup = detail::sweep_trial(cfg, family, index);
    TrialArtifacts art;
    bool built = false;
    for (std::uint64_t retry = 0; retry < 8 && !built; ++retry) {
      try {
        art = build_trial(setup);
        built = art.graph.vertex_count() >= std::min<std::size_t>(cfg.min_vertices, 10);
      } catch (const std::domain_error&) {
        built = false;
      }
      if (!built) setup.graph_seed += 7717 * (retry + 1);
    }
    if (!built) return;

    const Graph& g = art.graph;
    const std::size_t n = g.vertex_count();
    stats.graphs = 1;

    const AltIndex alt = build_alt_index(g, art.landmarks);
    const AlpIndex& alp = art.alp;
    std::optional<AlpIndex> alp_induced;
    if (cfg.run_induced) {
      alp_induced =
          build_alp_index(g, art.partition, art.landmarks, LabelMode::induced);
    }
    const HeuristicConfig cfg_off{.use_ptolemy = false, .clamp_nonnegative = true};
    const HeuristicConfig cfg_on{.use_ptolemy = true, .clamp_nonnegative = true};
    const bool integer_weights = family != GraphFamily::random_geometric;
    const std::string trial_line = setup.serialize();

    for (VertexId v = 0; v < n; ++v) {
      const std::vector<double> oracle = sssp(g, v);
      for (VertexId t = 0; t < n; ++t) {
        if (t == v || oracle[t] == kInf) continue;
        ++stats.pairs;
        const double d = oracle[t];
        const double eps = violation_eps(d);
        auto audit = [&](double h, std::uint64_t& counter, ViolationKind kind) {
          if (h > d + eps) {
            ++counter;
            if (stats.samples.size() < 8) {
              ViolationReport r;
              r.kind = kind;
              r.trial = trial_line;
              r.v = v;
              r.t = t;
              r.lhs = h;
              r.rhs = d;
              stats.samples.push_back(std::move(r));
            }
          }
        };
        audit(alt_h(alt, v, t), stats.alt_admissibility_violations,
              ViolationKind::admissibility);
        audit(alp_h(alp, v, t, cfg_off), stats.alp_exact_violations,
              ViolationKind::admissibility);
        audit(alp_h(alp, v, t, cfg_on), stats.alp_exact_ptolemy_violations,
              ViolationKind::admissibility);
        if (alp_induced) {
          ++stats.alp_induced_pairs;
          if (alp_h(*alp_induced, v, t, cfg_off) > d + eps) {
            ++stats.alp_induced_violations;
          }
        }

        if (cfg.run_queries) {
          const QueryResult via_alt = astar_query(g, v, t, AltHeuristic{&alt, t});
          if (!detail::distances_agree(via_alt.distance, d, integer_weights)) {
            ++stats.alt_distance_mismatches;
          }
          const QueryResult via_alp =
              astar_query(g, v, t, AlpHeuristic{&alp, t, cfg_on});
          if (!detail::distances_agree(via_alp.distance, d, integer_weights)) {
            ++stats.alp_distance_mismatches;
          }
          if (via_alp.stats.reopened > 0) ++stats.alp_queries_with_reopens;
        }
      }
    }
  });

  SweepResult result;
  result.families.resize(kFamilyCount);
  for (std::size_t f = 0; f < kFamilyCount; ++f) {
    result.families[f].family = detail::kSweepFamilies[f];
  }
  for (std::size_t job = 0; job < jobs; ++job) {
    result.families[job % kFamilyCount].merge(per_job[job]);
  }
  return result;
}

}  // namespace alp
