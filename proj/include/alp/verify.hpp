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

#include <optional>
#include <sstream>

#include "alp/generate.hpp"
#include "alp/heuristics.hpp"
#include "alp/parallel.hpp"
#include "alp/search.hpp"

namespace alp {

/// Comparison slack: relative 1e-9 with an absolute floor, since distances
/// span orders of magnitude across graph families.
inline double violation_eps(double scale) {
  return std::max(1e-12, 1e-9 * std::max(1.0, scale));
}

enum class ViolationKind {
  admissibility,        // h(v,t) > d(v,t)
  consistency,          // h(u,t) > w(u,v) + h(v,t)
  dominance_l_over_dl,  // single-landmark bound beats the dual bound, same landmarks
  dominance_dl_over_l,  // dual bound beats the single-landmark bound, different landmarks
};

inline const char* violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::admissibility: return "admissibility";
    case ViolationKind::consistency: return "consistency";
    case ViolationKind::dominance_l_over_dl: return "dominance_l_over_dl";
    case ViolationKind::dominance_dl_over_l: return "dominance_dl_over_l";
  }
  return "?";
}

/// One re-checkable witness. `trial` describes how to rebuild the instance;
/// the numeric fields give the violated comparison lhs > rhs (+ eps).
struct ViolationReport {
  ViolationKind kind = ViolationKind::admissibility;
  std::string trial;
  VertexId u = kNoVertex;  // consistency: edge tail
  VertexId v = kNoVertex;  // edge head, or the query vertex
  VertexId t = kNoVertex;  // target
  double edge_weight = 0;
  double lhs = 0;
  double rhs = 0;

  std::string to_line() const {
    char num[64];
    std::string line = "kind=";
    line += violation_kind_name(kind);
    if (u != kNoVertex) {
      line += " u=" + std::to_string(u);
      std::snprintf(num, sizeof(num), " w=%.17g", edge_weight);
      line += num;
    }
    line += " v=" + std::to_string(v);
    line += " t=" + std::to_string(t);
    std::snprintf(num, sizeof(num), " lhs=%.17g rhs=%.17g", lhs, rhs);
    line += num;
    if (!trial.empty()) line += " " + trial;
    return line;
  }
};

// --- point checks -----------------------------------------------------------

/// All-pairs admissibility audit via repeated SSSP: reports every ordered
/// pair (v, t), v != t, where h overshoots the true distance.
template <class H2>
std::vector<ViolationReport> check_admissible(const Graph& g, H2&& h) {
  std::vector<ViolationReport> reports;
  const std::size_t n = g.vertex_count();
  for (VertexId v = 0; v < n; ++v) {
    const std::vector<double> dist = sssp(g, v);
    for (VertexId t = 0; t < n; ++t) {
      if (t == v || dist[t] == kInf) continue;
      const double hv = h(v, t);
      if (hv > dist[t] + violation_eps(dist[t])) {
        ViolationReport r;
        r.kind = ViolationKind::admissibility;
        r.v = v;
        r.t = t;
        r.lhs = hv;
        r.rhs = dist[t];
        reports.push_back(std::move(r));
      }
    }
  }
  return reports;
}

/// Edge sweep for the consistency condition h(u,t) <= w(u,v) + h(v,t).
template <class H2>
std::vector<ViolationReport> check_consistency(const Graph& g, H2&& h, VertexId t) {
  std::vector<ViolationReport> reports;
  const std::size_t n = g.vertex_count();
  std::vector<double> hv(n);
  for (VertexId v = 0; v < n; ++v) hv[v] = h(v, t);
  for (VertexId u = 0; u < n; ++u) {
    const auto ns = g.neighbors(u);
    const auto ws = g.arc_weights(u);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double rhs = ws[i] + hv[ns[i]];
      if (hv[u] > rhs + violation_eps(rhs)) {
        ViolationReport r;
        r.kind = ViolationKind::consistency;
        r.u = u;
        r.v = ns[i];
        r.t = t;
        r.edge_weight = ws[i];
        r.lhs = hv[u];
        r.rhs = rhs;
        reports.push_back(std::move(r));
      }
    }
  }
  return reports;
}

// --- rebuildable trials -----------------------------------------------------

enum class PartitionKind { louvain, bfs, manual };

/// Everything needed to rebuild one verification instance deterministically.
struct TrialSetup {
  GeneratorSpec spec;
  std::uint64_t graph_seed = 0;
  PartitionKind partition_kind = PartitionKind::bfs;
  std::uint32_t bfs_k = 2;
  std::uint64_t partition_seed = 0;
  std::vector<std::uint32_t> manual_assignment;
  LandmarkMethod method = LandmarkMethod::random;
  std::uint64_t landmark_seed = 0;
  std::vector<VertexId> manual_landmarks;  // overrides method when nonempty
  std::vector<VertexId> alt_landmarks;     // dominance trials: the differing set
  LabelMode mode = LabelMode::exact;
  bool ptolemy = true;

  std::string serialize() const {
    std::ostringstream out;
    out << "trial_spec=" << spec.to_string() << " graph_seed=" << graph_seed;
    switch (partition_kind) {
      case PartitionKind::louvain:
        out << " partition=louvain partition_seed=" << partition_seed;
        break;
      case PartitionKind::bfs:
        out << " partition=bfs bfs_k=" << bfs_k << " partition_seed=" << partition_seed;
        break;
      case PartitionKind::manual:
        out << " partition=manual assignment=" << join(manual_assignment);
        break;
    }
    if (!manual_landmarks.empty()) {
      out << " landmarks=" << join(manual_landmarks);
    } else {
      out << " method=" << landmark_method_name(method) << " landmark_seed=" << landmark_seed;
    }
    if (!alt_landmarks.empty()) out << " alt_landmarks=" << join(alt_landmarks);
    out << " mode=" << label_mode_name(mode) << " ptolemy=" << (ptolemy ? "on" : "off");
    return out.str();
  }

  static TrialSetup parse(std::string_view text) {
    TrialSetup setup;
    bool have_spec = false;
    std::string_view rest = text;
    std::string_view tok;
    while (detail::next_token(rest, tok)) {
      const std::size_t eq = tok.find('=');
      if (eq == std::string_view::npos) continue;  // tolerate witness fields
      const std::string_view key = tok.substr(0, eq);
      const std::string_view value = tok.substr(eq + 1);
      if (key == "trial_spec") {
        setup.spec = GeneratorSpec::parse(value);
        have_spec = true;
      } else if (key == "graph_seed") {
        detail::parse_u64(value, setup.graph_seed);
      } else if (key == "partition") {
        if (value == "louvain") setup.partition_kind = PartitionKind::louvain;
        else if (value == "bfs") setup.partition_kind = PartitionKind::bfs;
        else if (value == "manual") setup.partition_kind = PartitionKind::manual;
        else throw std::invalid_argument("trial: unknown partition kind");
      } else if (key == "bfs_k") {
        std::uint64_t k = 0;
        detail::parse_u64(value, k);
        setup.bfs_k = static_cast<std::uint32_t>(k);
      } else if (key == "partition_seed") {
        detail::parse_u64(value, setup.partition_seed);
      } else if (key == "assignment") {
        setup.manual_assignment = split_ids<std::uint32_t>(value);
      } else if (key == "method") {
        setup.method = value == "farthest" ? LandmarkMethod::farthest : LandmarkMethod::random;
      } else if (key == "landmark_seed") {
        detail::parse_u64(value, setup.landmark_seed);
      } else if (key == "landmarks") {
        setup.manual_landmarks = split_ids<VertexId>(value);
      } else if (key == "alt_landmarks") {
        setup.alt_landmarks = split_ids<VertexId>(value);
      } else if (key == "mode") {
        setup.mode = value == "induced" ? LabelMode::induced : LabelMode::exact;
      } else if (key == "ptolemy") {
        setup.ptolemy = value != "off";
      }
    }
    if (!have_spec) throw std::invalid_argument("trial: missing trial_spec");
    return setup;
  }

 private:
  template <class T>
  static std::string join(const std::vector<T>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(xs[i]);
    }
    return out;
  }

  template <class T>
  static std::vector<T> split_ids(std::string_view value) {
    std::vector<T> out;
    while (!value.empty()) {
      const std::size_t comma = value.find(',');
      std::uint64_t x = 0;
      if (!detail::parse_u64(value.substr(0, comma), x)) {
        throw std::invalid_argument("trial: bad id list");
      }
      out.push_back(static_cast<T>(x));
      if (comma == std::string_view::npos) break;
      value.remove_prefix(comma + 1);
    }
    return out;
  }
};

struct TrialArtifacts {
  Graph graph;
  Partition partition;
  std::vector<VertexId> landmarks;
  AlpIndex alp;
  HeuristicConfig cfg;
};

inline TrialArtifacts build_trial(const TrialSetup& setup) {
  TrialArtifacts art;
  art.graph = generate(setup.spec, setup.graph_seed);
  const std::size_t n = art.graph.vertex_count();
  switch (setup.partition_kind) {
    case PartitionKind::louvain:
      art.partition = louvain(art.graph, {.seed = setup.partition_seed});
      break;
    case PartitionKind::bfs:
      art.partition = bfs_partition(
          art.graph, std::min<std::uint32_t>(setup.bfs_k, static_cast<std::uint32_t>(n)),
          setup.partition_seed);
      break;
    case PartitionKind::manual:
      if (setup.manual_assignment.size() != n) {
        throw std::invalid_argument("trial: manual assignment size mismatch");
      }
      art.partition = Partition::from_assignment(setup.manual_assignment);
      break;
  }
  art.landmarks = setup.manual_landmarks.empty()
                      ? select_landmarks(art.graph, art.partition, setup.method,
                                         setup.landmark_seed)
                      : setup.manual_landmarks;
  art.alp = build_alp_index(art.graph, art.partition, art.landmarks, setup.mode);
  art.cfg = HeuristicConfig{.use_ptolemy = setup.ptolemy, .clamp_nonnegative = true};
  return art;
}

// --- randomized witness searches ---------------------------------------------

namespace detail {

inline TrialSetup random_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
  Rng rng(master_seed * 0x9e3779b97f4a7c15ull + trial_index);
  TrialSetup setup;
  const std::uint64_t n = 8 + rng.next_below(41);  // 8..48 vertices
  switch (trial_index % 5) {
    case 0:
      setup.spec.family = GraphFamily::erdos_renyi;
      setup.spec.n = n;
      setup.spec.p = 0.08 + 0.3 * rng.next_unit();
      break;
    case 1:
      setup.spec.family = GraphFamily::watts_strogatz;
      setup.spec.n = n;
      setup.spec.k = 2 + 2 * rng.next_below(2);
      setup.spec.beta = 0.3 * rng.next_unit();
      break;
    case 2:
      setup.spec.family = GraphFamily::random_geometric;
      setup.spec.n = n;
      setup.spec.radius = 0.25 + 0.25 * rng.next_unit();
      break;
    case 3:
      setup.spec.family = GraphFamily::grid;
      setup.spec.rows = 2 + rng.next_below(5);
      setup.spec.cols = 2 + rng.next_below(7);
      break;
    case 4:
      setup.spec.family = GraphFamily::barabasi_albert;
      setup.spec.n = n;
      setup.spec.attach = 1 + rng.next_below(3);
      break;
  }
  setup.graph_seed = rng.next_u64() >> 16;
  setup.partition_kind = trial_index % 3 == 0 ? PartitionKind::louvain : PartitionKind::bfs;
  setup.bfs_k = static_cast<std::uint32_t>(2 + rng.next_below(4));
  setup.partition_seed = rng.next_u64() >> 16;
  setup.method = trial_index % 2 == 0 ? LandmarkMethod::random : LandmarkMethod::farthest;
  setup.landmark_seed = rng.next_u64() >> 16;
  setup.mode = LabelMode::exact;
  setup.ptolemy = true;
  return setup;
}

}  // namespace detail

struct ConsistencySearchOutcome {
  std::optional<ViolationReport> witness;
  std::uint64_t trials_run = 0;
};

/// Randomized hunt for a consistency violation of the dual-landmark
/// heuristic with exact labels. Deterministic per seed; stops at the first
/// witness.
inline ConsistencySearchOutcome find_consistency_witness(std::uint64_t max_trials,
                                                         std::uint64_t seed) {
  ConsistencySearchOutcome outcome;
  for (std::uint64_t trial = 0; trial < max_trials; ++trial) {
    outcome.trials_run = trial + 1;
    TrialSetup setup = detail::random_trial(seed, trial);
    TrialArtifacts art;
    try {
      art = build_trial(setup);
    } catch (const std::domain_error&) {
      continue;  // degenerate draw (e.g. k out of range after LCC extraction)
    }
    if (art.partition.community_count() < 2) continue;
    const std::size_t n = art.graph.vertex_count();
    auto h2 = [&](VertexId v, VertexId t) { return alp_h(art.alp, v, t, art.cfg); };
    Rng target_rng(seed ^ (trial * 0x2545f4914f6cdd1dull));
    const std::size_t target_count = std::min<std::size_t>(n, 16);
    for (std::size_t k = 0; k < target_count; ++k) {
      const VertexId t = n <= 16 ? static_cast<VertexId>(k)
                                 : static_cast<VertexId>(target_rng.next_below(n));
      std::vector<ViolationReport> reports = check_consistency(art.graph, h2, t);
      if (!reports.empty()) {
        reports.front().trial = setup.serialize();
        outcome.witness = std::move(reports.front());
        return outcome;
      }
    }
  }
  return outcome;
}

/// Rebuilds a consistency witness from its trial line and re-evaluates the
/// violated inequality. Returns the freshly computed report when the
/// violation still reproduces.
inline std::optional<ViolationReport> replay_consistency_witness(const ViolationReport& r) {
  const TrialSetup setup = TrialSetup::parse(r.trial);
  const TrialArtifacts art = build_trial(setup);
  const double hu = alp_h(art.alp, r.u, r.t, art.cfg);
  const double hv = alp_h(art.alp, r.v, r.t, art.cfg);
  const double w = art.graph.arc_weight(r.u, r.v);
  const double rhs = w + hv;
  if (hu > rhs + violation_eps(rhs)) {
    ViolationReport again = r;
    again.edge_weight = w;
    again.lhs = hu;
    again.rhs = rhs;
    return again;
  }
  return std::nullopt;
}

struct DominanceWitnesses {
  std::vector<ViolationReport> l_over_dl;  // same landmark set
  std::vector<ViolationReport> dl_over_l;  // differing landmark sets
  std::uint64_t trials_run = 0;
};

/// Searches for both directions of strict non-dominance between the
/// single-landmark and dual-landmark bounds. Two deterministic path
/// configurations seed the search (one hand-checkable witness per
/// direction), followed by randomized trials until each direction holds a
/// few witnesses or the budget runs out.
inline DominanceWitnesses find_dominance_counterexamples(std::uint64_t trials,
                                                         std::uint64_t seed) {
  constexpr std::size_t kKeepPerDirection = 4;
  DominanceWitnesses out;

  auto scan_trial = [&out](TrialSetup setup) {
    TrialArtifacts art;
    try {
      art = build_trial(setup);
    } catch (const std::domain_error&) {
      return;
    }
    const std::size_t n = art.graph.vertex_count();
    if (n > 64) return;
    const AltIndex alt_same = build_alt_index(art.graph, art.landmarks);
    if (setup.alt_landmarks.empty()) {
      // default differing set: one mid-range vertex outside the dual set
      VertexId pick = static_cast<VertexId>(n / 2);
      for (std::size_t tries = 0; tries < n; ++tries) {
        if (std::find(art.landmarks.begin(), art.landmarks.end(), pick) ==
            art.landmarks.end()) {
          break;
        }
        pick = static_cast<VertexId>((pick + 1) % n);
      }
      setup.alt_landmarks = {pick};
    }
    const AltIndex alt_diff = build_alt_index(art.graph, setup.alt_landmarks);
    const std::string trial_line = setup.serialize();
    for (VertexId v = 0; v < n; ++v) {
      for (VertexId t = 0; t < n; ++t) {
        if (v == t) continue;
        const double dl = alp_h(art.alp, v, t, art.cfg);
        if (out.l_over_dl.size() < kKeepPerDirection) {
          const double l_same = alt_h(alt_same, v, t);
          if (l_same > dl + violation_eps(dl)) {
            ViolationReport r;
            r.kind = ViolationKind::dominance_l_over_dl;
            r.trial = trial_line;
            r.v = v;
            r.t = t;
            r.lhs = l_same;
            r.rhs = dl;
            out.l_over_dl.push_back(std::move(r));
          }
        }
        if (out.dl_over_l.size() < kKeepPerDirection) {
          const double l_diff = alt_h(alt_diff, v, t);
          if (dl > l_diff + violation_eps(l_diff)) {
            ViolationReport r;
            r.kind = ViolationKind::dominance_dl_over_l;
            r.trial = trial_line;
            r.v = v;
            r.t = t;
            r.lhs = dl;
            r.rhs = l_diff;
            out.dl_over_l.push_back(std::move(r));
          }
        }
        if (out.l_over_dl.size() >= kKeepPerDirection &&
            out.dl_over_l.size() >= kKeepPerDirection) {
          return;
        }
      }
    }
  };

  // Hand-checkable five-vertex path: labels give sides a=1, b=4, c=1 at
  // (v=1, t=3), so the dual bound reaches the true distance 2 while a lone
  // mid-path landmark estimates 0.
  TrialSetup five_path;
  five_path.spec = GeneratorSpec::parse("grid:rows=1,cols=5");
  five_path.partition_kind = PartitionKind::manual;
  five_path.manual_assignment = {0, 0, 0, 1, 1};
  five_path.manual_landmarks = {0, 4};
  five_path.alt_landmarks = {2};
  out.trials_run++;
  scan_trial(five_path);

  // Four-vertex path where the full table sees both landmarks per query but
  // the distributed labels see only one side each.
  TrialSetup four_path;
  four_path.spec = GeneratorSpec::parse("grid:rows=1,cols=4");
  four_path.partition_kind = PartitionKind::manual;
  four_path.manual_assignment = {0, 0, 1, 1};
  four_path.manual_landmarks = {1, 2};
  out.trials_run++;
  scan_trial(four_path);

  for (std::uint64_t trial = 0; trial + 2 < trials; ++trial) {
    if (out.l_over_dl.size() >= kKeepPerDirection &&
        out.dl_over_l.size() >= kKeepPerDirection) {
      break;
    }
    out.trials_run++;
    TrialSetup setup = detail::random_trial(seed ^ 0xdeadbeefcafef00dull, trial);
    scan_trial(setup);
  }
  return out;
}

/// Re-evaluates a dominance witness from its trial line.
inline bool replay_dominance_witness(const ViolationReport& r) {
  const TrialSetup setup = TrialSetup::parse(r.trial);
  TrialArtifacts art = build_trial(setup);
  const double dl = alp_h(art.alp, r.v, r.t, art.cfg);
  if (r.kind == ViolationKind::dominance_l_over_dl) {
    const AltIndex alt_same = build_alt_index(art.graph, art.landmarks);
    const double l = alt_h(alt_same, r.v, r.t);
    return l > dl + violation_eps(dl);
  }
  const AltIndex alt_diff = build_alt_index(art.graph, setup.alt_landmarks);
  const double l = alt_h(alt_diff, r.v, r.t);
  return dl > l + violation_eps(l);
}

}  // namespace alp
