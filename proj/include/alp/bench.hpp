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

#include <ostream>

#include "alp/heuristics.hpp"
#include "alp/parallel.hpp"
#include "alp/search.hpp"

namespace alp {

enum class Engine { dijkstra = 0, alt = 1, alp = 2 };

inline const char* engine_name(Engine e) {
  switch (e) {
    case Engine::dijkstra: return "dijkstra";
    case Engine::alt: return "alt";
    case Engine::alp: return "alp";
  }
  return "?";
}

struct BenchConfig {
  std::uint32_t query_count = 1000;
  // bucket i covers [edges[i], edges[i+1]) except the last, which is closed
  std::vector<std::uint32_t> bucket_edges = {1, 51, 101, 151, 201, 251, 301,
                                             351, 401, 451, 501};
  std::uint64_t workload_seed = 0;
  bool weighted_buckets = false;  // bucket by weighted distance instead of hops
  bool timing = true;             // false pins the time columns to zero
  unsigned threads = 1;
  HeuristicConfig heuristic;
};

struct BenchRow {
  Engine engine = Engine::dijkstra;
  std::uint32_t bucket_lo = 0;
  std::uint32_t bucket_hi = 0;
  std::uint64_t n = 0;
  double mean_us = 0;
  double median_us = 0;
  double mean_expanded = 0;
  double mean_reopened = 0;
  std::uint64_t index_entries = 0;
  std::uint64_t index_bytes = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;  // sorted by engine, then bucket
  std::uint64_t pairs_sampled = 0;
};

namespace detail {

struct SampledPair {
  VertexId s, t;
};

// Picks s uniformly, then walks a bounded ring from it and draws t among the
// vertices whose distance lands in the bucket. Uniform (s,t) sampling almost
// never yields short paths on large graphs.
inline std::vector<SampledPair> sample_bucket_pairs(const Graph& g, std::uint32_t lo,
                                                    std::uint32_t hi, bool last_bucket,
                                                    std::size_t want, bool weighted,
                                                    Rng& rng) {
  std::vector<SampledPair> pairs;
  const std::size_t n = g.vertex_count();
  if (n == 0 || want == 0) return pairs;
  std::vector<VertexId> candidates;
  const std::size_t max_attempts = 200 * want;
  for (std::size_t attempt = 0; attempt < max_attempts && pairs.size() < want; ++attempt) {
    const VertexId s = static_cast<VertexId>(rng.next_below(n));
    candidates.clear();
    if (weighted) {
      const std::vector<double> dist = sssp_bounded(g, s, double(hi));
      for (std::size_t v = 0; v < n; ++v) {
        if (dist[v] == kInf) continue;
        const bool below_hi = last_bucket ? dist[v] <= hi : dist[v] < hi;
        if (dist[v] >= lo && below_hi) candidates.push_back(static_cast<VertexId>(v));
      }
    } else {
      const std::vector<std::uint32_t> hops = bfs_hops(g, s, hi);
      for (std::size_t v = 0; v < n; ++v) {
        const std::uint32_t h = hops[v];
        if (h == std::numeric_limits<std::uint32_t>::max()) continue;
        const bool below_hi = last_bucket ? h <= hi : h < hi;
        if (h >= lo && below_hi) candidates.push_back(static_cast<VertexId>(v));
      }
    }
    if (candidates.empty()) continue;
    pairs.push_back({s, candidates[rng.next_below(candidates.size())]});
  }
  return pairs;
}

struct PairOutcome {
  double distance = 0;
  double us = 0;
  std::uint64_t expanded = 0;
  std::uint64_t reopened = 0;
};

}  // namespace detail

/// Runs the three engines over an identical seeded workload and aggregates
/// per (engine, path-length bucket). All engines must report the same
/// distance on every pair; a mismatch is a hard error. Counter columns are
/// deterministic for a fixed seed; the time columns are not unless timing is
/// disabled.
inline BenchResult run_bench(const Graph& g, const AltIndex& alt, const AlpIndex& alp,
                             const BenchConfig& cfg) {
  if (cfg.query_count < 1) throw std::invalid_argument("bench: query_count must be >= 1");
  if (cfg.bucket_edges.size() < 2) throw std::invalid_argument("bench: need >= 2 bucket edges");
  for (std::size_t i = 0; i + 1 < cfg.bucket_edges.size(); ++i) {
    if (cfg.bucket_edges[i] >= cfg.bucket_edges[i + 1]) {
      throw std::invalid_argument("bench: bucket edges must be strictly increasing");
    }
  }
  const std::size_t buckets = cfg.bucket_edges.size() - 1;
  Rng rng(cfg.workload_seed ^ 0xb5297a4d3f84d5b5ull);

  // spread the workload across buckets, earlier buckets get the remainder
  std::vector<std::size_t> quota(buckets, cfg.query_count / buckets);
  for (std::size_t b = 0; b < cfg.query_count % buckets; ++b) ++quota[b];

  std::vector<std::vector<detail::SampledPair>> workload(buckets);
  BenchResult result;
  for (std::size_t b = 0; b < buckets; ++b) {
    workload[b] = detail::sample_bucket_pairs(g, cfg.bucket_edges[b], cfg.bucket_edges[b + 1],
                                              b + 1 == buckets, quota[b],
                                              cfg.weighted_buckets, rng);
    result.pairs_sampled += workload[b].size();
  }

  constexpr Engine kEngines[] = {Engine::dijkstra, Engine::alt, Engine::alp};
  std::vector<std::vector<std::vector<detail::PairOutcome>>> outcomes(
      3, std::vector<std::vector<detail::PairOutcome>>(buckets));
  for (std::size_t e = 0; e < 3; ++e) {
    for (std::size_t b = 0; b < buckets; ++b) outcomes[e][b].resize(workload[b].size());
  }

  for (std::size_t b = 0; b < buckets; ++b) {
    const auto& pairs = workload[b];
    parallel_for(pairs.size(), cfg.threads, [&](std::size_t i) {
      const auto [s, t] = pairs[i];
      for (std::size_t e = 0; e < 3; ++e) {
        QueryResult r;
        switch (kEngines[e]) {
          case Engine::dijkstra: r = dijkstra_query(g, s, t); break;
          case Engine::alt: r = astar_query(g, s, t, AltHeuristic{&alt, t}); break;
          case Engine::alp:
            r = astar_query(g, s, t, AlpHeuristic{&alp, t, cfg.heuristic});
            break;
        }
        auto& slot = outcomes[e][b][i];
        slot.distance = r.distance;
        slot.us = std::chrono::duration<double, std::micro>(r.stats.wall_time).count();
        slot.expanded = r.stats.expanded;
        slot.reopened = r.stats.reopened;
      }
      const double want = outcomes[0][b][i].distance;
      for (std::size_t e = 1; e < 3; ++e) {
        const double got = outcomes[e][b][i].distance;
        if (std::abs(got - want) > 1e-9 * std::max(1.0, want)) {
          throw std::logic_error("bench: engine distance mismatch");
        }
      }
    });
  }

  for (std::size_t e = 0; e < 3; ++e) {
    for (std::size_t b = 0; b < buckets; ++b) {
      BenchRow row;
      row.engine = kEngines[e];
      row.bucket_lo = cfg.bucket_edges[b];
      row.bucket_hi = cfg.bucket_edges[b + 1];
      row.n = outcomes[e][b].size();
      switch (row.engine) {
        case Engine::dijkstra: break;
        case Engine::alt:
          row.index_entries = alt.entry_count();
          row.index_bytes = alt_index_bytes(alt);
          break;
        case Engine::alp:
          row.index_entries = alp.entry_count();
          row.index_bytes = alp_index_bytes(alp);
          break;
      }
      if (row.n > 0) {
        std::vector<double> times;
        times.reserve(row.n);
        double us = 0, expanded = 0, reopened = 0;
        for (const auto& o : outcomes[e][b]) {
          us += o.us;
          expanded += double(o.expanded);
          reopened += double(o.reopened);
          times.push_back(o.us);
        }
        std::sort(times.begin(), times.end());
        const double median = times.size() % 2 == 1
                                  ? times[times.size() / 2]
                                  : (times[times.size() / 2 - 1] + times[times.size() / 2]) / 2;
        row.mean_us = cfg.timing ? us / double(row.n) : 0.0;
        row.median_us = cfg.timing ? median : 0.0;
        row.mean_expanded = expanded / double(row.n);
        row.mean_reopened = reopened / double(row.n);
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

inline constexpr const char* kBenchCsvHeader =
    "engine,bucket_lo,bucket_hi,n,mean_us,median_us,mean_expanded,mean_reopened,"
    "index_entries,index_bytes";

/// Fixed column order and numeric formats so equal runs emit equal bytes.
inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchCsvHeader << '\n';
  char buf[256];
  for (const BenchRow& row : rows) {
    if (row.n > 0) {
      std::snprintf(buf, sizeof(buf),
                    "%s,%u,%u,%llu,%.3f,%.3f,%.2f,%.4f,%llu,%llu\n",
                    engine_name(row.engine), row.bucket_lo, row.bucket_hi,
                    static_cast<unsigned long long>(row.n), row.mean_us, row.median_us,
                    row.mean_expanded, row.mean_reopened,
                    static_cast<unsigned long long>(row.index_entries),
                    static_cast<unsigned long long>(row.index_bytes));
    } else {
      std::snprintf(buf, sizeof(buf), "%s,%u,%u,0,,,,,%llu,%llu\n", engine_name(row.engine),
                    row.bucket_lo, row.bucket_hi,
                    static_cast<unsigned long long>(row.index_entries),
                    static_cast<unsigned long long>(row.index_bytes));
    }
    out << buf;
  }
}

/// Mean query time per path-length bucket, one series per engine.
inline void write_bench_gnuplot(std::ostream& out, const std::string& csv_path) {
  out << "set datafile separator ','\n"
         "set terminal pngcairo size 960,640\n"
         "set output 'bench.png'\n"
         "set xlabel 'path length (bucket midpoint)'\n"
         "set ylabel 'mean query time (us)'\n"
         "set key top left\n"
         "csv = '"
      << csv_path
      << "'\n"
         "mid(lo,hi) = (lo + hi) / 2.0\n"
         "plot csv using (strcol(1) eq 'dijkstra' ? mid($2,$3) : NaN):5 with linespoints"
         " title 'Dijkstra', \\\n"
         "     csv using (strcol(1) eq 'alt' ? mid($2,$3) : NaN):5 with linespoints"
         " title 'ALT', \\\n"
         "     csv using (strcol(1) eq 'alp' ? mid($2,$3) : NaN):5 with linespoints"
         " title 'ALP'\n";
}

// --- per-evaluation cost scaling ---------------------------------------------

struct HeuristicCostPoint {
  std::uint32_t landmark_count = 0;
  double alt_ns_per_eval = 0;
  double alp_ns_per_eval = 0;
};

/// Times raw heuristic evaluations over a fixed pair sample for one index
/// pair. Repeats and keeps the fastest repetition to damp scheduling noise.
inline HeuristicCostPoint measure_heuristic_cost(const Graph& g, const AltIndex& alt,
                                                 const AlpIndex& alp,
                                                 std::size_t evals_target,
                                                 std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  Rng rng(seed ^ 0x6a09e667f3bcc909ull);
  std::vector<std::pair<VertexId, VertexId>> sample(4096);
  for (auto& [v, t] : sample) {
    v = static_cast<VertexId>(rng.next_below(n));
    t = static_cast<VertexId>(rng.next_below(n));
  }
  const std::size_t rounds = std::max<std::size_t>(1, evals_target / sample.size());
  const HeuristicConfig cfg;

  HeuristicCostPoint point;
  point.landmark_count = static_cast<std::uint32_t>(alt.landmark_count());
  double sink = 0;
  for (int variant = 0; variant < 2; ++variant) {
    double best_ns = kInf;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      for (std::size_t r = 0; r < rounds; ++r) {
        if (variant == 0) {
          for (const auto& [v, t] : sample) sink += alt_h(alt, v, t);
        } else {
          for (const auto& [v, t] : sample) sink += alp_h(alp, v, t, cfg);
        }
      }
      const double ns = std::chrono::duration<double, std::nano>(
                            std::chrono::steady_clock::now() - t0)
                            .count() /
                        double(rounds * sample.size());
      best_ns = std::min(best_ns, ns);
    }
    (variant == 0 ? point.alt_ns_per_eval : point.alp_ns_per_eval) = best_ns;
  }
  if (sink == 42.125) std::fputc(' ', stderr);  // keep the loops live
  return point;
}

}  // namespace alp
