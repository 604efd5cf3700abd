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

// Command-line front end: graph generation and ingestion, index
// preprocessing, point-to-point queries, the ALT-vs-ALP benchmark, and the
// verification suite. All randomized behavior is seed-driven; repeated runs
// with equal seeds write byte-identical artifacts (time columns excepted
// unless timing is disabled).

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "alp/bench.hpp"
#include "alp/embedding.hpp"
#include "alp/generate.hpp"
#include "alp/heuristics.hpp"
#include "alp/io.hpp"
#include "alp/partition.hpp"
#include "alp/search.hpp"
#include "alp/sweep.hpp"
#include "alp/verify.hpp"

namespace {

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::string mode = "exact";
  std::string ptolemy = "on";
  bool keep_directed = false;

  alp::LabelMode label_mode() const {
    return mode == "induced" ? alp::LabelMode::induced : alp::LabelMode::exact;
  }
  alp::HeuristicConfig heuristic_config() const {
    return {.use_ptolemy = ptolemy != "off", .clamp_nonnegative = true};
  }
  alp::DimacsOptions dimacs_options() const { return {.symmetrize = !keep_directed}; }
};

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  alp::Rng rng(master ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
  return rng.next_u64() >> 1;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << text;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string spec;
  std::string out;
  std::string format = "cache";
  std::uint64_t graph_seed = 0;
  bool have_graph_seed = false;
};

int cmd_generate(const GlobalOptions& global, const GenerateArgs& args) {
  const std::uint64_t seed = args.have_graph_seed ? args.graph_seed : derive_seed(global.seed, 0);
  const alp::Graph g = alp::generate(alp::GeneratorSpec::parse(args.spec), seed);
  if (args.format == "cache") {
    alp::write_graph_cache_file(args.out, g);
  } else if (args.format == "dimacs") {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for write: " + args.out);
    alp::write_dimacs(out, g);
  } else {
    throw std::invalid_argument("unknown --format: " + args.format);
  }
  std::cerr << "generated " << g.vertex_count() << " vertices, "
            << g.undirected_edge_count() << " edges -> " << args.out << "\n";
  return 0;
}

// -------------------------------------------------------------- preprocess

struct PreprocessArgs {
  std::string graph_file;
  std::string spec;
  std::uint64_t graph_seed = 0;
  bool have_graph_seed = false;
  std::string out_prefix;
  std::uint32_t partitions = 0;  // 0: Louvain; > 0: fixed-count BFS regions
  std::uint64_t partition_seed = 0;
  bool have_partition_seed = false;
  double min_gain = 1e-7;
  bool unweighted_partition = false;
  std::string landmark_method = "random";
  std::uint64_t landmark_seed = 0;
  bool have_landmark_seed = false;
  unsigned threads = alp::default_thread_count();
};

alp::Graph load_or_generate(const GlobalOptions& global, const std::string& graph_file,
                            const std::string& spec, bool have_graph_seed,
                            std::uint64_t graph_seed) {
  if (!graph_file.empty()) return alp::load_graph_file(graph_file, global.dimacs_options());
  if (spec.empty()) throw std::invalid_argument("need --graph or --spec");
  const std::uint64_t seed = have_graph_seed ? graph_seed : derive_seed(global.seed, 0);
  return alp::generate(alp::GeneratorSpec::parse(spec), seed);
}

int cmd_preprocess(const GlobalOptions& global, const PreprocessArgs& args) {
  const alp::Graph g = load_or_generate(global, args.graph_file, args.spec,
                                        args.have_graph_seed, args.graph_seed);
  if (!g.is_symmetric()) {
    throw std::domain_error(
        "preprocessing requires a symmetric graph; re-ingest without --keep-directed");
  }
  const std::uint64_t pseed =
      args.have_partition_seed ? args.partition_seed : derive_seed(global.seed, 1);
  const std::uint64_t lseed =
      args.have_landmark_seed ? args.landmark_seed : derive_seed(global.seed, 2);

  const alp::Graph* partition_input = &g;
  alp::Graph unweighted;
  if (args.unweighted_partition) {
    std::vector<alp::WeightedArc> arcs;
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
      for (alp::VertexId v : g.neighbors(static_cast<alp::VertexId>(u))) {
        arcs.push_back({static_cast<alp::VertexId>(u), v, 1.0});
      }
    }
    unweighted = alp::Graph::from_arcs(g.vertex_count(), std::move(arcs), false);
    partition_input = &unweighted;
  }
  const alp::Partition partition =
      args.partitions > 0
          ? alp::bfs_partition(*partition_input, args.partitions, pseed)
          : alp::louvain(*partition_input, {.seed = pseed, .min_gain = args.min_gain});

  const alp::LandmarkMethod method = args.landmark_method == "farthest"
                                         ? alp::LandmarkMethod::farthest
                                         : alp::LandmarkMethod::random;
  const std::vector<alp::VertexId> landmarks =
      alp::select_landmarks(g, partition, method, lseed);

  alp::AlpBuildDiagnostics diag;
  const alp::AlpIndex alp_index = alp::build_alp_index(g, partition, landmarks,
                                                       global.label_mode(), args.threads, &diag);
  const alp::AltIndex alt_index = alp::build_alt_index(g, landmarks, args.threads);

  const std::string prefix = args.out_prefix;
  alp::write_graph_cache_file(prefix + ".alpg", g);
  alp::write_index_file(prefix + ".alt", alt_index);
  alp::write_index_file(prefix + ".alp", alp_index);
  {
    std::ofstream out(prefix + ".part", std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for write: " + prefix + ".part");
    alp::write_partition(out, partition);
  }

  char buf[512];
  std::string stats;
  auto add = [&stats, &buf](const char* fmt, auto... xs) {
    std::snprintf(buf, sizeof(buf), fmt, xs...);
    stats += buf;
  };
  add("vertices=%llu\n", (unsigned long long)g.vertex_count());
  add("arcs=%llu\n", (unsigned long long)g.arc_count());
  add("graph_fingerprint=%llx\n", (unsigned long long)g.fingerprint());
  add("communities=%llu\n", (unsigned long long)partition.community_count());
  add("modularity=%.12g\n", alp::modularity(g, partition));
  add("landmarks=%llu\n", (unsigned long long)landmarks.size());
  add("mode=%s\n", alp::label_mode_name(alp_index.mode));
  add("alt_entries=%llu\n", (unsigned long long)alt_index.entry_count());
  add("alt_bytes=%llu\n", (unsigned long long)alp::alt_index_bytes(alt_index));
  add("alp_entries=%llu\n", (unsigned long long)alp_index.entry_count());
  add("alp_bytes=%llu\n", (unsigned long long)alp::alp_index_bytes(alp_index));
  add("alp_unreachable_labels=%llu\n", (unsigned long long)diag.unreachable_labels);
  write_text_file(prefix + ".stats", stats);
  std::cout << stats;
  return 0;
}

// ------------------------------------------------------------------- query

struct QueryArgs {
  std::string graph_file;
  std::string alt_file;
  std::string alp_file;
  std::string engine = "dijkstra";
  std::uint64_t s = 0;
  std::uint64_t t = 0;
};

int cmd_query(const GlobalOptions& global, const QueryArgs& args) {
  const alp::Graph g = alp::load_graph_file(args.graph_file, global.dimacs_options());
  if (args.s >= g.vertex_count() || args.t >= g.vertex_count()) {
    throw std::invalid_argument("query endpoints out of range");
  }
  const auto s = static_cast<alp::VertexId>(args.s);
  const auto t = static_cast<alp::VertexId>(args.t);

  alp::QueryResult result;
  if (args.engine == "dijkstra") {
    result = alp::dijkstra_query(g, s, t);
  } else if (args.engine == "alt") {
    if (args.alt_file.empty()) throw std::invalid_argument("engine=alt needs --alt");
    const alp::AltIndex index = alp::read_alt_index_file(args.alt_file);
    if (index.graph_fingerprint != g.fingerprint()) {
      throw std::runtime_error("ALT index was built for a different graph (fingerprint mismatch)");
    }
    result = alp::astar_query(g, s, t, alp::AltHeuristic{&index, t});
  } else if (args.engine == "alp") {
    if (args.alp_file.empty()) throw std::invalid_argument("engine=alp needs --alp");
    const alp::AlpIndex index = alp::read_alp_index_file(args.alp_file);
    if (index.graph_fingerprint != g.fingerprint()) {
      throw std::runtime_error("ALP index was built for a different graph (fingerprint mismatch)");
    }
    result = alp::astar_query(g, s, t, alp::AlpHeuristic{&index, t, global.heuristic_config()});
  } else {
    throw std::invalid_argument("unknown --engine: " + args.engine);
  }

  char buf[64];
  if (result.reachable()) {
    alp::format_weight(buf, sizeof(buf), result.distance);
    std::cout << "distance " << buf << "\npath";
    for (alp::VertexId v : result.path) std::cout << ' ' << v;
    std::cout << '\n';
  } else {
    std::cout << "distance unreachable\n";
  }
  std::cout << "expanded " << result.stats.expanded << "\nreopened " << result.stats.reopened
            << "\nheap_pushes " << result.stats.heap_pushes << "\nheuristic_evals "
            << result.stats.heuristic_evals << '\n';
  std::cerr << "time_us "
            << std::chrono::duration<double, std::micro>(result.stats.wall_time).count()
            << '\n';
  return result.reachable() ? 0 : 2;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
  std::string graph_file;
  std::string alt_file;
  std::string alp_file;
  std::uint32_t queries = 1000;
  std::string buckets;
  std::uint64_t workload_seed = 0;
  bool have_workload_seed = false;
  bool no_timing = false;
  bool weighted_buckets = false;
  unsigned threads = 1;
  std::string csv_out = "bench.csv";
  std::string plot_out;
};

int cmd_bench(const GlobalOptions& global, const BenchArgs& args) {
  const alp::Graph g = alp::load_graph_file(args.graph_file, global.dimacs_options());
  const alp::AltIndex alt = alp::read_alt_index_file(args.alt_file);
  const alp::AlpIndex alp_index = alp::read_alp_index_file(args.alp_file);
  if (alt.graph_fingerprint != g.fingerprint() ||
      alp_index.graph_fingerprint != g.fingerprint()) {
    throw std::runtime_error("index/graph fingerprint mismatch");
  }

  alp::BenchConfig cfg;
  cfg.query_count = args.queries;
  cfg.workload_seed =
      args.have_workload_seed ? args.workload_seed : derive_seed(global.seed, 3);
  cfg.timing = !args.no_timing;
  cfg.weighted_buckets = args.weighted_buckets;
  cfg.threads = args.threads;
  cfg.heuristic = global.heuristic_config();
  if (!args.buckets.empty()) {
    cfg.bucket_edges.clear();
    std::string_view rest = args.buckets;
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      std::uint64_t edge = 0;
      if (!alp::detail::parse_u64(rest.substr(0, comma), edge)) {
        throw std::invalid_argument("bad --buckets list");
      }
      cfg.bucket_edges.push_back(static_cast<std::uint32_t>(edge));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }

  const alp::BenchResult result = alp::run_bench(g, alt, alp_index, cfg);
  {
    std::ofstream out(args.csv_out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for write: " + args.csv_out);
    alp::write_bench_csv(out, result.rows);
  }
  if (!args.plot_out.empty()) {
    std::ofstream out(args.plot_out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for write: " + args.plot_out);
    alp::write_bench_gnuplot(out, args.csv_out);
  }
  std::cerr << "bench: " << result.pairs_sampled << " pairs -> " << args.csv_out << "\n";
  return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::uint64_t trials = 10000;
  std::size_t graphs_per_family = 10;
  std::string report_out;
  unsigned threads = alp::default_thread_count();
};

int cmd_verify(const GlobalOptions& global, const VerifyArgs& args) {
  std::string report;
  std::string summary;
  char buf[512];
  auto note = [&summary, &buf](const char* fmt, auto... xs) {
    std::snprintf(buf, sizeof(buf), fmt, xs...);
    summary += buf;
  };

  alp::SweepConfig sweep_cfg;
  sweep_cfg.seed = global.seed;
  sweep_cfg.graphs_per_family = args.graphs_per_family;
  sweep_cfg.threads = args.threads;
  const alp::SweepResult sweep = alp::run_verification_sweep(sweep_cfg);

  std::uint64_t exact_failures = 0;
  std::string excluded;
  for (const auto& f : sweep.families) {
    note("admissibility family=%s graphs=%llu pairs=%llu alt=%llu alp_exact=%llu "
         "alp_exact_ptolemy=%llu induced_rate=%llu/%llu\n",
         alp::family_name(f.family), (unsigned long long)f.graphs,
         (unsigned long long)f.pairs, (unsigned long long)f.alt_admissibility_violations,
         (unsigned long long)f.alp_exact_violations,
         (unsigned long long)f.alp_exact_ptolemy_violations,
         (unsigned long long)f.alp_induced_violations,
         (unsigned long long)f.alp_induced_pairs);
    exact_failures += f.alt_admissibility_violations + f.alp_exact_violations;
    if (f.alp_exact_ptolemy_violations > 0) {
      // product bound overestimated on this family: exclude it there and
      // re-judge on the always-valid triangle set
      if (!excluded.empty()) excluded += ',';
      excluded += alp::family_name(f.family);
      if (f.alp_exact_violations == 0) {
        note("ptolemy_excluded family=%s violations=%llu recheck_without=0\n",
             alp::family_name(f.family), (unsigned long long)f.alp_exact_ptolemy_violations);
      } else {
        ++exact_failures;
      }
    }
    for (const auto& r : f.samples) report += r.to_line() + "\n";
  }
  note("ptolemy_excluded_families=%s\n", excluded.empty() ? "none" : excluded.c_str());
  note("query_equivalence mismatches=%llu\n",
       (unsigned long long)sweep.distance_mismatches());
  note("alp_queries_with_reopens=%llu\n", [&] {
    unsigned long long s = 0;
    for (const auto& f : sweep.families) s += f.alp_queries_with_reopens;
    return s;
  }());

  const alp::ConsistencySearchOutcome consistency =
      alp::find_consistency_witness(args.trials, global.seed);
  if (consistency.witness) {
    note("consistency witness_found=1 trials=%llu\n",
         (unsigned long long)consistency.trials_run);
    report += consistency.witness->to_line() + "\n";
    const auto replay = alp::replay_consistency_witness(*consistency.witness);
    note("consistency witness_replays=%d\n", replay ? 1 : 0);
  } else {
    note("consistency witness_found=0 trials=%llu (inconclusive, not a refutation)\n",
         (unsigned long long)consistency.trials_run);
  }

  const alp::DominanceWitnesses dom =
      alp::find_dominance_counterexamples(args.trials, global.seed);
  note("dominance l_over_dl_witnesses=%llu dl_over_l_witnesses=%llu trials=%llu\n",
       (unsigned long long)dom.l_over_dl.size(), (unsigned long long)dom.dl_over_l.size(),
       (unsigned long long)dom.trials_run);
  for (const auto& r : dom.l_over_dl) report += r.to_line() + "\n";
  for (const auto& r : dom.dl_over_l) report += r.to_line() + "\n";

  note("exact_admissibility_failures=%llu\n", (unsigned long long)exact_failures);
  std::cout << summary;
  if (!args.report_out.empty()) write_text_file(args.report_out, summary + report);
  return exact_failures > 0 ? 1 : 0;
}

// ------------------------------------------------------------------- stats

struct StatsArgs {
  std::string index_file;
  std::string graph_file;
};

int cmd_stats(const GlobalOptions& global, const StatsArgs& args) {
  if (!args.graph_file.empty()) {
    const alp::Graph g = alp::load_graph_file(args.graph_file, global.dimacs_options());
    std::cout << "vertices " << g.vertex_count() << "\narcs " << g.arc_count()
              << "\nsymmetric " << (g.is_symmetric() ? 1 : 0) << "\nfingerprint " << std::hex
              << g.fingerprint() << std::dec << '\n';
  }
  if (!args.index_file.empty()) {
    std::ifstream in(args.index_file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open index file: " + args.index_file);
    char magic[4];
    in.read(magic, 4);
    in.clear();
    in.seekg(0);
    if (std::memcmp(magic, "ALTX", 4) == 0) {
      const alp::AltIndex index = alp::read_alt_index(in);
      std::cout << "kind alt\nlandmarks " << index.landmark_count() << "\nvertices "
                << index.vertex_count << "\nentries " << index.entry_count() << "\nbytes "
                << alp::alt_index_bytes(index) << '\n';
    } else if (std::memcmp(magic, "ALPX", 4) == 0) {
      const alp::AlpIndex index = alp::read_alp_index(in);
      std::cout << "kind alp\nmode " << alp::label_mode_name(index.mode) << "\nlandmarks "
                << index.landmark_count() << "\nvertices " << index.vertex_count()
                << "\nentries " << index.entry_count() << "\nbytes "
                << alp::alp_index_bytes(index) << '\n';
    } else {
      throw std::runtime_error("unrecognized index file magic");
    }
  }
  if (args.graph_file.empty() && args.index_file.empty()) {
    throw std::invalid_argument("stats: need --graph or --index");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"landmark-based shortest-path preprocessing and query toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "master seed; unset per-stage seeds derive from it");
  app.add_option("--mode", global.mode, "label mode: exact|induced")
      ->check(CLI::IsMember({"exact", "induced"}));
  app.add_option("--ptolemy", global.ptolemy, "product bound: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_flag("--keep-directed", global.keep_directed,
               "store DIMACS arcs as-is instead of symmetrizing");

  GenerateArgs gen;
  auto* c_gen = app.add_subcommand("generate", "write a synthetic graph");
  c_gen->add_option("--spec", gen.spec, "family:key=value,... e.g. grid:rows=8,cols=8")
      ->required();
  c_gen->add_option("-o,--out", gen.out)->required();
  c_gen->add_option("--format", gen.format, "cache|dimacs");
  c_gen->add_option("--graph-seed", gen.graph_seed);
  c_gen->callback([&] { gen.have_graph_seed = c_gen->count("--graph-seed") > 0; });

  PreprocessArgs pre;
  auto* c_pre = app.add_subcommand("preprocess", "partition, select landmarks, build indices");
  c_pre->add_option("--graph", pre.graph_file, "DIMACS .gr or ALPG cache file");
  c_pre->add_option("--spec", pre.spec, "generate instead of loading");
  c_pre->add_option("--graph-seed", pre.graph_seed);
  c_pre->add_option("-o,--out", pre.out_prefix, "output path prefix")->required();
  c_pre->add_option("--partitions", pre.partitions,
                    "fixed community count via BFS regions (0 = Louvain)");
  c_pre->add_option("--partition-seed", pre.partition_seed);
  c_pre->add_option("--min-gain", pre.min_gain, "Louvain stopping threshold");
  c_pre->add_flag("--unweighted-partition", pre.unweighted_partition,
                  "partition on hop counts instead of weights");
  c_pre->add_option("--landmark-method", pre.landmark_method)
      ->check(CLI::IsMember({"random", "farthest"}));
  c_pre->add_option("--landmark-seed", pre.landmark_seed);
  c_pre->add_option("--threads", pre.threads);
  c_pre->callback([&] {
    pre.have_graph_seed = c_pre->count("--graph-seed") > 0;
    pre.have_partition_seed = c_pre->count("--partition-seed") > 0;
    pre.have_landmark_seed = c_pre->count("--landmark-seed") > 0;
  });

  QueryArgs query;
  auto* c_query = app.add_subcommand("query", "point-to-point shortest path");
  c_query->add_option("--graph", query.graph_file)->required();
  c_query->add_option("--alt", query.alt_file);
  c_query->add_option("--alp", query.alp_file);
  c_query->add_option("--engine", query.engine)
      ->check(CLI::IsMember({"dijkstra", "alt", "alp"}));
  c_query->add_option("-s,--source", query.s)->required();
  c_query->add_option("-t,--target", query.t)->required();

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "bucketed engine comparison, CSV + plot script");
  c_bench->add_option("--graph", bench.graph_file)->required();
  c_bench->add_option("--alt", bench.alt_file)->required();
  c_bench->add_option("--alp", bench.alp_file)->required();
  c_bench->add_option("--queries", bench.queries);
  c_bench->add_option("--buckets", bench.buckets, "comma-separated bucket edges");
  c_bench->add_option("--workload-seed", bench.workload_seed);
  c_bench->add_flag("--no-timing", bench.no_timing,
                    "zero the time columns so equal seeds emit equal bytes");
  c_bench->add_flag("--weighted-buckets", bench.weighted_buckets);
  c_bench->add_option("--threads", bench.threads);
  c_bench->add_option("--csv", bench.csv_out);
  c_bench->add_option("--plot", bench.plot_out);
  c_bench->callback([&] { bench.have_workload_seed = c_bench->count("--workload-seed") > 0; });

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "admissibility, consistency and dominance audits");
  c_verify->add_option("--trials", verify.trials, "witness search budget");
  c_verify->add_option("--graphs-per-family", verify.graphs_per_family);
  c_verify->add_option("--report", verify.report_out, "write full witness records here");
  c_verify->add_option("--threads", verify.threads);

  StatsArgs stats;
  auto* c_stats = app.add_subcommand("stats", "inspect a graph or index file");
  c_stats->add_option("--index", stats.index_file);
  c_stats->add_option("--graph", stats.graph_file);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_gen) return cmd_generate(global, gen);
    if (*c_pre) return cmd_preprocess(global, pre);
    if (*c_query) return cmd_query(global, query);
    if (*c_bench) return cmd_bench(global, bench);
    if (*c_verify) return cmd_verify(global, verify);
    if (*c_stats) return cmd_stats(global, stats);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
