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

// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits nonzero if any failed. Usage: alproute_acceptance <cli-binary> <workdir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "alp/bench.hpp"
#include "alp/sweep.hpp"
#include "alp/verify.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void criterion(int number, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", number, name,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing:" + path.string() + ">";
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string fmt(const char* f, auto... xs) {
  char buf[768];
  std::snprintf(buf, sizeof(buf), f, xs...);
  return buf;
}

// ---------------------------------------------------------------------------

void criteria_1_and_2() {
  const auto t0 = Clock::now();
  alp::SweepConfig cfg;
  cfg.seed = 20260809;
  cfg.graphs_per_family = 42;  // 5 families -> 210 graphs
  cfg.min_vertices = 10;
  cfg.max_vertices = 200;
  cfg.threads = 2;
  const alp::SweepResult sweep = alp::run_verification_sweep(cfg);
  const double elapsed = seconds_since(t0);

  const bool c1 = sweep.total_graphs() >= 200 && sweep.total_pairs() > 0 &&
                  sweep.distance_mismatches() == 0 && elapsed < 120.0;
  criterion(1, "oracle correctness of A*+ALT and A*+ALP",
            c1,
            fmt("graphs=%llu pairs=%llu distance_mismatches=%llu elapsed=%.1fs",
                (unsigned long long)sweep.total_graphs(),
                (unsigned long long)sweep.total_pairs(),
                (unsigned long long)sweep.distance_mismatches(), elapsed));

  bool exact_clean = true;
  bool rg_ptolemy_clean = true;
  std::string per_family;
  for (const auto& f : sweep.families) {
    exact_clean = exact_clean && f.alt_admissibility_violations == 0 &&
                  f.alp_exact_violations == 0;
    if (f.family == alp::GraphFamily::random_geometric &&
        f.alp_exact_ptolemy_violations > 0) {
      rg_ptolemy_clean = false;
    }
    per_family += fmt("\n    %-17s alt=%llu alp_off=%llu alp_ptolemy=%llu%s "
                      "induced_rate=%llu/%llu reopened_queries=%llu",
                      alp::family_name(f.family),
                      (unsigned long long)f.alt_admissibility_violations,
                      (unsigned long long)f.alp_exact_violations,
                      (unsigned long long)f.alp_exact_ptolemy_violations,
                      f.alp_exact_ptolemy_violations > 0 ? " [excluded via config]" : "",
                      (unsigned long long)f.alp_induced_violations,
                      (unsigned long long)f.alp_induced_pairs,
                      (unsigned long long)f.alp_queries_with_reopens);
  }
  criterion(2, "admissibility of the exact-label heuristics",
            exact_clean && rg_ptolemy_clean, per_family);
}

void criterion_3(const fs::path& workdir) {
  const alp::ConsistencySearchOutcome outcome = alp::find_consistency_witness(10000, 42);
  bool pass = outcome.witness.has_value();
  std::string detail =
      fmt("witness_found=%d trials=%llu", pass ? 1 : 0, (unsigned long long)outcome.trials_run);
  if (pass) {
    const fs::path file = workdir / "consistency_witness.txt";
    std::ofstream(file, std::ios::binary) << outcome.witness->to_line() << "\n";
    // replay from the persisted text, not the in-memory object
    std::string line = read_file(file);
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    alp::ViolationReport persisted = *outcome.witness;
    persisted.trial = line;  // trial fields parse straight off the record line
    const auto replayed = alp::replay_consistency_witness(persisted);
    const bool replay_ok = replayed.has_value() && replayed->lhs == outcome.witness->lhs &&
                           replayed->rhs == outcome.witness->rhs;
    pass = pass && replay_ok;
    detail += fmt(" replay_ok=%d lhs=%.6g rhs=%.6g file=%s", replay_ok ? 1 : 0,
                  outcome.witness->lhs, outcome.witness->rhs, file.c_str());
  }
  criterion(3, "inconsistency witness for exact-label ALP", pass, detail);
}

void criterion_4() {
  const alp::DominanceWitnesses dom = alp::find_dominance_counterexamples(10000, 7);
  bool five_path = false;
  for (const auto& r : dom.dl_over_l) {
    if (r.trial.find("rows=1,cols=5") != std::string::npos && r.v == 1 && r.t == 3 &&
        r.lhs == 2.0 && r.rhs == 0.0) {
      five_path = true;
    }
  }
  bool replays = !dom.l_over_dl.empty() && !dom.dl_over_l.empty();
  if (replays) {
    replays = alp::replay_dominance_witness(dom.l_over_dl.front()) &&
              alp::replay_dominance_witness(dom.dl_over_l.front());
  }
  const bool pass =
      !dom.l_over_dl.empty() && !dom.dl_over_l.empty() && five_path && replays;
  criterion(4, "mutual non-dominance witnesses",
            pass,
            fmt("l_over_dl=%zu dl_over_l=%zu five_path_witness=%d replays=%d trials=%llu",
                dom.l_over_dl.size(), dom.dl_over_l.size(), five_path ? 1 : 0,
                replays ? 1 : 0, (unsigned long long)dom.trials_run));
}

struct BigBuild {
  alp::Graph graph;
  alp::Partition partition;
  std::vector<alp::VertexId> landmarks;
  alp::AltIndex alt;
  alp::AlpIndex alp_index;
};

BigBuild criterion_5(const fs::path& workdir) {
  BigBuild big;
  big.graph = alp::generate("grid:rows=320,cols=320", 0);
  big.partition = alp::louvain(big.graph, {.seed = 1});
  big.landmarks =
      alp::select_landmarks(big.graph, big.partition, alp::LandmarkMethod::random, 2);
  big.alp_index = alp::build_alp_index(big.graph, big.partition, big.landmarks,
                                       alp::LabelMode::exact, 2);
  big.alt = alp::build_alt_index(big.graph, big.landmarks, 2);

  const std::size_t V = big.graph.vertex_count();
  const std::size_t L = big.landmarks.size();
  const bool entries_ok = big.alt.entry_count() == L * V &&
                          big.alp_index.entry_count() == V + L * L;

  alp::write_index_file(workdir / "big.alt", big.alt);
  alp::write_index_file(workdir / "big.alp", big.alp_index);
  const std::uintmax_t alt_bytes = fs::file_size(workdir / "big.alt");
  const std::uintmax_t alp_bytes = fs::file_size(workdir / "big.alp");
  const bool sizes_ok = alt_bytes == alp::alt_index_bytes(big.alt) &&
                        alp_bytes == alp::alp_index_bytes(big.alp_index);

  const bool regime = L >= 2 && double(L) < double(V) * (1.0 - 1.0 / double(L));
  const bool space_ok = !regime || alp_bytes < alt_bytes;

  criterion(5, "index space accounting",
            entries_ok && sizes_ok && regime && space_ok,
            fmt("V=%zu L=%zu alt_entries=%llu (=L*V) alp_entries=%llu (=V+L^2) "
                "alt_bytes=%llu alp_bytes=%llu regime=%d",
                V, L, (unsigned long long)big.alt.entry_count(),
                (unsigned long long)big.alp_index.entry_count(),
                (unsigned long long)alt_bytes, (unsigned long long)alp_bytes,
                regime ? 1 : 0));
  return big;
}

void criterion_6(const BigBuild& big, const fs::path& workdir) {
  // benchmark analog (desk scale): 10^3 queries over hop buckets 1..501
  const auto t0 = Clock::now();
  alp::BenchConfig cfg;
  cfg.query_count = 1000;
  cfg.workload_seed = 6;
  cfg.threads = 2;
  const alp::BenchResult bench = alp::run_bench(big.graph, big.alt, big.alp_index, cfg);
  const double bench_elapsed = seconds_since(t0);
  {
    std::ofstream csv(workdir / "bench.csv", std::ios::binary);
    alp::write_bench_csv(csv, bench.rows);
    std::ofstream plot(workdir / "bench.gnuplot", std::ios::binary);
    alp::write_bench_gnuplot(plot, (workdir / "bench.csv").string());
  }
  std::uint64_t populated = 0;
  for (const auto& row : bench.rows) {
    if (row.n > 0) ++populated;
  }
  const bool bench_ok = bench.pairs_sampled == 1000 && populated == bench.rows.size() &&
                        bench_elapsed < 600.0;

  // substituted cost property: per-eval time is O(1) for the distributed
  // labels and O(|L|) for the full table
  const alp::Graph scale_graph = alp::generate("grid:rows=224,cols=224", 0);
  double alt_ns[5] = {0}, alp_ns[5] = {0};
  const std::uint32_t ks[5] = {4, 8, 16, 32, 64};
  for (int i = 0; i < 5; ++i) {
    const alp::Partition p = alp::bfs_partition(scale_graph, ks[i], 3);
    const auto landmarks =
        alp::select_landmarks(scale_graph, p, alp::LandmarkMethod::random, 4);
    const alp::AltIndex alt = alp::build_alt_index(scale_graph, landmarks, 2);
    const alp::AlpIndex alp_index =
        alp::build_alp_index(scale_graph, p, landmarks, alp::LabelMode::exact, 2);
    const alp::HeuristicCostPoint point =
        alp::measure_heuristic_cost(scale_graph, alt, alp_index, 2000000, 11);
    alt_ns[i] = point.alt_ns_per_eval;
    alp_ns[i] = point.alp_ns_per_eval;
  }
  const double ratio16 = alt_ns[2] / alp_ns[2];
  const double alt_slope = (alt_ns[4] - alt_ns[0]) / 60.0;   // ns per extra landmark
  const double alp_slope = (alp_ns[4] - alp_ns[0]) / 60.0;
  const bool flat_alp = alp_slope <= 0 || alt_slope > 4.0 * alp_slope;
  const bool scaling_ok = ratio16 > 4.0 && alt_slope > 0 && flat_alp;

  std::string detail = fmt(
      "queries=%llu populated_rows=%llu/%zu bench_elapsed=%.1fs ratio@16=%.1fx "
      "alt_slope=%.3fns/L alp_slope=%.3fns/L",
      (unsigned long long)bench.pairs_sampled, (unsigned long long)populated,
      bench.rows.size(), bench_elapsed, ratio16, alt_slope, alp_slope);
  for (int i = 0; i < 5; ++i) {
    detail += fmt("\n    |L|=%-3u alt=%.1fns alp=%.1fns", ks[i], alt_ns[i], alp_ns[i]);
  }
  criterion(6, "benchmark analog and per-eval cost scaling", bench_ok && scaling_ok, detail);
}

// Exit-status and refusal contracts of the CLI, beyond the numbered criteria.
void cli_contract(const std::string& cli, const fs::path& workdir) {
  const fs::path dir = workdir / "contract";
  fs::create_directories(dir);
  const std::string in_dir = "cd " + dir.string() + " && " + cli + " ";
  bool pass = true;
  std::string detail;
  auto expect = [&](const char* what, const std::string& step, int want) {
    const int got = run(in_dir + step + " >> log.txt 2>&1");
    if (got != want) {
      pass = false;
      detail += fmt("\n    %s: exit=%d want=%d", what, got, want);
    }
  };

  std::ofstream(dir / "two.gr") << "p sp 4 2\na 1 2 1\na 3 4 1\n";
  expect("unreachable pair exits 2", "query --graph two.gr --engine dijkstra -s 0 -t 3", 2);
  expect("reachable pair exits 0", "query --graph two.gr --engine dijkstra -s 0 -t 1", 0);

  std::ofstream(dir / "asym.gr") << "p sp 3 2\na 1 2 1\na 2 3 1\n";
  expect("directed graph preprocessing refused",
         "--keep-directed preprocess --graph asym.gr -o asym", 1);

  expect("generate a", "generate --spec grid:rows=6,cols=6 --graph-seed 1 -o a.alpg", 0);
  expect("generate b", "generate --spec grid:rows=6,cols=7 --graph-seed 1 -o b.alpg", 0);
  expect("preprocess a", "--seed 2 preprocess --graph a.alpg -o a_idx", 0);
  expect("foreign index refused",
         "query --graph b.alpg --alt a_idx.alt --engine alt -s 0 -t 5", 1);
  expect("matching index accepted",
         "query --graph a.alpg --alt a_idx.alt --engine alt -s 0 -t 5", 0);

  if (detail.empty()) detail = "exit statuses and refusals as specified";
  std::printf("[%s] cli contract: %s\n", pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void criterion_7(const std::string& cli, const fs::path& workdir) {
  bool pass = true;
  std::string detail;
  const fs::path dirs[2] = {workdir / "det1", workdir / "det2"};
  for (const fs::path& dir : dirs) {
    fs::create_directories(dir);
    // run inside the per-run directory so artifacts reference relative paths
    const std::string in_dir = "cd " + dir.string() + " && " + cli + " ";
    const std::string steps[] = {
        "generate --spec grid:rows=24,cols=24 --graph-seed 3 -o g.alpg",
        "--seed 11 preprocess --graph g.alpg -o idx > preprocess.txt",
        "query --graph g.alpg --alt idx.alt --engine alt -s 0 -t 575 > query.txt",
        "bench --graph g.alpg --alt idx.alt --alp idx.alp --queries 60"
        " --buckets 1,8,16,31 --workload-seed 5 --no-timing"
        " --csv bench.csv --plot bench.gnuplot",
        "--seed 5 verify --trials 400 --graphs-per-family 2 --threads 2"
        " --report verify.txt > verify_stdout.txt",
        "stats --index idx.alp > stats.txt",
    };
    for (const std::string& step : steps) {
      const int code = run(in_dir + step + " 2>> stderr.log");
      if (code != 0) {
        pass = false;
        detail += fmt("\n    exit=%d for: %s", code, step.c_str());
      }
    }
  }
  const char* artifacts[] = {"g.alpg",    "idx.alt",       "idx.alp",
                             "idx.part",  "idx.stats",     "preprocess.txt",
                             "query.txt", "bench.csv",     "bench.gnuplot",
                             "verify.txt", "verify_stdout.txt", "stats.txt"};
  for (const char* name : artifacts) {
    const std::string a = read_file(dirs[0] / name);
    const std::string b = read_file(dirs[1] / name);
    if (a != b || a.rfind("<missing:", 0) == 0) {
      pass = false;
      detail += fmt("\n    artifact differs or missing: %s", name);
    }
  }
  if (detail.empty()) detail = "12 artifacts byte-identical across repeated seeded runs";
  criterion(7, "seeded CLI runs are byte-reproducible", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <cli-binary> <workdir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path workdir = argv[2];
  fs::create_directories(workdir);

  const auto t0 = Clock::now();
  criteria_1_and_2();
  criterion_3(workdir);
  criterion_4();
  const BigBuild big = criterion_5(workdir);
  criterion_6(big, workdir);
  cli_contract(cli, workdir);
  criterion_7(cli, workdir);

  std::printf("acceptance: %d failure(s), %.1fs total\n", g_failures, seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
