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

#include <fstream>
#include <optional>

#include "alp/graph.hpp"
#include "alp/io.hpp"
#include "alp/parallel.hpp"
#include "alp/partition.hpp"
#include "alp/rng.hpp"
#include "alp/search.hpp"

namespace alp {

/// Full landmark-to-vertex distance table: |L| x |V| entries, one SSSP row
/// per landmark.
struct AltIndex {
  std::vector<VertexId> landmarks;
  std::vector<double> table;  // row-major, table[l * V + v] = d(landmark l, v)
  std::size_t vertex_count = 0;
  std::uint64_t graph_fingerprint = 0;

  double dist(std::size_t landmark_ordinal, VertexId v) const {
    return table[landmark_ordinal * vertex_count + v];
  }
  std::size_t landmark_count() const { return landmarks.size(); }
  std::size_t entry_count() const { return landmarks.size() * vertex_count; }
};

enum class LabelMode : std::uint32_t { exact = 0, induced = 1 };

inline const char* label_mode_name(LabelMode m) {
  return m == LabelMode::exact ? "exact" : "induced";
}

/// Distributed embedding: each vertex keeps (landmark ordinal, distance to
/// that landmark), plus the |L| x |L| landmark distance matrix. |V| + |L|^2
/// entries in total.
struct AlpIndex {
  std::vector<VertexId> landmarks;           // one per partition community
  std::vector<std::uint32_t> label_ordinal;  // vertex -> landmark ordinal
  std::vector<double> label_dist;            // vertex -> d(v, own landmark)
  std::vector<double> landmark_matrix;       // row-major |L| x |L|
  LabelMode mode = LabelMode::exact;
  std::uint64_t graph_fingerprint = 0;

  std::size_t landmark_count() const { return landmarks.size(); }
  std::size_t vertex_count() const { return label_ordinal.size(); }
  double matrix(std::size_t i, std::size_t j) const {
    return landmark_matrix[i * landmarks.size() + j];
  }
  std::size_t entry_count() const {
    return vertex_count() + landmarks.size() * landmarks.size();
  }
};

enum class LandmarkMethod { random, farthest };

inline const char* landmark_method_name(LandmarkMethod m) {
  return m == LandmarkMethod::random ? "random" : "farthest";
}

/// Picks one landmark inside each community. `random` draws uniformly;
/// `farthest` takes the vertex maximizing induced-subgraph distance from the
/// community's seed vertex (its lowest id), the ALT-style selection applied
/// per partition.
inline std::vector<VertexId> select_landmarks(const Graph& g, const Partition& p,
                                              LandmarkMethod method, std::uint64_t seed) {
  Rng rng(seed ^ 0xc2b2ae3d27d4eb4full);
  std::vector<VertexId> landmarks;
  landmarks.reserve(p.community_count());
  for (const VertexSet& community : p.communities) {
    if (method == LandmarkMethod::random) {
      landmarks.push_back(community.ids()[rng.next_below(community.size())]);
      continue;
    }
    const SubgraphView view = induced_subgraph(g, community);
    const std::vector<double> d = sssp(view.graph, view.to_sub[community.ids().front()]);
    VertexId best_sub = 0;
    double best_dist = -1;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] < kInf && d[i] > best_dist) {
        best_dist = d[i];
        best_sub = static_cast<VertexId>(i);
      }
    }
    landmarks.push_back(view.to_host[best_sub]);
  }
  return landmarks;
}

inline AltIndex build_alt_index(const Graph& g, std::vector<VertexId> landmarks,
                                unsigned threads = 1) {
  {
    std::vector<VertexId> sorted = landmarks;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::domain_error("build_alt_index: duplicate landmark ids");
    }
    if (!sorted.empty() && sorted.back() >= g.vertex_count()) {
      throw std::invalid_argument("build_alt_index: landmark id out of range");
    }
  }
  AltIndex index;
  index.vertex_count = g.vertex_count();
  index.landmarks = std::move(landmarks);
  index.graph_fingerprint = g.fingerprint();
  index.table.resize(index.landmarks.size() * index.vertex_count);
  parallel_for(index.landmarks.size(), threads, [&](std::size_t i) {
    const std::vector<double> row = sssp(g, index.landmarks[i]);
    std::copy(row.begin(), row.end(), index.table.begin() + i * index.vertex_count);
  });
  return index;
}

struct AlpBuildDiagnostics {
  std::uint64_t unreachable_labels = 0;  // community disconnected from its landmark
};

/// Builds the distributed embedding. Induced mode follows the literal
/// per-partition procedure: one SSSP on each community's induced subgraph, so
/// labels can exceed true full-graph distances. Exact mode runs the SSSP on
/// the whole graph and keeps only the landmark's own community rows, which
/// preserves both the storage bound and true-metric labels. The landmark
/// matrix always holds full-graph distances.
inline AlpIndex build_alp_index(const Graph& g, const Partition& p,
                                const std::vector<VertexId>& landmarks, LabelMode mode,
                                unsigned threads = 1,
                                AlpBuildDiagnostics* diagnostics = nullptr) {
  if (landmarks.size() != p.community_count()) {
    throw std::invalid_argument("build_alp_index: need one landmark per community");
  }
  for (std::size_t i = 0; i < landmarks.size(); ++i) {
    if (!p.communities[i].contains(landmarks[i])) {
      throw std::invalid_argument("build_alp_index: landmark outside its community");
    }
  }
  const std::size_t n = g.vertex_count();
  const std::size_t L = landmarks.size();
  AlpIndex index;
  index.landmarks = landmarks;
  index.mode = mode;
  index.graph_fingerprint = g.fingerprint();
  index.label_ordinal = p.assignment;
  index.label_dist.assign(n, kInf);
  index.landmark_matrix.assign(L * L, kInf);

  if (mode == LabelMode::exact) {
    parallel_for(L, threads, [&](std::size_t i) {
      const std::vector<double> row = sssp(g, landmarks[i]);
      for (VertexId v : p.communities[i].ids()) index.label_dist[v] = row[v];
      for (std::size_t j = 0; j < L; ++j) index.landmark_matrix[i * L + j] = row[landmarks[j]];
    });
  } else {
    parallel_for(L, threads, [&](std::size_t i) {
      const SubgraphView view = induced_subgraph(g, p.communities[i]);
      const std::vector<double> sub = sssp(view.graph, view.to_sub[landmarks[i]]);
      for (std::size_t s = 0; s < sub.size(); ++s) index.label_dist[view.to_host[s]] = sub[s];
      const std::vector<double> to_marks = sssp_to_targets(g, landmarks[i], landmarks);
      for (std::size_t j = 0; j < L; ++j) index.landmark_matrix[i * L + j] = to_marks[j];
    });
  }
  if (diagnostics) {
    diagnostics->unreachable_labels = 0;
    for (double d : index.label_dist) {
      if (d == kInf) ++diagnostics->unreachable_labels;
    }
  }
  return index;
}

// --- serialization --------------------------------------------------------
//
// "ALTX"/"ALPX", version, graph fingerprint, counts, then landmarks, labels
// in vertex order, and the landmark matrix; all little-endian.

inline constexpr std::uint32_t kIndexFormatVersion = 1;

inline void write_alt_index(std::ostream& out, const AltIndex& index) {
  out.write("ALTX", 4);
  detail::put_u32(out, kIndexFormatVersion);
  detail::put_u64(out, index.graph_fingerprint);
  detail::put_u32(out, static_cast<std::uint32_t>(index.landmarks.size()));
  detail::put_u64(out, index.vertex_count);
  for (VertexId l : index.landmarks) detail::put_u32(out, l);
  for (double d : index.table) detail::put_f64(out, d);
}

inline AltIndex read_alt_index(std::istream& in) {
  detail::expect_magic(in, "ALTX");
  if (detail::get_u32(in) != kIndexFormatVersion) {
    throw std::runtime_error("unsupported ALT index version");
  }
  AltIndex index;
  index.graph_fingerprint = detail::get_u64(in);
  const std::uint32_t L = detail::get_u32(in);
  index.vertex_count = detail::get_u64(in);
  index.landmarks.resize(L);
  for (auto& l : index.landmarks) {
    l = detail::get_u32(in);
    if (l >= index.vertex_count) throw std::runtime_error("corrupt ALT index: landmark id");
  }
  index.table.resize(static_cast<std::size_t>(L) * index.vertex_count);
  for (auto& d : index.table) d = detail::get_f64(in);
  return index;
}

inline void write_alp_index(std::ostream& out, const AlpIndex& index) {
  out.write("ALPX", 4);
  detail::put_u32(out, kIndexFormatVersion);
  detail::put_u64(out, index.graph_fingerprint);
  detail::put_u32(out, static_cast<std::uint32_t>(index.mode));
  detail::put_u32(out, static_cast<std::uint32_t>(index.landmarks.size()));
  detail::put_u64(out, index.vertex_count());
  for (VertexId l : index.landmarks) detail::put_u32(out, l);
  for (std::size_t v = 0; v < index.vertex_count(); ++v) {
    detail::put_u32(out, index.label_ordinal[v]);
    detail::put_f64(out, index.label_dist[v]);
  }
  for (double d : index.landmark_matrix) detail::put_f64(out, d);
}

inline AlpIndex read_alp_index(std::istream& in) {
  detail::expect_magic(in, "ALPX");
  if (detail::get_u32(in) != kIndexFormatVersion) {
    throw std::runtime_error("unsupported ALP index version");
  }
  AlpIndex index;
  index.graph_fingerprint = detail::get_u64(in);
  index.mode = static_cast<LabelMode>(detail::get_u32(in));
  const std::uint32_t L = detail::get_u32(in);
  const std::uint64_t n = detail::get_u64(in);
  index.landmarks.resize(L);
  for (auto& l : index.landmarks) {
    l = detail::get_u32(in);
    if (l >= n) throw std::runtime_error("corrupt ALP index: landmark id");
  }
  index.label_ordinal.resize(n);
  index.label_dist.resize(n);
  for (std::uint64_t v = 0; v < n; ++v) {
    index.label_ordinal[v] = detail::get_u32(in);
    if (index.label_ordinal[v] >= L) throw std::runtime_error("corrupt ALP index: label ordinal");
    index.label_dist[v] = detail::get_f64(in);
  }
  index.landmark_matrix.resize(static_cast<std::size_t>(L) * L);
  for (auto& d : index.landmark_matrix) d = detail::get_f64(in);
  return index;
}

/// Exact serialized payload sizes, used for the space-complexity accounting.
inline std::size_t alt_index_bytes(const AltIndex& index) {
  return 4 + 4 + 8 + 4 + 8 + 4 * index.landmarks.size() + 8 * index.entry_count();
}

inline std::size_t alp_index_bytes(const AlpIndex& index) {
  return 4 + 4 + 8 + 4 + 4 + 8 + 4 * index.landmarks.size() + 12 * index.vertex_count() +
         8 * index.landmarks.size() * index.landmarks.size();
}

template <class Index>
void write_index_file(const std::string& path, const Index& index) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  if constexpr (std::is_same_v<Index, AltIndex>) {
    write_alt_index(out, index);
  } else {
    write_alp_index(out, index);
  }
}

inline AltIndex read_alt_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index file: " + path);
  return read_alt_index(in);
}

inline AlpIndex read_alp_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index file: " + path);
  return read_alp_index(in);
}

}  // namespace alp
