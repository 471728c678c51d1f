/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "semigraph/engine.hpp"

namespace semigraph::algo {

struct PageRankState {
  double rank = 0.0;
  std::uint64_t out_degree = 0;

  friend bool operator==(const PageRankState& a, const PageRankState& b) {
    return bits_equal(a.rank, b.rank) && a.out_degree == b.out_degree;
  }
};

// Non-normalized PageRank: rank'(v) = r + (1 - r) * sum over in-neighbors u
// of rank(u) / out_degree(u). Ranks start at 1.0; a vertex with no
// out-edges sends nothing; a vertex receiving no messages keeps its rank.
template <typename E>
struct PageRankProgram {
  using vertex_t = PageRankState;
  using edge_t = E;
  using message_t = double;
  using reduced_t = double;

  double r = 0.15;

  ScatterDirection direction() const { return ScatterDirection::OUT; }

  std::optional<message_t> send_message(const vertex_t& v, VertexId) const {
    if (v.out_degree == 0) return std::nullopt;
    return v.rank / static_cast<double>(v.out_degree);
  }

  reduced_t process_message(const message_t& m, const edge_t&, const vertex_t&) const {
    return m;
  }

  reduced_t reduce(const reduced_t& a, const reduced_t& b) const { return a + b; }

  reduced_t reduce_identity() const { return 0.0; }

  vertex_t apply(const reduced_t& sum, const vertex_t& old) const {
    return {r + (1.0 - r) * sum, old.out_degree};
  }
};

struct PageRankConfig {
  double r = 0.15;
  std::size_t max_iterations = 100;
  // Early stop once max per-vertex rank change drops below this; 0 disables
  // and the run ends on the activity fixpoint or the iteration budget alone.
  double tolerance = 0.0;
};

template <typename E>
std::vector<double> pagerank(Graph<PageRankState, E>& g, Engine& engine,
                             const PageRankConfig& cfg,
                             std::vector<IterationStats>* stats_out = nullptr) {
  if (!(cfg.r >= 0.0 && cfg.r <= 1.0)) throw InputError("pagerank: r must be in [0, 1]");
  // A zero iteration budget yields the initial ranks: every vertex at 1.0.

  const std::size_t n = g.num_vertices();
  const auto out_deg = degree_vector(engine, g, DegreeKind::OUT);
  auto& props = g.properties();
  for (VertexId v = 0; v < n; ++v) props[v] = {1.0, out_deg[v]};
  props.set_all_active(true);

  const PageRankProgram<E> program{cfg.r};
  std::vector<IterationStats> stats;
  std::vector<double> prev;
  if (cfg.tolerance > 0.0) prev.resize(n);

  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    if (cfg.tolerance > 0.0)
      for (VertexId v = 0; v < n; ++v) prev[v] = props[v].rank;
    IterationStats s = engine.step(g, program);
    s.iteration = it;
    stats.push_back(s);
    if (s.vertices_updated == 0) break;
    if (cfg.tolerance > 0.0) {
      double max_change = 0.0;
      for (VertexId v = 0; v < n; ++v)
        max_change = std::max(max_change, std::abs(props[v].rank - prev[v]));
      if (max_change < cfg.tolerance) break;
    }
  }

  if (stats_out) *stats_out = std::move(stats);
  std::vector<double> ranks(n);
  for (VertexId v = 0; v < n; ++v) ranks[v] = props[v].rank;
  return ranks;
}

}  // namespace semigraph::algo
