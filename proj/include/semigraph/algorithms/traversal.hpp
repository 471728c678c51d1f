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

#include <limits>
#include <vector>

#include "semigraph/engine.hpp"

namespace semigraph::algo {

// Unreached sentinel for BFS levels and SSSP distances. IEEE infinity
// saturates under addition, so relaxing an unreached vertex can never
// manufacture a finite distance.
inline constexpr double kUnreached = std::numeric_limits<double>::infinity();

struct DistanceState {
  double distance = kUnreached;

  friend bool operator==(const DistanceState& a, const DistanceState& b) {
    return bits_equal(a.distance, b.distance);
  }
};

// Breadth-first levels: the frontier sends its level, receivers take
// min(own, level + 1). Expects a symmetrized graph when undirected hops are
// wanted — the program itself just follows out-edges.
template <typename E>
struct BfsProgram {
  using vertex_t = DistanceState;
  using edge_t = E;
  using message_t = double;
  using reduced_t = double;

  ScatterDirection direction() const { return ScatterDirection::OUT; }

  std::optional<message_t> send_message(const vertex_t& v, VertexId) const {
    return v.distance;
  }

  reduced_t process_message(const message_t& m, const edge_t&, const vertex_t&) const {
    return m + 1.0;
  }

  reduced_t reduce(const reduced_t& a, const reduced_t& b) const { return a < b ? a : b; }

  reduced_t reduce_identity() const { return kUnreached; }

  vertex_t apply(const reduced_t& d, const vertex_t& old) const {
    return {d < old.distance ? d : old.distance};
  }
};

// Active-set Bellman-Ford: changed vertices re-send their distance, edges add
// their (non-negative) weight, receivers keep the minimum.
template <typename E>
struct SsspProgram {
  using vertex_t = DistanceState;
  using edge_t = E;
  using message_t = double;
  using reduced_t = double;

  ScatterDirection direction() const { return ScatterDirection::OUT; }

  std::optional<message_t> send_message(const vertex_t& v, VertexId) const {
    return v.distance;
  }

  reduced_t process_message(const message_t& m, const edge_t& w, const vertex_t&) const {
    return m + static_cast<double>(w);
  }

  reduced_t reduce(const reduced_t& a, const reduced_t& b) const { return a < b ? a : b; }

  reduced_t reduce_identity() const { return kUnreached; }

  vertex_t apply(const reduced_t& d, const vertex_t& old) const {
    return {d < old.distance ? d : old.distance};
  }
};

namespace detail {

template <typename E, typename Program>
std::vector<double> run_distance_program(Graph<DistanceState, E>& g, Engine& engine,
                                         VertexId source, const Program& program,
                                         std::vector<IterationStats>* stats_out) {
  const std::size_t n = g.num_vertices();
  if (source >= n)
    throw InputError("source vertex " + std::to_string(source + 1) +
                     " (1-based) exceeds vertex count " + std::to_string(n));
  auto& props = g.properties();
  for (VertexId v = 0; v < n; ++v) props[v] = {kUnreached};
  props[source] = {0.0};
  props.set_all_active(false);
  props.set_active(source, true);

  auto stats = engine.run_graph_program(g, program);
  if (stats_out) *stats_out = std::move(stats);

  std::vector<double> dist(n);
  for (VertexId v = 0; v < n; ++v) dist[v] = props[v].distance;
  return dist;
}

}  // namespace detail

template <typename E>
std::vector<double> bfs(Graph<DistanceState, E>& g, Engine& engine, VertexId root,
                        std::vector<IterationStats>* stats_out = nullptr) {
  return detail::run_distance_program(g, engine, root, BfsProgram<E>{}, stats_out);
}

template <typename E>
std::vector<double> sssp(Graph<DistanceState, E>& g, Engine& engine, VertexId source,
                         std::vector<IterationStats>* stats_out = nullptr) {
  for (const auto& part : g.transpose_partitions())
    for (const auto& w : part.values)
      if (!(static_cast<double>(w) >= 0.0))
        throw InputError("sssp: negative edge weight " + std::to_string(static_cast<double>(w)));
  return detail::run_distance_program(g, engine, source, SsspProgram<E>{}, stats_out);
}

}  // namespace semigraph::algo
