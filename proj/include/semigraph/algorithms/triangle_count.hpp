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

#include <algorithm>
#include <vector>

#include "semigraph/engine.hpp"

namespace semigraph::algo {

struct TriangleState {
  std::vector<VertexId> neighbor_ids;  // ascending in-neighbor ids after phase 1
  std::uint64_t local_count = 0;

  friend bool operator==(const TriangleState&, const TriangleState&) = default;
};

// Phase 1 (one superstep): every vertex sends its own id along out-edges;
// each receiver folds the ids into an ascending list. The reduce is a sorted
// merge rather than an append so it stays commutative and associative — and
// as a side effect lists are ascending at every point, no sort needed at the
// phase boundary.
template <typename E>
struct NeighborGatherProgram {
  using vertex_t = TriangleState;
  using edge_t = E;
  using message_t = VertexId;
  using reduced_t = std::vector<VertexId>;

  ScatterDirection direction() const { return ScatterDirection::OUT; }

  std::optional<message_t> send_message(const vertex_t&, VertexId v) const { return v; }

  reduced_t process_message(const message_t& m, const edge_t&, const vertex_t&) const {
    return {m};
  }

  reduced_t reduce(const reduced_t& a, const reduced_t& b) const {
    reduced_t out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  reduced_t reduce_identity() const { return {}; }

  vertex_t apply(const reduced_t& ids, const vertex_t& old) const {
    return {ids, old.local_count};
  }
};

// Phase 2 (one superstep): every vertex ships its gathered list along
// out-edges; each receiver counts how many ids the incoming list shares with
// its own (a linear merge of two ascending lists) and sums those counts.
template <typename E>
struct ListIntersectProgram {
  using vertex_t = TriangleState;
  using edge_t = E;
  using message_t = std::vector<VertexId>;
  using reduced_t = std::uint64_t;

  ScatterDirection direction() const { return ScatterDirection::OUT; }

  std::optional<message_t> send_message(const vertex_t& v, VertexId) const {
    return v.neighbor_ids;
  }

  reduced_t process_message(const message_t& incoming, const edge_t&,
                            const vertex_t& mine) const {
    std::uint64_t shared = 0;
    auto a = incoming.begin();
    auto b = mine.neighbor_ids.begin();
    while (a != incoming.end() && b != mine.neighbor_ids.end()) {
      if (*a < *b)
        ++a;
      else if (*b < *a)
        ++b;
      else {
        ++shared;
        ++a;
        ++b;
      }
    }
    return shared;
  }

  reduced_t reduce(const reduced_t& a, const reduced_t& b) const { return a + b; }

  reduced_t reduce_identity() const { return 0; }

  vertex_t apply(const reduced_t& count, const vertex_t& old) const {
    return {old.neighbor_ids, count};
  }
};

// Exact triangle count of the undirected graph presented in DAG form: every
// stored edge must satisfy src < dst (the DAGIFY preprocessing mode produces
// exactly that), which makes each triangle u < v < w counted once — at w,
// through the edge (v, w), when u sits in both gathered lists.
template <typename E>
std::uint64_t triangle_count(Graph<TriangleState, E>& g, Engine& engine) {
  for (const auto& part : g.transpose_partitions())
    for (std::size_t c = 0; c < part.col_ids.size(); ++c)
      for (std::size_t i = part.col_starts[c]; i < part.col_starts[c + 1]; ++i)
        if (part.col_ids[c] >= part.row_ids[i])
          throw InputError("triangle_count: edge " + std::to_string(part.col_ids[c] + 1) +
                           " -> " + std::to_string(part.row_ids[i] + 1) +
                           " (1-based) violates src < dst; run DAGIFY preprocessing first");

  const std::size_t n = g.num_vertices();
  auto& props = g.properties();
  for (VertexId v = 0; v < n; ++v) props[v] = TriangleState{};

  props.set_all_active(true);
  engine.run_graph_program(g, NeighborGatherProgram<E>{}, 1);
  props.set_all_active(true);
  engine.run_graph_program(g, ListIntersectProgram<E>{}, 1);

  std::uint64_t total = 0;
  for (VertexId v = 0; v < n; ++v) total += props[v].local_count;
  return total;
}

}  // namespace semigraph::algo
