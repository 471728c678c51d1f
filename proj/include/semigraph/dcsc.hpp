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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semigraph/core.hpp"

namespace semigraph {

// One column of a partition: parallel spans of row indices (ascending) and
// stored values.
template <typename E>
struct ColumnSlice {
  std::span<const VertexId> rows;
  std::span<const E> values;

  std::size_t size() const noexcept { return rows.size(); }
  bool empty() const noexcept { return rows.empty(); }
};

// Doubly compressed sparse column block covering the contiguous row range
// [row_lo, row_hi). Only columns with at least one stored entry in that range
// appear in col_ids; col_starts has one more element than col_ids and
// delimits each column's run inside row_ids/values. Empty columns cost
// nothing, which matters for the outer loop of the SPMV: it walks stored
// columns, not the full vertex range.
template <typename E>
struct DcscPartition {
  VertexId row_lo = 0;
  VertexId row_hi = 0;
  std::vector<VertexId> col_ids;
  std::vector<std::size_t> col_starts;  // size col_ids.size() + 1
  std::vector<VertexId> row_ids;
  std::vector<E> values;

  std::size_t nnz() const noexcept { return row_ids.size(); }

  // Entries of `col` within this partition, ascending by row; empty slice if
  // the column stores nothing here.
  ColumnSlice<E> column(VertexId col) const {
    const auto it = std::lower_bound(col_ids.begin(), col_ids.end(), col);
    if (it == col_ids.end() || *it != col) return {};
    const std::size_t c = static_cast<std::size_t>(it - col_ids.begin());
    const std::size_t lo = col_starts[c];
    const std::size_t hi = col_starts[c + 1];
    return {std::span<const VertexId>(row_ids.data() + lo, hi - lo),
            std::span<const E>(values.data() + lo, hi - lo)};
  }
};

// A stored nonzero during construction, before compression.
template <typename E>
struct MatrixEntry {
  VertexId row = 0;
  VertexId col = 0;
  E value{};
};

namespace detail {

// Splits rows [0, n) into `parts` contiguous ranges balanced by nonzero
// count: boundary p is the smallest row index i with cum(i) >= p/parts of the
// total, computed from the prefix sums. Ranges may be empty when parts exceed
// the number of non-empty rows; together they always tile [0, n).
inline std::vector<VertexId> balanced_row_boundaries(const std::vector<std::size_t>& row_nnz,
                                                     std::size_t parts) {
  const std::size_t n = row_nnz.size();
  std::vector<std::uint64_t> cum(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) cum[i + 1] = cum[i] + row_nnz[i];
  const std::uint64_t total = cum[n];

  std::vector<VertexId> bounds(parts + 1, 0);
  bounds[parts] = n;
  for (std::size_t p = 1; p < parts; ++p) {
    const std::uint64_t target = static_cast<std::uint64_t>(p) * total;
    // smallest i in [bounds[p-1], n] with cum[i] * parts >= p * total
    std::size_t lo = bounds[p - 1];
    std::size_t hi = n;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (cum[mid] * parts >= target)
        hi = mid;
      else
        lo = mid + 1;
    }
    bounds[p] = lo;
  }
  return bounds;
}

// Builds the per-partition DCSC arrays from a flat entry list. Throws on a
// duplicate (row, col) pair — deduplication is the preprocessor's job and a
// duplicate surviving this far is a caller bug.
template <typename E>
std::vector<DcscPartition<E>> build_dcsc_partitions(std::vector<MatrixEntry<E>>&& entries,
                                                    std::size_t num_vertices,
                                                    std::size_t num_partitions) {
  std::vector<std::size_t> row_nnz(num_vertices, 0);
  for (const auto& e : entries) ++row_nnz[e.row];
  const auto bounds = balanced_row_boundaries(row_nnz, num_partitions);

  // Bucket entries by partition, then order each bucket column-major with
  // ascending rows inside a column — exactly the order the SPMV consumes.
  std::vector<std::vector<MatrixEntry<E>>> buckets(num_partitions);
  {
    std::vector<std::size_t> sizes(num_partitions, 0);
    for (const auto& e : entries) {
      const auto it = std::upper_bound(bounds.begin(), bounds.end(), e.row);
      ++sizes[static_cast<std::size_t>(it - bounds.begin()) - 1];
    }
    for (std::size_t p = 0; p < num_partitions; ++p) buckets[p].reserve(sizes[p]);
    for (auto& e : entries) {
      const auto it = std::upper_bound(bounds.begin(), bounds.end(), e.row);
      buckets[static_cast<std::size_t>(it - bounds.begin()) - 1].push_back(e);
    }
    entries.clear();
    entries.shrink_to_fit();
  }

  std::vector<DcscPartition<E>> parts(num_partitions);
  for (std::size_t p = 0; p < num_partitions; ++p) {
    auto& bucket = buckets[p];
    auto& part = parts[p];
    part.row_lo = bounds[p];
    part.row_hi = bounds[p + 1];
    std::sort(bucket.begin(), bucket.end(), [](const MatrixEntry<E>& a, const MatrixEntry<E>& b) {
      return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    part.col_starts.push_back(0);
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      const auto& e = bucket[i];
      if (i > 0 && bucket[i - 1].col == e.col && bucket[i - 1].row == e.row)
        throw InputError("duplicate edge " + std::to_string(e.col + 1) + " -> " +
                         std::to_string(e.row + 1) + " (1-based); deduplicate before building");
      if (part.col_ids.empty() || part.col_ids.back() != e.col) {
        if (!part.col_ids.empty()) part.col_starts.push_back(part.row_ids.size());
        part.col_ids.push_back(e.col);
      }
      part.row_ids.push_back(e.row);
      part.values.push_back(e.value);
    }
    part.col_starts.push_back(part.row_ids.size());
    if (part.col_ids.empty()) part.col_starts.assign(1, 0);
    bucket.clear();
    bucket.shrink_to_fit();
  }
  return parts;
}

}  // namespace detail

// Swaps edge endpoints. Involution: applying it twice gives back the input.
template <typename E>
std::vector<EdgeTriple<E>> transpose_triples(std::vector<EdgeTriple<E>> edges) {
  for (auto& e : edges) std::swap(e.src, e.dst);
  return edges;
}

// A graph ready to run programs: the transposed adjacency matrix G^T held as
// row-partitioned DCSC blocks (message delivery along OUT edges), the
// forward matrix G built only on first use (IN or BOTH scatter), and the
// per-vertex property store.
//
// After construction the structure is immutable; properties and active flags
// are the only mutable state. The forward build is not thread-safe and must
// happen before workers start (the engine does it up front).
template <typename V, typename E>
class Graph {
 public:
  using vertex_t = V;
  using edge_t = E;

  Graph() = default;

  std::size_t num_vertices() const noexcept { return num_vertices_; }
  std::size_t num_edges() const noexcept { return num_edges_; }
  std::size_t num_partitions() const noexcept { return num_partitions_; }

  const std::vector<DcscPartition<E>>& transpose_partitions() const noexcept {
    return transpose_;
  }

  bool forward_built() const noexcept { return forward_built_; }

  void ensure_forward() {
    if (forward_built_) return;
    std::vector<MatrixEntry<E>> entries;
    entries.reserve(num_edges_);
    for (const auto& part : transpose_) {
      for (std::size_t c = 0; c < part.col_ids.size(); ++c) {
        for (std::size_t i = part.col_starts[c]; i < part.col_starts[c + 1]; ++i) {
          // G^T entry (row=dst, col=src) is G entry (row=src, col=dst).
          entries.push_back({part.col_ids[c], part.row_ids[i], part.values[i]});
        }
      }
    }
    forward_ = detail::build_dcsc_partitions(std::move(entries), num_vertices_, num_partitions_);
    forward_built_ = true;
  }

  const std::vector<DcscPartition<E>>& forward_partitions() const {
    if (!forward_built_)
      throw EngineError("forward matrix not built; call ensure_forward() first");
    return forward_;
  }

  VertexPropertyStore<V>& properties() noexcept { return props_; }
  const VertexPropertyStore<V>& properties() const noexcept { return props_; }

  template <typename V2, typename E2>
  friend Graph<V2, E2> build_graph(std::span<const EdgeTriple<E2>> edges,
                                   std::size_t num_vertices, std::size_t num_partitions);

 private:
  std::size_t num_vertices_ = 0;
  std::size_t num_edges_ = 0;
  std::size_t num_partitions_ = 0;
  std::vector<DcscPartition<E>> transpose_;
  std::vector<DcscPartition<E>> forward_;
  bool forward_built_ = false;
  VertexPropertyStore<V> props_;
};

// Builds the partitioned G^T from an edge list. Rows of G^T are destination
// vertices; the row split balances stored entries (in-degree mass) across
// partitions so SPMV work is even. Edges must be deduplicated and in range.
template <typename V, typename E>
Graph<V, E> build_graph(std::span<const EdgeTriple<E>> edges, std::size_t num_vertices,
                        std::size_t num_partitions) {
  if (num_partitions == 0) throw InputError("build_graph: num_partitions must be positive");
  if (num_vertices == 0 && !edges.empty())
    throw InputError("build_graph: zero vertices but " + std::to_string(edges.size()) +
                     " edges");
  std::vector<MatrixEntry<E>> entries;
  entries.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.src >= num_vertices || e.dst >= num_vertices)
      throw InputError("build_graph: edge " + std::to_string(e.src + 1) + " -> " +
                       std::to_string(e.dst + 1) + " (1-based) exceeds vertex count " +
                       std::to_string(num_vertices));
    entries.push_back({e.dst, e.src, e.value});
  }

  Graph<V, E> g;
  g.num_vertices_ = num_vertices;
  g.num_edges_ = edges.size();
  g.num_partitions_ = num_partitions;
  g.transpose_ = detail::build_dcsc_partitions(std::move(entries), num_vertices, num_partitions);
  g.props_ = VertexPropertyStore<V>(num_vertices);
  return g;
}

template <typename V, typename E>
Graph<V, E> build_graph(const std::vector<EdgeTriple<E>>& edges, std::size_t num_vertices,
                        std::size_t num_partitions) {
  return build_graph<V, E>(std::span<const EdgeTriple<E>>(edges.data(), edges.size()),
                           num_vertices, num_partitions);
}

}  // namespace semigraph
