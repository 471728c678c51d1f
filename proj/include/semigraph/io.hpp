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

#include <cstdint>
#include <string>
#include <vector>

#include "semigraph/core.hpp"

namespace semigraph::io {

struct EdgeList {
  std::vector<EdgeTriple<double>> edges;
  std::size_t num_vertices = 0;
};

// Whitespace-separated "src dst" (or "src dst weight" when weighted) lines
// with 1-based positive ids; '#' and '%' start comment lines. A weight
// column on an unweighted load — or a missing one on a weighted load — is an
// error, as are malformed numbers; messages carry the line number.
// Unweighted edges get value 1. num_vertices is the largest id seen.
EdgeList load_edge_list(const std::string& path, bool weighted);

// Matrix Market coordinate subset: real | pattern | integer entries,
// general | symmetric shape. Symmetric inputs are expanded to both
// directions (diagonal entries once); pattern entries get value 1.
// num_vertices is max(rows, cols) of the declared shape.
EdgeList load_matrix_market(const std::string& path);

enum class PreprocessMode {
  NONE,            // always-on cleanup only
  SYMMETRIZE,      // add reversed edges, then dedup
  DAGIFY,          // symmetrize, then keep src < dst
  BIPARTITE_CHECK  // verify sources and destinations are disjoint vertex sets
};

// Always removes self loops and deduplicates (src, dst) pairs keeping the
// first-seen value, then applies the mode. Output is sorted by (src, dst) —
// running the same mode again is a no-op.
std::vector<EdgeTriple<double>> preprocess(std::vector<EdgeTriple<double>> edges,
                                           PreprocessMode mode);

struct RmatParams {
  unsigned scale = 0;            // 2^scale vertices
  std::size_t edge_factor = 16;  // edge_factor * 2^scale generated tuples
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  std::uint64_t seed = 1;
};

// Recursive-quadrant edge generator: each tuple draws one quadrant per level
// independently. The raw stream is returned untouched — duplicates and self
// loops are the preprocessor's problem.
std::vector<EdgeTriple<double>> rmat_generate(const RmatParams& params);

struct BipartiteParams {
  std::size_t num_users = 0;
  std::size_t num_items = 0;
  std::size_t num_ratings = 0;
  std::uint64_t seed = 1;
  // Per-bit probability of the more-popular half when descending to an item;
  // > 0.5 skews popularity toward low item indices.
  double skew = 0.7;
};

// User -> item rating edges: users uniform over [0, num_users), items drawn
// with power-law popularity, integer ratings uniform in [1, 5]. Item ids are
// offset by num_users. Exactly num_ratings raw tuples; duplicates possible.
std::vector<EdgeTriple<double>> bipartite_generate(const BipartiteParams& params);

// Binary graph container: magic "GMB1", then num_vertices and num_edges as
// 64-bit little-endian, then per edge src, dst (64-bit LE) and value
// (IEEE-754 binary64 LE).
void write_binary(const std::string& path, const std::vector<EdgeTriple<double>>& edges,
                  std::size_t num_vertices);
EdgeList read_binary(const std::string& path);

// 1-based "src dst value" lines, values round-trip exact.
void write_edge_list(const std::string& path, const std::vector<EdgeTriple<double>>& edges);

}  // namespace semigraph::io
