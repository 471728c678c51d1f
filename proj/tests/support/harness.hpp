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

// Shared glue for the test binaries: deterministic random instances and the
// conversion between the oracle-side edge type and the library's.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <unordered_set>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "semigraph/core.hpp"

namespace testsupport {

inline std::vector<semigraph::EdgeTriple<double>> to_triples(
    const std::vector<oracle::Edge>& edges) {
  std::vector<semigraph::EdgeTriple<double>> out;
  out.reserve(edges.size());
  for (const oracle::Edge& e : edges) out.push_back({e.src, e.dst, e.value});
  return out;
}

inline std::vector<oracle::Edge> to_oracle_edges(
    const std::vector<semigraph::EdgeTriple<double>>& edges) {
  std::vector<oracle::Edge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back({e.src, e.dst, e.value});
  return out;
}

// Unique directed edges, no self-loops. `m` is clamped to what fits; keep the
// requested density well under n*(n-1) so rejection sampling stays fast.
inline std::vector<oracle::Edge> random_graph(std::mt19937_64& rng, std::size_t n,
                                              std::size_t m, bool weighted = false) {
  std::vector<oracle::Edge> edges;
  if (n < 2) return edges;
  const std::size_t cap = n * (n - 1);
  m = std::min(m, cap / 2 + 1);
  std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
  std::uniform_real_distribution<double> weight(0.5, 9.5);
  std::unordered_set<std::uint64_t> seen;
  while (edges.size() < m) {
    const std::uint64_t s = pick(rng);
    const std::uint64_t d = pick(rng);
    if (s == d) continue;
    if (!seen.insert(s << 32 | d).second) continue;
    edges.push_back({s, d, weighted ? weight(rng) : 1.0});
  }
  return edges;
}

// Dense random matrix over optional integers; entries present with the given
// probability, values in [-5, 5] (zero allowed: a stored zero is still a
// stored entry).
inline std::vector<std::vector<std::optional<long long>>> random_dense_matrix(
    std::mt19937_64& rng, std::size_t n, double density) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<long long> val(-5, 5);
  std::vector<std::vector<std::optional<long long>>> a(
      n, std::vector<std::optional<long long>>(n));
  for (auto& row : a)
    for (auto& cell : row)
      if (coin(rng) < density) cell = val(rng);
  return a;
}

inline std::vector<std::optional<long long>> random_sparse_ints(std::mt19937_64& rng,
                                                                std::size_t n,
                                                                double density) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<long long> val(-5, 5);
  std::vector<std::optional<long long>> x(n);
  for (auto& cell : x)
    if (coin(rng) < density) cell = val(rng);
  return x;
}

// Unique (user, item) rating pairs; users are [0, users), items are
// [users, users + items), values in {1..5}.
inline std::vector<oracle::Edge> random_ratings(std::mt19937_64& rng, std::size_t users,
                                                std::size_t items, std::size_t count) {
  std::vector<oracle::Edge> out;
  count = std::min(count, users * items);
  std::uniform_int_distribution<std::uint64_t> pick_u(0, users - 1);
  std::uniform_int_distribution<std::uint64_t> pick_i(0, items - 1);
  std::uniform_int_distribution<int> rating(1, 5);
  std::unordered_set<std::uint64_t> seen;
  while (out.size() < count) {
    const std::uint64_t u = pick_u(rng);
    const std::uint64_t i = users + pick_i(rng);
    if (!seen.insert(u << 32 | i).second) continue;
    out.push_back({u, i, static_cast<double>(rating(rng))});
  }
  return out;
}

inline std::vector<std::vector<double>> random_factors(std::mt19937_64& rng, std::size_t n,
                                                       std::size_t k, double scale) {
  std::uniform_real_distribution<double> dist(0.0, scale);
  std::vector<std::vector<double>> f(n, std::vector<double>(k));
  for (auto& row : f)
    for (double& x : row) x = dist(rng);
  return f;
}

}  // namespace testsupport
