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
#include <random>
#include <vector>

#include "semigraph/engine.hpp"

namespace semigraph::algo {

enum class Side : std::uint8_t { USER, ITEM };

struct LatentVector {
  std::vector<double> p;
  Side side = Side::USER;

  friend bool operator==(const LatentVector& a, const LatentVector& b) {
    if (a.side != b.side || a.p.size() != b.p.size()) return false;
    for (std::size_t i = 0; i < a.p.size(); ++i)
      if (!bits_equal(a.p[i], b.p[i])) return false;
    return true;
  }
};

struct CfConfig {
  std::size_t k = 20;
  double gamma = 1e-4;
  double lambda = 0.05;
  std::size_t iterations = 10;
  std::uint64_t seed = 1;
};

// One gradient-descent step of low-rank matrix factorization, phrased as a
// vertex program. Every vertex sends its latent vector both ways (users reach
// their items along out-edges, items reach their users along in-edges); a
// receiver turns each incoming vector q into e * q with the residual
// e = rating - p . q, sums those, and moves by gamma * (sum - lambda * p).
template <typename E>
struct CfGdProgram {
  using vertex_t = LatentVector;
  using edge_t = E;
  using message_t = std::vector<double>;
  using reduced_t = std::vector<double>;

  std::size_t k = 0;
  double gamma = 0.0;
  double lambda = 0.0;

  ScatterDirection direction() const { return ScatterDirection::BOTH; }

  std::optional<message_t> send_message(const vertex_t& v, VertexId) const { return v.p; }

  reduced_t process_message(const message_t& q, const edge_t& rating,
                            const vertex_t& dst) const {
    double dot = 0.0;
    for (std::size_t i = 0; i < k; ++i) dot += dst.p[i] * q[i];
    const double e = static_cast<double>(rating) - dot;
    reduced_t out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = e * q[i];
    return out;
  }

  reduced_t reduce(const reduced_t& a, const reduced_t& b) const {
    reduced_t out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = a[i] + b[i];
    return out;
  }

  reduced_t reduce_identity() const { return reduced_t(k, 0.0); }

  vertex_t apply(const reduced_t& sum, const vertex_t& old) const {
    vertex_t fresh{std::vector<double>(k), old.side};
    for (std::size_t i = 0; i < k; ++i)
      fresh.p[i] = old.p[i] + gamma * (sum[i] - lambda * old.p[i]);
    return fresh;
  }
};

struct CfResult {
  std::vector<VertexId> user_ids;
  std::vector<VertexId> item_ids;
  std::vector<std::vector<double>> user_factors;  // parallel to user_ids
  std::vector<std::vector<double>> item_factors;  // parallel to item_ids
  std::vector<double> objective_trace;            // one entry per iteration, post-update
};

// Squared-residual objective with one ridge term per vertex:
// sum over ratings of (rating - p_u . p_v)^2  +  lambda * sum over all
// vertices of ||p||^2.
template <typename E>
double cf_objective_value(const Graph<LatentVector, E>& g, double lambda) {
  const auto& props = g.properties();
  double obj = 0.0;
  for (const auto& part : g.transpose_partitions()) {
    for (std::size_t c = 0; c < part.col_ids.size(); ++c) {
      const VertexId user = part.col_ids[c];
      for (std::size_t i = part.col_starts[c]; i < part.col_starts[c + 1]; ++i) {
        const VertexId item = part.row_ids[i];
        double dot = 0.0;
        for (std::size_t d = 0; d < props[user].p.size(); ++d)
          dot += props[user].p[d] * props[item].p[d];
        const double e = static_cast<double>(part.values[i]) - dot;
        obj += e * e;
      }
    }
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    for (const double x : props[v].p) obj += lambda * x * x;
  return obj;
}

// Gradient-descent matrix factorization over a bipartite rating graph.
// Rating edges must run user -> item; sides are inferred from the edge
// roles. Latent vectors left empty are initialized uniformly in
// [0, 1/sqrt(k)) from cfg.seed; pre-filled vectors are kept (they must have
// length k), which is how tests inject known starting points.
//
// Every vertex updates every iteration: vertices that received no message
// (no ratings touch them) still take the empty-sum step, which reduces to
// pure shrinkage p <- p - gamma * lambda * p.
template <typename E>
CfResult collaborative_filtering_gd(Graph<LatentVector, E>& g, Engine& engine,
                                    const CfConfig& cfg,
                                    std::vector<IterationStats>* stats_out = nullptr) {
  if (cfg.k == 0) throw InputError("cf: k must be positive");
  if (!(cfg.gamma > 0.0)) throw InputError("cf: gamma must be positive");
  if (!(cfg.lambda >= 0.0)) throw InputError("cf: lambda must be non-negative");

  const std::size_t n = g.num_vertices();
  auto& props = g.properties();

  // Sides are read off the edges: rating sources are users, rating targets
  // are items, and one vertex playing both roles means the graph is not
  // bipartite. Vertices touching no rating count as users by convention.
  std::vector<std::uint8_t> as_user(n, 0), as_item(n, 0);
  for (const auto& part : g.transpose_partitions())
    for (std::size_t c = 0; c < part.col_ids.size(); ++c)
      for (std::size_t i = part.col_starts[c]; i < part.col_starts[c + 1]; ++i) {
        as_user[part.col_ids[c]] = 1;
        as_item[part.row_ids[i]] = 1;
      }
  for (VertexId v = 0; v < n; ++v) {
    if (as_user[v] && as_item[v])
      throw InputError("cf: vertex " + std::to_string(v + 1) +
                       " (1-based) has both outgoing and incoming ratings; "
                       "graph is not bipartite");
    props[v].side = as_item[v] ? Side::ITEM : Side::USER;
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> init(0.0, 1.0 / std::sqrt(static_cast<double>(cfg.k)));
  for (VertexId v = 0; v < n; ++v) {
    if (props[v].p.empty()) {
      props[v].p.resize(cfg.k);
      for (auto& x : props[v].p) x = init(rng);
    } else if (props[v].p.size() != cfg.k) {
      throw InputError("cf: vertex " + std::to_string(v + 1) + " has a latent vector of length " +
                       std::to_string(props[v].p.size()) + ", expected k = " +
                       std::to_string(cfg.k));
    }
  }

  const CfGdProgram<E> program{cfg.k, cfg.gamma, cfg.lambda};
  const auto zero = program.reduce_identity();
  CfResult result;
  std::vector<IterationStats> stats;

  for (std::size_t it = 1; it <= cfg.iterations; ++it) {
    IterationStats s;
    const double t0 = now_seconds();
    props.set_all_active(true);
    s.active_before = n;
    auto x = engine.generate_messages(g, program);
    s.messages_generated = x.count_valid();
    const double t1 = now_seconds();
    auto y = engine.generalized_spmv(g, x, program);
    s.spmv_seconds = now_seconds() - t1;
    s.vertices_updated = engine.apply_and_activate(g, y, program);
    for (VertexId v = 0; v < n; ++v)
      if (!y.valid(v)) props[v] = program.apply(zero, props[v]);
    s.total_seconds = now_seconds() - t0;
    s.iteration = it;
    stats.push_back(s);
    result.objective_trace.push_back(cf_objective_value(g, cfg.lambda));
  }

  for (VertexId v = 0; v < n; ++v) {
    if (props[v].side == Side::USER) {
      result.user_ids.push_back(v);
      result.user_factors.push_back(props[v].p);
    } else {
      result.item_ids.push_back(v);
      result.item_factors.push_back(props[v].p);
    }
  }
  if (stats_out) *stats_out = std::move(stats);
  return result;
}

}  // namespace semigraph::algo
