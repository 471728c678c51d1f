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

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "semigraph/core.hpp"
#include "semigraph/dcsc.hpp"
#include "semigraph/worker_pool.hpp"

namespace semigraph {

inline double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct IterationStats {
  std::size_t iteration = 0;  // 1-based superstep number
  std::size_t active_before = 0;
  std::size_t messages_generated = 0;
  std::size_t vertices_updated = 0;  // == vertices active going into the next superstep
  double spmv_seconds = 0.0;
  double total_seconds = 0.0;
};

namespace detail {

[[noreturn]] inline void rethrow_as_engine_error(const std::string& context) {
  try {
    throw;
  } catch (const std::exception& e) {
    throw EngineError(context + ": " + e.what());
  } catch (...) {
    throw EngineError(context);
  }
}

}  // namespace detail

// Executes vertex programs as bulk-synchronous supersteps. Owns the worker
// pool; one Engine drives one program at a time (it is not re-entrant, and
// neither is the pool inside it).
//
// Every parallel phase writes disjoint state: SPMV partitions own disjoint
// output row ranges, message generation and apply parallelize over disjoint
// vertex ranges. Within a partition, columns are consumed in ascending order,
// so each output row folds its contributions by ascending source id — an
// order that does not depend on the thread count or the partition count.
// That is what makes results bitwise reproducible across both knobs
// (deterministic_reduction; the deterministic order costs nothing, so the
// engine always uses it).
class Engine {
 public:
  explicit Engine(EngineConfig cfg) : cfg_((cfg.validate(), cfg)), pool_(cfg.thread_count) {}

  const EngineConfig& config() const noexcept { return cfg_; }
  WorkerPool& pool() noexcept { return pool_; }

  // Superstep phase 1: every active vertex may emit one message. The result
  // has a valid entry at exactly the active vertices that chose to emit.
  template <VertexProgram P>
  SparseVector<typename P::message_t> generate_messages(
      const Graph<typename P::vertex_t, typename P::edge_t>& g, const P& program) {
    const std::size_t n = g.num_vertices();
    SparseVector<typename P::message_t> x(n);
    if (n == 0) return x;
    const auto& props = g.properties();
    const std::size_t chunks = chunk_count(n);
    const std::size_t chunk = (n + chunks - 1) / chunks;
    pool_.run(chunks, [&](std::size_t t) {
      const VertexId lo = static_cast<VertexId>(t * chunk);
      const VertexId hi = static_cast<VertexId>(std::min(n, (t + 1) * chunk));
      for (VertexId v = lo; v < hi; ++v) {
        if (!props.is_active(v)) continue;
        try {
          if (auto m = program.send_message(props[v], v)) x.set(v, std::move(*m));
        } catch (...) {
          detail::rethrow_as_engine_error("send_message failed at vertex " + std::to_string(v));
        }
      }
    });
    return x;
  }

  // Superstep phase 2: y = G^T ⊗ x (OUT), G ⊗ x (IN), or both merged (BOTH),
  // where ⊗ is the program's process_message/reduce pair. Only stored columns
  // present in x contribute; y has a valid entry exactly where at least one
  // contribution landed.
  template <VertexProgram P>
  SparseVector<typename P::reduced_t> generalized_spmv(
      Graph<typename P::vertex_t, typename P::edge_t>& g,
      const SparseVector<typename P::message_t>& x, const P& program) {
    using R = typename P::reduced_t;
    const std::size_t n = g.num_vertices();
    const ScatterDirection dir = program.direction();
    if (dir != ScatterDirection::OUT) g.ensure_forward();

    if (dir == ScatterDirection::BOTH) {
      SparseVector<R> y_out(n);
      spmv_partitions(g.transpose_partitions(), g, x, program, y_out);
      SparseVector<R> y_in(n);
      spmv_partitions(g.forward_partitions(), g, x, program, y_in);
      // Merge with a fixed order — out-edge result first — so the combined
      // fold stays reproducible.
      y_in.for_each_valid([&](VertexId k, const R& v) {
        if (y_out.valid(k))
          y_out.value_mut(k) = program.reduce(y_out.value(k), v);
        else
          y_out.set(k, v);
      });
      return y_out;
    }

    SparseVector<R> y(n);
    const auto& parts =
        dir == ScatterDirection::OUT ? g.transpose_partitions() : g.forward_partitions();
    spmv_partitions(parts, g, x, program, y);
    return y;
  }

  // Superstep phase 3: clear every active flag, then run apply for exactly
  // the vertices that received a message; a vertex whose state changed is
  // re-activated. Returns the number of changed (now active) vertices.
  template <VertexProgram P>
  std::size_t apply_and_activate(Graph<typename P::vertex_t, typename P::edge_t>& g,
                                 const SparseVector<typename P::reduced_t>& y,
                                 const P& program) {
    using V = typename P::vertex_t;
    auto& props = g.properties();
    props.set_all_active(false);
    if (g.num_vertices() == 0) return 0;
    std::atomic<std::size_t> updated{0};
    const std::size_t words = y.word_count();
    const std::size_t chunks = chunk_count(words);
    const std::size_t chunk = (words + chunks - 1) / chunks;
    pool_.run(chunks, [&](std::size_t t) {
      const std::size_t wlo = t * chunk;
      const std::size_t whi = std::min(words, (t + 1) * chunk);
      std::size_t local = 0;
      y.for_each_valid_in_words(wlo, whi, [&](VertexId v, const typename P::reduced_t& red) {
        const V old = props[v];
        V fresh;
        try {
          fresh = program.apply(red, old);
        } catch (...) {
          detail::rethrow_as_engine_error("apply failed at vertex " + std::to_string(v));
        }
        if (!(fresh == old)) {
          props[v] = std::move(fresh);
          props.set_active(v, true);
          ++local;
        }
      });
      updated.fetch_add(local, std::memory_order_relaxed);
    });
    return updated.load();
  }

  // One full superstep. The returned iteration number is filled by the loop
  // driver.
  template <VertexProgram P>
  IterationStats step(Graph<typename P::vertex_t, typename P::edge_t>& g, const P& program) {
    IterationStats s;
    const double t0 = now_seconds();
    s.active_before = g.properties().count_active();
    auto x = generate_messages(g, program);
    s.messages_generated = x.count_valid();
    const double t1 = now_seconds();
    auto y = generalized_spmv(g, x, program);
    s.spmv_seconds = now_seconds() - t1;
    s.vertices_updated = apply_and_activate(g, y, program);
    s.total_seconds = now_seconds() - t0;
    return s;
  }

  // The superstep loop: run until no vertex is active or the iteration
  // budget is exhausted. Stats carry one entry per executed superstep.
  template <VertexProgram P>
  std::vector<IterationStats> run_graph_program(
      Graph<typename P::vertex_t, typename P::edge_t>& g, const P& program,
      std::size_t max_iterations) {
    // A zero budget is a no-op: state and activity are left untouched.
    if (program.direction() != ScatterDirection::OUT) g.ensure_forward();
    std::vector<IterationStats> stats;
    for (std::size_t it = 1; it <= max_iterations; ++it) {
      IterationStats s = step(g, program);
      s.iteration = it;
      stats.push_back(s);
      if (s.vertices_updated == 0) break;
    }
    return stats;
  }

  template <VertexProgram P>
  std::vector<IterationStats> run_graph_program(
      Graph<typename P::vertex_t, typename P::edge_t>& g, const P& program) {
    return run_graph_program(g, program, cfg_.max_iterations);
  }

 private:
  std::size_t chunk_count(std::size_t items) const {
    return std::max<std::size_t>(1, std::min<std::size_t>(items, pool_.thread_count() * 8u));
  }

  // Algorithm core: for every stored column j of the partition present in x,
  // process each entry (k, value) against the destination's superstep-start
  // property and fold into y[k]. Rows of this partition are touched by no
  // other worker.
  template <VertexProgram P>
  void spmv_partitions(const std::vector<DcscPartition<typename P::edge_t>>& parts,
                       const Graph<typename P::vertex_t, typename P::edge_t>& g,
                       const SparseVector<typename P::message_t>& x, const P& program,
                       SparseVector<typename P::reduced_t>& y) {
    const auto& props = g.properties();
    pool_.run(parts.size(), [&](std::size_t pi) {
      const auto& part = parts[pi];
      const typename P::reduced_t identity = program.reduce_identity();
      const std::size_t ncols = part.col_ids.size();
      for (std::size_t c = 0; c < ncols; ++c) {
        const VertexId j = part.col_ids[c];
        if (!x.valid(j)) continue;
        const auto& xj = x.value(j);
        const std::size_t lo = part.col_starts[c];
        const std::size_t hi = part.col_starts[c + 1];
        VertexId k = 0;
        try {
          for (std::size_t i = lo; i < hi; ++i) {
            k = part.row_ids[i];
            assert(k >= part.row_lo && k < part.row_hi);
            typename P::reduced_t r = program.process_message(xj, part.values[i], props[k]);
            if (y.valid(k))
              y.value_mut(k) = program.reduce(y.value(k), r);
            else
              y.set(k, program.reduce(identity, std::move(r)));
          }
        } catch (const EngineError&) {
          throw;
        } catch (...) {
          detail::rethrow_as_engine_error("vertex program callback failed at (column " +
                                          std::to_string(j) + ", row " + std::to_string(k) +
                                          ")");
        }
      }
    });
  }

  EngineConfig cfg_;
  WorkerPool pool_;
};

enum class DegreeKind { IN, OUT };

namespace detail {

// Count semantics over an arbitrary property type: every edge contributes 1.
template <typename V, typename E>
struct DegreeCountProgram {
  using vertex_t = V;
  using edge_t = E;
  using message_t = std::uint8_t;
  using reduced_t = std::uint64_t;

  ScatterDirection dir = ScatterDirection::OUT;

  ScatterDirection direction() const { return dir; }
  std::optional<message_t> send_message(const V&, VertexId) const { return std::uint8_t{1}; }
  reduced_t process_message(const message_t&, const E&, const V&) const { return 1; }
  reduced_t reduce(const reduced_t& a, const reduced_t& b) const { return a + b; }
  reduced_t reduce_identity() const { return 0; }
  V apply(const reduced_t&, const V& old) const { return old; }
};

}  // namespace detail

// Per-vertex degree as a count-SPMV against an all-ones message vector:
// in-degree multiplies the transpose partitions, out-degree the forward
// ones. When the forward matrix has not been built, out-degree falls back to
// tallying per-column entry counts of G^T — the same integers — so a query
// never forces the forward build.
template <typename V, typename E>
std::vector<std::uint64_t> degree_vector(Engine& engine, Graph<V, E>& g, DegreeKind kind) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint64_t> deg(n, 0);
  if (kind == DegreeKind::OUT && !g.forward_built()) {
    for (const auto& part : g.transpose_partitions())
      for (std::size_t c = 0; c < part.col_ids.size(); ++c)
        deg[part.col_ids[c]] += part.col_starts[c + 1] - part.col_starts[c];
    return deg;
  }
  detail::DegreeCountProgram<V, E> program;
  program.dir = kind == DegreeKind::IN ? ScatterDirection::OUT : ScatterDirection::IN;
  SparseVector<std::uint8_t> ones(n);
  for (VertexId v = 0; v < n; ++v) ones.set(v, 1);
  const auto y = engine.generalized_spmv(g, ones, program);
  y.for_each_valid([&](VertexId v, const std::uint64_t& c) { deg[v] = c; });
  return deg;
}

}  // namespace semigraph
