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
#include <atomic>
#include <bit>
#include <cassert>
#include <concepts>
#include <cstdint>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace semigraph {

// Vertex ids are 0-based inside the library. Text formats (edge lists,
// Matrix Market, result files) are 1-based; the translation happens at the
// I/O boundary and nowhere else.
using VertexId = std::uint64_t;

template <typename E>
struct EdgeTriple {
  VertexId src = 0;
  VertexId dst = 0;
  E value{};

  friend bool operator==(const EdgeTriple&, const EdgeTriple&) = default;
};

// Bad input data: malformed files, out-of-range ids, duplicate edges,
// negative weights, non-bipartite rating graphs, ... The CLI maps this to
// exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Failures raised while a program is running (a callback threw, invalid
// engine configuration, ...). The CLI maps this to exit code 3.
class EngineError : public std::runtime_error {
 public:
  explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

// Exact bit-pattern equality for doubles. Property-change detection is
// bitwise: a vertex goes back to sleep only when its new state is
// bit-identical to the old one. Value comparison (==) would treat +0.0/-0.0
// as equal and NaN as never equal; neither is what "unchanged" means here.
inline bool bits_equal(double a, double b) noexcept {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

// Which edges an active vertex pushes its message along. OUT delivers to
// out-neighbors (multiply by G^T), IN delivers to in-neighbors (multiply by
// G), BOTH runs the two products and merges them before Apply.
enum class ScatterDirection { OUT, IN, BOTH };

struct EngineConfig {
  std::size_t max_iterations = 1;
  unsigned thread_count = 1;
  unsigned partitions_per_thread = 8;
  bool deterministic_reduction = true;

  void validate() const {
    if (max_iterations == 0)
      throw EngineError("EngineConfig: max_iterations must be positive");
    if (thread_count == 0)
      throw EngineError("EngineConfig: thread_count must be positive");
    if (partitions_per_thread == 0)
      throw EngineError("EngineConfig: partitions_per_thread must be positive");
  }

  std::size_t total_partitions() const {
    return static_cast<std::size_t>(thread_count) * partitions_per_thread;
  }
};

// Sparse vector over a fixed index domain [0, length): a validity bitvector
// plus a full-length value array. Membership tests are O(1) bit probes, which
// is the whole point — the SPMV inner loop asks "does the frontier contain
// column j" once per stored column.
//
// Concurrency: distinct indices may be written from different threads (the
// bit write uses an atomic OR because neighboring indices share a 64-bit
// word); writing the same index from two threads is a contract violation.
template <typename T>
class SparseVector {
 public:
  SparseVector() = default;

  explicit SparseVector(std::size_t length)
      : length_(length), words_((length + 63) / 64, 0), values_(length) {}

  std::size_t length() const noexcept { return length_; }
  std::size_t word_count() const noexcept { return words_.size(); }

  bool valid(VertexId i) const noexcept {
    assert(i < length_);
    const auto w =
        std::atomic_ref<const std::uint64_t>(words_[i >> 6]).load(std::memory_order_relaxed);
    return (w >> (i & 63)) & 1u;
  }

  void set(VertexId i, T value) {
    assert(i < length_);
    values_[i] = std::move(value);
    std::atomic_ref<std::uint64_t>(words_[i >> 6])
        .fetch_or(std::uint64_t(1) << (i & 63), std::memory_order_relaxed);
  }

  // Reading an index whose bit is clear is a contract violation; the debug
  // build catches it here.
  const T& value(VertexId i) const {
    assert(valid(i));
    return values_[i];
  }

  T& value_mut(VertexId i) {
    assert(valid(i));
    return values_[i];
  }

  std::uint64_t word(std::size_t w) const noexcept { return words_[w]; }

  std::size_t count_valid() const noexcept {
    std::size_t n = 0;
    for (const auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  // Visits valid entries in ascending index order.
  template <typename F>
  void for_each_valid(F&& f) const {
    for_each_valid_in_words(0, words_.size(), f);
  }

  // Same, restricted to bit-words [word_lo, word_hi) — the unit of parallel
  // chunking for phases that walk a sparse vector.
  template <typename F>
  void for_each_valid_in_words(std::size_t word_lo, std::size_t word_hi, F&& f) const {
    for (std::size_t w = word_lo; w < word_hi; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
        bits &= bits - 1;
        const VertexId i = (static_cast<VertexId>(w) << 6) | b;
        f(i, values_[i]);
      }
    }
  }

  void clear() {
    std::fill(words_.begin(), words_.end(), 0);
  }

 private:
  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<T> values_;
};

// Per-vertex state plus the active flag that drives the superstep loop.
// Flags are one byte each so parallel writers to distinct vertices never
// share a memory location.
template <typename V>
class VertexPropertyStore {
 public:
  VertexPropertyStore() = default;

  explicit VertexPropertyStore(std::size_t n) : values_(n), active_(n, 0) {}

  VertexPropertyStore(std::size_t n, const V& init) : values_(n, init), active_(n, 0) {}

  std::size_t size() const noexcept { return values_.size(); }

  V& operator[](VertexId v) {
    assert(v < values_.size());
    return values_[v];
  }
  const V& operator[](VertexId v) const {
    assert(v < values_.size());
    return values_[v];
  }

  bool is_active(VertexId v) const {
    assert(v < active_.size());
    return active_[v] != 0;
  }

  void set_active(VertexId v, bool a) {
    assert(v < active_.size());
    active_[v] = a ? 1 : 0;
  }

  void set_all_active(bool a) {
    std::fill(active_.begin(), active_.end(), a ? 1 : 0);
  }

  std::size_t count_active() const noexcept {
    std::size_t n = 0;
    for (const auto f : active_) n += f;
    return n;
  }

 private:
  std::vector<V> values_;
  std::vector<std::uint8_t> active_;
};

// The four-callback vertex-program contract. A program declares its state,
// edge, message and reduced-value types and provides:
//
//   send_message(property, v)      -> optional message (nullopt = send nothing)
//   process_message(msg, e, prop)  -> reduced contribution; `prop` is the
//                                     *destination* vertex's state as of the
//                                     start of the superstep
//   reduce(a, b)                   -> combined reduced value; must be
//                                     commutative and associative
//   reduce_identity()              -> identity of reduce
//   apply(reduced, property)       -> updated property
//   direction()                    -> which edges messages travel along
//
// Properties must be equality-comparable; the engine re-activates a vertex
// exactly when apply changed its state.
template <typename P>
concept VertexProgram = requires(const P& p,
                                 const typename P::vertex_t& vp,
                                 const typename P::message_t& m,
                                 const typename P::edge_t& e,
                                 const typename P::reduced_t& r,
                                 VertexId v) {
  { p.direction() } -> std::same_as<ScatterDirection>;
  { p.send_message(vp, v) } -> std::same_as<std::optional<typename P::message_t>>;
  { p.process_message(m, e, vp) } -> std::same_as<typename P::reduced_t>;
  { p.reduce(r, r) } -> std::same_as<typename P::reduced_t>;
  { p.reduce_identity() } -> std::same_as<typename P::reduced_t>;
  { p.apply(r, vp) } -> std::same_as<typename P::vertex_t>;
  { vp == vp } -> std::convertible_to<bool>;
};

}  // namespace semigraph
