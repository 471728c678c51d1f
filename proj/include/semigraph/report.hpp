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
#include <map>
#include <string>
#include <vector>

#include "semigraph/engine.hpp"

namespace semigraph::bench {

struct RunReport {
  std::string algorithm;
  std::string graph;
  unsigned threads = 1;
  std::size_t partitions = 1;
  std::vector<IterationStats> iterations;
  double total_seconds = 0.0;  // algorithm wall time; graph load/build excluded
  std::uint64_t checksum = 0;  // FNV-1a 64 over the results file bytes
  // Algorithm-specific scalar outcomes (e.g. the triangle total), appended to
  // the report verbatim.
  std::vector<std::pair<std::string, std::string>> extras;
};

// Shortest round-trip-exact decimal rendering (17 significant digits);
// infinities come out as "inf".
std::string format_real(double v);

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::string& path);

// One "vertex_id<TAB>value" line per vertex, ids 1-based.
void write_results(const std::string& path, const std::vector<double>& values);

// One "vertex_id<TAB>v1<TAB>...<TAB>vK" line per vertex (latent vectors).
void write_vector_results(const std::string& path,
                          const std::vector<std::vector<double>>& rows);

void write_report(const std::string& path, const RunReport& report);

}  // namespace semigraph::bench
