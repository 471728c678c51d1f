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
#include "semigraph/report.hpp"

#include <cstdio>
#include <fstream>

namespace semigraph::bench {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "' for checksumming");
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const auto got = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
    if (got < sizeof(buf)) break;
  }
  return h;
}

void write_results(const std::string& path, const std::vector<double>& values) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  for (std::size_t v = 0; v < values.size(); ++v)
    out << (v + 1) << '\t' << format_real(values[v]) << '\n';
  if (!out) throw InputError("write failed on '" + path + "'");
}

void write_vector_results(const std::string& path,
                          const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  for (std::size_t v = 0; v < rows.size(); ++v) {
    out << (v + 1);
    for (const double x : rows[v]) out << '\t' << format_real(x);
    out << '\n';
  }
  if (!out) throw InputError("write failed on '" + path + "'");
}

void write_report(const std::string& path, const RunReport& report) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  char buf[64];
  out << "algorithm=" << report.algorithm << '\n';
  out << "graph=" << report.graph << '\n';
  out << "threads=" << report.threads << '\n';
  out << "partitions=" << report.partitions << '\n';
  out << "iterations=" << report.iterations.size() << '\n';
  out << "iteration_seconds=";
  for (std::size_t i = 0; i < report.iterations.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.9g", report.iterations[i].total_seconds);
    out << (i == 0 ? "" : ",") << buf;
  }
  out << '\n';
  std::snprintf(buf, sizeof(buf), "%.9g", report.total_seconds);
  out << "total_seconds=" << buf << '\n';
  if (report.iterations.empty()) {
    out << "seconds_per_iteration=na\n";
  } else {
    std::snprintf(buf, sizeof(buf), "%.9g",
                  report.total_seconds / static_cast<double>(report.iterations.size()));
    out << "seconds_per_iteration=" << buf << '\n';
  }
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(report.checksum));
  out << "checksum=" << buf << '\n';
  for (const auto& [key, value] : report.extras) out << key << '=' << value << '\n';
  if (!out) throw InputError("write failed on '" + path + "'");
}

}  // namespace semigraph::bench
