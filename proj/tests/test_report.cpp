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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "semigraph/core.hpp"
#include "semigraph/report.hpp"

using namespace semigraph;
using namespace semigraph::bench;

namespace {

namespace fs = std::filesystem;

class Scratch {
 public:
  Scratch() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() / ("semigraph-report-test-" +
                                        std::to_string(::getpid()) + "-" +
                                        std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~Scratch() { std::error_code ec; fs::remove_all(dir_, ec); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("decimal rendering round-trips doubles and spells infinity as inf") {
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(2.0) == "2");
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double x = dist(rng);
    const double back = std::strtod(format_real(x).c_str(), nullptr);
    CHECK(bits_equal(x, back));
  }
  CHECK(bits_equal(std::strtod(format_real(1.0 / 3.0).c_str(), nullptr), 1.0 / 3.0));
}

TEST_CASE("hash matches the published 64-bit FNV-1a vectors") {
  CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar", 6) == 0x85944171f73967e8ull);
}

TEST_CASE("file hash equals the in-memory hash, across buffer boundaries") {
  Scratch s;
  std::string blob;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100000; ++i) blob.push_back(static_cast<char>(rng() & 0xff));
  const auto p = s.path("blob.bin");
  {
    std::ofstream out(p, std::ios::binary);
    out << blob;
  }
  CHECK(fnv1a64_file(p) == fnv1a64(blob.data(), blob.size()));
  CHECK_THROWS_AS(fnv1a64_file(s.path("missing.bin")), InputError);
}

TEST_CASE("results file: one 1-based id per line, tab separated") {
  Scratch s;
  const auto p = s.path("r.tsv");
  write_results(p, {0.0, 2.0, 5.0});
  CHECK(slurp(p) == "1\t0\n2\t2\n3\t5\n");

  write_results(p, {0.0, std::numeric_limits<double>::infinity()});
  CHECK(slurp(p) == "1\t0\n2\tinf\n");

  write_results(p, {});
  CHECK(slurp(p).empty());
}

TEST_CASE("vector results file: row per vertex, all components") {
  Scratch s;
  const auto p = s.path("v.tsv");
  write_vector_results(p, {{1.5, 0.25}, {-2.0, 0.0}});
  CHECK(slurp(p) == "1\t1.5\t0.25\n2\t-2\t0\n");
}

TEST_CASE("run report: frozen key=value layout") {
  Scratch s;
  RunReport report;
  report.algorithm = "sssp";
  report.graph = "chain.txt";
  report.threads = 2;
  report.partitions = 16;
  IterationStats it1;
  it1.total_seconds = 0.25;
  IterationStats it2;
  it2.total_seconds = 0.5;
  report.iterations = {it1, it2};
  report.total_seconds = 0.75;
  report.checksum = 0xdeadbeefull;
  report.extras = {{"note", "hello"}};

  const auto p = s.path("report.txt");
  write_report(p, report);
  CHECK(slurp(p) ==
        "algorithm=sssp\n"
        "graph=chain.txt\n"
        "threads=2\n"
        "partitions=16\n"
        "iterations=2\n"
        "iteration_seconds=0.25,0.5\n"
        "total_seconds=0.75\n"
        "seconds_per_iteration=0.375\n"
        "checksum=00000000deadbeef\n"
        "note=hello\n");
}

TEST_CASE("run report: a single iteration means the mean equals the total") {
  Scratch s;
  RunReport report;
  report.algorithm = "bfs";
  report.graph = "g";
  IterationStats it1;
  it1.total_seconds = 0.125;
  report.iterations = {it1};
  report.total_seconds = 0.125;
  const auto p = s.path("report.txt");
  write_report(p, report);
  const auto text = slurp(p);
  CHECK(text.find("total_seconds=0.125\n") != std::string::npos);
  CHECK(text.find("seconds_per_iteration=0.125\n") != std::string::npos);
}

TEST_CASE("run report: zero iterations renders the mean as na") {
  Scratch s;
  RunReport report;
  report.algorithm = "pagerank";
  report.graph = "g";
  const auto p = s.path("report.txt");
  write_report(p, report);
  const auto text = slurp(p);
  CHECK(text.find("iterations=0\n") != std::string::npos);
  CHECK(text.find("iteration_seconds=\n") != std::string::npos);
  CHECK(text.find("seconds_per_iteration=na\n") != std::string::npos);
}
