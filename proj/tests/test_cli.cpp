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

// End-to-end coverage of the command-line tool: every check here spawns the
// real binary (path injected at build time) and inspects exit codes and
// output files.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

class Scratch {
 public:
  Scratch() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() / ("semigraph-cli-test-" + std::to_string(::getpid()) +
                                        "-" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~Scratch() { std::error_code ec; fs::remove_all(dir_, ec); }

  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SGRAPH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string report_value(const std::string& report_text, const std::string& key) {
  std::istringstream in(report_text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  return "<missing>";
}

}  // namespace

TEST_CASE("weighted chain shortest paths, frozen output and report") {
  Scratch s;
  const auto graph = s.file("chain.txt", "1 2 2.0\n2 3 3.0\n");
  const auto out = s.path("out.tsv");
  const auto rep = s.path("report.txt");
  CHECK(run_cli("run sssp --graph " + graph + " --weighted --source 1 --out " + out +
                " --report " + rep) == 0);
  CHECK(slurp(out) == "1\t0\n2\t2\n3\t5\n");

  const auto text = slurp(rep);
  CHECK(report_value(text, "algorithm") == "sssp");
  CHECK(report_value(text, "threads") == "1");
  CHECK(report_value(text, "iterations") == "3");
  const auto checksum = report_value(text, "checksum");
  CHECK(checksum.size() == 16);
  CHECK(checksum.find_first_not_of("0123456789abcdef") == std::string::npos);
}

TEST_CASE("usage errors exit with code 1") {
  Scratch s;
  const auto graph = s.file("g.txt", "1 2\n");
  CHECK(run_cli("run bfs --graph " + graph + " --out " + s.path("o")) == 1);  // no --source
  CHECK(run_cli("run bfs --graph " + graph + " --source 1 --max-iters 0 --out " +
                s.path("o")) == 1);
  CHECK(run_cli("run juggle --graph " + graph + " --out " + s.path("o")) == 1);
  CHECK(run_cli("flarb") == 1);
  CHECK(run_cli("run sssp --graph " + graph + " --source 1") == 1);  // no --out
}

TEST_CASE("input problems exit with code 2") {
  Scratch s;
  CHECK(run_cli("run pagerank --graph /nonexistent/g.txt --out " + s.path("o")) == 2);
  const auto bad = s.file("bad.txt", "1 froth\n");
  CHECK(run_cli("run pagerank --graph " + bad + " --out " + s.path("o")) == 2);
  // A rating edge whose endpoint plays both sides is rejected by the
  // bipartite preprocessing.
  const auto nonbip = s.file("nb.txt", "1 2 5.0\n2 3 4.0\n");
  CHECK(run_cli("run cf --graph " + nonbip + " --weighted --out " + s.path("o")) == 2);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("run --help") == 0);
  CHECK(run_cli("generate rmat --help") == 0);
}

TEST_CASE("generator and converter agree on the binary size formula") {
  Scratch s;
  const auto listing = s.path("g.txt");
  CHECK(run_cli("generate rmat --scale 6 --edgefactor 4 --seed 3 --out " + listing +
                " --out-format edgelist") == 0);
  std::istringstream lines(slurp(listing));
  std::string line;
  std::size_t edge_count = 0;
  while (std::getline(lines, line))
    if (!line.empty()) ++edge_count;
  CHECK(edge_count > 0);

  const auto bin = s.path("g.bin");
  CHECK(run_cli("convert --in " + listing + " --in-format edgelist --weighted --out " + bin +
                " --out-format bin") == 0);
  CHECK(fs::file_size(bin) == 20 + 24 * edge_count);

  // Round trip back to text: identical listing.
  const auto listing2 = s.path("g2.txt");
  CHECK(run_cli("convert --in " + bin + " --in-format bin --out " + listing2 +
                " --out-format edgelist") == 0);
  CHECK(slurp(listing2) == slurp(listing));
}

TEST_CASE("matrix file input converts and runs") {
  Scratch s;
  const auto mtx = s.file("m.mtx",
                          "%%MatrixMarket matrix coordinate real general\n"
                          "3 3 3\n"
                          "1 2 2.0\n"
                          "2 3 3.0\n"
                          "1 3 9.0\n");
  const auto out = s.path("out.tsv");
  CHECK(run_cli("run sssp --graph " + mtx + " --format mtx --source 1 --out " + out) == 0);
  CHECK(slurp(out) == "1\t0\n2\t2\n3\t5\n");
}

TEST_CASE("a zero iteration budget reports an empty run") {
  Scratch s;
  const auto graph = s.file("g.txt", "1 2\n2 3\n");
  const auto out = s.path("out.tsv");
  const auto rep = s.path("report.txt");
  CHECK(run_cli("run pagerank --graph " + graph + " --max-iters 0 --out " + out +
                " --report " + rep) == 0);
  CHECK(slurp(out) == "1\t1\n2\t1\n3\t1\n");  // initial ranks
  const auto text = slurp(rep);
  CHECK(report_value(text, "iterations") == "0");
  CHECK(report_value(text, "seconds_per_iteration") == "na");
}

TEST_CASE("triangle totals appear in the report") {
  Scratch s;
  std::string k4;
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b)
      k4 += std::to_string(a) + " " + std::to_string(b) + "\n";
  const auto graph = s.file("k4.txt", k4);
  const auto out = s.path("out.tsv");
  const auto rep = s.path("report.txt");
  CHECK(run_cli("run tc --graph " + graph + " --out " + out + " --report " + rep) == 0);
  CHECK(report_value(slurp(rep), "triangles") == "4");
}

TEST_CASE("rating factorization emits one latent vector per vertex") {
  Scratch s;
  const auto graph = s.file("r.txt", "1 3 4.0\n2 3 2.0\n");
  const auto out = s.path("out.tsv");
  const auto rep = s.path("report.txt");
  CHECK(run_cli("run cf --graph " + graph + " --weighted --k 2 --max-iters 2 --out " + out +
                " --report " + rep) == 0);
  std::istringstream lines(slurp(out));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), '\t') == 2);  // id + 2 components
  }
  CHECK(rows == 3);
  CHECK(report_value(slurp(rep), "objective") != "<missing>");
}

TEST_CASE("thread sweep writes one suffixed result and report per count") {
  Scratch s;
  const auto graph = s.path("g.bin");
  CHECK(run_cli("generate rmat --scale 7 --edgefactor 4 --seed 9 --out " + graph) == 0);
  const auto out = s.path("out.tsv");
  const auto rep = s.path("report.txt");
  CHECK(run_cli("scale-sweep run sssp --graph " + graph + " --format bin --source 1 "
                "--threads 1,2 --out " + out + " --report " + rep) == 0);
  const auto r1 = slurp(out + ".t1");
  const auto r2 = slurp(out + ".t2");
  CHECK(!r1.empty());
  CHECK(r1 == r2);  // identical results regardless of thread count
  const auto c1 = report_value(slurp(rep + ".t1"), "checksum");
  const auto c2 = report_value(slurp(rep + ".t2"), "checksum");
  CHECK(c1 == c2);
  CHECK(report_value(slurp(rep + ".t2"), "threads") == "2");
}

TEST_CASE("repeat runs are byte-identical") {
  Scratch s;
  const auto graph = s.path("g.bin");
  CHECK(run_cli("generate rmat --scale 7 --edgefactor 4 --seed 4 --out " + graph) == 0);
  std::vector<std::string> outputs;
  for (int rep = 0; rep < 3; ++rep) {
    const auto out = s.path("out" + std::to_string(rep) + ".tsv");
    CHECK(run_cli("run pagerank --graph " + graph + " --format bin --max-iters 8 "
                  "--threads 2 --out " + out) == 0);
    outputs.push_back(slurp(out));
  }
  CHECK(outputs[0] == outputs[1]);
  CHECK(outputs[1] == outputs[2]);
}
