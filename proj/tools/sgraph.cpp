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

// sgraph — benchmark driver for the semigraph engine.
//
//   sgraph generate rmat|bipartite ...   synthesize a graph file
//   sgraph convert ...                   translate between graph file formats
//   sgraph run ALGORITHM ...             run one algorithm, write results + report
//   sgraph scale-sweep run ALGORITHM --threads 1,2,4,8 ...
//                                        same run repeated per thread count,
//                                        writing OUT.tN / REPORT.tN
//
// Exit codes: 0 success, 1 usage error, 2 input-data error, 3 runtime error.

#include <cstdio>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "semigraph/algorithms/collaborative_filtering.hpp"
#include "semigraph/algorithms/pagerank.hpp"
#include "semigraph/algorithms/traversal.hpp"
#include "semigraph/algorithms/triangle_count.hpp"
#include "semigraph/core.hpp"
#include "semigraph/dcsc.hpp"
#include "semigraph/engine.hpp"
#include "semigraph/io.hpp"
#include "semigraph/report.hpp"

namespace {

using namespace semigraph;

struct RunOptions {
  std::string algorithm;
  std::string graph_path;
  std::string format = "edgelist";  // edgelist | mtx | bin
  bool weighted = false;
  unsigned threads = 1;
  unsigned partitions_per_thread = 8;
  std::int64_t max_iters = -1;  // -1: per-algorithm default; 0: init only
  std::uint64_t source = 0;     // 1-based
  double damping = 0.15;
  double tolerance = 0.0;
  std::uint64_t k = 20;
  double gamma = 1e-4;
  double lambda = 0.05;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string report_path;
};

io::EdgeList load_graph(const std::string& path, const std::string& format,
                        bool weighted) {
  if (format == "mtx") return io::load_matrix_market(path);
  if (format == "bin") return io::read_binary(path);
  return io::load_edge_list(path, weighted);
}

// Every algorithm gets the preprocessing its preconditions demand. NONE still
// strips self-loops and duplicates so the matrix build never sees either.
io::PreprocessMode mode_for(const std::string& algorithm) {
  if (algorithm == "bfs") return io::PreprocessMode::SYMMETRIZE;
  if (algorithm == "tc") return io::PreprocessMode::DAGIFY;
  if (algorithm == "cf") return io::PreprocessMode::BIPARTITE_CHECK;
  return io::PreprocessMode::NONE;  // pagerank, sssp
}

void write_generated(const std::string& path, const std::string& format,
                     const std::vector<EdgeTriple<double>>& edges,
                     std::size_t num_vertices) {
  if (format == "edgelist")
    io::write_edge_list(path, edges);
  else
    io::write_binary(path, edges, num_vertices);
}

EngineConfig engine_config(const RunOptions& o, unsigned threads,
                           std::size_t traversal_budget) {
  EngineConfig ec;
  ec.max_iterations = traversal_budget == 0 ? 1 : traversal_budget;
  ec.thread_count = threads;
  ec.partitions_per_thread = o.partitions_per_thread;
  return ec;
}

// One full run at a fixed thread count: load, preprocess, build, execute
// (timed), dump results, optionally dump a report. The reported total covers
// the algorithm only — file loading and matrix construction are excluded.
void run_one(const RunOptions& o, unsigned threads, const std::string& out_path,
             const std::string& report_path) {
  io::EdgeList input = load_graph(o.graph_path, o.format, o.weighted);
  auto edges = io::preprocess(std::move(input.edges), mode_for(o.algorithm));
  const std::size_t n = input.num_vertices;
  const std::size_t partitions =
      static_cast<std::size_t>(threads) * o.partitions_per_thread;

  bench::RunReport report;
  report.algorithm = o.algorithm;
  report.graph = o.graph_path;
  report.threads = threads;
  report.partitions = partitions;

  if (o.algorithm == "pagerank") {
    auto g = build_graph<algo::PageRankState, double>(std::move(edges), n, partitions);
    Engine engine(engine_config(o, threads, 0));
    algo::PageRankConfig pc;
    pc.r = o.damping;
    pc.tolerance = o.tolerance;
    pc.max_iterations = o.max_iters < 0 ? 100 : static_cast<std::size_t>(o.max_iters);
    const double t0 = now_seconds();
    const auto ranks = algo::pagerank(g, engine, pc, &report.iterations);
    report.total_seconds = now_seconds() - t0;
    bench::write_results(out_path, ranks);
  } else if (o.algorithm == "bfs" || o.algorithm == "sssp") {
    auto g = build_graph<algo::DistanceState, double>(std::move(edges), n, partitions);
    const std::size_t budget =
        o.max_iters < 0 ? std::max<std::size_t>(n, 1) : static_cast<std::size_t>(o.max_iters);
    Engine engine(engine_config(o, threads, budget));
    const VertexId root = o.source - 1;  // flags are 1-based
    const double t0 = now_seconds();
    const auto dist = o.algorithm == "bfs"
                          ? algo::bfs(g, engine, root, &report.iterations)
                          : algo::sssp(g, engine, root, &report.iterations);
    report.total_seconds = now_seconds() - t0;
    bench::write_results(out_path, dist);
  } else if (o.algorithm == "tc") {
    auto g = build_graph<algo::TriangleState, double>(std::move(edges), n, partitions);
    Engine engine(engine_config(o, threads, 0));
    const double t0 = now_seconds();
    const std::uint64_t total = algo::triangle_count(g, engine);
    report.total_seconds = now_seconds() - t0;
    std::vector<double> per_vertex(n);
    for (VertexId v = 0; v < n; ++v)
      per_vertex[v] = static_cast<double>(g.properties()[v].local_count);
    bench::write_results(out_path, per_vertex);
    report.extras.emplace_back("triangles", std::to_string(total));
  } else {  // cf
    auto g = build_graph<algo::LatentVector, double>(std::move(edges), n, partitions);
    Engine engine(engine_config(o, threads, 0));
    algo::CfConfig cc;
    cc.k = static_cast<std::size_t>(o.k);
    cc.gamma = o.gamma;
    cc.lambda = o.lambda;
    cc.iterations = o.max_iters < 0 ? 10 : static_cast<std::size_t>(o.max_iters);
    cc.seed = o.seed;
    const double t0 = now_seconds();
    const auto result = algo::collaborative_filtering_gd(g, engine, cc, &report.iterations);
    report.total_seconds = now_seconds() - t0;
    std::vector<std::vector<double>> rows(n);
    for (VertexId v = 0; v < n; ++v) rows[v] = g.properties()[v].p;
    bench::write_vector_results(out_path, rows);
    if (!result.objective_trace.empty())
      report.extras.emplace_back("objective",
                                 bench::format_real(result.objective_trace.back()));
  }

  if (!report_path.empty()) {
    report.checksum = bench::fnv1a64_file(out_path);
    bench::write_report(report_path, report);
  }
}

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("algorithm", o.algorithm, "algorithm to run")
      ->required()
      ->check(CLI::IsMember({"pagerank", "bfs", "sssp", "tc", "cf"}));
  cmd->add_option("--graph", o.graph_path, "input graph file")->required();
  cmd->add_option("--format", o.format, "input format (default edgelist)")
      ->check(CLI::IsMember({"edgelist", "mtx", "bin"}));
  cmd->add_flag("--weighted", o.weighted, "edge list carries a weight column");
  cmd->add_option("--partitions-per-thread", o.partitions_per_thread,
                  "matrix partitions per worker thread (default 8)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", o.max_iters,
                  "iteration budget; 0 runs initialization only "
                  "(defaults: pagerank 100, bfs/sssp vertex count, cf 10)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--source", o.source, "1-based root vertex (bfs/sssp)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--damping", o.damping, "pagerank damping r (default 0.15)");
  cmd->add_option("--tolerance", o.tolerance,
                  "pagerank early-stop on max rank change (default 0 = off)");
  cmd->add_option("--k", o.k, "cf latent dimension (default 20)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--gamma", o.gamma, "cf step size (default 1e-4)");
  cmd->add_option("--lambda", o.lambda, "cf regularizer (default 0.05)");
  cmd->add_option("--seed", o.seed, "cf initialization seed (default 1)");
  cmd->add_option("--out", o.out_path, "results file (TSV)")->required();
  cmd->add_option("--report", o.report_path, "timing report file");
}

// Returns empty on success, otherwise the usage-error message.
std::string check_run_options(const RunOptions& o, bool have_source) {
  const bool traversal = o.algorithm == "bfs" || o.algorithm == "sssp";
  if (traversal && !have_source) return "--source is required for " + o.algorithm;
  if (traversal && o.max_iters == 0)
    return "--max-iters must be positive for " + o.algorithm;
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph analytics benchmark driver"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "synthesize a graph file");
  gen->require_subcommand(1);

  io::RmatParams rmat_params;
  std::string rmat_out;
  std::string rmat_format = "bin";
  auto* rmat = gen->add_subcommand("rmat", "recursive-matrix random graph");
  rmat->add_option("--scale", rmat_params.scale, "log2 of the vertex count")->required();
  rmat->add_option("--edgefactor", rmat_params.edge_factor,
                   "edges per vertex (default 16)")
      ->check(CLI::PositiveNumber);
  rmat->add_option("--a", rmat_params.a, "top-left quadrant probability (default 0.57)");
  rmat->add_option("--b", rmat_params.b, "top-right quadrant probability (default 0.19)");
  rmat->add_option("--c", rmat_params.c, "bottom-left quadrant probability (default 0.19)");
  rmat->add_option("--seed", rmat_params.seed, "generator seed (default 1)");
  rmat->add_option("--out", rmat_out, "output file")->required();
  rmat->add_option("--out-format", rmat_format, "bin or edgelist (default bin)")
      ->check(CLI::IsMember({"bin", "edgelist"}));

  io::BipartiteParams bip_params;
  std::string bip_out;
  std::string bip_format = "bin";
  auto* bip = gen->add_subcommand("bipartite", "random bipartite rating graph");
  bip->add_option("--users", bip_params.num_users)->required()->check(CLI::PositiveNumber);
  bip->add_option("--items", bip_params.num_items)->required()->check(CLI::PositiveNumber);
  bip->add_option("--ratings", bip_params.num_ratings)->required();
  bip->add_option("--seed", bip_params.seed, "generator seed (default 1)");
  bip->add_option("--skew", bip_params.skew,
                  "item popularity skew in (0,1) (default 0.7)");
  bip->add_option("--out", bip_out, "output file")->required();
  bip->add_option("--out-format", bip_format, "bin or edgelist (default bin)")
      ->check(CLI::IsMember({"bin", "edgelist"}));

  // convert
  auto* conv = app.add_subcommand("convert", "translate between graph file formats");
  std::string conv_in, conv_out, conv_in_format, conv_out_format;
  bool conv_weighted = false;
  conv->add_option("--in", conv_in)->required();
  conv->add_option("--in-format", conv_in_format)
      ->required()
      ->check(CLI::IsMember({"edgelist", "mtx", "bin"}));
  conv->add_option("--out", conv_out)->required();
  conv->add_option("--out-format", conv_out_format)
      ->required()
      ->check(CLI::IsMember({"bin", "edgelist"}));
  conv->add_flag("--weighted", conv_weighted, "edge list carries a weight column");

  // run
  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "run one algorithm");
  add_run_options(run, run_opts);
  auto* run_threads =
      run->add_option("--threads", run_opts.threads, "worker thread count (default 1)")
          ->check(CLI::PositiveNumber);
  (void)run_threads;
  auto* run_source = run->get_option("--source");

  // scale-sweep
  RunOptions sweep_opts;
  std::vector<unsigned> sweep_threads{1, 2, 4, 8};
  auto* sweep = app.add_subcommand("scale-sweep", "repeat a run across thread counts");
  sweep->require_subcommand(1);
  auto* sweep_run = sweep->add_subcommand("run", "the run to repeat");
  add_run_options(sweep_run, sweep_opts);
  sweep_run
      ->add_option("--threads", sweep_threads,
                   "comma-separated thread counts (default 1,2,4,8)")
      ->delimiter(',');
  auto* sweep_source = sweep_run->get_option("--source");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (rmat->parsed()) {
      auto edges = io::preprocess(io::rmat_generate(rmat_params),
                                  io::PreprocessMode::NONE);
      write_generated(rmat_out, rmat_format, edges,
                      std::size_t{1} << rmat_params.scale);
    } else if (bip->parsed()) {
      auto edges = io::preprocess(io::bipartite_generate(bip_params),
                                  io::PreprocessMode::NONE);
      write_generated(bip_out, bip_format, edges,
                      bip_params.num_users + bip_params.num_items);
    } else if (conv->parsed()) {
      io::EdgeList in = load_graph(conv_in, conv_in_format, conv_weighted);
      if (conv_out_format == "bin")
        io::write_binary(conv_out, in.edges, in.num_vertices);
      else
        io::write_edge_list(conv_out, in.edges);
    } else if (run->parsed()) {
      if (auto msg = check_run_options(run_opts, run_source->count() > 0);
          !msg.empty()) {
        std::fprintf(stderr, "error: %s\n", msg.c_str());
        return 1;
      }
      run_one(run_opts, run_opts.threads, run_opts.out_path, run_opts.report_path);
    } else {  // scale-sweep run
      if (auto msg = check_run_options(sweep_opts, sweep_source->count() > 0);
          !msg.empty()) {
        std::fprintf(stderr, "error: %s\n", msg.c_str());
        return 1;
      }
      if (sweep_threads.empty()) {
        std::fprintf(stderr, "error: --threads list is empty\n");
        return 1;
      }
      for (const unsigned t : sweep_threads) {
        if (t == 0) {
          std::fprintf(stderr, "error: thread counts must be positive\n");
          return 1;
        }
        const std::string suffix = ".t" + std::to_string(t);
        run_one(sweep_opts, t, sweep_opts.out_path + suffix,
                sweep_opts.report_path.empty() ? std::string{}
                                               : sweep_opts.report_path + suffix);
      }
    }
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
