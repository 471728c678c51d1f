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
#include "semigraph/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <string_view>
#include <unordered_set>

namespace semigraph::io {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void fail_at(const std::string& path, std::size_t line_no, const std::string& msg) {
  throw InputError(path + ":" + std::to_string(line_no) + ": " + msg);
}

std::uint64_t parse_u64(std::string_view tok, const std::string& path, std::size_t line_no,
                        const char* what) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    fail_at(path, line_no, std::string("malformed ") + what + " '" + std::string(tok) + "'");
  return v;
}

double parse_double(std::string_view tok, const std::string& path, std::size_t line_no,
                    const char* what) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    fail_at(path, line_no, std::string("malformed ") + what + " '" + std::string(tok) + "'");
  return v;
}

bool is_comment_or_blank(std::string_view line) {
  for (const char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '#' || ch == '%';
  }
  return true;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

EdgeList load_edge_list(const std::string& path, bool weighted) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  EdgeList out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    const auto toks = split_tokens(line);
    const std::size_t expected = weighted ? 3u : 2u;
    if (toks.size() != expected) {
      if (!weighted && toks.size() == 3)
        fail_at(path, line_no, "unexpected weight column on an unweighted load");
      fail_at(path, line_no, "expected " + std::to_string(expected) + " columns, got " +
                                 std::to_string(toks.size()));
    }
    const std::uint64_t src = parse_u64(toks[0], path, line_no, "source id");
    const std::uint64_t dst = parse_u64(toks[1], path, line_no, "destination id");
    if (src == 0 || dst == 0) fail_at(path, line_no, "vertex ids are 1-based and positive");
    const double value = weighted ? parse_double(toks[2], path, line_no, "weight") : 1.0;
    out.edges.push_back({src - 1, dst - 1, value});
    out.num_vertices = std::max({out.num_vertices, src, dst});
  }
  return out;
}

EdgeList load_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw InputError(path + ": empty file");
  ++line_no;
  const auto header = split_tokens(line);
  if (header.size() < 5 || lower(header[0]) != "%%matrixmarket" || lower(header[1]) != "matrix")
    fail_at(path, line_no, "not a Matrix Market matrix header");
  if (lower(header[2]) != "coordinate")
    fail_at(path, line_no, "unsupported layout '" + std::string(header[2]) +
                               "' (only coordinate)");
  const std::string field = lower(header[3]);
  if (field != "real" && field != "pattern" && field != "integer")
    fail_at(path, line_no,
            "unsupported field '" + std::string(header[3]) + "' (real, pattern, integer)");
  const std::string symmetry = lower(header[4]);
  if (symmetry != "general" && symmetry != "symmetric")
    fail_at(path, line_no,
            "unsupported symmetry '" + std::string(header[4]) + "' (general, symmetric)");
  const bool pattern = field == "pattern";
  const bool symmetric = symmetry == "symmetric";

  std::size_t rows = 0, cols = 0, declared = 0;
  bool have_size = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    const auto toks = split_tokens(line);
    if (toks.size() != 3) fail_at(path, line_no, "expected 'rows cols nnz' size line");
    rows = parse_u64(toks[0], path, line_no, "row count");
    cols = parse_u64(toks[1], path, line_no, "column count");
    declared = parse_u64(toks[2], path, line_no, "entry count");
    have_size = true;
    break;
  }
  if (!have_size) throw InputError(path + ": missing size line");

  EdgeList out;
  out.num_vertices = std::max(rows, cols);
  std::size_t seen = 0;
  while (seen < declared && std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    const auto toks = split_tokens(line);
    const std::size_t expected = pattern ? 2u : 3u;
    if (toks.size() != expected)
      fail_at(path, line_no, "expected " + std::to_string(expected) + " columns, got " +
                                 std::to_string(toks.size()));
    const std::uint64_t i = parse_u64(toks[0], path, line_no, "row id");
    const std::uint64_t j = parse_u64(toks[1], path, line_no, "column id");
    if (i == 0 || i > rows || j == 0 || j > cols)
      fail_at(path, line_no, "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                 ") outside declared " + std::to_string(rows) + " x " +
                                 std::to_string(cols) + " shape");
    const double value = pattern ? 1.0 : parse_double(toks[2], path, line_no, "value");
    out.edges.push_back({i - 1, j - 1, value});
    if (symmetric && i != j) out.edges.push_back({j - 1, i - 1, value});
    ++seen;
  }
  if (seen < declared)
    throw InputError(path + ": truncated — " + std::to_string(declared) +
                     " entries declared, " + std::to_string(seen) + " found");
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_comment_or_blank(line))
      fail_at(path, line_no, "data past the declared " + std::to_string(declared) + " entries");
  }
  return out;
}

std::vector<EdgeTriple<double>> preprocess(std::vector<EdgeTriple<double>> edges,
                                           PreprocessMode mode) {
  const auto key_less = [](const EdgeTriple<double>& x, const EdgeTriple<double>& y) {
    return x.src != y.src ? x.src < y.src : x.dst < y.dst;
  };
  const auto key_eq = [](const EdgeTriple<double>& x, const EdgeTriple<double>& y) {
    return x.src == y.src && x.dst == y.dst;
  };
  const auto cleanup = [&](std::vector<EdgeTriple<double>>& e) {
    std::erase_if(e, [](const EdgeTriple<double>& t) { return t.src == t.dst; });
    std::stable_sort(e.begin(), e.end(), key_less);
    e.erase(std::unique(e.begin(), e.end(), key_eq), e.end());
  };

  cleanup(edges);

  if (mode == PreprocessMode::SYMMETRIZE || mode == PreprocessMode::DAGIFY) {
    const std::size_t original = edges.size();
    edges.reserve(original * 2);
    for (std::size_t i = 0; i < original; ++i)
      edges.push_back({edges[i].dst, edges[i].src, edges[i].value});
    cleanup(edges);
    if (mode == PreprocessMode::DAGIFY)
      std::erase_if(edges, [](const EdgeTriple<double>& t) { return t.src >= t.dst; });
  } else if (mode == PreprocessMode::BIPARTITE_CHECK) {
    std::unordered_set<std::uint64_t> sources, destinations;
    for (const auto& e : edges) {
      sources.insert(e.src);
      destinations.insert(e.dst);
    }
    for (const auto& e : edges) {
      if (destinations.count(e.src) || sources.count(e.dst))
        throw InputError("not bipartite: edge " + std::to_string(e.src + 1) + " -> " +
                         std::to_string(e.dst + 1) +
                         " (1-based) mixes the user and item sides");
    }
  }
  return edges;
}

std::vector<EdgeTriple<double>> rmat_generate(const RmatParams& params) {
  if (params.scale >= 63) throw InputError("rmat: scale out of range");
  if (!(params.a >= 0.0 && params.b >= 0.0 && params.c >= 0.0 &&
        params.a + params.b + params.c <= 1.0))
    throw InputError("rmat: quadrant probabilities must be non-negative and sum to at most 1");
  const std::uint64_t count = static_cast<std::uint64_t>(params.edge_factor) << params.scale;
  std::vector<EdgeTriple<double>> edges;
  edges.reserve(count);
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ab = params.a + params.b;
  const double abc = ab + params.c;
  for (std::uint64_t t = 0; t < count; ++t) {
    std::uint64_t src = 0, dst = 0;
    for (unsigned level = 0; level < params.scale; ++level) {
      const std::uint64_t bit = std::uint64_t(1) << (params.scale - 1 - level);
      const double r = unit(rng);
      if (r < params.a) {
        // top-left quadrant: neither bit set
      } else if (r < ab) {
        dst |= bit;
      } else if (r < abc) {
        src |= bit;
      } else {
        src |= bit;
        dst |= bit;
      }
    }
    edges.push_back({src, dst, 1.0});
  }
  return edges;
}

std::vector<EdgeTriple<double>> bipartite_generate(const BipartiteParams& params) {
  if (params.num_ratings > 0 && (params.num_users == 0 || params.num_items == 0))
    throw InputError("bipartite: ratings require at least one user and one item");
  if (params.num_users != 0 && params.num_items != 0 &&
      params.num_ratings > params.num_users * params.num_items)
    throw InputError("bipartite: more ratings than user-item pairs");
  if (!(params.skew > 0.0 && params.skew < 1.0))
    throw InputError("bipartite: skew must be in (0, 1)");

  std::vector<EdgeTriple<double>> edges;
  edges.reserve(params.num_ratings);
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::uint64_t> user_dist(
      0, params.num_users == 0 ? 0 : params.num_users - 1);
  std::uniform_int_distribution<int> rating_dist(1, 5);
  unsigned levels = 0;
  while ((std::uint64_t(1) << levels) < params.num_items) ++levels;

  for (std::size_t t = 0; t < params.num_ratings; ++t) {
    const std::uint64_t user = user_dist(rng);
    std::uint64_t item = 0;
    do {
      item = 0;
      for (unsigned level = 0; level < levels; ++level)
        item = (item << 1) | (unit(rng) < params.skew ? 0u : 1u);
    } while (item >= params.num_items);
    edges.push_back({user, params.num_users + item,
                     static_cast<double>(rating_dist(rng))});
  }
  return edges;
}

namespace {

void put_u64_le(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

void write_binary(const std::string& path, const std::vector<EdgeTriple<double>>& edges,
                  std::size_t num_vertices) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  std::string buf;
  buf.reserve(20 + 24 * std::min<std::size_t>(edges.size(), 1 << 16));
  buf.append("GMB1", 4);
  put_u64_le(buf, num_vertices);
  put_u64_le(buf, edges.size());
  for (const auto& e : edges) {
    put_u64_le(buf, e.src);
    put_u64_le(buf, e.dst);
    put_u64_le(buf, std::bit_cast<std::uint64_t>(e.value));
    if (buf.size() >= (1 << 20)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw InputError("write failed on '" + path + "'");
}

EdgeList read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw InputError("cannot open '" + path + "'");
  const std::uint64_t size = static_cast<std::uint64_t>(in.tellg());
  in.seekg(0);
  unsigned char header[20];
  if (size < sizeof(header) || !in.read(reinterpret_cast<char*>(header), sizeof(header)))
    throw InputError(path + ": truncated header (not a graph binary?)");
  if (std::memcmp(header, "GMB1", 4) != 0)
    throw InputError(path + ": bad magic, not a graph binary");
  EdgeList out;
  out.num_vertices = get_u64_le(header + 4);
  const std::uint64_t num_edges = get_u64_le(header + 12);
  // Compare against the payload size instead of computing 20 + 24 * num_edges,
  // which a hostile header could overflow.
  if ((size - 20) % 24 != 0 || num_edges != (size - 20) / 24)
    throw InputError(path + ": size mismatch — header declares " + std::to_string(num_edges) +
                     " edges, file has " + std::to_string(size - 20) + " payload bytes (" +
                     std::to_string((size - 20) / 24) + " records)");
  out.edges.reserve(num_edges);
  constexpr std::size_t kBatch = 1 << 16;
  std::vector<unsigned char> buf(24 * kBatch);
  std::uint64_t remaining = num_edges;
  while (remaining > 0) {
    const std::size_t batch = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, kBatch));
    if (!in.read(reinterpret_cast<char*>(buf.data()),
                 static_cast<std::streamsize>(24 * batch)))
      throw InputError(path + ": truncated edge records");
    for (std::size_t i = 0; i < batch; ++i) {
      const unsigned char* p = buf.data() + 24 * i;
      out.edges.push_back({get_u64_le(p), get_u64_le(p + 8),
                           std::bit_cast<double>(get_u64_le(p + 16))});
    }
    remaining -= batch;
  }
  return out;
}

void write_edge_list(const std::string& path, const std::vector<EdgeTriple<double>>& edges) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  char num[64];
  for (const auto& e : edges) {
    std::snprintf(num, sizeof(num), "%.17g", e.value);
    out << (e.src + 1) << ' ' << (e.dst + 1) << ' ' << num << '\n';
  }
  if (!out) throw InputError("write failed on '" + path + "'");
}

}  // namespace semigraph::io
