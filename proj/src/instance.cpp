// Copyright 2026 The cover-sampler Authors.
//
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

#include "cover_sampler/instance.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "cover_sampler/error.hpp"
#include "cover_sampler/rng.hpp"

namespace cover_sampler {

namespace {

// Builds CSR offsets/adjacency from (row, col) pairs already sorted by row.
template <typename Id>
void build_csr(std::size_t rows,
               const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
               std::vector<std::size_t>& offsets, std::vector<Id>& adj) {
  offsets.assign(rows + 1, 0);
  for (const auto& [row, col] : pairs) ++offsets[row + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  adj.resize(pairs.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [row, col] : pairs) adj[cursor[row]++] = col;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line that is not a comment; blank lines are returned as-is.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line.front() == 'c') continue;
      return true;
    }
    return false;
  }

  bool next_nonblank(std::string& line) {
    while (next(line)) {
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  }

  [[noreturn]] void fail(ErrorCode code, const std::string& what) const {
    throw Error(code, "line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

bool parse_count(std::string_view token, std::uint64_t& out) {
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::uint64_t require_count(const LineReader& reader, std::string_view token,
                            std::string_view what) {
  std::uint64_t value = 0;
  if (!parse_count(token, value)) {
    reader.fail(ErrorCode::kParse,
                "expected a nonnegative integer for " + std::string(what) +
                    ", got '" + std::string(token) + "'");
  }
  return value;
}

constexpr std::uint64_t kMaxId = std::numeric_limits<std::uint32_t>::max();

}  // namespace

SetCoverInstance SetCoverInstance::from_edges(
    std::size_t num_sets, std::size_t num_elements,
    std::vector<std::pair<SetId, ElementId>> edges) {
  if (num_sets > kMaxId || num_elements > kMaxId) {
    throw Error(ErrorCode::kOutOfRange, "too many sets or elements");
  }
  for (const auto& [s, t] : edges) {
    if (s >= num_sets || t >= num_elements) {
      throw Error(ErrorCode::kOutOfRange,
                  "edge (" + std::to_string(s) + ", " + std::to_string(t) +
                      ") outside " + std::to_string(num_sets) + " sets x " +
                      std::to_string(num_elements) + " elements");
    }
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end());
      dup != edges.end()) {
    throw Error(ErrorCode::kDuplicate,
                "duplicate edge (" + std::to_string(dup->first) + ", " +
                    std::to_string(dup->second) + ")");
  }

  SetCoverInstance inst;
  inst.num_sets_ = num_sets;
  inst.num_elements_ = num_elements;
  build_csr(num_sets, edges, inst.set_offsets_, inst.set_adj_);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> by_element;
  by_element.reserve(edges.size());
  for (const auto& [s, t] : edges) by_element.emplace_back(t, s);
  std::sort(by_element.begin(), by_element.end());
  build_csr(num_elements, by_element, inst.element_offsets_, inst.element_adj_);

  for (std::size_t t = 0; t < num_elements; ++t) {
    const std::size_t degree = inst.sets_of(static_cast<ElementId>(t)).size();
    if (degree == 0) {
      throw Error(ErrorCode::kInfeasibleInstance,
                  "element " + std::to_string(t) + " belongs to no set");
    }
    inst.freq_ = std::max(inst.freq_, degree);
  }
  for (std::size_t s = 0; s < num_sets; ++s) {
    inst.delta_ =
        std::max(inst.delta_, inst.elements_of(static_cast<SetId>(s)).size());
  }
  return inst;
}

Hypergraph Hypergraph::from_edges(std::size_t num_vertices,
                                  std::vector<std::vector<VertexId>> edges) {
  if (num_vertices > kMaxId || edges.size() > kMaxId) {
    throw Error(ErrorCode::kOutOfRange, "hypergraph too large");
  }
  Hypergraph hg;
  hg.num_vertices_ = num_vertices;
  hg.edge_offsets_.assign(1, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> incidence;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto& edge = edges[e];
    if (edge.empty()) {
      throw Error(ErrorCode::kEmptyEdge, "edge " + std::to_string(e) + " is empty");
    }
    std::sort(edge.begin(), edge.end());
    if (edge.back() >= num_vertices) {
      throw Error(ErrorCode::kOutOfRange,
                  "edge " + std::to_string(e) + " uses vertex " +
                      std::to_string(edge.back()) + " >= " +
                      std::to_string(num_vertices));
    }
    if (auto dup = std::adjacent_find(edge.begin(), edge.end());
        dup != edge.end()) {
      throw Error(ErrorCode::kDuplicate, "edge " + std::to_string(e) +
                                             " repeats vertex " +
                                             std::to_string(*dup));
    }
    hg.rank_ = std::max(hg.rank_, edge.size());
    for (VertexId v : edge) {
      hg.edge_vertices_.push_back(v);
      incidence.emplace_back(v, static_cast<std::uint32_t>(e));
    }
    hg.edge_offsets_.push_back(hg.edge_vertices_.size());
  }
  std::sort(incidence.begin(), incidence.end());
  build_csr(num_vertices, incidence, hg.incidence_offsets_, hg.incidence_);
  for (std::size_t v = 0; v < num_vertices; ++v) {
    hg.max_degree_ = std::max(
        hg.max_degree_, hg.incident_edges(static_cast<VertexId>(v)).size());
  }
  return hg;
}

double Hypergraph::avg_rank() const {
  if (num_edges() == 0) return 0.0;
  return static_cast<double>(edge_vertices_.size()) /
         static_cast<double>(num_edges());
}

SetCoverInstance parse_instance(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next_nonblank(line)) {
    reader.fail(ErrorCode::kParse, "missing 'p sc' header");
  }
  auto header = split_tokens(line);
  if (header.size() != 5 || header[0] != "p" || header[1] != "sc") {
    reader.fail(ErrorCode::kParse,
                "expected 'p sc <num_sets> <num_elements> <num_edges>'");
  }
  const auto num_sets = require_count(reader, header[2], "num_sets");
  const auto num_elements = require_count(reader, header[3], "num_elements");
  const auto num_edges = require_count(reader, header[4], "num_edges");
  if (num_sets > kMaxId || num_elements > kMaxId) {
    reader.fail(ErrorCode::kOutOfRange, "header counts exceed 32-bit ids");
  }

  std::vector<std::pair<SetId, ElementId>> edges;
  edges.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(num_edges, 1u << 24)));
  for (std::uint64_t read = 0; read < num_edges; ++read) {
    if (!reader.next_nonblank(line)) {
      reader.fail(ErrorCode::kParse, "expected " + std::to_string(num_edges) +
                                         " edge lines, found " +
                                         std::to_string(read));
    }
    auto tokens = split_tokens(line);
    if (tokens.size() != 3 || tokens[0] != "e") {
      reader.fail(ErrorCode::kParse, "expected 'e <set_id> <element_id>'");
    }
    const auto s = require_count(reader, tokens[1], "set_id");
    const auto t = require_count(reader, tokens[2], "element_id");
    if (s >= num_sets || t >= num_elements) {
      reader.fail(ErrorCode::kOutOfRange,
                  "edge (" + std::to_string(s) + ", " + std::to_string(t) +
                      ") outside declared ranges");
    }
    edges.emplace_back(static_cast<SetId>(s), static_cast<ElementId>(t));
  }
  if (reader.next_nonblank(line)) {
    reader.fail(ErrorCode::kParse, "unexpected content after the last edge");
  }
  return SetCoverInstance::from_edges(num_sets, num_elements, std::move(edges));
}

Hypergraph parse_hypergraph(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next_nonblank(line)) {
    reader.fail(ErrorCode::kParse, "missing 'p hg' header");
  }
  auto header = split_tokens(line);
  if (header.size() != 4 || header[0] != "p" || header[1] != "hg") {
    reader.fail(ErrorCode::kParse, "expected 'p hg <num_vertices> <num_edges>'");
  }
  const auto num_vertices = require_count(reader, header[2], "num_vertices");
  const auto num_edges = require_count(reader, header[3], "num_edges");
  if (num_vertices > kMaxId || num_edges > kMaxId) {
    reader.fail(ErrorCode::kOutOfRange, "header counts exceed 32-bit ids");
  }

  std::vector<std::vector<VertexId>> edges;
  for (std::uint64_t read = 0; read < num_edges; ++read) {
    // A blank line is an (invalid) empty edge, so blanks are not skipped here.
    if (!reader.next(line)) {
      // A file whose final edge line is blank may lose it to newline
      // trimming; report that as the empty edge it encodes.
      if (read + 1 == num_edges) {
        reader.fail(ErrorCode::kEmptyEdge, "edge " + std::to_string(read) + " is empty");
      }
      reader.fail(ErrorCode::kParse, "expected " + std::to_string(num_edges) +
                                         " edge lines, found " +
                                         std::to_string(read));
    }
    std::vector<VertexId> edge;
    for (auto token : split_tokens(line)) {
      const auto v = require_count(reader, token, "vertex id");
      if (v >= num_vertices) {
        reader.fail(ErrorCode::kOutOfRange, "vertex " + std::to_string(v) +
                                                " >= " + std::to_string(num_vertices));
      }
      edge.push_back(static_cast<VertexId>(v));
    }
    if (edge.empty()) {
      reader.fail(ErrorCode::kEmptyEdge, "edge " + std::to_string(read) + " is empty");
    }
    std::vector<VertexId> sorted = edge;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      reader.fail(ErrorCode::kDuplicate, "edge repeats a vertex");
    }
    edges.push_back(std::move(edge));
  }
  if (reader.next_nonblank(line)) {
    reader.fail(ErrorCode::kParse, "unexpected content after the last edge");
  }
  return Hypergraph::from_edges(num_vertices, std::move(edges));
}

void serialize_instance(const SetCoverInstance& instance, std::ostream& out) {
  out << "p sc " << instance.num_sets() << ' ' << instance.num_elements() << ' '
      << instance.num_edges() << '\n';
  for (std::size_t s = 0; s < instance.num_sets(); ++s) {
    for (ElementId t : instance.elements_of(static_cast<SetId>(s))) {
      out << "e " << s << ' ' << t << '\n';
    }
  }
}

void serialize_hypergraph(const Hypergraph& hg, std::ostream& out) {
  out << "p hg " << hg.num_vertices() << ' ' << hg.num_edges() << '\n';
  for (std::size_t e = 0; e < hg.num_edges(); ++e) {
    bool first = true;
    for (VertexId v : hg.edge(static_cast<EdgeId>(e))) {
      if (!first) out << ' ';
      out << v;
      first = false;
    }
    out << '\n';
  }
}

namespace {

// Floyd's algorithm: `count` distinct uniform values from [0, universe).
std::vector<std::uint32_t> sample_distinct(std::size_t universe,
                                           std::size_t count, Rng& rng) {
  std::vector<std::uint32_t> chosen;
  chosen.reserve(count);
  for (std::size_t j = universe - count; j < universe; ++j) {
    const auto t = static_cast<std::uint32_t>(uniform_index(rng, j + 1));
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(static_cast<std::uint32_t>(j));
    }
  }
  return chosen;
}

}  // namespace

SetCoverInstance generate_random_instance(std::size_t num_sets,
                                          std::size_t num_elements,
                                          std::size_t element_degree,
                                          std::uint64_t seed) {
  if (element_degree == 0 || element_degree > num_sets) {
    throw Error(ErrorCode::kInvalidArgument,
                "element_degree must lie in [1, num_sets]; got " +
                    std::to_string(element_degree) + " with " +
                    std::to_string(num_sets) + " sets");
  }
  Rng rng(seed);
  std::vector<std::pair<SetId, ElementId>> edges;
  edges.reserve(num_elements * element_degree);
  for (std::size_t t = 0; t < num_elements; ++t) {
    for (auto s : sample_distinct(num_sets, element_degree, rng)) {
      edges.emplace_back(s, static_cast<ElementId>(t));
    }
  }
  return SetCoverInstance::from_edges(num_sets, num_elements, std::move(edges));
}

Hypergraph generate_random_hypergraph(std::size_t num_vertices,
                                      std::size_t num_edges,
                                      std::size_t edge_size,
                                      std::uint64_t seed) {
  if (edge_size == 0 || edge_size > num_vertices) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge_size must lie in [1, num_vertices]");
  }
  Rng rng(seed);
  std::vector<std::vector<VertexId>> edges(num_edges);
  for (auto& edge : edges) edge = sample_distinct(num_vertices, edge_size, rng);
  return Hypergraph::from_edges(num_vertices, std::move(edges));
}

Hypergraph to_hypergraph(const SetCoverInstance& instance) {
  std::vector<std::vector<VertexId>> edges(instance.num_elements());
  for (std::size_t t = 0; t < instance.num_elements(); ++t) {
    auto sets = instance.sets_of(static_cast<ElementId>(t));
    edges[t].assign(sets.begin(), sets.end());
  }
  return Hypergraph::from_edges(instance.num_sets(), std::move(edges));
}

}  // namespace cover_sampler
