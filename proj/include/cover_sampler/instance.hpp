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

#ifndef COVER_SAMPLER_INSTANCE_HPP_
#define COVER_SAMPLER_INSTANCE_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace cover_sampler {

using SetId = std::uint32_t;
using ElementId = std::uint32_t;
using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Immutable bipartite incidence structure of a set-cover instance. Adjacency
// is stored in both directions (CSR, sorted ids), so both element -> sets and
// set -> elements scans are contiguous.
class SetCoverInstance {
 public:
  SetCoverInstance() = default;

  // Validates ids, rejects duplicate (set, element) pairs, and rejects
  // elements that no set contains (ErrorCode::kInfeasibleInstance).
  static SetCoverInstance from_edges(
      std::size_t num_sets, std::size_t num_elements,
      std::vector<std::pair<SetId, ElementId>> edges);

  std::size_t num_sets() const { return num_sets_; }
  std::size_t num_elements() const { return num_elements_; }
  std::size_t num_edges() const { return set_adj_.size(); }
  // Vertex count of the bipartite graph: sets plus elements.
  std::size_t num_vertices() const { return num_sets_ + num_elements_; }
  std::size_t delta() const { return delta_; }
  std::size_t freq() const { return freq_; }

  std::span<const ElementId> elements_of(SetId s) const {
    return {set_adj_.data() + set_offsets_[s],
            set_offsets_[s + 1] - set_offsets_[s]};
  }
  std::span<const SetId> sets_of(ElementId t) const {
    return {element_adj_.data() + element_offsets_[t],
            element_offsets_[t + 1] - element_offsets_[t]};
  }

  friend bool operator==(const SetCoverInstance&,
                         const SetCoverInstance&) = default;

 private:
  std::size_t num_sets_ = 0;
  std::size_t num_elements_ = 0;
  std::size_t delta_ = 0;
  std::size_t freq_ = 0;
  std::vector<std::size_t> set_offsets_{0};
  std::vector<ElementId> set_adj_;
  std::vector<std::size_t> element_offsets_{0};
  std::vector<SetId> element_adj_;
};

// Hypergraph with sorted, duplicate-free, nonempty edges.
class Hypergraph {
 public:
  Hypergraph() = default;

  // Sorts every edge; rejects empty edges (kEmptyEdge), out-of-range vertices
  // (kOutOfRange) and repeated vertices inside an edge (kDuplicate).
  static Hypergraph from_edges(std::size_t num_vertices,
                               std::vector<std::vector<VertexId>> edges);

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edge_offsets_.size() - 1; }
  std::size_t rank() const { return rank_; }
  double avg_rank() const;
  std::size_t max_degree() const { return max_degree_; }

  std::span<const VertexId> edge(EdgeId e) const {
    return {edge_vertices_.data() + edge_offsets_[e],
            edge_offsets_[e + 1] - edge_offsets_[e]};
  }
  std::span<const EdgeId> incident_edges(VertexId v) const {
    return {incidence_.data() + incidence_offsets_[v],
            incidence_offsets_[v + 1] - incidence_offsets_[v]};
  }

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::size_t num_vertices_ = 0;
  std::size_t rank_ = 0;
  std::size_t max_degree_ = 0;
  std::vector<std::size_t> edge_offsets_{0};
  std::vector<VertexId> edge_vertices_;
  std::vector<std::size_t> incidence_offsets_{0};
  std::vector<EdgeId> incidence_;
};

// Line-based text formats. Lines starting with 'c' are comments.
//
//   p sc <num_sets> <num_elements> <num_edges>
//   e <set_id> <element_id>            (num_edges lines, 0-based ids)
//
//   p hg <num_vertices> <num_edges>
//   <v0> <v1> ...                      (num_edges lines, one edge each)
SetCoverInstance parse_instance(std::istream& in);
Hypergraph parse_hypergraph(std::istream& in);

// Emits the grammar above; set-cover edges sorted by (set, element).
void serialize_instance(const SetCoverInstance& instance, std::ostream& out);
void serialize_hypergraph(const Hypergraph& hg, std::ostream& out);

// Every element joins `element_degree` distinct sets chosen uniformly at
// random, so freq() == element_degree whenever num_elements > 0.
SetCoverInstance generate_random_instance(std::size_t num_sets,
                                          std::size_t num_elements,
                                          std::size_t element_degree,
                                          std::uint64_t seed);

// num_edges edges, each made of `edge_size` distinct uniform vertices.
Hypergraph generate_random_hypergraph(std::size_t num_vertices,
                                      std::size_t num_edges,
                                      std::size_t edge_size,
                                      std::uint64_t seed);

// Vertices are the sets; edge t is the list of sets containing element t.
Hypergraph to_hypergraph(const SetCoverInstance& instance);

}  // namespace cover_sampler

#endif  // COVER_SAMPLER_INSTANCE_HPP_
