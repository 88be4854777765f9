// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STALLINGS_CORE_AGRAPH_HPP
#define STALLINGS_CORE_AGRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/partial_injection.hpp"

namespace stallings {

/// A letter of a word over {a_1..a_r} and inverses: positive index
/// means a_i read forward, negative means a_i^{-1}.
using Letter = std::int32_t;
using Word = std::vector<Letter>;

/// A rooted A-graph: n vertices, one partial injection per letter,
/// base vertex fixed to the first vertex. Determinism and
/// co-determinism per letter are exactly the injectivity of each
/// letter's map. Immutable after construction; predicates are pure.
class AGraph {
 public:
  /// Assembles a graph from per-letter injections, all on {0..n-1}.
  /// The list must be non-empty and sizes must agree.
  AGraph(std::vector<PartialInjection> letters, std::uint32_t n);

  std::uint32_t size() const { return n_; }
  std::uint32_t alphabet() const { return static_cast<std::uint32_t>(letters_.size()); }
  static constexpr Vertex base() { return 0; }

  const PartialInjection& letter(std::uint32_t a) const { return letters_[a]; }

  /// Target of the a-edge out of u, or kNoVertex.
  Vertex step(Vertex u, std::uint32_t a) const { return letters_[a].image(u); }
  /// Source of the a-edge into u, or kNoVertex.
  Vertex step_back(Vertex u, std::uint32_t a) const {
    return preimage_[a][u];
  }
  /// Follows a signed letter (negative = backward).
  Vertex traverse(Vertex u, Letter l) const {
    return l > 0 ? step(u, static_cast<std::uint32_t>(l - 1))
                 : step_back(u, static_cast<std::uint32_t>(-l - 1));
  }

  std::uint32_t edge_count() const { return edges_; }

  bool is_connected() const;

  /// No vertex other than the base occurs at most once among the edge
  /// triples; a loop counts twice for its vertex.
  bool is_one_trim() const;

  bool is_admissible() const { return is_connected() && is_one_trim(); }

  /// rank = |E| - |V| + 1; meaningful only for admissible graphs
  /// (usage error otherwise).
  std::uint32_t rank() const;

  /// Every letter total on the vertex set; cross-checked against
  /// rank == (r-1) n + 1. Requires admissibility.
  bool is_finite_index() const;

  /// Canonical byte encoding of the rooted labeled graph: vertices are
  /// renumbered by breadth-first order from the base, exploring
  /// a_1..a_r forward then a_1..a_r backward, and the per-letter edge
  /// lists are emitted in that numbering. Two connected rooted
  /// A-graphs are isomorphic iff their canonical forms are equal.
  /// Requires connectivity.
  std::string canonical_form() const;

  /// True iff the word traces from the base back to the base with every
  /// step defined. Requires a freely reduced word.
  bool accepts_word(const Word& w) const;

  /// Words reading a free basis of the represented subgroup off a
  /// spanning tree (one word per non-tree edge). Requires
  /// admissibility.
  std::vector<Word> subgroup_basis() const;

 private:
  std::uint32_t n_;
  std::vector<PartialInjection> letters_;
  std::vector<std::vector<Vertex>> preimage_;
  std::uint32_t edges_;
};

/// Builds the Stallings graph of the subgroup generated by the words:
/// a bouquet of word loops at the base, folded until deterministic.
/// Words must be non-empty and freely reduced. `alphabet` of 0 means
/// the largest letter index used.
AGraph fold(const std::vector<Word>& words, std::uint32_t alphabet = 0);

/// Parses "a1 a2' a1" style syntax: letters a1..aR, a trailing
/// apostrophe marks the inverse, tokens whitespace-separated. Rejects
/// malformed tokens and words that are not freely reduced.
Word parse_word(const std::string& text);
std::string word_to_string(const Word& w);

/// Sorted-edge JSON: {"n":..,"r":..,"base":1,"edges":[[u,"a1",v],...]}
/// with 1-based vertices, edges ordered by (letter, source).
std::string graph_to_json(const AGraph& g);

/// GraphViz DOT with the base drawn as a double circle.
std::string graph_to_dot(const AGraph& g, const std::string& name = "stallings");

}  // namespace stallings

#endif
