// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <set>

#include "core/agraph.hpp"
#include "core/generator.hpp"
#include "core/oracle.hpp"
#include "core/rng.hpp"

using namespace stallings;

namespace {

PartialInjection inj_1based(std::vector<int> img) {
  std::vector<Vertex> raw;
  for (int v : img)
    raw.push_back(v == 0 ? kNoVertex : static_cast<Vertex>(v - 1));
  return PartialInjection(std::move(raw));
}

AGraph graph2(std::vector<int> a, std::vector<int> b) {
  std::uint32_t n = static_cast<std::uint32_t>(a.size());
  return AGraph({inj_1based(std::move(a)), inj_1based(std::move(b))}, n);
}

AGraph relabel(const AGraph& g, const std::vector<Vertex>& p) {
  std::vector<PartialInjection> letters;
  for (std::uint32_t a = 0; a < g.alphabet(); ++a) {
    PartialInjection inj = PartialInjection::empty(g.size());
    for (Vertex u = 0; u < g.size(); ++u) {
      Vertex v = g.step(u, a);
      if (v != kNoVertex) inj.raw()[p[u]] = p[v];
    }
    letters.push_back(std::move(inj));
  }
  return AGraph(std::move(letters), g.size());
}

// Root-preserving label-preserving isomorphism by brute force.
bool isomorphic(const AGraph& g, const AGraph& h) {
  if (g.size() != h.size() || g.alphabet() != h.alphabet()) return false;
  std::vector<Vertex> p(g.size());
  for (Vertex v = 0; v < g.size(); ++v) p[v] = v;
  do {
    if (p[0] != 0) continue;
    bool match = true;
    for (std::uint32_t a = 0; match && a < g.alphabet(); ++a)
      for (Vertex u = 0; match && u < g.size(); ++u) {
        Vertex v = g.step(u, a);
        Vertex w = h.step(p[u], a);
        match = (v == kNoVertex ? w == kNoVertex
                                : (w != kNoVertex && w == p[v]));
      }
    if (match) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

}  // namespace

TEST_CASE("assembly validates its input") {
  CHECK_THROWS_AS(AGraph({}, 1), UsageError);
  CHECK_THROWS_AS(AGraph({PartialInjection::empty(2)}, 3), UsageError);
  CHECK_THROWS_AS(graph2({1, 1}, {0, 0}), UsageError);  // not injective
  AGraph ok = graph2({0, 0}, {0, 0});
  CHECK(ok.size() == 2);
  CHECK(ok.edge_count() == 0);
}

TEST_CASE("single-vertex graphs") {
  AGraph both = graph2({1}, {1});
  CHECK(both.is_connected());
  CHECK(both.is_one_trim());
  CHECK(both.is_admissible());
  CHECK(both.rank() == 2);         // the whole rank-2 free group
  CHECK(both.is_finite_index());
  CHECK(both.edge_count() == 2);

  AGraph trivial = graph2({0}, {0});
  CHECK(trivial.is_admissible());
  CHECK(trivial.rank() == 0);      // the trivial subgroup
  CHECK_FALSE(trivial.is_finite_index());

  AGraph one_loop = graph2({1}, {0});
  CHECK(one_loop.is_admissible());
  CHECK(one_loop.rank() == 1);
  CHECK_FALSE(one_loop.is_finite_index());
}

TEST_CASE("connectivity") {
  CHECK_FALSE(graph2({0, 0}, {0, 0}).is_connected());
  CHECK(graph2({2, 0}, {0, 0}).is_connected());
  CHECK_FALSE(graph2({1, 2}, {0, 0}).is_connected());  // two loops apart
}

TEST_CASE("one-trimness counts occurrences") {
  // single edge (1, a1, 2): vertex 2 occurs once -> leaf
  CHECK_FALSE(graph2({2, 0}, {0, 0}).is_one_trim());
  // edges (1,a1,2), (2,a2,1): vertex 2 occurs twice
  CHECK(graph2({2, 0}, {0, 1}).is_one_trim());
  // base vertex is exempt
  CHECK(graph2({0}, {0}).is_one_trim());
  // a1 two-cycle alone is admissible at n = 2
  AGraph swap2 = graph2({2, 1}, {0, 0});
  CHECK(swap2.is_admissible());
  // loop on a non-base vertex counts twice
  AGraph loop2 = graph2({2, 0}, {0, 2});
  CHECK(loop2.is_one_trim());
}

TEST_CASE("rank requires admissibility") {
  CHECK_THROWS_AS(graph2({0, 0}, {0, 0}).rank(), UsageError);
  CHECK_THROWS_AS(graph2({0, 0}, {0, 0}).is_finite_index(), UsageError);
}

TEST_CASE("the alternating four-cycle") {
  // a: 1->2, 4->3; b: 2->4, 3->1 (a,b,a,b around a square)
  AGraph c4 = graph2({2, 0, 0, 3}, {0, 4, 1, 0});
  CHECK(c4.is_connected());
  CHECK(c4.is_admissible());
  CHECK(c4.rank() == 1);
  CHECK_FALSE(c4.is_finite_index());
  CHECK(c4.accepts_word(parse_word("a1 a2 a1 a2")));
  CHECK_FALSE(c4.accepts_word(parse_word("a1 a2 a1' a2'")));
  CHECK_FALSE(c4.accepts_word(parse_word("a1")));
}

TEST_CASE("the a,a,b,b four-cycle") {
  // a: 1->2, 2->3; b: 3->4, 4->1: reads a a b b around the square.
  AGraph c4 = graph2({2, 3, 0, 0}, {0, 0, 4, 1});
  CHECK(c4.is_admissible());
  CHECK(c4.rank() == 1);
  CHECK(c4.accepts_word(parse_word("a1 a1 a2 a2")));
  CHECK_FALSE(c4.accepts_word(parse_word("a1 a2 a1 a2")));
  // Not isomorphic to the alternating cycle, rooted anywhere we draw it.
  AGraph alt = graph2({2, 0, 0, 3}, {0, 4, 1, 0});
  CHECK(c4.canonical_form() != alt.canonical_form());
}

TEST_CASE("finite index iff every letter total") {
  AGraph fi = graph2({2, 1}, {1, 2});
  CHECK(fi.is_finite_index());
  CHECK(fi.rank() == 3);  // (r-1)n + 1
  AGraph not_fi = graph2({2, 1}, {1, 0});
  CHECK(not_fi.is_admissible());
  CHECK_FALSE(not_fi.is_finite_index());
}

TEST_CASE("rank formula and totality agree on every enumerated graph") {
  // rank == (r-1)n + 1 iff every letter is total; is_finite_index
  // computes both routes and hard-errors on disagreement, so calling it
  // across the full admissible enumeration is the equivalence check.
  for (std::uint32_t n : {1u, 2u, 3u}) {
    auto injections = enumerate_partial_injections(n);
    std::uint64_t finite_index_count = 0;
    for (std::size_t i = 0; i < injections.size(); ++i)
      for (std::size_t j = 0; j < injections.size(); ++j) {
        AGraph g({injections[i], injections[j]}, n);
        if (!g.is_admissible()) continue;
        bool fi = g.is_finite_index();
        CHECK(fi == (g.rank() == n + 1));
        finite_index_count += fi;
      }
    // Permutation pairs whose graph is connected: all 4 at n=1; the
    // 2!^2 = 4 pairs minus (id,id) at n=2; brute count at n=3.
    if (n == 1) CHECK(finite_index_count == 1);
    if (n == 2) CHECK(finite_index_count == 3);
  }
}

TEST_CASE("canonical form is a rooted isomorphism invariant") {
  SUBCASE("relabelings collapse") {
    AGraph c4 = graph2({2, 0, 0, 3}, {0, 4, 1, 0});
    std::string c0 = c4.canonical_form();
    // All 3! relabelings of the non-base vertices.
    std::vector<Vertex> p{0, 1, 2, 3};
    do {
      if (p[0] != 0) continue;
      CHECK(relabel(c4, p).canonical_form() == c0);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  SUBCASE("the two rootings of the a/b two-cycle differ") {
    AGraph at1 = graph2({2, 0}, {0, 1});  // a out of base
    AGraph at2 = graph2({0, 1}, {2, 0});  // b out of base
    CHECK(at1.canonical_form() != at2.canonical_form());
  }
  SUBCASE("fixed minimal encoding for the one-vertex empty graph") {
    CHECK(graph2({0}, {0}).canonical_form() == "1 2|0|0");
  }
  SUBCASE("disconnected input is rejected") {
    CHECK_THROWS_AS(graph2({0, 0}, {0, 0}).canonical_form(), UsageError);
  }
  SUBCASE("exhaustive separation at n <= 3") {
    // Equal canonical forms iff brute-force isomorphic, over every pair
    // of admissible graphs at n = 2 and n = 3.
    for (std::uint32_t n : {2u, 3u}) {
      auto injections = enumerate_partial_injections(n);
      std::vector<AGraph> graphs;
      std::vector<std::string> canon;
      for (std::size_t i = 0; i < injections.size(); ++i)
        for (std::size_t j = 0; j < injections.size(); ++j) {
          AGraph g({injections[i], injections[j]}, n);
          if (g.is_admissible()) {
            canon.push_back(g.canonical_form());
            graphs.push_back(std::move(g));
          }
        }
      REQUIRE(graphs.size() == (n == 2 ? 25 : 504));
      std::size_t mismatches = 0;
      for (std::size_t i = 0; i < graphs.size(); ++i)
        for (std::size_t j = i + 1; j < graphs.size(); ++j)
          if ((canon[i] == canon[j]) != isomorphic(graphs[i], graphs[j]))
            ++mismatches;
      CHECK(mismatches == 0);
    }
  }
}

TEST_CASE("word parsing") {
  Word w = parse_word("a1 a2' a10");
  REQUIRE(w.size() == 3);
  CHECK(w[0] == 1);
  CHECK(w[1] == -2);
  CHECK(w[2] == 10);
  CHECK(parse_word("").empty());
  CHECK(word_to_string(w) == "a1 a2' a10");
  CHECK_THROWS_AS(parse_word("b1"), UsageError);
  CHECK_THROWS_AS(parse_word("a"), UsageError);
  CHECK_THROWS_AS(parse_word("a0"), UsageError);
  CHECK_THROWS_AS(parse_word("a1 a1'"), UsageError);  // not reduced
  CHECK_THROWS_AS(parse_word("a1' a1"), UsageError);
}

TEST_CASE("fold builds Stallings graphs") {
  SUBCASE("one generator loop") {
    AGraph g = fold({parse_word("a1")});
    CHECK(g.size() == 1);
    CHECK(g.rank() == 1);
    CHECK(g.accepts_word(parse_word("a1 a1")));
    CHECK(g.accepts_word(Word{}));  // empty word is always accepted
    CHECK_FALSE(g.accepts_word(parse_word("a2")));
  }
  SUBCASE("the whole group") {
    AGraph g = fold({parse_word("a1"), parse_word("a2")});
    CHECK(g.size() == 1);
    CHECK(g.rank() == 2);
    CHECK(g.is_finite_index());
  }
  SUBCASE("the commutator folds to a rank-one square") {
    AGraph g = fold({parse_word("a1 a2 a1' a2'")});
    CHECK(g.size() == 4);
    CHECK(g.rank() == 1);
    CHECK(g.accepts_word(parse_word("a1 a2 a1' a2'")));
    CHECK(g.accepts_word(parse_word("a1 a2 a1' a2' a1 a2 a1' a2'")));
    // The subgroup contains inverses of its elements.
    CHECK(g.accepts_word(parse_word("a2 a1 a2' a1'")));
    CHECK_FALSE(g.accepts_word(parse_word("a1")));
    CHECK_FALSE(g.accepts_word(parse_word("a1 a1")));
    CHECK_FALSE(g.accepts_word(parse_word("a1 a2")));
  }
  SUBCASE("folding merges clashing edges") {
    // ab^2a^-1 = (aba^-1)^2, so the pair generates <aba^-1>: one
    // conjugated loop, rank 1 on two vertices.
    AGraph g = fold({parse_word("a1 a2 a1'"), parse_word("a1 a2 a2 a1'")});
    CHECK(g.is_admissible());
    CHECK(g.size() == 2);
    CHECK(g.rank() == 1);
    CHECK(g.accepts_word(parse_word("a1 a2 a1'")));
    CHECK(g.accepts_word(parse_word("a1 a2 a2 a1'")));
    CHECK_FALSE(g.accepts_word(parse_word("a2")));
  }
  SUBCASE("folding can collapse to the whole group") {
    // <ab, ab^2> contains b and hence a: the full group.
    AGraph g = fold({parse_word("a1 a2"), parse_word("a1 a2 a2")});
    CHECK(g.size() == 1);
    CHECK(g.rank() == 2);
    CHECK(g.is_finite_index());
  }
  SUBCASE("unreduced or empty words are usage errors") {
    CHECK_THROWS_AS(fold({Word{}}), UsageError);
    CHECK_THROWS_AS(fold({Word{1, -1}}), UsageError);
  }
  SUBCASE("explicit alphabet widens the graph") {
    AGraph g = fold({parse_word("a1")}, 3);
    CHECK(g.alphabet() == 3);
  }
}

TEST_CASE("accepts_word holds for every generator (property)") {
  RandomSource src(55);
  for (int t = 0; t < 60; ++t) {
    // Random small word list over two letters.
    std::vector<Word> words;
    std::uint32_t nwords = 1 + src.uniform_index(3);
    for (std::uint32_t i = 0; i < nwords; ++i) {
      Word w;
      std::uint32_t len = 1 + src.uniform_index(8);
      while (w.size() < len) {
        Letter l = static_cast<Letter>(1 + src.uniform_index(2));
        if (src.uniform_index(2)) l = -l;
        if (!w.empty() && w.back() == -l) continue;
        w.push_back(l);
      }
      words.push_back(std::move(w));
    }
    AGraph g = fold(words, 2);
    for (const auto& w : words) CHECK(g.accepts_word(w));
  }
}

TEST_CASE("basis words regenerate the graph through fold") {
  InjectionTable table(40);
  RandomSource src(2718);
  for (int t = 0; t < 40; ++t) {
    std::uint32_t n = 2 + src.uniform_index(19);
    auto rep = random_admissible_graph(n, 2, table, src);
    auto basis = rep.graph.subgroup_basis();
    CHECK(basis.size() == rep.graph.rank());
    AGraph again = fold(basis, 2);
    CHECK(again.canonical_form() == rep.graph.canonical_form());
  }
}

TEST_CASE("serialization formats") {
  AGraph g = graph2({2, 0}, {0, 1});
  CHECK(graph_to_json(g) ==
        "{\"n\":2,\"r\":2,\"base\":1,\"edges\":[[1,\"a1\",2],[2,\"a2\",1]]}");
  std::string dot = graph_to_dot(g);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("1 [shape=doublecircle];") != std::string::npos);
  CHECK(dot.find("1 -> 2 [label=\"a1\"];") != std::string::npos);
  CHECK(dot.find("2 -> 1 [label=\"a2\"];") != std::string::npos);
}
