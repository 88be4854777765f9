// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/agraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "core/rng.hpp"

namespace stallings {

AGraph::AGraph(std::vector<PartialInjection> letters, std::uint32_t n)
    : n_(n), letters_(std::move(letters)) {
  if (n_ == 0) throw UsageError("AGraph: need at least one vertex");
  if (letters_.empty()) throw UsageError("AGraph: need at least one letter");
  edges_ = 0;
  preimage_.reserve(letters_.size());
  for (const auto& inj : letters_) {
    if (inj.size() != n_) throw UsageError("AGraph: injection size mismatch");
    if (!inj.valid()) throw UsageError("AGraph: letter is not injective");
    edges_ += inj.defined_count();
    std::vector<Vertex> pre(n_, kNoVertex);
    for (Vertex u = 0; u < n_; ++u)
      if (inj.defined(u)) pre[inj.image(u)] = u;
    preimage_.push_back(std::move(pre));
  }
}

bool AGraph::is_connected() const {
  std::vector<bool> seen(n_, false);
  std::vector<Vertex> stack{base()};
  seen[base()] = true;
  std::uint32_t reached = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (std::uint32_t a = 0; a < letters_.size(); ++a) {
      for (Vertex v : {step(u, a), step_back(u, a)}) {
        if (v != kNoVertex && !seen[v]) {
          seen[v] = true;
          ++reached;
          stack.push_back(v);
        }
      }
    }
  }
  return reached == n_;
}

bool AGraph::is_one_trim() const {
  // occurrences[v] = number of times v appears in the edge triples;
  // a loop (v,a,v) contributes two.
  std::vector<std::uint32_t> occ(n_, 0);
  for (const auto& inj : letters_) {
    for (Vertex u = 0; u < n_; ++u) {
      if (!inj.defined(u)) continue;
      occ[u] += 1;
      occ[inj.image(u)] += 1;
    }
  }
  for (Vertex v = 1; v < n_; ++v)
    if (occ[v] <= 1) return false;
  return true;
}

std::uint32_t AGraph::rank() const {
  if (!is_admissible())
    throw UsageError("rank: graph is not a graphical representation");
  return edges_ - n_ + 1;
}

bool AGraph::is_finite_index() const {
  if (!is_admissible())
    throw UsageError("is_finite_index: graph is not admissible");
  bool all_total = true;
  for (const auto& inj : letters_) all_total = all_total && inj.total();
  const std::uint32_t r = alphabet();
  bool by_rank = rank() == (r - 1) * n_ + 1;
  if (all_total != by_rank)
    throw InternalError("finite-index criteria disagree");
  return all_total;
}

std::string AGraph::canonical_form() const {
  // BFS renumbering; determinism of the letter maps makes this a
  // canonical order for rooted label-preserving isomorphism.
  std::vector<Vertex> number(n_, kNoVertex);
  std::vector<Vertex> order;
  order.reserve(n_);
  number[base()] = 0;
  order.push_back(base());
  for (std::uint32_t head = 0; head < order.size(); ++head) {
    Vertex u = order[head];
    for (std::uint32_t a = 0; a < letters_.size(); ++a) {
      Vertex v = step(u, a);
      if (v != kNoVertex && number[v] == kNoVertex) {
        number[v] = static_cast<Vertex>(order.size());
        order.push_back(v);
      }
    }
    for (std::uint32_t a = 0; a < letters_.size(); ++a) {
      Vertex v = step_back(u, a);
      if (v != kNoVertex && number[v] == kNoVertex) {
        number[v] = static_cast<Vertex>(order.size());
        order.push_back(v);
      }
    }
  }
  if (order.size() != n_)
    throw UsageError("canonical_form: graph is not connected");

  std::ostringstream os;
  os << n_ << ' ' << letters_.size();
  for (std::uint32_t a = 0; a < letters_.size(); ++a) {
    os << '|';
    for (Vertex nu = 0; nu < n_; ++nu) {
      Vertex u = order[nu];
      Vertex v = step(u, a);
      if (nu) os << ' ';
      os << (v == kNoVertex ? 0 : number[v] + 1);
    }
  }
  return std::move(os).str();
}

bool AGraph::accepts_word(const Word& w) const {
  Vertex u = base();
  for (Letter l : w) {
    std::uint32_t idx = static_cast<std::uint32_t>(l > 0 ? l : -l);
    if (idx == 0) throw UsageError("accepts_word: letter index 0");
    if (idx > alphabet()) return false;
    u = traverse(u, l);
    if (u == kNoVertex) return false;
  }
  return u == base();
}

std::vector<Word> AGraph::subgroup_basis() const {
  if (!is_admissible()) throw UsageError("subgroup_basis: not admissible");
  // BFS spanning tree; path_to[v] reads from the base to v.
  std::vector<Word> path_to(n_);
  std::vector<bool> seen(n_, false);
  std::vector<Vertex> queue{base()};
  seen[base()] = true;
  // in_tree[a][src] marks the underlying edge (src, a, step(src, a)).
  std::vector<std::vector<bool>> in_tree(letters_.size(),
                                         std::vector<bool>(n_, false));
  for (std::uint32_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    for (std::uint32_t a = 0; a < letters_.size(); ++a) {
      Vertex v = step(u, a);
      if (v != kNoVertex && !seen[v]) {
        seen[v] = true;
        path_to[v] = path_to[u];
        path_to[v].push_back(static_cast<Letter>(a + 1));
        in_tree[a][u] = true;
        queue.push_back(v);
      }
      v = step_back(u, a);
      if (v != kNoVertex && !seen[v]) {
        seen[v] = true;
        path_to[v] = path_to[u];
        path_to[v].push_back(-static_cast<Letter>(a + 1));
        in_tree[a][v] = true;
        queue.push_back(v);
      }
    }
  }
  std::vector<Word> basis;
  for (std::uint32_t a = 0; a < letters_.size(); ++a) {
    for (Vertex u = 0; u < n_; ++u) {
      Vertex v = step(u, a);
      if (v == kNoVertex || in_tree[a][u]) continue;
      Word w = path_to[u];
      w.push_back(static_cast<Letter>(a + 1));
      for (auto it = path_to[v].rbegin(); it != path_to[v].rend(); ++it)
        w.push_back(-*it);
      // Free reduction: tree paths can cancel around the edge.
      Word reduced;
      for (Letter l : w) {
        if (!reduced.empty() && reduced.back() == -l) reduced.pop_back();
        else reduced.push_back(l);
      }
      basis.push_back(std::move(reduced));
    }
  }
  return basis;
}

namespace {

struct Dsu {
  std::vector<Vertex> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  Vertex find(Vertex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

void check_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == -w[i + 1])
      throw UsageError("word is not freely reduced");
  for (Letter l : w)
    if (l == 0) throw UsageError("letter index 0 is invalid");
}

}  // namespace

AGraph fold(const std::vector<Word>& words, std::uint32_t alphabet) {
  std::uint32_t r = alphabet;
  for (const auto& w : words) {
    if (w.empty()) throw UsageError("fold: empty word");
    check_reduced(w);
    for (Letter l : w)
      r = std::max(r, static_cast<std::uint32_t>(l > 0 ? l : -l));
  }
  if (r == 0) throw UsageError("fold: empty alphabet");

  // Bouquet of word loops at vertex 0.
  struct Edge {
    Vertex u, v;
    std::uint32_t a;
  };
  std::vector<Edge> edges;
  Vertex next = 1;
  for (const auto& w : words) {
    Vertex cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Vertex dst = i + 1 == w.size() ? 0 : next++;
      Letter l = w[i];
      if (l > 0) edges.push_back({cur, dst, static_cast<std::uint32_t>(l - 1)});
      else edges.push_back({dst, cur, static_cast<std::uint32_t>(-l - 1)});
      cur = dst;
    }
  }

  // Stallings folding: merge violations of determinism and
  // co-determinism until none remain. Quadratic and simple.
  Dsu dsu(next);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (std::size_t j = i + 1; j < edges.size(); ++j) {
        if (edges[i].a != edges[j].a) continue;
        Vertex ui = dsu.find(edges[i].u), vi = dsu.find(edges[i].v);
        Vertex uj = dsu.find(edges[j].u), vj = dsu.find(edges[j].v);
        if (ui == uj && vi != vj) changed |= dsu.unite(vi, vj);
        else if (vi == vj && ui != uj) changed |= dsu.unite(ui, uj);
      }
    }
  }

  // Compact classes; the base class becomes vertex 0.
  std::vector<Vertex> id(next, kNoVertex);
  id[dsu.find(0)] = 0;
  Vertex count = 1;
  for (Vertex x = 0; x < next; ++x) {
    Vertex root = dsu.find(x);
    if (id[root] == kNoVertex) id[root] = count++;
  }
  std::vector<PartialInjection> letters;
  letters.reserve(r);
  for (std::uint32_t a = 0; a < r; ++a)
    letters.push_back(PartialInjection::empty(count));
  for (const auto& e : edges) {
    Vertex u = id[dsu.find(e.u)], v = id[dsu.find(e.v)];
    Vertex& slot = letters[e.a].raw()[u];
    if (slot != kNoVertex && slot != v)
      throw InternalError("fold: determinism violated after folding");
    slot = v;
  }
  AGraph g(std::move(letters), count);
  if (!g.is_admissible())
    throw InternalError("fold: folded graph is not admissible");
  return g;
}

Word parse_word(const std::string& text) {
  Word w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    bool inverse = tok.size() > 1 && tok.back() == '\'';
    std::string body = inverse ? tok.substr(0, tok.size() - 1) : tok;
    if (body.size() < 2 || body[0] != 'a' ||
        body.find_first_not_of("0123456789", 1) != std::string::npos)
      throw UsageError("bad word token: " + tok);
    long idx = std::stol(body.substr(1));
    if (idx < 1) throw UsageError("bad letter index in token: " + tok);
    w.push_back(inverse ? -static_cast<Letter>(idx) : static_cast<Letter>(idx));
  }
  check_reduced(w);
  return w;
}

std::string word_to_string(const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << 'a' << (w[i] > 0 ? w[i] : -w[i]);
    if (w[i] < 0) os << '\'';
  }
  return std::move(os).str();
}

std::string graph_to_json(const AGraph& g) {
  std::ostringstream os;
  os << "{\"n\":" << g.size() << ",\"r\":" << g.alphabet() << ",\"base\":1,"
     << "\"edges\":[";
  bool first = true;
  for (std::uint32_t a = 0; a < g.alphabet(); ++a) {
    for (Vertex u = 0; u < g.size(); ++u) {
      Vertex v = g.step(u, a);
      if (v == kNoVertex) continue;
      if (!first) os << ',';
      first = false;
      os << '[' << u + 1 << ",\"a" << a + 1 << "\"," << v + 1 << ']';
    }
  }
  os << "]}";
  return std::move(os).str();
}

std::string graph_to_dot(const AGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n"
     << "  1 [shape=doublecircle];\n";
  for (Vertex u = 1; u < g.size(); ++u) os << "  " << u + 1 << " [shape=circle];\n";
  for (std::uint32_t a = 0; a < g.alphabet(); ++a)
    for (Vertex u = 0; u < g.size(); ++u) {
      Vertex v = g.step(u, a);
      if (v == kNoVertex) continue;
      os << "  " << u + 1 << " -> " << v + 1 << " [label=\"a" << a + 1
         << "\"];\n";
    }
  os << "}\n";
  return std::move(os).str();
}

}  // namespace stallings
