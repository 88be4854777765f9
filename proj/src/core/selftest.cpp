// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/selftest.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "core/chi_square.hpp"
#include "core/generator.hpp"
#include "core/oracle.hpp"
#include "core/sampler.hpp"

namespace stallings {

namespace {

class Runner {
 public:
  explicit Runner(std::ostream* log) : log_(log) {}

  void check(const std::string& name, bool ok) {
    (ok ? result_.passed : result_.failed).push_back(name);
    if (log_)
      *log_ << (ok ? "ok   " : "FAIL ") << name << '\n';
  }

  template <typename Fn>
  void run(const std::string& name, Fn&& fn) {
    bool ok = false;
    std::string detail;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      detail = std::string(" (") + e.what() + ")";
    }
    check(name + detail, ok);
  }

  SelftestResult take() { return std::move(result_); }

 private:
  SelftestResult result_;
  std::ostream* log_;
};

AGraph relabel(const AGraph& g, const Permutation& p) {
  // p maps old vertex -> new vertex; must fix the base.
  std::vector<PartialInjection> letters;
  for (std::uint32_t a = 0; a < g.alphabet(); ++a) {
    PartialInjection inj = PartialInjection::empty(g.size());
    for (Vertex u = 0; u < g.size(); ++u) {
      Vertex v = g.step(u, a);
      if (v != kNoVertex) inj.raw()[p.image(u)] = p.image(v);
    }
    letters.push_back(std::move(inj));
  }
  return AGraph(std::move(letters), g.size());
}

}  // namespace

std::string SelftestResult::to_json() const {
  std::ostringstream os;
  os << "{\"passed\":" << passed.size() << ",\"failed\":" << failed.size()
     << ",\"failures\":[";
  for (std::size_t i = 0; i < failed.size(); ++i) {
    if (i) os << ',';
    os << '"' << failed[i] << '"';
  }
  os << "]}";
  return std::move(os).str();
}

SelftestResult run_selftest(std::ostream* log) {
  Runner r(log);
  InjectionTable table(1000);

  r.run("table: first eleven values", [&] {
    static const unsigned long want[] = {1ul,       2ul,       7ul,
                                         34ul,      209ul,     1546ul,
                                         13327ul,   130922ul,  1441729ul,
                                         17572114ul, 234662231ul};
    for (std::uint32_t k = 0; k <= 10; ++k)
      if (table.value(k) != mpz_class(want[k])) return false;
    return true;
  });

  r.run("table: recurrence and growth to 1000", [&] {
    mpz_class below = table.value(0), at = table.value(1);
    for (std::uint32_t k = 2; k <= 1000; ++k) {
      mpz_class next = 2 * mpz_class(k) * at -
                       mpz_class(k - 1) * mpz_class(k - 1) * below;
      if (next != table.value(k)) return false;
      if (next < (k + 1) * at) return false;  // I_k / I_{k-1} >= k+1
      below = at;
      at = next;
    }
    return true;
  });

  r.run("table: pointing identity, n <= 200", [&] {
    for (std::uint32_t n = 1; n <= 200; ++n)
      if (!table.verify_pointing_identity(n)) return false;
    return true;
  });

  r.run("table: growth envelope, n <= 500", [&] {
    for (std::uint32_t n = 1; n <= 500; ++n)
      if (!table.check_injection_bounds(n)) return false;
    return true;
  });

  r.run("oracle: enumeration matches the table, n <= 6", [&] {
    for (std::uint32_t n = 0; n <= 6; ++n) {
      auto all = enumerate_partial_injections(n);
      if (mpz_class(static_cast<unsigned long>(all.size())) != table.value(n))
        return false;
      for (const auto& inj : all)
        if (!inj.valid()) return false;
    }
    return true;
  });

  r.run("oracle: subgroup counts, two routes", [&] {
    if (enumerate_admissible(1, 1).subgroup_count != 2) return false;
    if (enumerate_admissible(1, 2).subgroup_count != 4) return false;
    enumerate_admissible(2, 2);  // asserts divisibility + route equality
    enumerate_admissible(3, 2);
    return true;
  });

  r.run("sampler: injection uniformity at n = 2", [&] {
    auto classes_vec = enumerate_partial_injections(2);
    std::vector<std::string> classes;
    for (const auto& inj : classes_vec) {
      std::string key;
      for (Vertex v : inj.raw()) key += std::to_string(v) + ",";
      classes.push_back(key);
    }
    RandomSource src(4242);
    double p = uniformity_test(
        [&] {
          auto inj = random_partial_injection(2, table, src);
          std::string key;
          for (Vertex v : inj.raw()) key += std::to_string(v) + ",";
          return key;
        },
        classes, 7000);
    return p > 0.001;
  });

  r.run("generator: admissible uniformity at n = 2, r = 2", [&] {
    auto oracle = enumerate_admissible(2, 2);
    auto injections = enumerate_partial_injections(2);
    std::vector<std::string> classes;
    for (std::size_t i = 0; i < injections.size(); ++i)
      for (std::size_t j = 0; j < injections.size(); ++j) {
        AGraph g({injections[i], injections[j]}, 2);
        if (g.is_admissible()) classes.push_back(g.canonical_form());
      }
    std::sort(classes.begin(), classes.end());
    if (classes.size() != oracle.labeled_admissible) return false;
    RandomSource src(777);
    double p = uniformity_test(
        [&] {
          return random_admissible_graph(2, 2, table, src).graph
              .canonical_form();
        },
        classes, 300 * classes.size());
    return p > 0.001;
  });

  r.run("generator: finite-index sampler at n = 2, r = 2", [&] {
    RandomSource src(99);
    std::vector<std::uint64_t> counts(3, 0);
    std::vector<std::string> classes;
    for (int t = 0; t < 3000; ++t) {
      auto rep = random_finite_index_graph(2, 2, src);
      if (rep.graph.rank() != 3) return false;  // (r-1)n + 1
      std::string c = rep.graph.canonical_form();
      auto it = std::find(classes.begin(), classes.end(), c);
      if (it == classes.end()) {
        classes.push_back(c);
        if (classes.size() > 3) return false;  // only 3 connected pairs
        ++counts[classes.size() - 1];
      } else {
        ++counts[static_cast<std::size_t>(it - classes.begin())];
      }
    }
    return classes.size() == 3 && chi_square_uniform_p_value(counts) > 0.001;
  });

  r.run("sampler: scan modes agree", [&] {
    for (std::uint32_t n : {5u, 40u, 100u, 300u}) {
      for (std::uint64_t seed : {1ull, 2ull}) {
        RandomSource a(seed), b(seed), c(seed);
        auto ia = random_partial_injection(n, table, a, {ScanMode::Exact});
        auto ib = random_partial_injection(n, table, b, {ScanMode::Windowed});
        auto ic =
            random_partial_injection(n, table, c, {ScanMode::WindowedStress});
        if (!(ia == ib && ib == ic)) return false;
      }
    }
    return true;
  });

  r.run("graph: canonical form is relabeling-invariant", [&] {
    RandomSource src(5);
    for (int t = 0; t < 40; ++t) {
      auto rep = random_admissible_graph(6, 2, table, src);
      std::string c0 = rep.graph.canonical_form();
      // Random relabeling fixing the base.
      Permutation p = Permutation::identity(6);
      auto& img = p.raw();
      for (std::uint32_t i = 2; i < 6; ++i)
        std::swap(img[i], img[1 + src.uniform_index(i)]);
      if (relabel(rep.graph, p).canonical_form() != c0) return false;
    }
    return true;
  });

  r.run("graph: fold and membership", [&] {
    AGraph loop = fold({parse_word("a1")});
    if (!(loop.size() == 1 && loop.accepts_word(parse_word("a1 a1")))) return false;
    if (loop.accepts_word(parse_word("a2"))) return false;
    AGraph comm = fold({parse_word("a1 a2 a1' a2'")});
    if (comm.size() != 4 || comm.rank() != 1) return false;
    if (!comm.accepts_word(parse_word("a1 a2 a1' a2'"))) return false;
    return true;
  });

  r.run("graph: basis round-trips through fold", [&] {
    RandomSource src(31);
    for (int t = 0; t < 15; ++t) {
      auto rep = random_admissible_graph(8, 2, table, src);
      auto basis = rep.graph.subgroup_basis();
      if (basis.size() != rep.graph.rank()) return false;
      if (basis.empty()) continue;  // trivial subgroup folds from nothing
      AGraph again = fold(basis, 2);
      if (again.canonical_form() != rep.graph.canonical_form()) return false;
    }
    return true;
  });

  r.run("rng: reproducible and unbiased bits", [&] {
    RandomSource a(123, 7), b(123, 7), c(123, 8);
    bool same = true, differs = false;
    for (int i = 0; i < 64; ++i) {
      std::uint64_t x = a.next_u64();
      same = same && x == b.next_u64();
      differs = differs || x != c.next_u64();
    }
    if (!same || !differs) return false;
    RandomSource src(2024);
    std::vector<std::uint64_t> ones(64, 0);
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) {
      std::uint64_t x = src.next_u64();
      for (int bpos = 0; bpos < 64; ++bpos) ones[bpos] += (x >> bpos) & 1;
    }
    for (int bpos = 0; bpos < 64; ++bpos) {
      double f = static_cast<double>(ones[bpos]) / draws;
      if (f < 0.49 || f > 0.51) return false;
    }
    return true;
  });

  return r.take();
}

}  // namespace stallings
