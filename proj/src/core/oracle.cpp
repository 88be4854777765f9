// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/oracle.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "core/chi_square.hpp"
#include "core/generator.hpp"
#include "core/sampler.hpp"

namespace stallings {

std::vector<PartialInjection> enumerate_partial_injections(std::uint32_t n) {
  if (n > kMaxEnumerationN)
    throw UsageError("enumerate_partial_injections: n too large to enumerate");
  std::vector<PartialInjection> out;
  std::vector<Vertex> image(n, kNoVertex);
  std::vector<bool> used(n, false);
  // Backtracking over image arrays in lexicographic order, with
  // "absent" ordered before any vertex.
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t u) {
    if (u == n) {
      out.emplace_back(image);
      return;
    }
    image[u] = kNoVertex;
    rec(u + 1);
    for (Vertex v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      image[u] = v;
      rec(u + 1);
      used[v] = false;
    }
    image[u] = kNoVertex;
  };
  rec(0);
  return out;
}

EnumerationResult enumerate_admissible(std::uint32_t n, std::uint32_t r) {
  if (n < 1) throw UsageError("enumerate_admissible: n must be >= 1");
  if (r < 1) throw UsageError("enumerate_admissible: r must be >= 1");
  auto injections = enumerate_partial_injections(n);
  double tuple_estimate = std::pow(static_cast<double>(injections.size()),
                                   static_cast<double>(r));
  if (tuple_estimate > 4e6)
    throw UsageError("enumerate_admissible: tuple space too large");

  EnumerationResult res;
  res.n = n;
  res.r = r;
  std::unordered_set<std::string> classes;
  // Odometer over r-tuples.
  std::vector<std::size_t> idx(r, 0);
  for (;;) {
    std::vector<PartialInjection> letters;
    letters.reserve(r);
    for (std::uint32_t a = 0; a < r; ++a) letters.push_back(injections[idx[a]]);
    AGraph g(std::move(letters), n);
    if (g.is_admissible()) {
      ++res.labeled_admissible;
      classes.insert(g.canonical_form());
    }
    std::uint32_t pos = 0;
    while (pos < r && ++idx[pos] == injections.size()) idx[pos++] = 0;
    if (pos == r) break;
  }
  std::uint64_t fac = 1;
  for (std::uint32_t k = 2; k < n; ++k) fac *= k;
  if (res.labeled_admissible % fac != 0)
    throw InternalError("enumerate_admissible: (n-1)! does not divide");
  res.subgroup_count = res.labeled_admissible / fac;
  res.canonical_classes = classes.size();
  if (res.subgroup_count != res.canonical_classes)
    throw InternalError("enumerate_admissible: counting routes disagree");
  return res;
}

double uniformity_test(const std::function<std::string()>& sampler,
                       const std::vector<std::string>& classes,
                       std::uint64_t trials) {
  if (classes.empty()) throw UsageError("uniformity_test: no classes");
  if (trials < 50 * classes.size())
    throw UsageError("uniformity_test: too few trials per class");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index[classes[i]] = i;
  std::vector<std::uint64_t> counts(classes.size(), 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto it = index.find(sampler());
    if (it == index.end())
      throw InternalError("uniformity_test: sample outside the class list");
    ++counts[it->second];
  }
  return chi_square_uniform_p_value(counts);
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::Rank: return "rank";
    case Metric::Connectivity: return "connectivity";
    case Metric::Sequences: return "sequences";
    case Metric::FiAccept: return "fi-accept";
  }
  return "?";
}

namespace {

StatReport finish(Metric m, std::uint32_t n, std::uint32_t r,
                  std::uint64_t trials, double sum, double sum_sq) {
  StatReport rep;
  rep.metric = m;
  rep.n = n;
  rep.r = r;
  rep.trials = trials;
  double mean = sum / static_cast<double>(trials);
  rep.mean = mean;
  double var = trials > 1 ? (sum_sq - sum * mean) / static_cast<double>(trials - 1)
                          : 0.0;
  rep.stddev = var > 0 ? std::sqrt(var) : 0.0;
  return rep;
}

}  // namespace

StatReport connectivity_stat(std::uint32_t n, std::uint32_t r,
                             std::uint64_t trials, const InjectionTable& table,
                             RandomSource& src) {
  if (trials < 1) throw UsageError("connectivity_stat: trials must be >= 1");
  double sum = 0, sum_sq = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<PartialInjection> letters;
    letters.reserve(r);
    for (std::uint32_t a = 0; a < r; ++a)
      letters.push_back(random_partial_injection(n, table, src));
    AGraph g(std::move(letters), n);
    double x = g.is_connected() ? 1.0 : 0.0;
    sum += x;
    sum_sq += x * x;
  }
  return finish(Metric::Connectivity, n, r, trials, sum, sum_sq);
}

StatReport rank_stat(std::uint32_t n, std::uint32_t r, std::uint64_t trials,
                     const InjectionTable& table, RandomSource& src) {
  if (trials < 1) throw UsageError("rank_stat: trials must be >= 1");
  double sum = 0, sum_sq = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    GenerationReport rep = random_admissible_graph(n, r, table, src);
    double x = rep.graph.rank();
    sum += x;
    sum_sq += x * x;
  }
  return finish(Metric::Rank, n, r, trials, sum, sum_sq);
}

StatReport sequences_stat(std::uint32_t n, std::uint64_t trials,
                          const InjectionTable& table, RandomSource& src) {
  if (trials < 1) throw UsageError("sequences_stat: trials must be >= 1");
  double sum = 0, sum_sq = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    PartialInjection inj = random_partial_injection(n, table, src);
    double x = count_sequences(inj);
    sum += x;
    sum_sq += x * x;
  }
  return finish(Metric::Sequences, n, 0, trials, sum, sum_sq);
}

StatReport finite_index_accept_stat(std::uint32_t n, std::uint32_t r,
                                    std::uint64_t trials, RandomSource& src) {
  if (trials < 1) throw UsageError("finite_index_accept_stat: trials >= 1");
  double sum = 0, sum_sq = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<PartialInjection> letters;
    letters.reserve(r);
    for (std::uint32_t a = 0; a < r; ++a)
      letters.push_back(PartialInjection(random_permutation(n, src).raw()));
    AGraph g(std::move(letters), n);
    double x = g.is_connected() ? 1.0 : 0.0;
    sum += x;
    sum_sq += x * x;
  }
  return finish(Metric::FiAccept, n, r, trials, sum, sum_sq);
}

double log_injection_count(std::uint32_t n, const InjectionTable& table) {
  mpz_class v = table.value(n);
  signed long int exp2;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * M_LN2;
}

double finite_index_fraction_bound(std::uint32_t n, std::uint32_t r,
                                   const InjectionTable& table) {
  if (n < 1 || n > table.n_max())
    throw UsageError("finite_index_fraction_bound: n out of range");
  double log_ratio = std::lgamma(static_cast<double>(n) + 1.0) -
                     log_injection_count(n, table);
  return std::exp(static_cast<double>(r) * log_ratio);
}

double asymptotic_crosscheck(std::uint32_t n, const InjectionTable& table) {
  if (n < 1 || n > table.n_max())
    throw UsageError("asymptotic_crosscheck: n out of range");
  const double nd = static_cast<double>(n);
  double log_exact = log_injection_count(n, table) -
                     std::lgamma(nd + 1.0);
  double log_formula = -0.5 - std::log(2.0 * std::sqrt(M_PI)) -
                       0.25 * std::log(nd) + 2.0 * std::sqrt(nd);
  return std::fabs(std::expm1(log_formula - log_exact));
}

}  // namespace stallings
