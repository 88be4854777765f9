// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <set>

#include "core/chi_square.hpp"
#include "core/oracle.hpp"
#include "core/rng.hpp"
#include "core/sampler.hpp"

using namespace stallings;

TEST_CASE("chi-square p-values hit known quantiles") {
  // Frozen textbook quantiles of the chi-square distribution.
  CHECK(chi_square_p_value(3.841, 1) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(chi_square_p_value(6.635, 1) == doctest::Approx(0.01).epsilon(1e-2));
  CHECK(chi_square_p_value(12.592, 6) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(chi_square_p_value(16.266, 3) == doctest::Approx(0.001).epsilon(1e-2));
  CHECK(chi_square_p_value(22.458, 6) == doctest::Approx(0.001).epsilon(1e-2));
  CHECK(chi_square_p_value(0.0, 4) == doctest::Approx(1.0));
  CHECK(chi_square_p_value(249.445, 200) ==
        doctest::Approx(0.01).epsilon(2e-2));
}

TEST_CASE("enumeration counts match the exact table") {
  InjectionTable t(6);
  for (std::uint32_t n = 0; n <= 6; ++n) {
    auto all = enumerate_partial_injections(n);
    CHECK(mpz_class(static_cast<unsigned long>(all.size())) == t.value(n));
    // no duplicates
    std::set<std::vector<Vertex>> dedup;
    for (const auto& inj : all) dedup.insert(inj.raw());
    CHECK(dedup.size() == all.size());
  }
  CHECK_THROWS_AS(enumerate_partial_injections(7), UsageError);
}

TEST_CASE("admissible enumeration: frozen desk-scale counts") {
  // All four loop subsets are admissible at n = 1, r = 2.
  EnumerationResult r12 = enumerate_admissible(1, 2);
  CHECK(r12.labeled_admissible == 4);
  CHECK(r12.subgroup_count == 4);
  CHECK(r12.canonical_classes == 4);

  // Loop or no loop at n = 1, r = 1.
  CHECK(enumerate_admissible(1, 1).subgroup_count == 2);

  // n = 2, r = 1: hand enumeration of the 7 injections leaves only the
  // two-cycle (connected and trim).
  EnumerationResult r21 = enumerate_admissible(2, 1);
  CHECK(r21.labeled_admissible == 1);
  CHECK(r21.subgroup_count == 1);

  // Frozen regression pins; both routes agree by construction.
  EnumerationResult r22 = enumerate_admissible(2, 2);
  CHECK(r22.labeled_admissible == 25);
  CHECK(r22.subgroup_count == 25);
  EnumerationResult r32 = enumerate_admissible(3, 2);
  CHECK(r32.labeled_admissible == 504);
  CHECK(r32.subgroup_count == 252);  // 504 / 2!
  CHECK(r32.canonical_classes == 252);

  // 209^2 tuples still fit the budget; divisibility by 3! is forced.
  EnumerationResult r42 = enumerate_admissible(4, 2);
  CHECK(r42.subgroup_count * 6 == r42.labeled_admissible);

  CHECK_THROWS_AS(enumerate_admissible(6, 2), UsageError);  // 13327^2 tuples
  CHECK_THROWS_AS(enumerate_admissible(0, 2), UsageError);
}

TEST_CASE("uniformity_test calibration") {
  SUBCASE("degenerate single class") {
    double p = uniformity_test([] { return std::string("x"); }, {"x"}, 100);
    CHECK(p == doctest::Approx(1.0));
  }
  SUBCASE("fair two-class sampler passes") {
    RandomSource src(8);
    double p = uniformity_test(
        [&] { return src.uniform_index(2) ? std::string("a") : std::string("b"); },
        {"a", "b"}, 100000);
    CHECK(p > 0.001);
  }
  SUBCASE("a biased sampler fails decisively") {
    RandomSource src(9);
    double p = uniformity_test(
        [&] {
          return src.uniform_index(100) < 60 ? std::string("a")
                                             : std::string("b");
        },
        {"a", "b"}, 100000);
    CHECK(p < 1e-9);
  }
  SUBCASE("foreign samples are a hard error") {
    CHECK_THROWS_AS(
        uniformity_test([] { return std::string("z"); }, {"a", "b"}, 100),
        InternalError);
  }
  SUBCASE("too few trials is a usage error") {
    CHECK_THROWS_AS(
        uniformity_test([] { return std::string("a"); }, {"a", "b"}, 99),
        UsageError);
  }
}

TEST_CASE("connectivity statistics") {
  InjectionTable t(200);
  RandomSource src(404);
  SUBCASE("one vertex is always connected") {
    StatReport rep = connectivity_stat(1, 2, 500, t, src);
    CHECK(rep.mean == 1.0);
    CHECK(rep.stddev == 0.0);
  }
  SUBCASE("empirical rate grows toward 1") {
    StatReport at50 = connectivity_stat(50, 2, 10000, t, src);
    StatReport at200 = connectivity_stat(200, 2, 10000, t, src);
    CHECK(at200.mean >= at50.mean);
    // theory: 1 - 4/n + o(1/n)
    CHECK(at50.mean > 0.85);
    CHECK(at200.mean > 0.96);
  }
  SUBCASE("three letters connect much faster") {
    // theory: 1 - 2^r/n^(r-1) = 1 - 8/10^4 at n = 100, r = 3.
    StatReport rep = connectivity_stat(100, 3, 10000, t, src);
    CHECK(rep.mean >= 0.9982);
    CHECK(rep.mean <= 1.0);
  }
}

TEST_CASE("rank statistics at n = 1 average to one") {
  InjectionTable t(4);
  RandomSource src(515);
  StatReport rep = rank_stat(1, 2, 40000, t, src);
  // Uniform over {0, 1, 1, 2}: mean 1, sd sqrt(1/2).
  CHECK(rep.mean == doctest::Approx(1.0).epsilon(0.02));
  CHECK(rep.stddev == doctest::Approx(std::sqrt(0.5)).epsilon(0.05));
}

TEST_CASE("finite-index acceptance at n = 2 is 3/4") {
  RandomSource src(616);
  StatReport rep = finite_index_accept_stat(2, 2, 40000, src);
  // Of the 4 permutation pairs only (id, id) is disconnected.
  CHECK(rep.mean == doctest::Approx(0.75).epsilon(0.02));
}

TEST_CASE("finite-index fraction bound") {
  InjectionTable t(250);
  CHECK(finite_index_fraction_bound(1, 2, t) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(finite_index_fraction_bound(2, 2, t) ==
        doctest::Approx(4.0 / 49.0).epsilon(1e-12));
  // Exact magnitude at n = 100 (cross-checked against the rational
  // (100!/I_100)^2): 1.2799e-15, dropping below 1e-15 from n = 102 on.
  CHECK(finite_index_fraction_bound(100, 2, t) ==
        doctest::Approx(1.279866e-15).epsilon(1e-4));
  CHECK(finite_index_fraction_bound(102, 2, t) < 1e-15);
  CHECK(finite_index_fraction_bound(200, 2, t) < 1e-21);
  double prev = finite_index_fraction_bound(10, 2, t);
  for (std::uint32_t n = 11; n <= 200; ++n) {
    double cur = finite_index_fraction_bound(n, 2, t);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("asymptotic cross-check converges") {
  InjectionTable t(10000, /*dense_limit=*/64);
  double at_1 = asymptotic_crosscheck(1, t);
  CHECK(std::isfinite(at_1));
  double at_1k = asymptotic_crosscheck(1000, t);
  double at_10k = asymptotic_crosscheck(10000, t);
  CHECK(at_1k < 0.05);
  CHECK(at_10k < 0.02);
  CHECK(at_10k < at_1k);
}

TEST_CASE("metric names round-trip") {
  CHECK(std::string(metric_name(Metric::Rank)) == "rank");
  CHECK(std::string(metric_name(Metric::Connectivity)) == "connectivity");
  CHECK(std::string(metric_name(Metric::Sequences)) == "sequences");
  CHECK(std::string(metric_name(Metric::FiAccept)) == "fi-accept");
}
