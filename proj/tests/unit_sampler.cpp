// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <chrono>
#include <map>
#include <vector>

#include "core/chi_square.hpp"
#include "core/oracle.hpp"
#include "core/rng.hpp"
#include "core/sampler.hpp"

using namespace stallings;

namespace {
const InjectionTable& table1k() {
  static InjectionTable t(1000);
  return t;
}

std::string injection_key(const PartialInjection& inj) {
  std::string key;
  for (Vertex v : inj.raw())
    key += (v == kNoVertex ? std::string("-") : std::to_string(v)) + ",";
  return key;
}
}  // namespace

TEST_CASE("component size at n = 1 is forced") {
  RandomSource src(1);
  for (int i = 0; i < 50; ++i)
    CHECK(draw_component_size(1, table1k(), src) == 1);
}

TEST_CASE("component size distribution at n = 2 is (4/7, 3/7)") {
  // p_k = (k+1) (n-1)!/(n-k)! I_{n-k} / I_n with I = 1, 2, 7:
  // p_1 = 2*2/7, p_2 = 3*1/7.
  RandomSource src(20240);
  const int draws = 700000;
  std::vector<std::uint64_t> counts(2, 0);
  for (int i = 0; i < draws; ++i)
    ++counts[draw_component_size(2, table1k(), src) - 1];
  double stat = chi_square_statistic(counts, {4.0 / 7.0, 3.0 / 7.0}, draws);
  CHECK(chi_square_p_value(stat, 1) > 0.001);
}

TEST_CASE("component size distribution at n = 4 matches exact p_k") {
  // Exact p_k from the table: I = 1,2,7,34,209.
  // p_k = (k+1) * 3!/(4-k)! * I_{4-k} / I_4.
  std::vector<double> expect;
  double i4 = 209;
  expect.push_back(2 * 1.0 * 34 / i4);       // k=1: (n-1)!/(n-1)! = 1
  expect.push_back(3 * 3.0 * 7 / i4);        // k=2: 3!/2! = 3
  expect.push_back(4 * 6.0 * 2 / i4);        // k=3: 3!/1! = 6
  expect.push_back(5 * 6.0 * 1 / i4);        // k=4: 3!/0! = 6
  double sum = 0;
  for (double p : expect) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  RandomSource src(5150);
  const int draws = 400000;
  std::vector<std::uint64_t> counts(4, 0);
  for (int i = 0; i < draws; ++i)
    ++counts[draw_component_size(4, table1k(), src) - 1];
  double stat = chi_square_statistic(counts, expect, draws);
  CHECK(chi_square_p_value(stat, 3) > 0.001);
}

TEST_CASE("component kind probabilities") {
  RandomSource src(33);
  SUBCASE("k = 1: fifty-fifty") {
    int seq = 0;
    const int draws = 200000;
    for (int i = 0; i < draws; ++i)
      seq += draw_component_kind(1, src).kind == ComponentKind::Sequence;
    double f = static_cast<double>(seq) / draws;
    CHECK(f > 0.494);
    CHECK(f < 0.506);
  }
  SUBCASE("k = 2: sequence with probability 2/3") {
    int seq = 0;
    const int draws = 300000;
    for (int i = 0; i < draws; ++i)
      seq += draw_component_kind(2, src).kind == ComponentKind::Sequence;
    double f = static_cast<double>(seq) / draws;
    CHECK(f > 2.0 / 3.0 - 0.006);
    CHECK(f < 2.0 / 3.0 + 0.006);
  }
  SUBCASE("k = 10: sequence frequency within 1% of 10/11") {
    int seq = 0;
    const int draws = 110000;
    for (int i = 0; i < draws; ++i)
      seq += draw_component_kind(10, src).kind == ComponentKind::Sequence;
    double f = static_cast<double>(seq) / draws;
    CHECK(f > (10.0 / 11.0) * 0.99);
    CHECK(f < (10.0 / 11.0) * 1.01);
  }
}

TEST_CASE("shape sequences cover the remainder") {
  RandomSource src(8);
  CHECK(random_shape_sequence(0, table1k(), src).shapes.empty());
  auto one = random_shape_sequence(1, table1k(), src);
  REQUIRE(one.shapes.size() == 1);
  CHECK(one.shapes[0].size == 1);
  for (int t = 0; t < 200; ++t) {
    std::uint32_t n = 1 + src.uniform_index(400);
    auto s = random_shape_sequence(n, table1k(), src);
    std::uint64_t sum = 0;
    for (const auto& sh : s.shapes) {
      CHECK(sh.size >= 1);
      sum += sh.size;
    }
    CHECK(sum == n);
  }
}

TEST_CASE("shape distribution at n = 3 matches the exact unrolling") {
  // Ordered outcomes of (size, kind)* with their exact probabilities,
  // from p_k = (k+1) 2!/(3-k)! I_{3-k} / I_3, I = 1, 2, 7, 34, and
  // kind probabilities k/(k+1), 1/(k+1).
  // p_1 = 2*1*7/34, p_2 = 3*2*2/34, p_3 = 4*2*1/34.
  std::map<std::string, double> expect;
  auto shape_name = [](const ShapeSequence& s) {
    std::string out;
    for (const auto& sh : s.shapes) {
      out += sh.kind == ComponentKind::Sequence ? 's' : 'c';
      out += std::to_string(sh.size);
    }
    return out;
  };
  {
    const double p1 = 14.0 / 34, p2 = 12.0 / 34, p3 = 8.0 / 34;
    const double p1_at2 = 4.0 / 7, p2_at2 = 3.0 / 7;  // remainder 2
    // first component size 3
    expect["s3"] = p3 * (3.0 / 4.0);
    expect["c3"] = p3 * (1.0 / 4.0);
    // 2 then 1
    for (auto [k2, pk2] : {std::pair{"s2", p2 * 2 / 3.0},
                           std::pair{"c2", p2 * 1 / 3.0}})
      for (auto [k1, pk1] :
           {std::pair{"s1", 0.5}, std::pair{"c1", 0.5}})
        expect[std::string(k2) + k1] = pk2 * pk1;
    // 1 then (2 | 1+1) on remainder 2
    for (auto [k1, pk1] : {std::pair{"s1", p1 * 0.5}, std::pair{"c1", p1 * 0.5}}) {
      for (auto [k2, pk2] : {std::pair{"s2", p2_at2 * 2 / 3.0},
                             std::pair{"c2", p2_at2 * 1 / 3.0}})
        expect[std::string(k1) + k2] = pk1 * pk2;
      for (auto [ka, pa] : {std::pair{"s1", p1_at2 * 0.5},
                            std::pair{"c1", p1_at2 * 0.5}})
        for (auto [kb, pb] : {std::pair{"s1", 0.5}, std::pair{"c1", 0.5}})
          expect[std::string(k1) + ka + kb] = pk1 * pa * pb;
    }
  }
  double total = 0;
  for (auto& [name, p] : expect) total += p;
  REQUIRE(total == doctest::Approx(1.0).epsilon(1e-12));

  RandomSource src(616);
  const int draws = 1000000;
  std::map<std::string, std::uint64_t> counts;
  for (int i = 0; i < draws; ++i)
    ++counts[shape_name(random_shape_sequence(3, table1k(), src))];
  std::vector<std::uint64_t> observed;
  std::vector<double> probs;
  for (auto& [name, p] : expect) {
    observed.push_back(counts[name]);
    probs.push_back(p);
    counts.erase(name);
  }
  CHECK(counts.empty());  // nothing outside the expected support
  double stat = chi_square_statistic(observed, probs, draws);
  CHECK(chi_square_p_value(stat, observed.size() - 1) > 0.001);
}

TEST_CASE("random_permutation is uniform at n = 3") {
  RandomSource src(27182);
  CHECK(random_permutation(0, src).size() == 0);
  CHECK(random_permutation(1, src).raw() == std::vector<Vertex>{0});
  std::map<std::vector<Vertex>, std::uint64_t> counts;
  const int draws = 600000;
  for (int i = 0; i < draws; ++i) ++counts[random_permutation(3, src).raw()];
  REQUIRE(counts.size() == 6);
  std::vector<std::uint64_t> observed;
  for (auto& [p, c] : counts) observed.push_back(c);
  CHECK(chi_square_uniform_p_value(observed) > 0.001);
}

TEST_CASE("random_partial_injection edge cases") {
  RandomSource src(14);
  CHECK(random_partial_injection(0, table1k(), src).size() == 0);
  std::uint64_t undefined = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    auto inj = random_partial_injection(1, table1k(), src);
    undefined += !inj.defined(0);
  }
  // The two injections on one point are equally likely.
  std::vector<std::uint64_t> counts{undefined, draws - undefined};
  CHECK(chi_square_uniform_p_value(counts) > 0.001);
}

TEST_CASE("uniformity over all injections, n <= 4") {
  // 10^6 draws against the enumerated I_n classes.
  for (std::uint32_t n : {2u, 3u, 4u}) {
    auto all = enumerate_partial_injections(n);
    std::vector<std::string> classes;
    for (const auto& inj : all) classes.push_back(injection_key(inj));
    RandomSource src(1000 + n);
    const std::uint64_t draws = n == 4 ? 1000000 : 400000;
    double p = uniformity_test(
        [&] { return injection_key(random_partial_injection(n, table1k(), src)); },
        classes, draws);
    CAPTURE(n);
    CHECK(p > 0.001);
  }
}

TEST_CASE("windowed scan is uniform too") {
  auto all = enumerate_partial_injections(3);
  std::vector<std::string> classes;
  for (const auto& inj : all) classes.push_back(injection_key(inj));
  RandomSource src(512);
  SamplerOptions windowed{ScanMode::Windowed};
  double p = uniformity_test(
      [&] {
        return injection_key(
            random_partial_injection(3, table1k(), src, windowed));
      },
      classes, 400000);
  CHECK(p > 0.001);
}

TEST_CASE("every scan mode draws the identical injection") {
  InjectionTable sparse(1200, /*dense_limit=*/64);
  for (std::uint32_t n : {1u, 5u, 63u, 64u, 65u, 129u, 400u, 1200u}) {
    for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
      RandomSource a(seed), b(seed), c(seed), d(seed);
      auto exact = random_partial_injection(n, sparse, a, {ScanMode::Exact});
      auto windowed =
          random_partial_injection(n, sparse, b, {ScanMode::Windowed});
      auto stress =
          random_partial_injection(n, sparse, c, {ScanMode::WindowedStress});
      auto auto_mode = random_partial_injection(n, sparse, d, {ScanMode::Auto});
      CAPTURE(n);
      CAPTURE(seed);
      CHECK(exact == windowed);
      CHECK(exact == stress);
      CHECK(exact == auto_mode);
      // All four consumed the same randomness.
      std::uint64_t probe = a.next_u64();
      CHECK(probe == b.next_u64());
      CHECK(probe == c.next_u64());
      CHECK(probe == d.next_u64());
    }
  }
}

TEST_CASE("sampled injections are always valid") {
  RandomSource src(4096);
  for (int t = 0; t < 50; ++t) {
    auto inj = random_partial_injection(1000, table1k(), src);
    CHECK(inj.valid());
  }
}

TEST_CASE("sequence count concentrates near sqrt(n)") {
  InjectionTable t(2500);
  RandomSource src(11);
  const int draws = 2000;
  double sum = 0;
  for (int i = 0; i < draws; ++i)
    sum += count_sequences(random_partial_injection(2500, t, src));
  double mean = sum / draws;
  CHECK(mean > 0.9 * 50.0);
  CHECK(mean < 1.1 * 50.0);
}

TEST_CASE("doubling the size at most triples a draw") {
  // Coarse RAM-model linearity: medians over repeated batches.
  InjectionTable t(8192);
  RandomSource src(3);
  auto batch_seconds = [&](std::uint32_t n, int reps) {
    std::vector<double> times;
    for (int b = 0; b < 5; ++b) {
      auto t0 = std::chrono::steady_clock::now();
      for (int i = 0; i < reps; ++i) {
        auto inj = random_partial_injection(n, t, src);
        if (inj.size() != n) return -1.0;
      }
      auto t1 = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[2];
  };
  batch_seconds(4096, 50);  // warm-up
  double small = batch_seconds(4096, 200);
  double big = batch_seconds(8192, 200);
  CHECK(small > 0);
  CHECK(big > 0);
  CHECK(big / small <= 3.0);
}
