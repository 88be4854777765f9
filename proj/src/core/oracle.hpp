// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STALLINGS_CORE_ORACLE_HPP
#define STALLINGS_CORE_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/agraph.hpp"
#include "core/injection_table.hpp"
#include "core/partial_injection.hpp"
#include "core/rng.hpp"

namespace stallings {

/// Brute-force enumeration and the statistics harness. Everything here
/// is independent of the samplers it validates: enumeration is plain
/// backtracking, counts are checked two ways, and empirical statistics
/// are compared against closed forms elsewhere.

inline constexpr std::uint32_t kMaxEnumerationN = 6;

/// All I_n injective partial maps on {0..n-1}, lexicographic in the
/// image arrays. n > 6 is a scale error (the r-tuple stage would
/// explode).
std::vector<PartialInjection> enumerate_partial_injections(std::uint32_t n);

/// Exact subgroup counting two independent ways.
struct EnumerationResult {
  std::uint32_t n = 0;
  std::uint32_t r = 0;
  std::uint64_t labeled_admissible = 0;
  std::uint64_t subgroup_count = 0;    // labeled / (n-1)!
  std::uint64_t canonical_classes = 0; // distinct canonical forms
};

/// Iterates every r-tuple of partial injections on {0..n-1}, filters
/// admissibility, and counts both by exact division by (n-1)! and by
/// canonical-form deduplication. A divisibility failure or a mismatch
/// between the two routes is a hard error. The total tuple count is
/// capped; n <= 3 at r = 2 is the intended range.
EnumerationResult enumerate_admissible(std::uint32_t n, std::uint32_t r);

/// Draws `trials` samples, maps each to its canonical form, and returns
/// the chi-square p-value against the uniform distribution over
/// `classes`. A sample outside `classes` is a correctness bug (hard
/// error). Requires trials >= 50 * |classes|.
double uniformity_test(const std::function<std::string()>& sampler,
                       const std::vector<std::string>& classes,
                       std::uint64_t trials);

enum class Metric : std::uint8_t { Rank, Connectivity, Sequences, FiAccept };

const char* metric_name(Metric m);

struct StatReport {
  Metric metric;
  std::uint32_t n = 0;
  std::uint32_t r = 0;
  std::uint64_t trials = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

/// Fraction of r-tuples of uniform partial injections whose A-graph is
/// connected.
StatReport connectivity_stat(std::uint32_t n, std::uint32_t r,
                             std::uint64_t trials, const InjectionTable& table,
                             RandomSource& src);

/// Mean and standard deviation of the rank over uniform admissible
/// graphs.
StatReport rank_stat(std::uint32_t n, std::uint32_t r, std::uint64_t trials,
                     const InjectionTable& table, RandomSource& src);

/// Mean and standard deviation of the sequence count of a uniform
/// partial injection (the X_n statistic).
StatReport sequences_stat(std::uint32_t n, std::uint64_t trials,
                          const InjectionTable& table, RandomSource& src);

/// Fraction of r-tuples of uniform permutations that define a connected
/// graph (the finite-index sampler's acceptance rate).
StatReport finite_index_accept_stat(std::uint32_t n, std::uint32_t r,
                                    std::uint64_t trials, RandomSource& src);

/// (n!/I_n)^r evaluated in the log domain: the upper bound on the
/// probability that a size-n subgroup has finite index.
double finite_index_fraction_bound(std::uint32_t n, std::uint32_t r,
                                   const InjectionTable& table);

/// Relative error of the closed form
///   I_n/n! ~ e^{-1/2}/(2 sqrt(pi)) n^{-1/4} e^{2 sqrt(n)}
/// against the exact table value, computed in the log domain.
double asymptotic_crosscheck(std::uint32_t n, const InjectionTable& table);

/// Natural log of I_n from the exact table entry.
double log_injection_count(std::uint32_t n, const InjectionTable& table);

}  // namespace stallings

#endif
