// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STALLINGS_CORE_GENERATOR_HPP
#define STALLINGS_CORE_GENERATOR_HPP

#include <cstdint>
#include <vector>

#include "core/agraph.hpp"
#include "core/injection_table.hpp"
#include "core/sampler.hpp"

namespace stallings {

/// One accepted draw plus its rejection accounting.
struct GenerationReport {
  AGraph graph;
  std::uint64_t rejections = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint32_t n = 0;
  std::uint32_t r = 0;
};

/// Rejection attempts are capped so that probability-zero nontermination
/// surfaces as a diagnosable failure instead of a hang.
inline constexpr std::uint64_t kRejectionCap = 1'000'000;

/// Uniform over admissible (connected, base-trim) A-graphs on n
/// vertices with r letters: draws r independent uniform partial
/// injections per attempt and rejects until admissible. Uniformity over
/// admissible labeled graphs makes the result uniform over size-n
/// subgroups once non-base labels are forgotten.
GenerationReport random_admissible_graph(std::uint32_t n, std::uint32_t r,
                                         const InjectionTable& table,
                                         RandomSource& src,
                                         const SamplerOptions& opts = {});

/// Uniform over connected permutation A-graphs (finite-index
/// subgroups): r uniform permutations per attempt, rejected until
/// connected. Permutation graphs have no leaves, so trimness is free,
/// and no big-integer table is involved.
GenerationReport random_finite_index_graph(std::uint32_t n, std::uint32_t r,
                                           RandomSource& src);

/// `count` independent draws on seed-split sources: draw i uses stream
/// id i of `seed`, so any element can be reproduced in isolation.
std::vector<GenerationReport> sample_batch(std::uint32_t n, std::uint32_t r,
                                           std::uint32_t count,
                                           const InjectionTable& table,
                                           std::uint64_t seed,
                                           const SamplerOptions& opts = {});

}  // namespace stallings

#endif
