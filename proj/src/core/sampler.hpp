// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STALLINGS_CORE_SAMPLER_HPP
#define STALLINGS_CORE_SAMPLER_HPP

#include <cstdint>

#include "core/injection_table.hpp"
#include "core/partial_injection.hpp"
#include "core/rng.hpp"

namespace stallings {

/// How component-size scans evaluate their partial-sum comparisons.
///
/// Every mode draws the same dice and returns the same results for the
/// same source state; they differ only in how much arithmetic runs at
/// full precision. Exact carries complete big integers (the reference
/// implementation). Windowed decides comparisons through rigorous
/// 128-bit enclosures and falls back to exact arithmetic on the rare
/// undecidable comparison, which keeps the distribution exactly uniform
/// while the scan stays O(1) per step. WindowedStress treats every
/// comparison as undecidable to exercise the fallback; test use only.
/// Auto picks Exact below a small cutoff and Windowed above.
enum class ScanMode : std::uint8_t { Auto, Exact, Windowed, WindowedStress };

struct SamplerOptions {
  ScanMode mode = ScanMode::Auto;
};

/// Size of the pointed component of a uniform random size-n partial
/// injection: k with probability (k+1) (n-1)!/(n-k)! I_{n-k} / I_n,
/// realized by an exact-integer dice below I_n and incremental partial
/// sums. Requires 1 <= n <= table.n_max().
std::uint32_t draw_component_size(std::uint32_t n, const InjectionTable& table,
                                  RandomSource& src,
                                  const SamplerOptions& opts = {});

/// A size-k component is a sequence with probability k/(k+1), else a
/// cycle.
ComponentShape draw_component_kind(std::uint32_t k, RandomSource& src);

/// Runs the component-size/kind loop on the shrinking remainder until
/// it reaches zero. Requires n <= table.n_max().
ShapeSequence random_shape_sequence(std::uint32_t n,
                                    const InjectionTable& table,
                                    RandomSource& src,
                                    const SamplerOptions& opts = {});

/// Uniform over all n! permutations, by ascending swaps; O(n) index
/// draws.
Permutation random_permutation(std::uint32_t n, RandomSource& src);

/// Labels the shapes with the permutation, consuming its image left to
/// right. A sequence v_1..v_k contributes v_i -> v_{i+1} (v_k outside
/// the domain); a cycle additionally closes v_k -> v_1. A size mismatch
/// is a usage error.
PartialInjection label_shapes(const ShapeSequence& shapes,
                              const Permutation& perm);

/// Exactly uniform over all I_n partial injections on an n-element set:
/// shape sequence, then one uniform permutation, then labeling.
PartialInjection random_partial_injection(std::uint32_t n,
                                          const InjectionTable& table,
                                          RandomSource& src,
                                          const SamplerOptions& opts = {});

}  // namespace stallings

#endif
