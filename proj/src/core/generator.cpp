// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/generator.hpp"

namespace stallings {

GenerationReport random_admissible_graph(std::uint32_t n, std::uint32_t r,
                                         const InjectionTable& table,
                                         RandomSource& src,
                                         const SamplerOptions& opts) {
  if (n < 1) throw UsageError("random_admissible_graph: n must be >= 1");
  if (r < 2) throw UsageError("random_admissible_graph: r must be >= 2");
  if (n > table.n_max())
    throw UsageError("random_admissible_graph: n exceeds table");
  std::uint64_t rejections = 0;
  for (;;) {
    std::vector<PartialInjection> letters;
    letters.reserve(r);
    for (std::uint32_t a = 0; a < r; ++a)
      letters.push_back(random_partial_injection(n, table, src, opts));
    AGraph g(std::move(letters), n);
    if (g.is_admissible()) {
      return GenerationReport{std::move(g), rejections, src.seed(),
                              src.stream(), n, r};
    }
    if (++rejections > kRejectionCap)
      throw InternalError("random_admissible_graph: rejection cap hit");
  }
}

GenerationReport random_finite_index_graph(std::uint32_t n, std::uint32_t r,
                                           RandomSource& src) {
  if (n < 1) throw UsageError("random_finite_index_graph: n must be >= 1");
  if (r < 2) throw UsageError("random_finite_index_graph: r must be >= 2");
  std::uint64_t rejections = 0;
  for (;;) {
    std::vector<PartialInjection> letters;
    letters.reserve(r);
    for (std::uint32_t a = 0; a < r; ++a)
      letters.push_back(
          PartialInjection(random_permutation(n, src).raw()));
    AGraph g(std::move(letters), n);
    // Permutation graphs never have a leaf; connectivity is the only
    // rejection test.
    if (g.is_connected()) {
      return GenerationReport{std::move(g), rejections, src.seed(),
                              src.stream(), n, r};
    }
    if (++rejections > kRejectionCap)
      throw InternalError("random_finite_index_graph: rejection cap hit");
  }
}

std::vector<GenerationReport> sample_batch(std::uint32_t n, std::uint32_t r,
                                           std::uint32_t count,
                                           const InjectionTable& table,
                                           std::uint64_t seed,
                                           const SamplerOptions& opts) {
  if (count < 1) throw UsageError("sample_batch: count must be >= 1");
  std::vector<GenerationReport> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    RandomSource src(seed, i);
    out.push_back(random_admissible_graph(n, r, table, src, opts));
  }
  return out;
}

}  // namespace stallings
