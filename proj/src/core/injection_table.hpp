// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STALLINGS_CORE_INJECTION_TABLE_HPP
#define STALLINGS_CORE_INJECTION_TABLE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "core/window.hpp"

namespace stallings {

/// Exact table of the partial-injection counts I_0..I_n_max, where I_k
/// counts the injective partial maps on a k-element set (OEIS A002720):
///
///     I_0 = 1,  I_1 = 2,  I_k = 2k I_{k-1} - (k-1)^2 I_{k-2}.
///
/// I_k has Theta(k log k) bits, so a dense table to k = 10^5 would need
/// gigabytes. Storage is therefore split:
///   - exact values for k <= dense_limit (fast direct access),
///   - exact anchor pairs (I_{m-1}, I_m) every `stride` indices above,
///     from which any value or range is regenerated exactly by running
///     the recurrence forward,
///   - a rigorous 128-bit Window enclosure plus the bit length used by
///     dice draws, for every k (O(1) access, a few dozen bytes each).
///
/// Every quantity handed out is either exactly correct or a
/// Window enclosure that provably contains the exact value.
/// Construction is a single O(n_max) pass of big-integer word
/// operations; instances are immutable afterwards and safe to share
/// across threads.
class InjectionTable {
 public:
  static constexpr std::uint32_t kDefaultDenseLimit = 4096;
  static constexpr std::uint32_t kAnchorStride = 1024;

  explicit InjectionTable(std::uint32_t n_max,
                          std::uint32_t dense_limit = kDefaultDenseLimit);

  std::uint32_t n_max() const { return n_max_; }
  std::uint32_t dense_limit() const { return dense_limit_; }

  /// Direct reference; requires k <= dense_limit().
  const mpz_class& dense_value(std::uint32_t k) const;

  /// Exact I_k for any k <= n_max (regenerates from the nearest anchor
  /// above the dense prefix; O(stride) big-integer operations there).
  mpz_class value(std::uint32_t k) const;

  /// Exact values I_lo..I_hi appended to `out` in index order.
  void values_into(std::uint32_t lo, std::uint32_t hi,
                   std::vector<mpz_class>& out) const;

  /// Streams exact (k, I_k) for k = 0..hi in order; O(hi) total.
  void for_each(std::uint32_t hi,
                const std::function<void(std::uint32_t, const mpz_class&)>& fn)
      const;

  /// O(1) rigorous enclosure of I_k.
  const Window& window(std::uint32_t k) const;

  /// Bits consumed per attempt when drawing uniformly below I_k,
  /// i.e. the bit length of I_k - 1.
  std::uint64_t dice_bits(std::uint32_t k) const;

  /// Exact check of the pointed-decomposition identity
  ///     I_n = sum_{k=1..n} (k+1) * (n-1)!/(n-k)! * I_{n-k},
  /// the mass balance underlying the component-size sampler.
  /// n outside [1, n_max] is a usage error.
  bool verify_pointing_identity(std::uint32_t n) const;

  /// Checks the growth envelope
  ///   (n+1)! <= (n+1) I_{n-1} <= I_n <= n e^{1/sqrt(n)} I_{n-1}
  ///                                  <= n! e^{2 sqrt(n) - 1}
  /// for 1 <= n <= n_max. Integer links are exact; transcendental links
  /// are evaluated in MPFR with outward rounding (precision is raised
  /// until the comparison is certain), so a true inequality is never
  /// reported false.
  bool check_injection_bounds(std::uint32_t n) const;

  /// Writes the cache format: one header line
  /// "stallings-itable <version> <n_max>" then I_0..I_n_max in decimal,
  /// one value per line.
  void save_cache(std::ostream& os) const;
  bool save_cache_file(const std::string& path) const;

  /// Parses a cache stream; returns a table when the header is valid,
  /// the cached n_max covers `n_max`, and spot checks of the recurrence
  /// pass. Returns nullopt on any mismatch or corruption.
  static std::optional<InjectionTable> load_cache(
      std::istream& is, std::uint32_t n_max,
      std::uint32_t dense_limit = kDefaultDenseLimit);
  static std::optional<InjectionTable> load_cache_file(
      const std::string& path, std::uint32_t n_max,
      std::uint32_t dense_limit = kDefaultDenseLimit);

 private:
  struct Anchor {
    std::uint32_t index;
    mpz_class below;  // I_{index-1}
    mpz_class at;     // I_index
  };

  InjectionTable() = default;
  void init_from_values(std::uint32_t n_max, std::uint32_t dense_limit,
                        const std::function<void(std::uint32_t, mpz_class&)>&
                            next_value);
  void record(std::uint32_t k, const mpz_class& value, const mpz_class& prev);
  // Largest exact pair (I_{p-1}, I_p) with p <= k, as (p, below, at).
  void seed_pair(std::uint32_t k, std::uint32_t& p, mpz_class& below,
                 mpz_class& at) const;

  std::uint32_t n_max_ = 0;
  std::uint32_t dense_limit_ = 0;
  std::vector<mpz_class> dense_;
  std::vector<Anchor> anchors_;
  std::vector<Window> heads_;
  std::vector<std::uint64_t> dice_bits_;
};

/// One forward step of the recurrence: given (I_{m-1}, I_m) at index m,
/// replaces the pair with (I_m, I_{m+1}).
void injection_step_up(std::uint32_t m, mpz_class& below, mpz_class& at);

/// Leading term and log-domain closed form for the number S_{n,r} of
/// size-n subgroups of a rank-r free group.
struct SubgroupCountEstimate {
  std::uint32_t n = 0;
  std::uint32_t r = 0;
  /// Exact I_n^r / (n-1)!, reduced.
  mpq_class leading;
  /// Natural log of the closed-form asymptotic
  /// (2e)^{-r/2} / sqrt(2 pi) * e^{-(r-1)n + 2r sqrt(n)}
  ///                          * n^{(r-1)n + (r+2)/4}.
  /// Kept in the log domain: the raw value overflows doubles near n=50.
  double stirling_log = 0.0;
};

SubgroupCountEstimate subgroup_count_estimate(std::uint32_t n, std::uint32_t r,
                                              const InjectionTable& table);

}  // namespace stallings

#endif
