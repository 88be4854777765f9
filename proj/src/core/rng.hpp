// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STALLINGS_CORE_RNG_HPP
#define STALLINGS_CORE_RNG_HPP

#include <cstdint>
#include <stdexcept>

#include <gmpxx.h>

namespace stallings {

/// Thrown when a caller violates a documented precondition.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an internal invariant fails; always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Deterministic, seedable source of uniform random bits and integers.
///
/// Generator: xoshiro256++ (period 2^256 - 1), state derived from
/// (seed, stream) with splitmix64 so that independent streams can be
/// split off one 64-bit seed. The full output is a pure function of
/// (seed, stream): identical parameters replay identical bit streams,
/// on any platform.
///
/// All randomness is consumed from one bit reservoir, least significant
/// bit first within each 64-bit generator word. Every sampler in this
/// library draws through this interface, which keeps whole runs
/// reproducible from the seed alone.
///
/// Not cryptographically secure. Single-owner: concurrent samplers must
/// each hold their own source (use distinct stream ids).
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// Next raw generator word (bypasses the bit reservoir).
  std::uint64_t next_u64() {
    // xoshiro256++ by Blackman and Vigna.
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Draws exactly `count` bits (0 <= count <= 64), packed low.
  std::uint64_t draw_bits(unsigned count) {
    if (count == 0) return 0;
    if (count > 64) throw UsageError("draw_bits: count > 64");
    std::uint64_t out;
    if (reservoir_bits_ >= count) {
      out = reservoir_ & mask(count);
      reservoir_ = count == 64 ? 0 : reservoir_ >> count;
      reservoir_bits_ -= count;
      return out;
    }
    unsigned have = reservoir_bits_;
    out = reservoir_;
    std::uint64_t fresh = next_u64();
    unsigned need = count - have;
    out |= have == 64 ? 0 : ((fresh & mask(need)) << have);
    reservoir_ = need == 64 ? 0 : (fresh >> need);
    reservoir_bits_ = 64 - need;
    return out;
  }

  /// Exactly uniform integer in [0, n) via bit rejection; no modular
  /// reduction. n = 0 is a usage error. Consumes ceil(log2(n)) bits per
  /// attempt; for powers of two a single attempt always succeeds.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Exactly uniform integer in [0, bound) for an arbitrary-precision
  /// bound >= 1, by drawing ceil(log2(bound)) bits and rejecting values
  /// >= bound. Expected number of attempts is < 2.
  mpz_class uniform_below(const mpz_class& bound);

  /// Fills `out` with a uniform value in [0, 2^nbits). Limbs are written
  /// least significant first; the unused top bits of the last limb are
  /// zero. Returns the number of limbs written.
  std::size_t fill_bits(std::uint64_t* out, std::uint64_t nbits);

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }
  static std::uint64_t mask(unsigned bits) {
    return bits == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << bits) - 1;
  }

  std::uint64_t state_[4];
  std::uint64_t reservoir_ = 0;
  unsigned reservoir_bits_ = 0;
  std::uint64_t seed_;
  std::uint64_t stream_;
};

/// A nondeterministic 64-bit seed from system entropy.
std::uint64_t entropy_seed();

}  // namespace stallings

#endif
