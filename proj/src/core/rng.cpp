// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/rng.hpp"

#include <bit>
#include <chrono>
#include <random>

namespace stallings {

namespace {

// splitmix64 step; used only to expand (seed, stream) into generator state.
std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDull;
  z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ull;
  return z ^ (z >> 33);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  // Stream splitting: fold a bijective mix of the stream id into the
  // splitmix64 chain so (seed, s) and (seed, s') never share state.
  std::uint64_t x = seed ^ mix64(stream ^ 0xD1B54A32D192ED03ull);
  for (auto& word : state_) word = splitmix64(x);
  bool all_zero = true;
  for (auto word : state_) all_zero = all_zero && word == 0;
  if (all_zero) state_[0] = 0x9E3779B97F4A7C15ull;
}

std::uint64_t RandomSource::uniform_index(std::uint64_t n) {
  if (n == 0) throw UsageError("uniform_index: n must be >= 1");
  if (n == 1) return 0;
  const unsigned bits = std::bit_width(n - 1);
  for (;;) {
    std::uint64_t x = draw_bits(bits);
    if (x < n) return x;
  }
}

std::size_t RandomSource::fill_bits(std::uint64_t* out, std::uint64_t nbits) {
  std::size_t limbs = static_cast<std::size_t>((nbits + 63) / 64);
  for (std::size_t i = 0; i + 1 < limbs; ++i) out[i] = draw_bits(64);
  if (limbs > 0) {
    unsigned top = static_cast<unsigned>(nbits - 64 * (limbs - 1));
    out[limbs - 1] = draw_bits(top);
  }
  return limbs;
}

mpz_class RandomSource::uniform_below(const mpz_class& bound) {
  if (sgn(bound) <= 0) throw UsageError("uniform_below: bound must be >= 1");
  if (bound == 1) return mpz_class(0);
  // ceil(log2(bound)) == bitlength of bound-1; exact for powers of two.
  mpz_class bm1 = bound - 1;
  const std::uint64_t nbits = mpz_sizeinbase(bm1.get_mpz_t(), 2);
  const std::size_t limbs = static_cast<std::size_t>((nbits + 63) / 64);
  mpz_class result;
  static_assert(GMP_LIMB_BITS == 64, "64-bit limbs assumed");
  for (;;) {
    mp_limb_t* w = mpz_limbs_write(result.get_mpz_t(), limbs);
    fill_bits(reinterpret_cast<std::uint64_t*>(w), nbits);
    std::size_t used = limbs;
    while (used > 0 && w[used - 1] == 0) --used;
    mpz_limbs_finish(result.get_mpz_t(), used);
    if (result < bound) return result;
  }
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  std::uint64_t hi = rd(), lo = rd();
  return (hi << 32) ^ lo ^ mix64(static_cast<std::uint64_t>(
             std::chrono::steady_clock::now().time_since_epoch().count()));
}

}  // namespace stallings
