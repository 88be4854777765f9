// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STALLINGS_CORE_WINDOW_HPP
#define STALLINGS_CORE_WINDOW_HPP

#include <cstdint>

#include <gmp.h>

namespace stallings {

// A Window is a rigorous two-sided enclosure of a nonnegative integer,
// kept in pure integer arithmetic: the true value lies in
//
//     [ mant * 2^exp , (mant + err) * 2^exp ]
//
// with mant normalized so its top bit (bit 127) is set, unless the value
// is zero. err counts ulps of slack accumulated by truncation. Every
// operation rounds the lower end down and widens err so the enclosure
// never lies; comparisons either decide for certain or report Unknown,
// in which case callers fall back to exact big-integer arithmetic.
//
// The point of this type is speed: partial sums over the injection
// counts I_k involve integers of Theta(k log k) bits, and carrying them
// at full precision makes component-size scans quadratic in practice.
// Windows decide the same comparisons in O(1) without ever introducing
// bias, because an undecidable comparison is re-run exactly.
struct Window {
  using u128 = unsigned __int128;

  u128 mant = 0;
  std::int64_t exp = 0;
  std::uint64_t err = 0;

  // err values above this saturate; saturated windows compare Unknown.
  static constexpr std::uint64_t kErrCap = std::uint64_t(1) << 48;

  bool is_zero() const { return mant == 0; }
  bool saturated() const { return err >= kErrCap; }

  static Window zero() { return Window{}; }

  static Window from_u64(std::uint64_t v) {
    Window w;
    if (v == 0) return w;
    int lz = clz128(static_cast<u128>(v));
    w.mant = static_cast<u128>(v) << lz;
    w.exp = -lz;
    w.err = 0;
    return w;
  }

  // Truncated head of a GMP integer; err = 1 covers the discarded tail
  // (0 if the value fits in 128 bits exactly).
  static Window from_mpz(mpz_srcptr z) {
    Window w;
    std::size_t n = mpz_size(z);
    if (n == 0) return w;
    static_assert(GMP_LIMB_BITS == 64, "64-bit limbs assumed");
    std::uint64_t top = mpz_getlimbn(z, n - 1);
    std::uint64_t mid = n >= 2 ? mpz_getlimbn(z, n - 2) : 0;
    std::uint64_t low = n >= 3 ? mpz_getlimbn(z, n - 3) : 0;
    int lz = clz64(top);
    u128 head = (static_cast<u128>(top) << 64) | mid;
    bool tail_nonzero = n > 3;  // limbs below the third are not inspected
    if (lz == 0) {
      tail_nonzero = tail_nonzero || low != 0;
    } else {
      head = (head << lz) | (low >> (64 - lz));
      tail_nonzero = tail_nonzero || (low << lz) != 0;
    }
    w.mant = head;
    w.exp = static_cast<std::int64_t>(64 * n) - 128 - lz;
    w.err = tail_nonzero ? 1 : 0;
    return w;
  }

  // this * w for a machine word w >= 1.
  Window scaled(std::uint64_t w) const {
    Window r;
    if (is_zero() || w == 0) return r;
    // 128 x 64 -> 192-bit product in three 64-bit limbs.
    std::uint64_t a1 = static_cast<std::uint64_t>(mant >> 64);
    std::uint64_t a0 = static_cast<std::uint64_t>(mant);
    u128 p0 = static_cast<u128>(a0) * w;
    u128 p1 = static_cast<u128>(a1) * w + (p0 >> 64);
    std::uint64_t l0 = static_cast<std::uint64_t>(p0);
    std::uint64_t l1 = static_cast<std::uint64_t>(p1);
    std::uint64_t l2 = static_cast<std::uint64_t>(p1 >> 64);
    // Normalize into 128 bits; shift is in [0, 64].
    int shift = l2 ? 64 - clz64(l2) : 0;
    u128 low128 = (static_cast<u128>(l1) << 64) | l0;
    u128 m;
    bool dropped;
    if (shift == 0) {
      m = low128;
      dropped = false;
    } else {
      m = (static_cast<u128>(l2) << (128 - shift)) | (low128 >> shift);
      dropped = (low128 << (128 - shift)) != 0;
    }
    r.mant = m;
    r.exp = exp + shift;
    // (mant+err)*w <= mant*w + err*w; err*w in result ulps, rounded up.
    u128 werr = static_cast<u128>(err) * w;
    u128 scaled_err = shift == 0 ? werr : ((werr >> shift) + 1);
    r.err = clamp_err(scaled_err + (dropped ? 1 : 0));
    return r;
  }

  Window times(const Window& o) const {
    Window r;
    if (is_zero() || o.is_zero()) return r;
    // 128 x 128, keeping the top 128 bits. The a0*b0 partial only
    // contributes below the kept window; dropping it costs at most one
    // carry into `mid`, folded into err below.
    std::uint64_t a1 = static_cast<std::uint64_t>(mant >> 64);
    std::uint64_t a0 = static_cast<std::uint64_t>(mant);
    std::uint64_t b1 = static_cast<std::uint64_t>(o.mant >> 64);
    std::uint64_t b0 = static_cast<std::uint64_t>(o.mant);
    u128 lh = static_cast<u128>(a0) * b1;
    u128 hl = static_cast<u128>(a1) * b0;
    u128 hh = static_cast<u128>(a1) * b1;
    u128 mid = static_cast<u128>(static_cast<std::uint64_t>(lh)) +
               static_cast<std::uint64_t>(hl);
    u128 high = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    std::uint64_t low64 = static_cast<std::uint64_t>(mid);
    // high is in [2^126, 2^128); normalize to top-bit-set.
    int lz = clz128(high);  // 0 or 1
    u128 m = lz == 0 ? high : ((high << 1) | (low64 >> 63));
    r.mant = m;
    r.exp = exp + o.exp + 128 - lz;
    // (a+ea)(b+eb) - ab = a*eb + b*ea + ea*eb <= (ea+eb)*2^128 + ea*eb,
    // i.e. <= 2*(ea+eb) + small in result ulps; +3 covers the dropped
    // low partial, its carry, and the normalization truncation.
    u128 cross = (static_cast<u128>(err) * o.err) >> 126;
    r.err = clamp_err(2 * (static_cast<u128>(err) + o.err) + cross + 3);
    return r;
  }

  Window plus(const Window& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    const Window& big = exp >= o.exp ? *this : o;
    const Window& small = exp >= o.exp ? o : *this;
    std::int64_t d = big.exp - small.exp;
    Window r;
    u128 add;
    u128 extra_err;
    if (d >= 128) {
      // The small side vanishes below one ulp of the big side.
      add = 0;
      extra_err = 2;  // its value and its error each cost at most ~1 ulp
    } else {
      add = small.mant >> d;
      bool lost = d > 0 && (small.mant << (128 - d)) != 0;
      extra_err = (static_cast<u128>(small.err) >> d) + (lost ? 1 : 0) + 1;
    }
    u128 sum = big.mant + add;
    bool carry = sum < big.mant;
    if (carry) {
      bool odd = (sum & 1) != 0;
      sum = (sum >> 1) | (static_cast<u128>(1) << 127);
      r.exp = big.exp + 1;
      r.err = clamp_err(((static_cast<u128>(big.err) + extra_err) >> 1) + 1 +
                        (odd ? 1 : 0));
    } else {
      r.exp = big.exp;
      r.err = clamp_err(static_cast<u128>(big.err) + extra_err);
    }
    r.mant = sum;
    return r;
  }

  // Lower and upper bounds as (mantissa, exponent) pairs for comparison.
  // The upper bound may carry past 128 bits; normalize on the fly.
  struct Bound {
    u128 m;
    std::int64_t e;
  };
  Bound lower() const { return Bound{mant, exp}; }
  Bound upper() const {
    u128 m = mant + err;
    if (m >= mant) return Bound{m, exp};
    // Carried past 128 bits: round the halved mantissa up.
    u128 half = (m >> 1) | (static_cast<u128>(1) << 127);
    u128 up = half + (m & 1);
    if (up < half) return Bound{static_cast<u128>(1) << 127, exp + 2};
    return Bound{up, exp + 1};
  }

  // Compares two magnitude bounds exactly.
  static int cmp_bound(const Bound& a, const Bound& b) {
    if (a.m == 0 || b.m == 0) return a.m == 0 && b.m == 0 ? 0 : (a.m == 0 ? -1 : 1);
    // Align by bit length: length = 128 - clz(m) + e.
    std::int64_t la = 128 - clz128(a.m) + a.e;
    std::int64_t lb = 128 - clz128(b.m) + b.e;
    if (la != lb) return la < lb ? -1 : 1;
    // Same bit length: left-align mantissas and compare.
    u128 ma = a.m << clz128(a.m);
    u128 mb = b.m << clz128(b.m);
    if (ma != mb) return ma < mb ? -1 : 1;
    // Identical heads; the shorter-shifted one may still differ below,
    // but mantissas are exhaustive here (values are exactly m*2^e).
    return 0;
  }

  static std::uint64_t clamp_err(u128 e) {
    return e >= kErrCap ? kErrCap : static_cast<std::uint64_t>(e);
  }

  static int clz64(std::uint64_t x) { return x ? __builtin_clzll(x) : 64; }
  static int clz128(u128 x) {
    std::uint64_t hi = static_cast<std::uint64_t>(x >> 64);
    if (hi) return clz64(hi);
    return 64 + clz64(static_cast<std::uint64_t>(x));
  }
};

/// Outcome of an interval comparison: certain, or undecidable at window
/// precision (caller must fall back to exact arithmetic).
enum class WindowOrder { CertainlyLess, CertainlyGreaterEqual, Unknown };

/// Decides a < b / a >= b from enclosures, erring on Unknown.
inline WindowOrder compare_windows(const Window& a, const Window& b) {
  if (a.saturated() || b.saturated()) return WindowOrder::Unknown;
  if (a.is_zero() && b.is_zero()) return WindowOrder::CertainlyGreaterEqual;
  if (Window::cmp_bound(a.upper(), b.lower()) < 0)
    return WindowOrder::CertainlyLess;
  if (Window::cmp_bound(a.lower(), b.upper()) >= 0)
    return WindowOrder::CertainlyGreaterEqual;
  return WindowOrder::Unknown;
}

}  // namespace stallings

#endif
