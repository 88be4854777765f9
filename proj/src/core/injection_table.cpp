// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/injection_table.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <mpfr.h>

#include "core/rng.hpp"

namespace stallings {

void injection_step_up(std::uint32_t m, mpz_class& below, mpz_class& at) {
  // I_{m+1} = 2(m+1) I_m - m^2 I_{m-1}
  mpz_class next;
  mpz_mul_ui(next.get_mpz_t(), at.get_mpz_t(), 2ul * (m + 1));
  mpz_submul_ui(next.get_mpz_t(), below.get_mpz_t(),
                static_cast<unsigned long>(m) * m);
  below = std::move(at);
  at = std::move(next);
}

InjectionTable::InjectionTable(std::uint32_t n_max, std::uint32_t dense_limit) {
  init_from_values(n_max, dense_limit, {});
}

void InjectionTable::record(std::uint32_t k, const mpz_class& value,
                            const mpz_class& prev) {
  if (k <= dense_limit_) dense_.push_back(value);
  heads_.push_back(Window::from_mpz(value.get_mpz_t()));
  std::uint64_t bitlen = mpz_sizeinbase(value.get_mpz_t(), 2);
  // Bit length of I_k - 1: one less when I_k is a power of two.
  bool pow2 = mpz_scan1(value.get_mpz_t(), 0) == bitlen - 1;
  dice_bits_.push_back(value == 1 ? 0 : (pow2 ? bitlen - 1 : bitlen));
  if (k > dense_limit_ && k % kAnchorStride == 0) {
    anchors_.push_back(Anchor{k, prev, value});
  }
}

void InjectionTable::init_from_values(
    std::uint32_t n_max, std::uint32_t dense_limit,
    const std::function<void(std::uint32_t, mpz_class&)>& next_value) {
  n_max_ = n_max;
  // Keep at least indices {0, 1} dense so regeneration always has a seed
  // pair.
  dense_limit_ = std::min(n_max, std::max(dense_limit, 2u));
  dense_.reserve(std::min(n_max, dense_limit_) + 1);
  heads_.reserve(n_max + 1);
  dice_bits_.reserve(n_max + 1);

  mpz_class below = 1, at = 2;  // (I_0, I_1)
  mpz_class parsed;
  for (std::uint32_t k = 0; k <= n_max; ++k) {
    const mpz_class* cur;
    const mpz_class* prev;
    if (k == 0) {
      cur = &below;
      prev = &below;  // unused at k=0
    } else if (k == 1) {
      cur = &at;
      prev = &below;
    } else {
      injection_step_up(k - 1, below, at);
      cur = &at;
      prev = &below;
    }
    if (next_value) {
      next_value(k, parsed);
      if (parsed != *cur) throw InternalError("cache value mismatch");
    }
    record(k, *cur, *prev);
  }
}

const mpz_class& InjectionTable::dense_value(std::uint32_t k) const {
  if (k >= dense_.size())
    throw UsageError("dense_value: index beyond dense prefix");
  return dense_[k];
}

void InjectionTable::seed_pair(std::uint32_t k, std::uint32_t& p,
                               mpz_class& below, mpz_class& at) const {
  if (k > n_max_) throw UsageError("injection table index out of range");
  // Best exact pair at or below k: an anchor, or the dense boundary.
  const Anchor* best = nullptr;
  for (const auto& a : anchors_) {
    if (a.index <= k) best = &a;
    else break;
  }
  if (best != nullptr) {
    p = best->index;
    below = best->below;
    at = best->at;
  } else {
    p = std::min<std::uint32_t>(k, dense_limit_);
    if (p == 0) {
      below = dense_[0];
      at = dense_[0];
      return;
    }
    below = dense_[p - 1];
    at = dense_[p];
  }
}

mpz_class InjectionTable::value(std::uint32_t k) const {
  if (k > n_max_) throw UsageError("injection table index out of range");
  if (k < dense_.size()) return dense_[k];
  std::uint32_t p;
  mpz_class below, at;
  seed_pair(k, p, below, at);
  while (p < k) {
    injection_step_up(p, below, at);
    ++p;
  }
  return at;
}

void InjectionTable::values_into(std::uint32_t lo, std::uint32_t hi,
                                 std::vector<mpz_class>& out) const {
  if (lo > hi || hi > n_max_) throw UsageError("values_into: bad range");
  std::uint32_t k = lo;
  for (; k <= hi && k < dense_.size(); ++k) out.push_back(dense_[k]);
  if (k > hi) return;
  std::uint32_t p;
  mpz_class below, at;
  seed_pair(k, p, below, at);
  while (p < k) {
    injection_step_up(p, below, at);
    ++p;
  }
  for (; k <= hi; ++k) {
    out.push_back(at);
    if (k < hi) injection_step_up(p++, below, at);
  }
}

void InjectionTable::for_each(
    std::uint32_t hi,
    const std::function<void(std::uint32_t, const mpz_class&)>& fn) const {
  if (hi > n_max_) throw UsageError("for_each: index out of range");
  std::uint32_t k = 0;
  for (; k <= hi && k < dense_.size(); ++k) fn(k, dense_[k]);
  if (k > hi) return;
  mpz_class below = dense_[k - 2], at = dense_[k - 1];
  std::uint32_t p = k - 1;
  for (; k <= hi; ++k) {
    injection_step_up(p++, below, at);
    fn(k, at);
  }
}

const Window& InjectionTable::window(std::uint32_t k) const {
  if (k > n_max_) throw UsageError("injection table index out of range");
  return heads_[k];
}

std::uint64_t InjectionTable::dice_bits(std::uint32_t k) const {
  if (k > n_max_) throw UsageError("injection table index out of range");
  return dice_bits_[k];
}

bool InjectionTable::verify_pointing_identity(std::uint32_t n) const {
  if (n < 1 || n > n_max_)
    throw UsageError("verify_pointing_identity: n out of range");
  std::vector<mpz_class> seg;
  seg.reserve(n);
  values_into(0, n, seg);
  // sum_{k=1..n} (k+1) * (n-1)!/(n-k)! * I_{n-k}, with the falling
  // factorial carried as a running product.
  mpz_class sum = 0, factor = 1, term;
  for (std::uint32_t k = 1; k <= n; ++k) {
    if (k >= 2) mpz_mul_ui(factor.get_mpz_t(), factor.get_mpz_t(), n - k + 1);
    mpz_mul_ui(term.get_mpz_t(), factor.get_mpz_t(), k + 1);
    term *= seg[n - k];
    sum += term;
  }
  return sum == seg[n];
}

namespace {

// Evaluates lo/hi bounds of n * e^{1/sqrt(n)} * I_{n-1} and of
// n! * e^{2 sqrt(n) - 1} at the given precision.
struct DirectedBounds {
  mpfr_t mid_lo, mid_hi, right_lo, right_hi;
  DirectedBounds(std::uint32_t n, const mpz_class& below,
                 mpfr_prec_t prec) {
    mpfr_inits2(prec, mid_lo, mid_hi, right_lo, right_hi,
                static_cast<mpfr_ptr>(nullptr));
    mpfr_t t, u;
    mpfr_inits2(prec, t, u, static_cast<mpfr_ptr>(nullptr));

    // mid = n * e^{1/sqrt(n)} * I_{n-1}; the inner sqrt rounds away from
    // the target so that 1/sqrt(n) rounds toward it.
    for (int dir = 0; dir < 2; ++dir) {
      mpfr_rnd_t out = dir == 0 ? MPFR_RNDD : MPFR_RNDU;
      mpfr_rnd_t inner = dir == 0 ? MPFR_RNDU : MPFR_RNDD;
      mpfr_ptr dst = dir == 0 ? mid_lo : mid_hi;
      mpfr_set_ui(t, n, inner);
      mpfr_sqrt(t, t, inner);
      mpfr_ui_div(t, 1, t, out);
      mpfr_exp(t, t, out);
      mpfr_mul_ui(t, t, n, out);
      mpfr_set_z(u, below.get_mpz_t(), out);
      mpfr_mul(dst, t, u, out);
    }
    // right = n! * e^{2 sqrt(n) - 1}
    mpz_class fac;
    mpz_fac_ui(fac.get_mpz_t(), n);
    for (int dir = 0; dir < 2; ++dir) {
      mpfr_rnd_t out = dir == 0 ? MPFR_RNDD : MPFR_RNDU;
      mpfr_ptr dst = dir == 0 ? right_lo : right_hi;
      mpfr_set_ui(t, n, out);
      mpfr_sqrt(t, t, out);
      mpfr_mul_ui(t, t, 2, out);
      mpfr_sub_ui(t, t, 1, out);
      mpfr_exp(t, t, out);
      mpfr_set_z(u, fac.get_mpz_t(), out);
      mpfr_mul(dst, t, u, out);
    }
    mpfr_clears(t, u, static_cast<mpfr_ptr>(nullptr));
  }
  ~DirectedBounds() {
    mpfr_clears(mid_lo, mid_hi, right_lo, right_hi,
                static_cast<mpfr_ptr>(nullptr));
  }
};

}  // namespace

bool InjectionTable::check_injection_bounds(std::uint32_t n) const {
  if (n < 1 || n > n_max_)
    throw UsageError("check_injection_bounds: n out of range");
  mpz_class below = value(n - 1);
  mpz_class at = value(n);

  // (n+1)! <= (n+1) I_{n-1}  <=>  n! <= I_{n-1}, exact.
  mpz_class fac;
  mpz_fac_ui(fac.get_mpz_t(), n);
  if (fac > below) return false;
  // (n+1) I_{n-1} <= I_n, exact.
  mpz_class lhs = below * (n + 1);
  if (lhs > at) return false;

  // n = 1: the chain is 2 <= 2 <= 2 <= e <= e; the last link is an exact
  // equality that directed rounding cannot separate.
  if (n == 1) return true;

  // Transcendental links with outward rounding; a comparison that stays
  // ambiguous has its precision raised (cannot loop forever: for n >= 2
  // the sides are never exactly equal).
  for (mpfr_prec_t prec = 192; prec <= 3072; prec *= 2) {
    DirectedBounds b(n, below, prec);
    // I_n <= n e^{1/sqrt(n)} I_{n-1} ?
    int lo_cmp = mpfr_cmp_z(b.mid_lo, at.get_mpz_t());
    int hi_cmp = mpfr_cmp_z(b.mid_hi, at.get_mpz_t());
    bool mid_ok;
    if (lo_cmp >= 0) mid_ok = true;        // certainly holds
    else if (hi_cmp < 0) return false;     // certainly violated
    else continue;                         // ambiguous: more precision
    // n e^{1/sqrt(n)} I_{n-1} <= n! e^{2 sqrt(n) - 1} ?
    if (mpfr_cmp(b.mid_hi, b.right_lo) <= 0) return mid_ok;
    if (mpfr_cmp(b.mid_lo, b.right_hi) > 0) return false;
  }
  throw InternalError("check_injection_bounds: comparison did not resolve");
}

void InjectionTable::save_cache(std::ostream& os) const {
  os << "stallings-itable 1 " << n_max_ << '\n';
  std::vector<char> buf;
  for_each(n_max_, [&](std::uint32_t, const mpz_class& v) {
    std::size_t need = mpz_sizeinbase(v.get_mpz_t(), 10) + 2;
    if (buf.size() < need) buf.resize(need);
    mpz_get_str(buf.data(), 10, v.get_mpz_t());
    os << buf.data() << '\n';
  });
}

bool InjectionTable::save_cache_file(const std::string& path) const {
  std::ofstream os(path, std::ios::trunc);
  if (!os) return false;
  save_cache(os);
  return static_cast<bool>(os);
}

std::optional<InjectionTable> InjectionTable::load_cache(
    std::istream& is, std::uint32_t n_max, std::uint32_t dense_limit) {
  std::string magic;
  unsigned version = 0;
  std::uint32_t file_n_max = 0;
  if (!(is >> magic >> version >> file_n_max)) return std::nullopt;
  if (magic != "stallings-itable" || version != 1 || file_n_max < n_max)
    return std::nullopt;
  std::string line;
  std::getline(is, line);

  InjectionTable t;
  try {
    t.init_from_values(n_max, dense_limit,
                       [&](std::uint32_t, mpz_class& out) {
                         if (!std::getline(is, line))
                           throw InternalError("cache truncated");
                         if (line.empty() ||
                             mpz_set_str(out.get_mpz_t(), line.c_str(), 10) !=
                                 0)
                           throw InternalError("cache parse error");
                       });
  } catch (const InternalError&) {
    return std::nullopt;
  }
  return t;
}

std::optional<InjectionTable> InjectionTable::load_cache_file(
    const std::string& path, std::uint32_t n_max, std::uint32_t dense_limit) {
  std::ifstream is(path);
  if (!is) return std::nullopt;
  return load_cache(is, n_max, dense_limit);
}

SubgroupCountEstimate subgroup_count_estimate(std::uint32_t n, std::uint32_t r,
                                              const InjectionTable& table) {
  if (n < 1 || n > table.n_max())
    throw UsageError("subgroup_count_estimate: n out of range");
  if (r < 2) throw UsageError("subgroup_count_estimate: r must be >= 2");
  SubgroupCountEstimate e;
  e.n = n;
  e.r = r;
  mpz_class in = table.value(n);
  mpz_class num;
  mpz_pow_ui(num.get_mpz_t(), in.get_mpz_t(), r);
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), n - 1);
  e.leading = mpq_class(num, den);
  e.leading.canonicalize();

  const double nd = static_cast<double>(n);
  const double rd = static_cast<double>(r);
  e.stirling_log = -(rd / 2) * std::log(2 * std::exp(1.0)) -
                   0.5 * std::log(2 * M_PI) +
                   (-(rd - 1) * nd + 2 * rd * std::sqrt(nd)) +
                   ((rd - 1) * nd + (rd + 2) / 4) * std::log(nd);
  return e;
}

}  // namespace stallings
