// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/sampler.hpp"

#include <algorithm>

#include "core/window.hpp"

namespace stallings {

namespace {

// Below this stage size the plain exact scan is as fast as windows.
constexpr std::uint32_t kExactScanCutoff = 64;

// Exact I_k access for scans: serves the dense prefix directly and
// materializes anchored ranges on demand, growing downward. Only cold
// paths (forced-exact scans above the dense prefix, window fallbacks)
// ever materialize.
class ExactRange {
 public:
  explicit ExactRange(const InjectionTable& table) : table_(table) {}

  const mpz_class& at(std::uint32_t k) {
    if (k <= table_.dense_limit()) return table_.dense_value(k);
    if (vals_.empty() || k < base_ || k - base_ >= vals_.size()) {
      std::uint32_t lo = k >= 256 ? k - 256 : 0;
      lo = std::max(lo, table_.dense_limit() + 1);
      vals_.clear();
      table_.values_into(lo, k, vals_);
      base_ = lo;
    }
    return vals_[k - base_];
  }

 private:
  const InjectionTable& table_;
  std::uint32_t base_ = 0;
  std::vector<mpz_class> vals_;
};

// Reference scan, straight from the exact-integer formulation:
// dice below I_n; S runs through the partial sums with the falling
// factorial kept as an incremental factor T.
std::uint32_t scan_exact(std::uint32_t n, const mpz_class& dice,
                         ExactRange& vals) {
  std::uint32_t k = 1;
  mpz_class t = 1;
  mpz_class s = 2 * vals.at(n - 1);
  mpz_class term;
  while (dice >= s) {
    ++k;
    if (k > n) throw InternalError("component-size scan overran its mass");
    mpz_mul_ui(t.get_mpz_t(), t.get_mpz_t(), n - k + 1);
    mpz_mul_ui(term.get_mpz_t(), t.get_mpz_t(), k + 1);
    term *= vals.at(n - k);
    s += term;
  }
  return k;
}

// Windowed scan: identical decisions, O(1) per step. `stress` forces
// the exact fallback at the first comparison.
std::uint32_t scan_windowed(std::uint32_t n, const mpz_class& dice,
                            const InjectionTable& table, ExactRange& vals,
                            bool stress) {
  if (stress) return scan_exact(n, dice, vals);
  Window dice_w = Window::from_mpz(dice.get_mpz_t());
  const Window::Bound dice_lo = dice_w.lower();
  const Window::Bound dice_hi = dice_w.upper();
  Window t = Window::from_u64(1);
  Window s = table.window(n - 1).scaled(2);
  std::uint32_t k = 1;
  for (;;) {
    if (s.saturated()) return scan_exact(n, dice, vals);
    // Most iterations continue, so test that side first.
    if (Window::cmp_bound(dice_lo, s.upper()) < 0) {
      if (Window::cmp_bound(dice_hi, s.lower()) < 0) return k;
      return scan_exact(n, dice, vals);  // undecidable at this precision
    }
    ++k;
    if (k > n) throw InternalError("component-size scan overran its mass");
    t = t.scaled(n - k + 1);
    s = s.plus(t.scaled(k + 1).times(table.window(n - k)));
  }
}

// Uniform below I_n, deciding the rejection test through windows with
// an exact fallback; consumes exactly the bits the exact test would.
mpz_class dice_below_in(std::uint32_t n, const InjectionTable& table,
                        RandomSource& src, ExactRange& vals) {
  const std::uint64_t nbits = table.dice_bits(n);
  if (nbits == 0) return mpz_class(0);
  const std::size_t limbs = static_cast<std::size_t>((nbits + 63) / 64);
  const Window& bound = table.window(n);
  mpz_class dice;
  static_assert(GMP_LIMB_BITS == 64, "64-bit limbs assumed");
  for (;;) {
    mp_limb_t* w = mpz_limbs_write(dice.get_mpz_t(), limbs);
    src.fill_bits(reinterpret_cast<std::uint64_t*>(w), nbits);
    std::size_t used = limbs;
    while (used > 0 && w[used - 1] == 0) --used;
    mpz_limbs_finish(dice.get_mpz_t(), used);
    switch (compare_windows(Window::from_mpz(dice.get_mpz_t()), bound)) {
      case WindowOrder::CertainlyLess:
        return dice;
      case WindowOrder::CertainlyGreaterEqual:
        break;  // redraw
      case WindowOrder::Unknown:
        if (dice < vals.at(n)) return dice;
        break;  // redraw
    }
  }
}

std::uint32_t draw_component_size_inner(std::uint32_t n,
                                        const InjectionTable& table,
                                        RandomSource& src, ScanMode mode,
                                        ExactRange& vals) {
  if (n < 1) throw UsageError("draw_component_size: n must be >= 1");
  if (n > table.n_max())
    throw UsageError("draw_component_size: n exceeds table");
  if (mode == ScanMode::Auto)
    mode = n <= kExactScanCutoff ? ScanMode::Exact : ScanMode::Windowed;
  if (mode == ScanMode::Exact) {
    mpz_class dice = src.uniform_below(vals.at(n));
    return scan_exact(n, dice, vals);
  }
  mpz_class dice = dice_below_in(n, table, src, vals);
  return scan_windowed(n, dice, table, vals,
                       mode == ScanMode::WindowedStress);
}

}  // namespace

std::uint32_t draw_component_size(std::uint32_t n, const InjectionTable& table,
                                  RandomSource& src,
                                  const SamplerOptions& opts) {
  ExactRange vals(table);
  return draw_component_size_inner(n, table, src, opts.mode, vals);
}

ComponentShape draw_component_kind(std::uint32_t k, RandomSource& src) {
  if (k < 1) throw UsageError("draw_component_kind: k must be >= 1");
  ComponentKind kind = src.uniform_index(static_cast<std::uint64_t>(k) + 1) < k
                           ? ComponentKind::Sequence
                           : ComponentKind::Cycle;
  return ComponentShape{kind, k};
}

ShapeSequence random_shape_sequence(std::uint32_t n,
                                    const InjectionTable& table,
                                    RandomSource& src,
                                    const SamplerOptions& opts) {
  if (n > table.n_max())
    throw UsageError("random_shape_sequence: n exceeds table");
  ShapeSequence out;
  out.total = n;
  ExactRange vals(table);
  std::uint32_t rem = n;
  while (rem > 0) {
    std::uint32_t k = draw_component_size_inner(rem, table, src, opts.mode,
                                                vals);
    out.shapes.push_back(draw_component_kind(k, src));
    rem -= k;
  }
  return out;
}

Permutation random_permutation(std::uint32_t n, RandomSource& src) {
  Permutation p = Permutation::identity(n);
  auto& img = p.raw();
  for (std::uint32_t i = 1; i < n; ++i) {
    std::uint64_t j = src.uniform_index(static_cast<std::uint64_t>(i) + 1);
    std::swap(img[i], img[j]);
  }
  return p;
}

PartialInjection label_shapes(const ShapeSequence& shapes,
                              const Permutation& perm) {
  if (perm.size() != shapes.total)
    throw UsageError("label_shapes: permutation size mismatch");
  std::uint64_t sum = 0;
  for (const auto& s : shapes.shapes) sum += s.size;
  if (sum != shapes.total)
    throw UsageError("label_shapes: shape sizes do not sum to total");

  PartialInjection out = PartialInjection::empty(shapes.total);
  auto& img = out.raw();
  std::uint32_t pos = 0;
  for (const auto& s : shapes.shapes) {
    for (std::uint32_t i = 0; i + 1 < s.size; ++i)
      img[perm.image(pos + i)] = perm.image(pos + i + 1);
    if (s.kind == ComponentKind::Cycle)
      img[perm.image(pos + s.size - 1)] = perm.image(pos);
    pos += s.size;
  }
  return out;
}

PartialInjection random_partial_injection(std::uint32_t n,
                                          const InjectionTable& table,
                                          RandomSource& src,
                                          const SamplerOptions& opts) {
  ShapeSequence shapes = random_shape_sequence(n, table, src, opts);
  Permutation perm = random_permutation(n, src);
  return label_shapes(shapes, perm);
}

}  // namespace stallings
