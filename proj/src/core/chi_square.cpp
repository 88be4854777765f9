// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/chi_square.hpp"

#include <cmath>
#include <limits>

#include "core/rng.hpp"

namespace stallings {

namespace {

// Lower regularized incomplete gamma by series; valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double sum = 1.0 / a, term = sum, ap = a;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by Lentz continued fraction;
// valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (a <= 0) throw UsageError("gamma_q: a must be positive");
  if (x < 0) throw UsageError("gamma_q: x must be nonnegative");
  if (x == 0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_p_value(double statistic, std::uint64_t df) {
  if (df == 0) return 1.0;
  return gamma_q(static_cast<double>(df) / 2.0, statistic / 2.0);
}

double chi_square_statistic(const std::vector<std::uint64_t>& observed,
                            const std::vector<double>& expected_probability,
                            std::uint64_t total) {
  if (observed.size() != expected_probability.size())
    throw UsageError("chi_square_statistic: size mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    double expect = expected_probability[i] * static_cast<double>(total);
    if (expect <= 0)
      throw UsageError("chi_square_statistic: nonpositive expectation");
    double diff = static_cast<double>(observed[i]) - expect;
    stat += diff * diff / expect;
  }
  return stat;
}

double chi_square_uniform_p_value(const std::vector<std::uint64_t>& observed) {
  if (observed.empty()) throw UsageError("chi-square: no classes");
  std::uint64_t total = 0;
  for (auto c : observed) total += c;
  if (observed.size() == 1) return 1.0;
  std::vector<double> p(observed.size(), 1.0 / static_cast<double>(observed.size()));
  double stat = chi_square_statistic(observed, p, total);
  return chi_square_p_value(stat, observed.size() - 1);
}

}  // namespace stallings
