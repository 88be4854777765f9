// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STALLINGS_CORE_CHI_SQUARE_HPP
#define STALLINGS_CORE_CHI_SQUARE_HPP

#include <cstdint>
#include <vector>

namespace stallings {

/// Upper regularized incomplete gamma Q(a, x); series/continued-fraction
/// evaluation, accurate to ~1e-12 over the ranges used here.
double gamma_q(double a, double x);

/// p-value of a chi-square statistic with `df` degrees of freedom.
double chi_square_p_value(double statistic, std::uint64_t df);

/// Pearson statistic of observed counts against expected probabilities.
double chi_square_statistic(const std::vector<std::uint64_t>& observed,
                            const std::vector<double>& expected_probability,
                            std::uint64_t total);

/// Goodness-of-fit p-value of counts against the uniform distribution.
double chi_square_uniform_p_value(const std::vector<std::uint64_t>& observed);

}  // namespace stallings

#endif
