// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STALLINGS_CORE_SELFTEST_HPP
#define STALLINGS_CORE_SELFTEST_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace stallings {

struct SelftestResult {
  std::vector<std::string> passed;
  std::vector<std::string> failed;
  bool ok() const { return failed.empty(); }
  std::string to_json() const;
};

/// The invariant battery behind the `selftest` subcommand: table
/// identities, enumeration cross-counts, sampler uniformity spot
/// checks, scan-mode equivalence, canonical-form and folding checks.
/// Deterministic (fixed seeds); takes a few seconds. When `log` is
/// given, prints one line per check.
SelftestResult run_selftest(std::ostream* log = nullptr);

}  // namespace stallings

#endif
