// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line frontend. Talks to the library exclusively through the
// public C API, the way an external client would.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stallings/stallings.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;

struct TableDeleter {
  void operator()(stal_table* t) const { stal_table_free(t); }
};
struct SourceDeleter {
  void operator()(stal_source* s) const { stal_source_free(s); }
};
struct GraphDeleter {
  void operator()(stal_graph* g) const { stal_graph_free(g); }
};
struct InjectionDeleter {
  void operator()(stal_injection* i) const { stal_injection_free(i); }
};
using TablePtr = std::unique_ptr<stal_table, TableDeleter>;
using SourcePtr = std::unique_ptr<stal_source, SourceDeleter>;
using GraphPtr = std::unique_ptr<stal_graph, GraphDeleter>;
using InjectionPtr = std::unique_ptr<stal_injection, InjectionDeleter>;

class OwnedString {
 public:
  char** slot() { return &s_; }
  const char* get() const { return s_; }
  ~OwnedString() { stal_string_free(s_); }

 private:
  char* s_ = nullptr;
};

[[noreturn]] void fail(int rc, const std::string& context) {
  std::cerr << "error: " << context << ": " << stal_last_error() << '\n';
  std::exit(rc == STAL_EINVAL ? kExitUsage : kExitInternal);
}

void check(int rc, const std::string& context) {
  if (rc != STAL_OK) fail(rc, context);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::uint64_t s = stal_entropy_seed();
  std::cerr << "seed: " << s << '\n';
  return s;
}

TablePtr open_table(std::uint32_t n_max, const std::string& cache_path) {
  stal_table* t = nullptr;
  if (cache_path.empty()) {
    check(stal_table_build(n_max, &t), "building table");
  } else {
    int rebuilt = 0;
    check(stal_table_open(n_max, cache_path.c_str(), /*write_back=*/1,
                          &rebuilt, &t),
          "opening table cache");
    if (rebuilt)
      std::cerr << "table cache: rebuilt " << cache_path << " for n_max "
                << n_max << '\n';
  }
  return TablePtr(t);
}

int cmd_table(std::uint32_t n_max, const std::string& format,
              const std::string& cache_path) {
  TablePtr t = open_table(n_max, cache_path);
  if (format == "json") {
    // An array of decimal strings indexed by k; the values outgrow
    // 64-bit JSON numbers almost immediately.
    std::string out = "[";
    for (std::uint32_t k = 0; k <= n_max; ++k) {
      OwnedString v;
      check(stal_table_value(t.get(), k, v.slot()), "reading value");
      if (k) out += ',';
      out += '"';
      out += v.get();
      out += '"';
    }
    out += "]";
    std::cout << out << '\n';
  } else {
    const char* sep = format == "csv" ? "," : " ";
    for (std::uint32_t k = 0; k <= n_max; ++k) {
      OwnedString v;
      check(stal_table_value(t.get(), k, v.slot()), "reading value");
      std::cout << k << sep << v.get() << '\n';
    }
  }
  return kExitOk;
}

int cmd_gen_injection(std::uint32_t n, std::optional<std::uint64_t> seed_opt,
                      const std::string& cache_path) {
  std::uint64_t seed = resolve_seed(seed_opt);
  TablePtr t = open_table(n, cache_path);
  stal_source* src = nullptr;
  check(stal_source_new(seed, 0, &src), "creating source");
  SourcePtr source(src);
  stal_injection* inj = nullptr;
  check(stal_random_injection(t.get(), n, source.get(), &inj),
        "sampling injection");
  InjectionPtr injection(inj);
  OwnedString json;
  check(stal_injection_to_json(injection.get(), json.slot()), "serializing");
  std::cout << json.get() << '\n';
  return kExitOk;
}

int cmd_gen(bool finite_index, std::uint32_t n, std::uint32_t r,
            std::optional<std::uint64_t> seed_opt, std::uint32_t count,
            const std::string& format, bool verbose,
            const std::string& cache_path) {
  std::uint64_t seed = resolve_seed(seed_opt);
  TablePtr t;
  if (!finite_index) t = open_table(n, cache_path);
  for (std::uint32_t i = 0; i < count; ++i) {
    stal_source* src = nullptr;
    check(stal_source_new(seed, i, &src), "creating source");
    SourcePtr source(src);
    std::uint64_t rejections = 0;
    stal_graph* g = nullptr;
    if (finite_index) {
      check(stal_random_finite_index(n, r, source.get(), &rejections, &g),
            "sampling finite-index subgroup");
    } else {
      check(stal_random_subgroup(t.get(), n, r, source.get(), &rejections, &g),
            "sampling subgroup");
    }
    GraphPtr graph(g);
    if (verbose)
      std::cerr << "draw " << i << ": rejections=" << rejections << '\n';
    OwnedString out;
    if (format == "dot") {
      check(stal_graph_to_dot(graph.get(), out.slot()), "serializing");
      std::cout << out.get();
    } else {
      check(stal_graph_to_json(graph.get(), out.slot()), "serializing");
      std::cout << out.get() << '\n';
    }
  }
  return kExitOk;
}

int cmd_count(std::uint32_t n, std::uint32_t r) {
  OwnedString out;
  check(stal_count_json(n, r, out.slot()), "counting");
  std::cout << out.get() << '\n';
  return kExitOk;
}

int cmd_stats(const std::string& metric, std::uint32_t n, std::uint32_t r,
              std::uint64_t trials, std::optional<std::uint64_t> seed_opt) {
  std::uint64_t seed = resolve_seed(seed_opt);
  OwnedString out;
  check(stal_stats_json(metric.c_str(), n, r, trials, seed, out.slot()),
        "running stats");
  std::cout << out.get() << '\n';
  return kExitOk;
}

int cmd_selftest() {
  OwnedString report;
  int rc = stal_selftest(report.slot());
  if (report.get() != nullptr) std::cout << report.get() << '\n';
  if (rc == STAL_OK) return kExitOk;
  std::cerr << "selftest failed\n";
  return kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "stallings: uniform random generation of finitely generated\n"
      "subgroups of free groups, as Stallings graphs"};
  app.require_subcommand(1);

  // table
  auto* table_cmd = app.add_subcommand(
      "table", "Print the partial-injection counts I_0..I_n_max");
  std::uint32_t n_max = 10;
  std::string table_format = "plain";
  std::string cache_path;
  table_cmd->add_option("--n-max", n_max, "Largest index")->required();
  table_cmd->add_option("--format", table_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv", "plain"}));
  table_cmd->add_option("--table-cache", cache_path, "Cache file path");

  // gen-injection
  auto* geninj = app.add_subcommand(
      "gen-injection", "Sample a uniform partial injection on {1..n}");
  std::uint32_t n = 1;
  std::optional<std::uint64_t> seed;
  std::string inj_format = "json";
  geninj->add_option("--n", n, "Size")->required();
  geninj->add_option("--seed", seed, "Seed (default: system entropy)");
  geninj->add_option("--format", inj_format)->check(CLI::IsMember({"json"}));
  geninj->add_option("--table-cache", cache_path, "Cache file path");

  // gen / gen-fi
  auto* gen = app.add_subcommand(
      "gen", "Sample a uniform size-n subgroup of the rank-r free group");
  auto* genfi = app.add_subcommand(
      "gen-fi", "Sample a uniform size-n finite-index subgroup");
  std::uint32_t r = 2;
  std::uint32_t count = 1;
  std::string gen_format = "json";
  bool verbose = false;
  for (CLI::App* c : {gen, genfi}) {
    c->add_option("--n", n, "Subgroup size (vertex count)")->required();
    c->add_option("--r", r, "Alphabet size (rank of the free group)")
        ->required();
    c->add_option("--seed", seed, "Seed (default: system entropy)");
    c->add_option("--count", count, "Number of draws")
        ->check(CLI::PositiveNumber);
    c->add_option("--format", gen_format, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}));
    c->add_flag("--verbose", verbose, "Print rejection counts to stderr");
  }
  gen->add_option("--table-cache", cache_path, "Cache file path");

  // count
  auto* count_cmd = app.add_subcommand(
      "count", "Exhaustively count size-n subgroups (desk scale)");
  count_cmd->add_option("--n", n, "Size")->required();
  count_cmd->add_option("--r", r, "Alphabet size")->required();

  // stats
  auto* stats = app.add_subcommand(
      "stats", "Seeded statistics: rank, connectivity, sequences, fi-accept");
  std::string metric;
  std::uint64_t trials = 1000;
  stats->add_option("--metric", metric)
      ->required()
      ->check(CLI::IsMember({"rank", "connectivity", "sequences", "fi-accept"}));
  stats->add_option("--n", n, "Size")->required();
  stats->add_option("--r", r, "Alphabet size");
  stats->add_option("--trials", trials, "Number of trials")->required();
  stats->add_option("--seed", seed, "Seed (default: system entropy)");

  auto* selftest = app.add_subcommand(
      "selftest", "Run the invariant battery; nonzero exit on failure");
  (void)selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (table_cmd->parsed()) return cmd_table(n_max, table_format, cache_path);
    if (geninj->parsed()) return cmd_gen_injection(n, seed, cache_path);
    // The r >= 2 rule matches the standing rank assumption; injection-level
    // commands are the only ones free of it.
    if (gen->parsed() || genfi->parsed() || count_cmd->parsed() ||
        stats->parsed()) {
      bool needs_r = !stats->parsed() || metric != "sequences";
      if (needs_r && r < 2) {
        std::cerr << "error: --r must be >= 2\n";
        return kExitUsage;
      }
    }
    if (gen->parsed())
      return cmd_gen(false, n, r, seed, count, gen_format, verbose,
                     cache_path);
    if (genfi->parsed())
      return cmd_gen(true, n, r, seed, count, gen_format, verbose, "");
    if (count_cmd->parsed()) return cmd_count(n, r);
    if (stats->parsed()) return cmd_stats(metric, n, r, trials, seed);
    if (selftest->parsed()) return cmd_selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
