// Copyright 2026 The stallings Authors
// SPDX-License-Identifier: Apache-2.0

#include "stallings/stallings.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "core/generator.hpp"
#include "core/oracle.hpp"
#include "core/sampler.hpp"
#include "core/selftest.hpp"

using namespace stallings;

struct stal_table {
  InjectionTable impl;
};
struct stal_source {
  RandomSource impl;
};
struct stal_injection {
  PartialInjection impl;
};
struct stal_graph {
  AGraph impl;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return STAL_OK;
  } catch (const UsageError& e) {
    g_last_error = e.what();
    return STAL_EINVAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return STAL_EINTERNAL;
  }
}

int require(bool cond, const char* msg) {
  if (cond) return STAL_OK;
  g_last_error = msg;
  return STAL_EINVAL;
}

}  // namespace

extern "C" {

const char* stal_strerror(int code) {
  switch (code) {
    case STAL_OK: return "ok";
    case STAL_EINVAL: return "invalid argument or precondition";
    case STAL_EINTERNAL: return "internal error";
  }
  return "unknown error code";
}

const char* stal_last_error(void) { return g_last_error.c_str(); }

void stal_string_free(char* s) { std::free(s); }

int stal_table_build(uint32_t n_max, stal_table** out) {
  if (int rc = require(out != nullptr, "out is null")) return rc;
  return guarded([&] { *out = new stal_table{InjectionTable(n_max)}; });
}

int stal_table_open(uint32_t n_max, const char* path, int write_back,
                    int* rebuilt, stal_table** out) {
  if (int rc = require(out != nullptr, "out is null")) return rc;
  if (path == nullptr) return stal_table_build(n_max, out);
  return guarded([&] {
    if (auto cached = InjectionTable::load_cache_file(path, n_max)) {
      if (rebuilt) *rebuilt = 0;
      *out = new stal_table{std::move(*cached)};
      return;
    }
    stal_table* t = new stal_table{InjectionTable(n_max)};
    if (rebuilt) *rebuilt = 1;
    if (write_back) t->impl.save_cache_file(path);
    *out = t;
  });
}

void stal_table_free(stal_table* t) { delete t; }

uint32_t stal_table_n_max(const stal_table* t) { return t->impl.n_max(); }

int stal_table_value(const stal_table* t, uint32_t k, char** out) {
  if (int rc = require(t && out, "null argument")) return rc;
  return guarded([&] { *out = dup_string(t->impl.value(k).get_str()); });
}

int stal_table_pointing_identity(const stal_table* t, uint32_t n, int* holds) {
  if (int rc = require(t && holds, "null argument")) return rc;
  return guarded([&] { *holds = t->impl.verify_pointing_identity(n) ? 1 : 0; });
}

int stal_table_growth_bounds(const stal_table* t, uint32_t n, int* holds) {
  if (int rc = require(t && holds, "null argument")) return rc;
  return guarded([&] { *holds = t->impl.check_injection_bounds(n) ? 1 : 0; });
}

int stal_subgroup_estimate(const stal_table* t, uint32_t n, uint32_t r,
                           char** leading, double* stirling_log) {
  if (int rc = require(t && leading && stirling_log, "null argument")) return rc;
  return guarded([&] {
    SubgroupCountEstimate e = subgroup_count_estimate(n, r, t->impl);
    *leading = dup_string(e.leading.get_str());
    *stirling_log = e.stirling_log;
  });
}

int stal_source_new(uint64_t seed, uint64_t stream, stal_source** out) {
  if (int rc = require(out != nullptr, "out is null")) return rc;
  return guarded([&] { *out = new stal_source{RandomSource(seed, stream)}; });
}

void stal_source_free(stal_source* s) { delete s; }

uint64_t stal_entropy_seed(void) { return entropy_seed(); }

int stal_random_injection(const stal_table* t, uint32_t n, stal_source* src,
                          stal_injection** out) {
  if (int rc = require(t && src && out, "null argument")) return rc;
  return guarded([&] {
    *out = new stal_injection{
        random_partial_injection(n, t->impl, src->impl)};
  });
}

void stal_injection_free(stal_injection* inj) { delete inj; }

uint32_t stal_injection_size(const stal_injection* inj) {
  return inj->impl.size();
}

uint32_t stal_injection_image(const stal_injection* inj, uint32_t u) {
  if (u < 1 || u > inj->impl.size()) return 0;
  Vertex v = inj->impl.image(u - 1);
  return v == kNoVertex ? 0 : v + 1;
}

uint32_t stal_injection_sequences(const stal_injection* inj) {
  return count_sequences(inj->impl);
}

int stal_injection_to_json(const stal_injection* inj, char** out) {
  if (int rc = require(inj && out, "null argument")) return rc;
  return guarded([&] {
    std::ostringstream os;
    os << "{\"n\":" << inj->impl.size() << ",\"image\":[";
    for (Vertex u = 0; u < inj->impl.size(); ++u) {
      if (u) os << ',';
      Vertex v = inj->impl.image(u);
      if (v == kNoVertex) os << "null";
      else os << v + 1;
    }
    os << "]}";
    *out = dup_string(os.str());
  });
}

int stal_random_subgroup(const stal_table* t, uint32_t n, uint32_t r,
                         stal_source* src, uint64_t* rejections,
                         stal_graph** out) {
  if (int rc = require(t && src && out, "null argument")) return rc;
  return guarded([&] {
    GenerationReport rep = random_admissible_graph(n, r, t->impl, src->impl);
    if (rejections) *rejections = rep.rejections;
    *out = new stal_graph{std::move(rep.graph)};
  });
}

int stal_random_finite_index(uint32_t n, uint32_t r, stal_source* src,
                             uint64_t* rejections, stal_graph** out) {
  if (int rc = require(src && out, "null argument")) return rc;
  return guarded([&] {
    GenerationReport rep = random_finite_index_graph(n, r, src->impl);
    if (rejections) *rejections = rep.rejections;
    *out = new stal_graph{std::move(rep.graph)};
  });
}

int stal_fold(const char* const* words, size_t n_words, uint32_t alphabet,
              stal_graph** out) {
  if (int rc = require(words && out, "null argument")) return rc;
  return guarded([&] {
    std::vector<Word> parsed;
    parsed.reserve(n_words);
    for (size_t i = 0; i < n_words; ++i) parsed.push_back(parse_word(words[i]));
    *out = new stal_graph{fold(parsed, alphabet)};
  });
}

void stal_graph_free(stal_graph* g) { delete g; }

uint32_t stal_graph_size(const stal_graph* g) { return g->impl.size(); }
uint32_t stal_graph_alphabet(const stal_graph* g) { return g->impl.alphabet(); }
uint32_t stal_graph_edge_count(const stal_graph* g) {
  return g->impl.edge_count();
}
int stal_graph_is_connected(const stal_graph* g) {
  return g->impl.is_connected() ? 1 : 0;
}
int stal_graph_is_one_trim(const stal_graph* g) {
  return g->impl.is_one_trim() ? 1 : 0;
}
int stal_graph_is_admissible(const stal_graph* g) {
  return g->impl.is_admissible() ? 1 : 0;
}

int stal_graph_rank(const stal_graph* g, uint32_t* rank) {
  if (int rc = require(g && rank, "null argument")) return rc;
  return guarded([&] { *rank = g->impl.rank(); });
}

int stal_graph_is_finite_index(const stal_graph* g, int* flag) {
  if (int rc = require(g && flag, "null argument")) return rc;
  return guarded([&] { *flag = g->impl.is_finite_index() ? 1 : 0; });
}

int stal_graph_accepts(const stal_graph* g, const char* word, int* accepted) {
  if (int rc = require(g && word && accepted, "null argument")) return rc;
  return guarded(
      [&] { *accepted = g->impl.accepts_word(parse_word(word)) ? 1 : 0; });
}

int stal_graph_to_json(const stal_graph* g, char** out) {
  if (int rc = require(g && out, "null argument")) return rc;
  return guarded([&] { *out = dup_string(graph_to_json(g->impl)); });
}

int stal_graph_to_dot(const stal_graph* g, char** out) {
  if (int rc = require(g && out, "null argument")) return rc;
  return guarded([&] { *out = dup_string(graph_to_dot(g->impl)); });
}

int stal_graph_canonical(const stal_graph* g, char** out) {
  if (int rc = require(g && out, "null argument")) return rc;
  return guarded([&] { *out = dup_string(g->impl.canonical_form()); });
}

int stal_count_json(uint32_t n, uint32_t r, char** out) {
  if (int rc = require(out != nullptr, "out is null")) return rc;
  return guarded([&] {
    EnumerationResult res = enumerate_admissible(n, r);
    std::ostringstream os;
    os << "{\"n\":" << res.n << ",\"r\":" << res.r
       << ",\"labeled_admissible\":" << res.labeled_admissible
       << ",\"subgroup_count\":" << res.subgroup_count
       << ",\"canonical_classes\":" << res.canonical_classes << "}";
    *out = dup_string(os.str());
  });
}

int stal_stats_json(const char* metric, uint32_t n, uint32_t r,
                    uint64_t trials, uint64_t seed, char** out) {
  if (int rc = require(metric && out, "null argument")) return rc;
  return guarded([&] {
    std::string m = metric;
    RandomSource src(seed);
    StatReport rep;
    if (m == "fi-accept") {
      rep = finite_index_accept_stat(n, r, trials, src);
    } else {
      InjectionTable table(n);
      if (m == "rank") rep = rank_stat(n, r, trials, table, src);
      else if (m == "connectivity")
        rep = connectivity_stat(n, r, trials, table, src);
      else if (m == "sequences") rep = sequences_stat(n, trials, table, src);
      else throw UsageError("unknown metric: " + m);
    }
    std::ostringstream os;
    os.precision(12);
    os << "{\"metric\":\"" << metric_name(rep.metric) << "\",\"n\":" << rep.n
       << ",\"r\":" << rep.r << ",\"trials\":" << rep.trials
       << ",\"mean\":" << rep.mean << ",\"stddev\":" << rep.stddev << "}";
    *out = dup_string(os.str());
  });
}

int stal_selftest(char** report_json) {
  SelftestResult res;
  int rc = guarded([&] { res = run_selftest(nullptr); });
  if (rc != STAL_OK) return rc;
  if (report_json) *report_json = dup_string(res.to_json());
  return res.ok() ? STAL_OK : STAL_EINTERNAL;
}

}  // extern "C"
