/* Copyright 2026 The stallings Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API of libstallings: uniform random generation of finitely
 * generated subgroups of free groups, represented as Stallings graphs,
 * plus the exact counting machinery behind it.
 *
 * Conventions:
 *   - Every function returns a status code (STAL_OK on success) unless
 *     documented otherwise; results come back through out-parameters.
 *   - Objects are opaque handles freed with their matching *_free.
 *   - Strings returned through char** are heap-allocated; release them
 *     with stal_string_free.
 *   - Vertices are 1-based in every serialized form; letters are named
 *     a1..aR and words use the syntax "a1 a2' a1" (apostrophe = inverse).
 *   - stal_last_error() describes the most recent failure in the
 *     calling thread.
 */

#ifndef STALLINGS_STALLINGS_H
#define STALLINGS_STALLINGS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  STAL_OK = 0,
  STAL_EINVAL = 1,   /* usage error: bad argument or precondition */
  STAL_EINTERNAL = 2 /* internal invariant failure; always a bug */
};

typedef struct stal_table stal_table;
typedef struct stal_source stal_source;
typedef struct stal_injection stal_injection;
typedef struct stal_graph stal_graph;

const char* stal_strerror(int code);
const char* stal_last_error(void);
void stal_string_free(char* s);

/* ---- exact counting table ------------------------------------------- */

/* Builds the exact table of partial-injection counts I_0..I_n_max. */
int stal_table_build(uint32_t n_max, stal_table** out);

/* Loads the decimal cache at `path` when it is valid and covers n_max,
 * otherwise builds from scratch; `rebuilt` (optional) reports which
 * happened. A freshly built table is written back to `path` when
 * `write_back` is nonzero. */
int stal_table_open(uint32_t n_max, const char* path, int write_back,
                    int* rebuilt, stal_table** out);
void stal_table_free(stal_table* t);

uint32_t stal_table_n_max(const stal_table* t);

/* I_k in decimal. */
int stal_table_value(const stal_table* t, uint32_t k, char** out);

/* Exact identity and bound checks; *holds is 1 or 0. */
int stal_table_pointing_identity(const stal_table* t, uint32_t n, int* holds);
int stal_table_growth_bounds(const stal_table* t, uint32_t n, int* holds);

/* Subgroup-count estimate: exact leading term I_n^r/(n-1)! as a decimal
 * rational "p/q", plus the log-domain closed form. */
int stal_subgroup_estimate(const stal_table* t, uint32_t n, uint32_t r,
                           char** leading, double* stirling_log);

/* ---- randomness ------------------------------------------------------ */

/* Deterministic source; (seed, stream) pairs give independent streams. */
int stal_source_new(uint64_t seed, uint64_t stream, stal_source** out);
void stal_source_free(stal_source* s);

/* A seed drawn from system entropy (for callers that have none). */
uint64_t stal_entropy_seed(void);

/* ---- partial injections --------------------------------------------- */

/* Exactly uniform over all I_n partial injections on {1..n}. */
int stal_random_injection(const stal_table* t, uint32_t n, stal_source* src,
                          stal_injection** out);
void stal_injection_free(stal_injection* inj);

uint32_t stal_injection_size(const stal_injection* inj);
/* Image of u (1-based); 0 when undefined. */
uint32_t stal_injection_image(const stal_injection* inj, uint32_t u);
/* Number of sequence components (the X_n statistic). */
uint32_t stal_injection_sequences(const stal_injection* inj);
/* {"n":N,"image":[v-or-null,...]} with 1-based vertices. */
int stal_injection_to_json(const stal_injection* inj, char** out);

/* ---- Stallings graphs ------------------------------------------------ */

/* Uniform size-n subgroup of the rank-r free group, as its Stallings
 * graph; `rejections` (optional) counts rejected attempts. */
int stal_random_subgroup(const stal_table* t, uint32_t n, uint32_t r,
                         stal_source* src, uint64_t* rejections,
                         stal_graph** out);

/* Uniform size-n finite-index subgroup (permutation graph). */
int stal_random_finite_index(uint32_t n, uint32_t r, stal_source* src,
                             uint64_t* rejections, stal_graph** out);

/* Stallings graph of the subgroup generated by `words` (each in word
 * syntax, freely reduced, non-empty). `alphabet` of 0 infers the
 * largest letter used. */
int stal_fold(const char* const* words, size_t n_words, uint32_t alphabet,
              stal_graph** out);

void stal_graph_free(stal_graph* g);

uint32_t stal_graph_size(const stal_graph* g);
uint32_t stal_graph_alphabet(const stal_graph* g);
uint32_t stal_graph_edge_count(const stal_graph* g);
int stal_graph_is_connected(const stal_graph* g);
int stal_graph_is_one_trim(const stal_graph* g);
int stal_graph_is_admissible(const stal_graph* g);
int stal_graph_rank(const stal_graph* g, uint32_t* rank);
int stal_graph_is_finite_index(const stal_graph* g, int* flag);
/* Membership of a reduced word in the represented subgroup. */
int stal_graph_accepts(const stal_graph* g, const char* word, int* accepted);
int stal_graph_to_json(const stal_graph* g, char** out);
int stal_graph_to_dot(const stal_graph* g, char** out);
/* Canonical form: equal strings <=> isomorphic rooted labeled graphs. */
int stal_graph_canonical(const stal_graph* g, char** out);

/* ---- enumeration and statistics -------------------------------------- */

/* Exhaustive subgroup counting at desk scale (n <= 3 for r = 2), as
 * {"n":..,"r":..,"labeled_admissible":..,"subgroup_count":..,
 *  "canonical_classes":..}. */
int stal_count_json(uint32_t n, uint32_t r, char** out);

/* Seeded statistics run; metric is one of "rank", "connectivity",
 * "sequences", "fi-accept". Returns
 * {"metric":..,"n":..,"r":..,"trials":..,"mean":..,"stddev":..}. */
int stal_stats_json(const char* metric, uint32_t n, uint32_t r,
                    uint64_t trials, uint64_t seed, char** out);

/* Runs the invariant battery; returns STAL_OK when everything passed.
 * The JSON report (always produced) lists failures. */
int stal_selftest(char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* STALLINGS_STALLINGS_H */
