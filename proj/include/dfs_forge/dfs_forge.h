// Copyright 2026 The dfs-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* C interface to dfs-forge: exchange-only gate sequences on two
 * three-qubit encoded qubits, their block unitaries, verification against
 * the CNOT and leakage-reduction targets, and the genetic search.
 *
 * Every function returning dfs_status reports failures through the code and
 * a message available from dfs_last_error() on the same thread. Strings
 * returned through char** outputs are owned by the caller and released with
 * dfs_string_free(). Handles are released with their *_free function; all
 * *_free functions accept NULL. */

#ifndef DFS_FORGE_DFS_FORGE_H
#define DFS_FORGE_DFS_FORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(DFS_FORGE_BUILDING_LIBRARY)
#define DFS_API __declspec(dllexport)
#else
#define DFS_API __declspec(dllimport)
#endif
#else
#define DFS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dfs_status {
  DFS_OK = 0,
  DFS_ERR_NULL_ARGUMENT = 1,
  DFS_ERR_INVALID_ARGUMENT = 2, /* bad value, e.g. pair outside 0..4 */
  DFS_ERR_INPUT = 3,            /* malformed JSON or file content */
  DFS_ERR_IO = 4,               /* file could not be read or written */
  DFS_ERR_OUT_OF_RANGE = 5,
  DFS_ERR_NUMERIC = 6,
  DFS_ERR_INTERNAL = 7
} dfs_status;

typedef enum dfs_generator {
  DFS_GENERATOR_EXCHANGE = 0, /* exp(-i pi p H), H = sigma.sigma / 4 */
  DFS_GENERATOR_SWAP = 1      /* same up to phase; a full pulse is exactly SWAP */
} dfs_generator;

typedef enum dfs_target { DFS_TARGET_CNOT = 0, DFS_TARGET_LRO = 1 } dfs_target;

typedef enum dfs_reference {
  DFS_REFERENCE_CNOT = 0,       /* 22 pulses, 13 steps */
  DFS_REFERENCE_CNOT_LOCAL = 1, /* 18 pulses, 11 steps, locally equivalent */
  DFS_REFERENCE_LRO = 2         /* 30 pulses, 20 steps */
} dfs_reference;

typedef struct dfs_sequence dfs_sequence;
typedef struct dfs_blocks dfs_blocks;
typedef struct dfs_report dfs_report;
typedef struct dfs_search dfs_search;

DFS_API const char* dfs_version(void);
/* Message of the last failure on this thread; empty after a success. */
DFS_API const char* dfs_last_error(void);
DFS_API const char* dfs_status_name(dfs_status status);
DFS_API void dfs_string_free(char* s);

/* Sequences. Pair k couples layout positions k and k+1 on the line
 * A3 A2 A1 B1 B2 B3; gates are in time order. */
DFS_API dfs_status dfs_sequence_create(dfs_sequence** out);
DFS_API dfs_status dfs_sequence_from_json(const char* json, dfs_sequence** out);
DFS_API dfs_status dfs_sequence_reference(dfs_reference which, dfs_sequence** out);
DFS_API void dfs_sequence_free(dfs_sequence* seq);
DFS_API dfs_status dfs_sequence_append(dfs_sequence* seq, int pair, double power);
DFS_API size_t dfs_sequence_length(const dfs_sequence* seq);
DFS_API dfs_status dfs_sequence_gate(const dfs_sequence* seq, size_t index, int* pair, double* power);
DFS_API dfs_status dfs_sequence_to_json(const dfs_sequence* seq, char** out);
/* Same-pair gates separated only by disjoint gates are combined. */
DFS_API dfs_status dfs_sequence_merge(const dfs_sequence* seq, dfs_sequence** out);
DFS_API dfs_status dfs_sequence_time_steps(const dfs_sequence* seq, int* out);
/* Writes the time-step index of every gate; `capacity` must be at least the length. */
DFS_API dfs_status dfs_sequence_layers(const dfs_sequence* seq, int* layers, size_t capacity);

/* Block unitaries: block 0 is the 5x5 spin-0 block, 1 the 9x9 S=1 block,
 * 2 the 5x5 S=2 block; the spin-3 sector is a phase. */
DFS_API dfs_status dfs_simulate(const dfs_sequence* seq, dfs_generator generator, dfs_blocks** out);
DFS_API void dfs_blocks_free(dfs_blocks* blocks);
DFS_API dfs_status dfs_blocks_entry(const dfs_blocks* blocks, int block, int row, int col, double* re, double* im);
DFS_API dfs_status dfs_blocks_spin3_phase(const dfs_blocks* blocks, double* re, double* im);
DFS_API dfs_status dfs_blocks_to_json(const dfs_blocks* blocks, char** out);
DFS_API dfs_status dfs_blocks_objective(const dfs_blocks* blocks, dfs_target target, double* out);

/* Dense 64x64 product in the computational basis, row-major, through the
 * eigendecomposition path. Both buffers need 4096 doubles. */
DFS_API dfs_status dfs_full_unitary(const dfs_sequence* seq, dfs_generator generator, double* re, double* im);
/* The labeled six-qubit basis as JSON. */
DFS_API dfs_status dfs_basis_to_json(char** out);
/* Rows are the 64 basis vectors over the computational basis, row-major. */
DFS_API dfs_status dfs_basis_matrix(double* out);

/* Verification. */
DFS_API dfs_status dfs_verify(const dfs_sequence* seq, dfs_target target, double tol, dfs_report** out);
DFS_API void dfs_report_free(dfs_report* report);
DFS_API int dfs_report_pass(const dfs_report* report);
DFS_API double dfs_report_objective(const dfs_report* report);
DFS_API dfs_status dfs_report_to_json(const dfs_report* report, char** out);

/* Genetic search. The config is a JSON object; `seed` overrides its
 * rng_seed, and relative seed-sequence paths resolve against `base_dir`
 * (may be NULL). */
DFS_API dfs_status dfs_search_create(const char* config_json, uint64_t seed, const char* base_dir, dfs_search** out);
DFS_API dfs_status dfs_search_resume(const char* checkpoint_json, dfs_search** out);
DFS_API void dfs_search_free(dfs_search* search);
/* Runs one generation and returns its statistics as JSON. */
DFS_API dfs_status dfs_search_step(dfs_search* search, char** stats_json);
/* 1 once max_generations is reached or the stop objective is met. */
DFS_API int dfs_search_done(const dfs_search* search);
DFS_API int dfs_search_generation(const dfs_search* search);
DFS_API uint64_t dfs_search_seed(const dfs_search* search);
/* Changes the generation limit, e.g. to extend a resumed run. */
DFS_API dfs_status dfs_search_set_max_generations(dfs_search* search, int max_generations);
/* The lowest penalized individual, or with by_objective != 0 the lowest raw objective. */
DFS_API dfs_status dfs_search_best(const dfs_search* search, int by_objective, char** out);
DFS_API dfs_status dfs_search_config(const dfs_search* search, char** out);
DFS_API dfs_status dfs_search_checkpoint(const dfs_search* search, char** out);

#ifdef __cplusplus
}
#endif

#endif /* DFS_FORGE_DFS_FORGE_H */
