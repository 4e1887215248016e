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


#include "dfs_forge/dfs_forge.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>

#include "dfs_forge/am_basis.hpp"
#include "dfs_forge/exchange.hpp"
#include "dfs_forge/ga_search.hpp"
#include "dfs_forge/json_io.hpp"
#include "dfs_forge/reference_sequences.hpp"
#include "dfs_forge/targets.hpp"
#include "dfs_forge/version.hpp"

struct dfs_sequence {
  dfs_forge::PulseSequence value;
};

struct dfs_blocks {
  dfs_forge::BlockUnitary value;
};

struct dfs_report {
  dfs_forge::VerifyReport value;
};

struct dfs_search {
  dfs_forge::SearchState state;
};

namespace {

using namespace dfs_forge;

thread_local std::string g_last_error;

dfs_status fail(dfs_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
dfs_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return DFS_OK;
  } catch (const InputError& e) {
    return fail(DFS_ERR_INPUT, e.what());
  } catch (const Json::exception& e) {
    return fail(DFS_ERR_INPUT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(DFS_ERR_OUT_OF_RANGE, e.what());
  } catch (const std::domain_error& e) {
    return fail(DFS_ERR_NUMERIC, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(DFS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(DFS_ERR_IO, e.what());
  } catch (const std::runtime_error& e) {
    return fail(DFS_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DFS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DFS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DFS_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Generator to_generator(dfs_generator g) {
  switch (g) {
    case DFS_GENERATOR_EXCHANGE: return Generator::kExchange;
    case DFS_GENERATOR_SWAP: return Generator::kSwap;
  }
  throw std::invalid_argument("unknown generator");
}

Target to_target(dfs_target t) {
  switch (t) {
    case DFS_TARGET_CNOT: return Target::kCnot;
    case DFS_TARGET_LRO: return Target::kLro;
  }
  throw std::invalid_argument("unknown target");
}

Json parse_json(const char* text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

bool search_done(const SearchState& s) {
  if (s.generation >= s.config.max_generations) return true;
  if (s.config.stop_objective <= 0.0) return false;
  for (const Individual& ind : s.population)
    if (ind.objective < s.config.stop_objective) return true;
  return false;
}

#define DFS_REQUIRE(ptr) \
  if (!(ptr)) return fail(DFS_ERR_NULL_ARGUMENT, #ptr " is null")

}  // namespace

extern "C" {

const char* dfs_version(void) { return dfs_forge::kVersion; }

const char* dfs_last_error(void) { return g_last_error.c_str(); }

const char* dfs_status_name(dfs_status status) {
  switch (status) {
    case DFS_OK: return "ok";
    case DFS_ERR_NULL_ARGUMENT: return "null argument";
    case DFS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DFS_ERR_INPUT: return "malformed input";
    case DFS_ERR_IO: return "i/o error";
    case DFS_ERR_OUT_OF_RANGE: return "out of range";
    case DFS_ERR_NUMERIC: return "numerical error";
    case DFS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void dfs_string_free(char* s) { std::free(s); }

dfs_status dfs_sequence_create(dfs_sequence** out) {
  DFS_REQUIRE(out);
  return guarded([&] { *out = new dfs_sequence{}; });
}

dfs_status dfs_sequence_from_json(const char* json, dfs_sequence** out) {
  DFS_REQUIRE(json);
  DFS_REQUIRE(out);
  return guarded([&] {
    PulseSequence seq = sequence_from_json(parse_json(json));
    *out = new dfs_sequence{std::move(seq)};
  });
}

dfs_status dfs_sequence_reference(dfs_reference which, dfs_sequence** out) {
  DFS_REQUIRE(out);
  return guarded([&] {
    switch (which) {
      case DFS_REFERENCE_CNOT: *out = new dfs_sequence{cnot_sequence()}; return;
      case DFS_REFERENCE_CNOT_LOCAL: *out = new dfs_sequence{cnot_local_sequence()}; return;
      case DFS_REFERENCE_LRO: *out = new dfs_sequence{lro_sequence()}; return;
    }
    throw std::invalid_argument("unknown reference sequence");
  });
}

void dfs_sequence_free(dfs_sequence* seq) { delete seq; }

dfs_status dfs_sequence_append(dfs_sequence* seq, int pair, double power) {
  DFS_REQUIRE(seq);
  return guarded([&] {
    PulseSequence one{{{pair, power}}};
    one.validate();
    seq->value.gates.push_back(one.gates.front());
  });
}

size_t dfs_sequence_length(const dfs_sequence* seq) { return seq ? seq->value.size() : 0; }

dfs_status dfs_sequence_gate(const dfs_sequence* seq, size_t index, int* pair, double* power) {
  DFS_REQUIRE(seq);
  DFS_REQUIRE(pair);
  DFS_REQUIRE(power);
  if (index >= seq->value.size()) return fail(DFS_ERR_OUT_OF_RANGE, "gate index out of range");
  *pair = seq->value.gates[index].pair;
  *power = seq->value.gates[index].power;
  g_last_error.clear();
  return DFS_OK;
}

dfs_status dfs_sequence_to_json(const dfs_sequence* seq, char** out) {
  DFS_REQUIRE(seq);
  DFS_REQUIRE(out);
  return guarded([&] { *out = copy_string(sequence_to_json(seq->value).dump()); });
}

dfs_status dfs_sequence_merge(const dfs_sequence* seq, dfs_sequence** out) {
  DFS_REQUIRE(seq);
  DFS_REQUIRE(out);
  return guarded([&] {
    seq->value.validate();
    *out = new dfs_sequence{merge_gates(seq->value)};
  });
}

dfs_status dfs_sequence_time_steps(const dfs_sequence* seq, int* out) {
  DFS_REQUIRE(seq);
  DFS_REQUIRE(out);
  return guarded([&] { *out = schedule_time_steps(seq->value); });
}

dfs_status dfs_sequence_layers(const dfs_sequence* seq, int* layers, size_t capacity) {
  DFS_REQUIRE(seq);
  if (seq->value.empty()) return guarded([] {});
  DFS_REQUIRE(layers);
  if (capacity < seq->value.size()) return fail(DFS_ERR_OUT_OF_RANGE, "layer buffer too small");
  return guarded([&] {
    const std::vector<int> l = schedule_layers(seq->value);
    std::copy(l.begin(), l.end(), layers);
  });
}

dfs_status dfs_simulate(const dfs_sequence* seq, dfs_generator generator, dfs_blocks** out) {
  DFS_REQUIRE(seq);
  DFS_REQUIRE(out);
  return guarded([&] {
    seq->value.validate();
    *out = new dfs_blocks{sequence_unitary(seq->value, to_generator(generator))};
  });
}

void dfs_blocks_free(dfs_blocks* blocks) { delete blocks; }

dfs_status dfs_blocks_entry(const dfs_blocks* blocks, int block, int row, int col, double* re, double* im) {
  DFS_REQUIRE(blocks);
  DFS_REQUIRE(re);
  DFS_REQUIRE(im);
  const int dims[3] = {5, 9, 5};
  if (block < 0 || block > 2) return fail(DFS_ERR_OUT_OF_RANGE, "block must be 0, 1 or 2");
  if (row < 0 || col < 0 || row >= dims[block] || col >= dims[block])
    return fail(DFS_ERR_OUT_OF_RANGE, "entry outside the block");
  const BlockUnitary& u = blocks->value;
  const Complex z = block == 0 ? u.b0(row, col) : block == 1 ? u.b1(row, col) : u.b2(row, col);
  *re = z.real();
  *im = z.imag();
  g_last_error.clear();
  return DFS_OK;
}

dfs_status dfs_blocks_spin3_phase(const dfs_blocks* blocks, double* re, double* im) {
  DFS_REQUIRE(blocks);
  DFS_REQUIRE(re);
  DFS_REQUIRE(im);
  *re = blocks->value.b3_phase.real();
  *im = blocks->value.b3_phase.imag();
  g_last_error.clear();
  return DFS_OK;
}

dfs_status dfs_blocks_to_json(const dfs_blocks* blocks, char** out) {
  DFS_REQUIRE(blocks);
  DFS_REQUIRE(out);
  return guarded([&] { *out = copy_string(block_unitary_to_json(blocks->value).dump()); });
}

dfs_status dfs_blocks_objective(const dfs_blocks* blocks, dfs_target target, double* out) {
  DFS_REQUIRE(blocks);
  DFS_REQUIRE(out);
  return guarded([&] { *out = objective(to_target(target), blocks->value); });
}

dfs_status dfs_full_unitary(const dfs_sequence* seq, dfs_generator generator, double* re, double* im) {
  DFS_REQUIRE(seq);
  DFS_REQUIRE(re);
  DFS_REQUIRE(im);
  return guarded([&] {
    seq->value.validate();
    const Eigen::MatrixXcd u = full_sequence_unitary(seq->value, to_generator(generator));
    for (int r = 0; r < kDim; ++r)
      for (int c = 0; c < kDim; ++c) {
        re[r * kDim + c] = u(r, c).real();
        im[r * kDim + c] = u(r, c).imag();
      }
  });
}

dfs_status dfs_basis_to_json(char** out) {
  DFS_REQUIRE(out);
  return guarded([&] { *out = copy_string(basis_to_json(tam_basis()).dump()); });
}

dfs_status dfs_basis_matrix(double* out) {
  DFS_REQUIRE(out);
  return guarded([&] {
    const Eigen::MatrixXd& v = tam_basis().change;
    for (int r = 0; r < kDim; ++r)
      for (int c = 0; c < kDim; ++c) out[r * kDim + c] = v(r, c);
  });
}

dfs_status dfs_verify(const dfs_sequence* seq, dfs_target target, double tol, dfs_report** out) {
  DFS_REQUIRE(seq);
  DFS_REQUIRE(out);
  return guarded([&] {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    *out = new dfs_report{verify(to_target(target), seq->value, tol)};
  });
}

void dfs_report_free(dfs_report* report) { delete report; }

int dfs_report_pass(const dfs_report* report) { return report && report->value.pass ? 1 : 0; }

double dfs_report_objective(const dfs_report* report) { return report ? report->value.objective : 0.0; }

dfs_status dfs_report_to_json(const dfs_report* report, char** out) {
  DFS_REQUIRE(report);
  DFS_REQUIRE(out);
  return guarded([&] { *out = copy_string(verify_report_to_json(report->value).dump()); });
}

dfs_status dfs_search_create(const char* config_json, uint64_t seed, const char* base_dir, dfs_search** out) {
  DFS_REQUIRE(config_json);
  DFS_REQUIRE(out);
  return guarded([&] {
    Json j = parse_json(config_json);
    if (!j.is_object()) throw InputError("config: expected an object");
    j["rng_seed"] = seed;
    const SearchConfig config = search_config_from_json(j, base_dir ? std::filesystem::path(base_dir) : "");
    *out = new dfs_search{start_search(config)};
  });
}

dfs_status dfs_search_resume(const char* checkpoint_json, dfs_search** out) {
  DFS_REQUIRE(checkpoint_json);
  DFS_REQUIRE(out);
  return guarded([&] { *out = new dfs_search{checkpoint_from_json(parse_json(checkpoint_json))}; });
}

void dfs_search_free(dfs_search* search) { delete search; }

dfs_status dfs_search_step(dfs_search* search, char** stats_json) {
  DFS_REQUIRE(search);
  return guarded([&] {
    const GenerationStats s = step(search->state);
    if (stats_json) *stats_json = copy_string(generation_stats_to_json(s).dump());
  });
}

int dfs_search_done(const dfs_search* search) { return !search || search_done(search->state) ? 1 : 0; }

int dfs_search_generation(const dfs_search* search) { return search ? search->state.generation : 0; }

uint64_t dfs_search_seed(const dfs_search* search) { return search ? search->state.config.rng_seed : 0; }

dfs_status dfs_search_set_max_generations(dfs_search* search, int max_generations) {
  DFS_REQUIRE(search);
  if (max_generations < 0) return fail(DFS_ERR_INVALID_ARGUMENT, "max_generations must be non-negative");
  search->state.config.max_generations = max_generations;
  g_last_error.clear();
  return DFS_OK;
}

dfs_status dfs_search_best(const dfs_search* search, int by_objective, char** out) {
  DFS_REQUIRE(search);
  DFS_REQUIRE(out);
  return guarded([&] {
    const SearchState& s = search->state;
    const double lambda = s.config.lambda_at(std::max(s.generation - 1, 0));
    const Individual* best = nullptr;
    double best_key = 0.0;
    for (const Individual& ind : s.population) {
      const double key = by_objective ? ind.objective : ind.objective + lambda * static_cast<double>(ind.sequence.size());
      if (!best || key < best_key) {
        best = &ind;
        best_key = key;
      }
    }
    if (!best) throw std::logic_error("empty population");
    Individual copy = *best;
    copy.penalized = copy.objective + lambda * static_cast<double>(copy.sequence.size());
    Json j = individual_to_json(copy);
    j["lambda"] = lambda;
    j["generation"] = s.generation;
    *out = copy_string(j.dump());
  });
}

dfs_status dfs_search_config(const dfs_search* search, char** out) {
  DFS_REQUIRE(search);
  DFS_REQUIRE(out);
  return guarded([&] { *out = copy_string(search_config_to_json(search->state.config).dump()); });
}

dfs_status dfs_search_checkpoint(const dfs_search* search, char** out) {
  DFS_REQUIRE(search);
  DFS_REQUIRE(out);
  return guarded([&] { *out = copy_string(checkpoint_to_json(search->state).dump()); });
}

}  // extern "C"
