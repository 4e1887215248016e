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


#ifndef DFS_FORGE_GA_SEARCH_HPP
#define DFS_FORGE_GA_SEARCH_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dfs_forge/exchange.hpp"
#include "dfs_forge/minimizer.hpp"
#include "dfs_forge/targets.hpp"

namespace dfs_forge {

enum class Mutation { kRefineOne = 0, kRefineTwo, kRefineAll, kInsert, kDelete };
inline constexpr int kNumMutations = 5;
std::string_view to_string(Mutation m);

struct LambdaStep {
  int from_generation = 0;
  double lambda = 0.0;
};

struct SearchConfig {
  Target target = Target::kCnot;
  bool constrain_f_equals_h = true;
  int population_size = 64;
  int initial_length_min = 20;
  int initial_length_max = 34;
  int max_sequence_length = 80;
  /// refine_one, refine_two, refine_all, insert, delete.
  std::array<double, kNumMutations> mutation_probabilities = {0.08, 0.08, 0.04, 0.40, 0.40};
  double gate_penalty = 1e-4;
  /// Piecewise-constant overrides of gate_penalty, sorted by generation.
  std::vector<LambdaStep> lambda_schedule;
  int max_generations = 200;
  /// Stop once the lowest raw objective falls below this; 0 disables.
  double stop_objective = 0.0;
  std::uint64_t rng_seed = 1;
  /// Worker threads; 0 picks the hardware count. DFS_FORGE_THREADS caps it.
  int threads = 0;

  /// Tight settings for refine_one / refine_two.
  MinimizerOptions refine_options{200, 1e-6, 1e-26, 1e-15, 1e-12, 0.5};
  /// Loose settings for refine_all and mating.
  MinimizerOptions refine_all_options{200, 1e-6, 1e-26, 1e-15, 1e-4, 0.5};

  /// Optional starting sequences, cycled to fill the population, with every
  /// power jittered uniformly by ±seed_jitter. Empty means random starts.
  std::vector<PulseSequence> seed_sequences;
  double seed_jitter = 0.0;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
  double lambda_at(int generation) const;
};

struct Individual {
  PulseSequence sequence;
  double objective = 0.0;
  double penalized = 0.0;
};

/// objective + λ·length with the configured objective.
Individual evaluate(PulseSequence seq, const SearchConfig& config, double lambda);
double raw_objective(const PulseSequence& seq, const SearchConfig& config);

/// The smooth objective of a sequence as a function of the powers of gates
/// [first, first + count), with the other gates held fixed.
class PowerObjective {
 public:
  PowerObjective(const PulseSequence& seq, std::size_t first, std::size_t count, Target target,
                 bool constrain_f_equals_h = true);

  Eigen::VectorXd initial() const;
  double operator()(const Eigen::VectorXd& powers) const;
  /// Central differences, reusing partial products so the cost is linear in count.
  void gradient(const Eigen::VectorXd& powers, double h, Eigen::VectorXd& grad) const;
  /// Copy of the sequence with the run's powers replaced.
  PulseSequence with_powers(const Eigen::VectorXd& powers) const;

 private:
  BlockUnitary evaluate_blocks(const Eigen::VectorXd& powers) const;

  PulseSequence seq_;
  std::size_t first_;
  std::size_t count_;
  Target target_;
  bool constrain_;
  BlockUnitary prefix_;  // gates before the run
  BlockUnitary suffix_;  // gates after the run
};

using Rng = std::mt19937_64;

/// Independent stream for (seed, generation, slot, purpose).
Rng make_rng(std::uint64_t seed, std::uint64_t generation, std::uint64_t slot, std::uint64_t purpose);

/// Local minimization over the run [first, first + count). The result never
/// has a higher raw objective than the input.
Individual refine_range(const Individual& ind, std::size_t first, std::size_t count, const SearchConfig& config,
                        const MinimizerOptions& options, double lambda);

Individual refine_one(const Individual& ind, Rng& rng, const SearchConfig& config, double lambda);
Individual refine_two(const Individual& ind, Rng& rng, const SearchConfig& config, double lambda);
Individual refine_all(const Individual& ind, const SearchConfig& config, double lambda);
/// Unchanged (returns false in `applied`) at max_sequence_length.
Individual insert_gate(const Individual& ind, Rng& rng, const SearchConfig& config, double lambda,
                       bool* applied = nullptr);
/// Unchanged (returns false in `applied`) for an empty sequence.
Individual delete_gate(const Individual& ind, Rng& rng, const SearchConfig& config, double lambda,
                       bool* applied = nullptr);

/// Deterministic parts of the mutations, for callers that pick the site.
Individual insert_gate_at(const Individual& ind, std::size_t position, PulseGate gate, const SearchConfig& config,
                          double lambda);
Individual delete_gate_at(const Individual& ind, std::size_t position, const SearchConfig& config, double lambda);

/// Draws one mutation kind from the configured probabilities and applies it.
Individual mutate(const Individual& ind, Rng& rng, const SearchConfig& config, double lambda, Mutation* kind = nullptr,
                  bool* applied = nullptr);

/// First `split` gates of `head` followed by the last min(len)-split gates of
/// `tail`, then refine_all.
Individual mate_at(const Individual& head, const Individual& tail, std::size_t split, const SearchConfig& config,
                   double lambda);
/// Uniform split and uniform choice of which parent leads.
Individual mate(const Individual& a, const Individual& b, Rng& rng, const SearchConfig& config, double lambda);

/// Selection weight 1 / max(penalized, 1e-12).
double selection_weight(double penalized);
/// k distinct indices drawn one at a time with probability proportional to
/// the remaining weights.
std::vector<std::size_t> weighted_sample_without_replacement(const std::vector<double>& weights, std::size_t k,
                                                             Rng& rng);

/// Keeps the lowest penalized individual, then samples the rest of the
/// population without replacement.
std::vector<Individual> select(const std::vector<Individual>& pool, std::size_t size, Rng& rng);

std::vector<Individual> initial_population(const SearchConfig& config);

struct GenerationStats {
  int generation = 0;
  double lambda = 0.0;
  double best_penalized = 0.0;
  double best_objective = 0.0;
  std::size_t best_length = 0;
  double mean_length = 0.0;
  /// Distinct sequences over population size.
  double diversity = 0.0;
  double wall_seconds = 0.0;
  std::array<int, kNumMutations> mutations{};
  int noop_mutations = 0;
};

/// Resumable search state. The RNG streams are derived from (seed,
/// generation, slot), so the generation counter is the whole RNG state.
struct SearchState {
  SearchConfig config;
  int generation = 0;  // next generation to run
  std::vector<Individual> population;
  std::vector<GenerationStats> stats;
};

struct SearchResult {
  Individual best;            // lowest penalized value
  Individual best_objective;  // lowest raw objective
  std::vector<GenerationStats> stats;
  int generations = 0;
  bool reached_stop_objective = false;
};

SearchState start_search(const SearchConfig& config);
/// Runs one generation; returns its statistics (also appended to the state).
GenerationStats step(SearchState& state);

/// Called after each generation; return false to stop early.
using GenerationCallback = std::function<bool(const SearchState&, const GenerationStats&)>;

/// Runs until max_generations or stop_objective.
SearchResult run_search(SearchState& state, const GenerationCallback& callback = {});
SearchResult evolve(const SearchConfig& config, const GenerationCallback& callback = {});

/// Number of workers used for a config, after the environment cap.
int effective_threads(int requested);

}  // namespace dfs_forge

#endif  // DFS_FORGE_GA_SEARCH_HPP
