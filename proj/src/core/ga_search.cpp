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


#include "dfs_forge/ga_search.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace dfs_forge {

namespace {

// Purposes of the derived RNG streams.
enum Stream : std::uint64_t { kInit = 1, kMutate = 2, kShuffle = 3, kMate = 4, kSelect = 5 };

constexpr Generator kGenerator = Generator::kSwap;

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Uniform on (-1, 1].
double uniform_power(Rng& rng) { return -std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }

Individual merged(const Individual& ind, const SearchConfig& config, double lambda) {
  PulseSequence m = merge_gates(ind.sequence);
  if (m == ind.sequence) return ind;
  return evaluate(std::move(m), config, lambda);
}

Individual repenalize(Individual ind, double lambda) {
  ind.penalized = ind.objective + lambda * static_cast<double>(ind.sequence.size());
  return ind;
}

std::size_t argmin_penalized(const std::vector<Individual>& pop) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i)
    if (pop[i].penalized < pop[best].penalized) best = i;
  return best;
}

std::size_t argmin_objective(const std::vector<Individual>& pop) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i)
    if (pop[i].objective < pop[best].objective) best = i;
  return best;
}

void fill_population_stats(GenerationStats& s, const std::vector<Individual>& pop) {
  const std::size_t bp = argmin_penalized(pop);
  s.best_penalized = pop[bp].penalized;
  s.best_length = pop[bp].sequence.size();
  s.best_objective = pop[argmin_objective(pop)].objective;
  double total = 0.0;
  std::set<std::vector<std::pair<int, long long>>> distinct;
  for (const Individual& ind : pop) {
    total += static_cast<double>(ind.sequence.size());
    std::vector<std::pair<int, long long>> key;
    key.reserve(ind.sequence.size());
    for (const PulseGate& g : ind.sequence.gates) key.emplace_back(g.pair, std::llround(g.power * 1e9));
    distinct.insert(std::move(key));
  }
  s.mean_length = total / static_cast<double>(pop.size());
  s.diversity = static_cast<double>(distinct.size()) / static_cast<double>(pop.size());
}

}  // namespace

std::string_view to_string(Mutation m) {
  switch (m) {
    case Mutation::kRefineOne: return "refine_one";
    case Mutation::kRefineTwo: return "refine_two";
    case Mutation::kRefineAll: return "refine_all";
    case Mutation::kInsert: return "insert";
    case Mutation::kDelete: return "delete";
  }
  return "unknown";
}

void SearchConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("search config: " + what); };
  if (population_size < 2) fail("population_size must be at least 2");
  if (max_sequence_length < 1) fail("max_sequence_length must be positive");
  if (initial_length_min < 1 || initial_length_min > initial_length_max || initial_length_max > max_sequence_length)
    fail("need 1 <= initial_length_min <= initial_length_max <= max_sequence_length");
  double sum = 0.0;
  for (double p : mutation_probabilities) {
    if (!(p >= 0.0)) fail("mutation probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) fail("mutation probabilities must sum to 1");
  if (!(gate_penalty >= 0.0) || !std::isfinite(gate_penalty)) fail("gate_penalty must be a non-negative number");
  int last = -1;
  for (const LambdaStep& s : lambda_schedule) {
    if (s.from_generation <= last) fail("lambda_schedule generations must be strictly increasing");
    if (s.from_generation < 0) fail("lambda_schedule generations must be non-negative");
    if (!(s.lambda >= 0.0) || !std::isfinite(s.lambda)) fail("lambda_schedule values must be non-negative");
    last = s.from_generation;
  }
  if (max_generations < 0) fail("max_generations must be non-negative");
  if (!(stop_objective >= 0.0)) fail("stop_objective must be non-negative");
  if (threads < 0) fail("threads must be non-negative");
  if (!(seed_jitter >= 0.0) || !std::isfinite(seed_jitter)) fail("seed_jitter must be non-negative");
  for (const MinimizerOptions* o : {&refine_options, &refine_all_options}) {
    if (o->max_iterations < 0) fail("minimizer max_iterations must be non-negative");
    if (!(o->gradient_step > 0.0)) fail("minimizer gradient_step must be positive");
    if (!(o->max_step > 0.0)) fail("minimizer max_step must be positive");
  }
  for (const PulseSequence& s : seed_sequences) {
    s.validate();
    if (s.size() > static_cast<std::size_t>(max_sequence_length)) fail("seed sequence longer than max_sequence_length");
  }
}

double SearchConfig::lambda_at(int generation) const {
  double lambda = gate_penalty;
  for (const LambdaStep& s : lambda_schedule)
    if (s.from_generation <= generation) lambda = s.lambda;
  return lambda;
}

double raw_objective(const PulseSequence& seq, const SearchConfig& config) {
  return objective(config.target, sequence_unitary(seq, kGenerator), config.constrain_f_equals_h);
}

Individual evaluate(PulseSequence seq, const SearchConfig& config, double lambda) {
  Individual ind;
  ind.objective = raw_objective(seq, config);
  ind.sequence = std::move(seq);
  return repenalize(std::move(ind), lambda);
}

PowerObjective::PowerObjective(const PulseSequence& seq, std::size_t first, std::size_t count, Target target,
                               bool constrain_f_equals_h)
    : seq_(seq), first_(first), count_(count), target_(target), constrain_(constrain_f_equals_h) {
  if (first > seq.size() || count > seq.size() - first) throw std::out_of_range("PowerObjective: run out of range");
  for (std::size_t i = 0; i < first; ++i) apply_gate_left(prefix_, seq.gates[i], kGenerator);
  for (std::size_t i = seq.size(); i-- > first + count;) apply_gate_right(suffix_, seq.gates[i], kGenerator);
}

Eigen::VectorXd PowerObjective::initial() const {
  Eigen::VectorXd x(static_cast<Eigen::Index>(count_));
  for (std::size_t k = 0; k < count_; ++k) x[static_cast<Eigen::Index>(k)] = seq_.gates[first_ + k].power;
  return x;
}

BlockUnitary PowerObjective::evaluate_blocks(const Eigen::VectorXd& powers) const {
  BlockUnitary w = prefix_;
  for (std::size_t k = 0; k < count_; ++k)
    apply_gate_left(w, {seq_.gates[first_ + k].pair, powers[static_cast<Eigen::Index>(k)]}, kGenerator);
  return suffix_ * w;
}

double PowerObjective::operator()(const Eigen::VectorXd& powers) const {
  return smooth_objective(target_, evaluate_blocks(powers), constrain_);
}

void PowerObjective::gradient(const Eigen::VectorXd& powers, double h, Eigen::VectorXd& grad) const {
  grad.resize(static_cast<Eigen::Index>(count_));
  if (count_ == 0) return;
  // before[k] = G_{k-1} ... G_0 · prefix, after[k] = suffix · G_{n-1} ... G_{k+1}.
  std::vector<BlockUnitary> before(count_);
  before[0] = prefix_;
  for (std::size_t k = 1; k < count_; ++k) {
    before[k] = before[k - 1];
    apply_gate_left(before[k], {seq_.gates[first_ + k - 1].pair, powers[static_cast<Eigen::Index>(k - 1)]}, kGenerator);
  }
  BlockUnitary after = suffix_;
  for (std::size_t k = count_; k-- > 0;) {
    const int pair = seq_.gates[first_ + k].pair;
    const double p = powers[static_cast<Eigen::Index>(k)];
    BlockUnitary up = before[k];
    apply_gate_left(up, {pair, p + h}, kGenerator);
    BlockUnitary down = before[k];
    apply_gate_left(down, {pair, p - h}, kGenerator);
    const double fu = smooth_objective(target_, after * up, constrain_);
    const double fd = smooth_objective(target_, after * down, constrain_);
    grad[static_cast<Eigen::Index>(k)] = (fu - fd) / (2.0 * h);
    apply_gate_right(after, {pair, p}, kGenerator);
  }
}

PulseSequence PowerObjective::with_powers(const Eigen::VectorXd& powers) const {
  PulseSequence out = seq_;
  for (std::size_t k = 0; k < count_; ++k) out.gates[first_ + k].power = powers[static_cast<Eigen::Index>(k)];
  return out;
}

Rng make_rng(std::uint64_t seed, std::uint64_t generation, std::uint64_t slot, std::uint64_t purpose) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(generation), hi(generation), lo(slot), hi(slot), lo(purpose), hi(purpose)};
  return Rng(seq);
}

Individual refine_range(const Individual& ind, std::size_t first, std::size_t count, const SearchConfig& config,
                        const MinimizerOptions& options, double lambda) {
  if (count == 0) return repenalize(ind, lambda);
  const PowerObjective f(ind.sequence, first, count, config.target, config.constrain_f_equals_h);
  const GradientFn grad = [&f, h = options.gradient_step](const Eigen::VectorXd& x, double, Eigen::VectorXd& g) {
    f.gradient(x, h, g);
  };
  const MinimizerResult r = minimize_bfgs(std::cref(f), grad, f.initial(), options);
  Individual out = evaluate(f.with_powers(r.x), config, lambda);
  if (!(out.objective <= ind.objective)) return repenalize(ind, lambda);
  return out;
}

Individual refine_one(const Individual& ind, Rng& rng, const SearchConfig& config, double lambda) {
  if (ind.sequence.empty()) return repenalize(ind, lambda);
  return refine_range(ind, uniform_index(rng, ind.sequence.size()), 1, config, config.refine_options, lambda);
}

Individual refine_two(const Individual& ind, Rng& rng, const SearchConfig& config, double lambda) {
  if (ind.sequence.size() < 2) return refine_one(ind, rng, config, lambda);
  return refine_range(ind, uniform_index(rng, ind.sequence.size() - 1), 2, config, config.refine_options, lambda);
}

Individual refine_all(const Individual& ind, const SearchConfig& config, double lambda) {
  return refine_range(ind, 0, ind.sequence.size(), config, config.refine_all_options, lambda);
}

Individual insert_gate_at(const Individual& ind, std::size_t position, PulseGate gate, const SearchConfig& config,
                          double lambda) {
  if (position > ind.sequence.size()) throw std::out_of_range("insert_gate_at: position out of range");
  PulseSequence seq = ind.sequence;
  seq.gates.insert(seq.gates.begin() + static_cast<std::ptrdiff_t>(position), gate);
  const Individual grown = evaluate(std::move(seq), config, lambda);
  return refine_range(grown, position, 1, config, config.refine_options, lambda);
}

Individual insert_gate(const Individual& ind, Rng& rng, const SearchConfig& config, double lambda, bool* applied) {
  const bool ok = ind.sequence.size() < static_cast<std::size_t>(config.max_sequence_length);
  if (applied) *applied = ok;
  if (!ok) return repenalize(ind, lambda);
  const std::size_t position = uniform_index(rng, ind.sequence.size() + 1);
  const int pair = static_cast<int>(uniform_index(rng, kNumPairs));
  const double power = uniform_power(rng);
  return insert_gate_at(ind, position, {pair, power}, config, lambda);
}

Individual delete_gate_at(const Individual& ind, std::size_t position, const SearchConfig& config, double lambda) {
  const std::size_t n = ind.sequence.size();
  if (position >= n) throw std::out_of_range("delete_gate_at: position out of range");
  PulseSequence seq = ind.sequence;
  seq.gates.erase(seq.gates.begin() + static_cast<std::ptrdiff_t>(position));
  const Individual shrunk = evaluate(std::move(seq), config, lambda);
  if (n == 1) return shrunk;
  if (position == 0) return refine_range(shrunk, 0, 1, config, config.refine_options, lambda);
  if (position == n - 1) return refine_range(shrunk, n - 2, 1, config, config.refine_options, lambda);
  return refine_range(shrunk, position - 1, 2, config, config.refine_options, lambda);
}

Individual delete_gate(const Individual& ind, Rng& rng, const SearchConfig& config, double lambda, bool* applied) {
  const bool ok = !ind.sequence.empty();
  if (applied) *applied = ok;
  if (!ok) return repenalize(ind, lambda);
  return delete_gate_at(ind, uniform_index(rng, ind.sequence.size()), config, lambda);
}

Individual mutate(const Individual& ind, Rng& rng, const SearchConfig& config, double lambda, Mutation* kind,
                  bool* applied) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  int chosen = kNumMutations - 1;
  double acc = 0.0;
  for (int k = 0; k < kNumMutations; ++k) {
    acc += config.mutation_probabilities[static_cast<std::size_t>(k)];
    if (u < acc) {
      chosen = k;
      break;
    }
  }
  // A zero-probability tail cannot be chosen through rounding.
  while (chosen > 0 && config.mutation_probabilities[static_cast<std::size_t>(chosen)] == 0.0) --chosen;
  const auto m = static_cast<Mutation>(chosen);
  if (kind) *kind = m;
  bool ok = !ind.sequence.empty();
  Individual out;
  switch (m) {
    case Mutation::kRefineOne: out = refine_one(ind, rng, config, lambda); break;
    case Mutation::kRefineTwo: out = refine_two(ind, rng, config, lambda); break;
    case Mutation::kRefineAll: out = refine_all(ind, config, lambda); break;
    case Mutation::kInsert: out = insert_gate(ind, rng, config, lambda, &ok); break;
    case Mutation::kDelete: out = delete_gate(ind, rng, config, lambda, &ok); break;
  }
  if (applied) *applied = ok;
  return out;
}

Individual mate_at(const Individual& head, const Individual& tail, std::size_t split, const SearchConfig& config,
                   double lambda) {
  const std::size_t m = std::min(head.sequence.size(), tail.sequence.size());
  if (split > m) throw std::out_of_range("mate_at: split beyond the shorter parent");
  PulseSequence child;
  child.gates.reserve(m);
  child.gates.insert(child.gates.end(), head.sequence.gates.begin(),
                     head.sequence.gates.begin() + static_cast<std::ptrdiff_t>(split));
  child.gates.insert(child.gates.end(), tail.sequence.gates.end() - static_cast<std::ptrdiff_t>(m - split),
                     tail.sequence.gates.end());
  return refine_all(evaluate(std::move(child), config, lambda), config, lambda);
}

Individual mate(const Individual& a, const Individual& b, Rng& rng, const SearchConfig& config, double lambda) {
  const std::size_t m = std::min(a.sequence.size(), b.sequence.size());
  const std::size_t split = uniform_index(rng, m + 1);
  const bool a_leads = std::bernoulli_distribution(0.5)(rng);
  return a_leads ? mate_at(a, b, split, config, lambda) : mate_at(b, a, split, config, lambda);
}

double selection_weight(double penalized) { return 1.0 / std::max(penalized, 1e-12); }

std::vector<std::size_t> weighted_sample_without_replacement(const std::vector<double>& weights, std::size_t k,
                                                             Rng& rng) {
  std::vector<double> w = weights;
  for (double& x : w)
    if (!(x > 0.0) || !std::isfinite(x)) x = 0.0;
  std::vector<std::size_t> out;
  out.reserve(k);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (out.size() < k) {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(total > 0.0)) break;
    const double target = unit(rng) * total;
    double acc = 0.0;
    std::size_t pick = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 0.0) continue;
      acc += w[i];
      pick = i;
      if (target < acc) break;
    }
    out.push_back(pick);
    w[pick] = 0.0;
  }
  return out;
}

std::vector<Individual> select(const std::vector<Individual>& pool, std::size_t size, Rng& rng) {
  if (pool.empty() || size == 0) return {};
  const std::size_t elite = argmin_penalized(pool);
  std::vector<double> weights(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) weights[i] = i == elite ? 0.0 : selection_weight(pool[i].penalized);
  std::vector<Individual> out;
  out.reserve(size);
  out.push_back(pool[elite]);
  for (std::size_t i : weighted_sample_without_replacement(weights, std::min(size, pool.size()) - 1, rng))
    out.push_back(pool[i]);
  return out;
}

int effective_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("DFS_FORGE_THREADS")) {
    int cap = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, cap);
    if (ec == std::errc() && ptr == end && cap > 0) n = std::min(n, cap);
  }
  return n;
}

std::vector<Individual> initial_population(const SearchConfig& config) {
  config.validate();
  const double lambda = config.lambda_at(0);
  const auto size = static_cast<std::size_t>(config.population_size);
  std::vector<Individual> pop(size);
  parallel_for(size, effective_threads(config.threads), [&](std::size_t i) {
    Rng rng = make_rng(config.rng_seed, 0, i, kInit);
    PulseSequence seq;
    if (!config.seed_sequences.empty()) {
      seq = config.seed_sequences[i % config.seed_sequences.size()];
      std::uniform_real_distribution<double> jitter(-config.seed_jitter, config.seed_jitter);
      if (config.seed_jitter > 0.0)
        for (PulseGate& g : seq.gates) g.power += jitter(rng);
    } else {
      const int len = std::uniform_int_distribution<int>(config.initial_length_min, config.initial_length_max)(rng);
      seq.gates.reserve(static_cast<std::size_t>(len));
      for (int k = 0; k < len; ++k) {
        const int pair = static_cast<int>(uniform_index(rng, kNumPairs));
        seq.gates.push_back({pair, uniform_power(rng)});
      }
    }
    pop[i] = evaluate(merge_gates(seq), config, lambda);
  });
  return pop;
}

SearchState start_search(const SearchConfig& config) {
  SearchState state;
  state.config = config;
  state.population = initial_population(config);
  return state;
}

GenerationStats step(SearchState& state) {
  const auto t0 = std::chrono::steady_clock::now();
  const SearchConfig& config = state.config;
  const int g = state.generation;
  const auto gen = static_cast<std::uint64_t>(g);
  const double lambda = config.lambda_at(g);
  const int threads = effective_threads(config.threads);

  std::vector<Individual> parents;
  parents.reserve(state.population.size());
  for (const Individual& ind : state.population) parents.push_back(repenalize(ind, lambda));
  const std::size_t n = parents.size();

  std::vector<Individual> mutants(n);
  std::vector<Mutation> kinds(n);
  std::vector<char> applied(n);
  parallel_for(n, threads, [&](std::size_t i) {
    Rng rng = make_rng(config.rng_seed, gen, i, kMutate);
    bool ok = false;
    mutants[i] = merged(mutate(parents[i], rng, config, lambda, &kinds[i], &ok), config, lambda);
    applied[i] = ok ? 1 : 0;
  });

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  {
    Rng rng = make_rng(config.rng_seed, gen, 0, kShuffle);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<Individual> offspring(n / 2);
  parallel_for(offspring.size(), threads, [&](std::size_t j) {
    Rng rng = make_rng(config.rng_seed, gen, j, kMate);
    offspring[j] = merged(mate(parents[order[2 * j]], parents[order[2 * j + 1]], rng, config, lambda), config, lambda);
  });

  std::vector<Individual> pool;
  pool.reserve(parents.size() + mutants.size() + offspring.size());
  for (auto* part : {&parents, &mutants, &offspring})
    for (Individual& ind : *part) pool.push_back(std::move(ind));
  {
    Rng rng = make_rng(config.rng_seed, gen, 0, kSelect);
    state.population = select(pool, static_cast<std::size_t>(config.population_size), rng);
  }

  GenerationStats s;
  s.generation = g;
  s.lambda = lambda;
  for (std::size_t i = 0; i < n; ++i) {
    ++s.mutations[static_cast<std::size_t>(kinds[i])];
    if (!applied[i]) ++s.noop_mutations;
  }
  fill_population_stats(s, state.population);
  s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  state.stats.push_back(s);
  ++state.generation;
  return s;
}

SearchResult run_search(SearchState& state, const GenerationCallback& callback) {
  state.config.validate();
  if (state.population.empty()) throw std::invalid_argument("run_search: empty population");
  SearchResult result;
  auto reached = [&] {
    return state.config.stop_objective > 0.0 &&
           state.population[argmin_objective(state.population)].objective < state.config.stop_objective;
  };
  result.reached_stop_objective = reached();
  while (!result.reached_stop_objective && state.generation < state.config.max_generations) {
    const GenerationStats s = step(state);
    ++result.generations;
    result.reached_stop_objective = reached();
    if (callback && !callback(state, s)) break;
  }
  const double lambda = state.config.lambda_at(std::max(state.generation - 1, 0));
  std::vector<Individual> pop;
  for (const Individual& ind : state.population) pop.push_back(repenalize(ind, lambda));
  result.best = pop[argmin_penalized(pop)];
  result.best_objective = pop[argmin_objective(pop)];
  result.stats = state.stats;
  return result;
}

SearchResult evolve(const SearchConfig& config, const GenerationCallback& callback) {
  SearchState state = start_search(config);
  return run_search(state, callback);
}

}  // namespace dfs_forge
