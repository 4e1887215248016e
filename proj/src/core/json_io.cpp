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


#include "dfs_forge/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace dfs_forge {

namespace {

constexpr const char* kCheckpointFormat = "dfs-forge-checkpoint";
constexpr int kCheckpointVersion = 1;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw InputError(where.empty() ? what : where + ": " + what);
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) bad(where, std::string("missing key '") + key + "'");
  return *it;
}

double as_number(const Json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(where, "expected a finite number");
  return v;
}

long long as_integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<long long>();
}

int as_int(const Json& j, const std::string& where) {
  const long long v = as_integer(j, where);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) bad(where, "integer out of range");
  return static_cast<int>(v);
}

bool as_bool(const Json& j, const std::string& where) {
  if (!j.is_boolean()) bad(where, "expected true or false");
  return j.get<bool>();
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> known, const std::string& where) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) bad(where, "unknown key '" + it.key() + "'");
}

Json layout_json() {
  Json layout = Json::array();
  for (const char* name : kLayoutNames) layout.push_back(name);
  return layout;
}

Json minimizer_to_json(const MinimizerOptions& o) {
  return {{"max_iterations", o.max_iterations},       {"gradient_step", o.gradient_step},
          {"value_tolerance", o.value_tolerance},     {"gradient_tolerance", o.gradient_tolerance},
          {"relative_tolerance", o.relative_tolerance}, {"max_step", o.max_step}};
}

MinimizerOptions minimizer_from_json(const Json& j, MinimizerOptions o, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  reject_unknown(j,
                 {"max_iterations", "gradient_step", "value_tolerance", "gradient_tolerance", "relative_tolerance",
                  "max_step"},
                 where);
  if (j.contains("max_iterations")) o.max_iterations = as_int(j["max_iterations"], where + ".max_iterations");
  if (j.contains("gradient_step")) o.gradient_step = as_number(j["gradient_step"], where + ".gradient_step");
  if (j.contains("value_tolerance")) o.value_tolerance = as_number(j["value_tolerance"], where + ".value_tolerance");
  if (j.contains("gradient_tolerance"))
    o.gradient_tolerance = as_number(j["gradient_tolerance"], where + ".gradient_tolerance");
  if (j.contains("relative_tolerance"))
    o.relative_tolerance = as_number(j["relative_tolerance"], where + ".relative_tolerance");
  if (j.contains("max_step")) o.max_step = as_number(j["max_step"], where + ".max_step");
  return o;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) bad(where, "expected [re, im]");
  return {as_number(j[0], where + "[0]"), as_number(j[1], where + "[1]")};
}

Json labels_json(const QuantumNumbers& q) {
  return {{"s_tot", q.s_tot.value()}, {"sz_tot", q.sz_tot.value()}, {"s_a", q.s_a.value()},
          {"s_b", q.s_b.value()},     {"s_a12", q.s_a12.value()},   {"s_b12", q.s_b12.value()}};
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << value.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

Json sequence_to_json(const PulseSequence& seq) {
  Json gates = Json::array();
  for (const PulseGate& g : seq.gates) gates.push_back({{"pair", g.pair}, {"power", g.power}});
  return {{"layout", layout_json()}, {"gates", std::move(gates)}};
}

PulseSequence sequence_from_json(const Json& j) {
  if (!j.is_object()) bad("sequence", "expected an object");
  if (!j.contains("gates") && j.contains("sequence")) return sequence_from_json(j["sequence"]);
  if (j.contains("layout") && j["layout"] != layout_json())
    bad("layout", "must be [\"A3\",\"A2\",\"A1\",\"B1\",\"B2\",\"B3\"]");
  const Json& gates = require(j, "gates", "sequence");
  if (!gates.is_array()) bad("gates", "expected an array");
  PulseSequence seq;
  seq.gates.reserve(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const std::string where = "gates[" + std::to_string(i) + "]";
    const Json& g = gates[i];
    const long long pair = as_integer(require(g, "pair", where), where + ".pair");
    if (pair < 0 || pair >= kNumPairs) bad(where + ".pair", "must be in 0..4");
    seq.gates.push_back({static_cast<int>(pair), as_number(require(g, "power", where), where + ".power")});
  }
  return seq;
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad("matrix", "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) bad("matrix", "ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                  "matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

Json block_unitary_to_json(const BlockUnitary& u) {
  return {{"b0", matrix_to_json(u.b0)},
          {"b1", matrix_to_json(u.b1)},
          {"b2", matrix_to_json(u.b2)},
          {"b3_phase", complex_json(u.b3_phase)}};
}

BlockUnitary block_unitary_from_json(const Json& j) {
  BlockUnitary u;
  const Eigen::MatrixXcd b0 = matrix_from_json(require(j, "b0", "blocks"));
  const Eigen::MatrixXcd b1 = matrix_from_json(require(j, "b1", "blocks"));
  const Eigen::MatrixXcd b2 = matrix_from_json(require(j, "b2", "blocks"));
  if (b0.rows() != 5 || b0.cols() != 5 || b1.rows() != 9 || b1.cols() != 9 || b2.rows() != 5 || b2.cols() != 5)
    bad("blocks", "expected 5x5, 9x9 and 5x5 blocks");
  u.b0 = b0;
  u.b1 = b1;
  u.b2 = b2;
  u.b3_phase = complex_from_json(require(j, "b3_phase", "blocks"), "b3_phase");
  return u;
}

Json verify_report_to_json(const VerifyReport& r) {
  Json checks = Json::array();
  for (const CheckResult& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass},
                      {"required", c.required}});
  Json blocks = Json::object();
  for (const auto& [name, m] : r.blocks) blocks[name] = matrix_to_json(m);
  Json phases = Json::object();
  for (const auto& [name, v] : r.phases) phases[name] = v;
  Json out = {{"target", std::string(to_string(r.target))},
              {"pass", r.pass},
              {"objective", r.objective},
              {"tolerance", r.tolerance},
              {"pulses", r.pulses},
              {"time_steps", r.time_steps},
              {"checks", std::move(checks)},
              {"phases", std::move(phases)},
              {"blocks", std::move(blocks)}};
  if (r.local_equivalence) {
    const LocalEquivalence& le = *r.local_equivalence;
    auto inv = [](const MakhlinInvariants& m) { return Json{{"g1", complex_json(m.g1)}, {"g2", m.g2}}; };
    out["local_equivalence"] = {{"pass", le.pass},
                                {"decoupling_residual", le.decoupling_residual},
                                {"invariant_residual", le.invariant_residual},
                                {"spin0", inv(le.spin0)},
                                {"spin1", inv(le.spin1)},
                                {"cnot", inv(le.reference)}};
  }
  return out;
}

Json basis_to_json(const TamBasis& basis) {
  Json vectors = Json::array();
  for (const BasisVector& v : basis.vectors) {
    Json components = Json::array();
    for (int i = 0; i < kDim; ++i) {
      const double a = v.amplitudes[i];
      if (a == 0.0) continue;
      std::string ket(kNumQubits, '0');
      for (int k = 0; k < kNumQubits; ++k)
        if ((i >> k) & 1) ket[static_cast<std::size_t>(k)] = '1';
      components.push_back({{"ket", ket}, {"amplitude", a}});
    }
    Json entry = labels_json(v.labels);
    entry["index"] = v.index;
    entry["components"] = std::move(components);
    vectors.push_back(std::move(entry));
  }
  Json sectors = Json::array();
  for (const Sector& s : basis.sectors)
    sectors.push_back({{"s_tot", s.s_tot.value()}, {"sz_tot", s.sz_tot.value()}, {"offset", s.offset}, {"size", s.size}});
  return {{"layout", layout_json()},
          {"ket_convention", "character k is layout position k; 0 = spin up"},
          {"vectors", std::move(vectors)},
          {"sectors", std::move(sectors)}};
}

SearchConfig search_config_from_json(const Json& j, const std::filesystem::path& base_dir) {
  const std::string where = "config";
  if (!j.is_object()) bad(where, "expected an object");
  reject_unknown(j,
                 {"target", "constrain_f_equals_h", "population_size", "initial_length", "max_sequence_length",
                  "mutation_probabilities", "gate_penalty", "lambda_schedule", "max_generations", "stop_objective",
                  "rng_seed", "threads", "refine", "refine_all", "seed_sequences", "seed_jitter"},
                 where);
  SearchConfig c;
  if (j.contains("target")) {
    if (!j["target"].is_string()) bad("config.target", "expected \"cnot\" or \"lro\"");
    try {
      c.target = parse_target(j["target"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      bad("config.target", e.what());
    }
  }
  if (j.contains("constrain_f_equals_h"))
    c.constrain_f_equals_h = as_bool(j["constrain_f_equals_h"], "config.constrain_f_equals_h");
  if (j.contains("population_size")) c.population_size = as_int(j["population_size"], "config.population_size");
  if (j.contains("initial_length")) {
    const Json& l = j["initial_length"];
    if (!l.is_array() || l.size() != 2) bad("config.initial_length", "expected [min, max]");
    c.initial_length_min = as_int(l[0], "config.initial_length[0]");
    c.initial_length_max = as_int(l[1], "config.initial_length[1]");
  }
  if (j.contains("max_sequence_length"))
    c.max_sequence_length = as_int(j["max_sequence_length"], "config.max_sequence_length");
  if (j.contains("mutation_probabilities")) {
    const Json& m = j["mutation_probabilities"];
    const std::string w = "config.mutation_probabilities";
    if (!m.is_object()) bad(w, "expected an object");
    reject_unknown(m, {"refine_one", "refine_two", "refine_all", "insert", "delete"}, w);
    for (int k = 0; k < kNumMutations; ++k) {
      const std::string key(to_string(static_cast<Mutation>(k)));
      if (m.contains(key)) c.mutation_probabilities[static_cast<std::size_t>(k)] = as_number(m[key], w + "." + key);
    }
  }
  if (j.contains("gate_penalty")) c.gate_penalty = as_number(j["gate_penalty"], "config.gate_penalty");
  if (j.contains("lambda_schedule")) {
    const Json& s = j["lambda_schedule"];
    if (!s.is_array()) bad("config.lambda_schedule", "expected an array");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string w = "config.lambda_schedule[" + std::to_string(i) + "]";
      reject_unknown(s[i], {"from_generation", "lambda"}, w);
      c.lambda_schedule.push_back({as_int(require(s[i], "from_generation", w), w + ".from_generation"),
                                   as_number(require(s[i], "lambda", w), w + ".lambda")});
    }
  }
  if (j.contains("max_generations")) c.max_generations = as_int(j["max_generations"], "config.max_generations");
  if (j.contains("stop_objective")) c.stop_objective = as_number(j["stop_objective"], "config.stop_objective");
  if (j.contains("rng_seed")) {
    const Json& s = j["rng_seed"];
    if (!s.is_number_unsigned()) bad("config.rng_seed", "expected a non-negative integer");
    c.rng_seed = s.get<std::uint64_t>();
  }
  if (j.contains("threads")) c.threads = as_int(j["threads"], "config.threads");
  if (j.contains("refine")) c.refine_options = minimizer_from_json(j["refine"], c.refine_options, "config.refine");
  if (j.contains("refine_all"))
    c.refine_all_options = minimizer_from_json(j["refine_all"], c.refine_all_options, "config.refine_all");
  if (j.contains("seed_sequences")) {
    const Json& s = j["seed_sequences"];
    if (!s.is_array()) bad("config.seed_sequences", "expected an array");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].is_string()) {
        std::filesystem::path p = s[i].get<std::string>();
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        c.seed_sequences.push_back(sequence_from_json(read_json_file(p)));
      } else {
        c.seed_sequences.push_back(sequence_from_json(s[i]));
      }
    }
  }
  if (j.contains("seed_jitter")) c.seed_jitter = as_number(j["seed_jitter"], "config.seed_jitter");
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return c;
}

Json search_config_to_json(const SearchConfig& c) {
  Json probs = Json::object();
  for (int k = 0; k < kNumMutations; ++k)
    probs[std::string(to_string(static_cast<Mutation>(k)))] = c.mutation_probabilities[static_cast<std::size_t>(k)];
  Json schedule = Json::array();
  for (const LambdaStep& s : c.lambda_schedule) schedule.push_back({{"from_generation", s.from_generation}, {"lambda", s.lambda}});
  Json seeds = Json::array();
  for (const PulseSequence& s : c.seed_sequences) seeds.push_back(sequence_to_json(s));
  return {{"target", std::string(to_string(c.target))},
          {"constrain_f_equals_h", c.constrain_f_equals_h},
          {"population_size", c.population_size},
          {"initial_length", {c.initial_length_min, c.initial_length_max}},
          {"max_sequence_length", c.max_sequence_length},
          {"mutation_probabilities", std::move(probs)},
          {"gate_penalty", c.gate_penalty},
          {"lambda_schedule", std::move(schedule)},
          {"max_generations", c.max_generations},
          {"stop_objective", c.stop_objective},
          {"rng_seed", c.rng_seed},
          {"threads", c.threads},
          {"refine", minimizer_to_json(c.refine_options)},
          {"refine_all", minimizer_to_json(c.refine_all_options)},
          {"seed_sequences", std::move(seeds)},
          {"seed_jitter", c.seed_jitter}};
}

Json generation_stats_to_json(const GenerationStats& s) {
  Json muts = Json::object();
  for (int k = 0; k < kNumMutations; ++k)
    muts[std::string(to_string(static_cast<Mutation>(k)))] = s.mutations[static_cast<std::size_t>(k)];
  return {{"generation", s.generation},       {"lambda", s.lambda},           {"best_penalized", s.best_penalized},
          {"best_objective", s.best_objective}, {"best_length", s.best_length}, {"mean_length", s.mean_length},
          {"diversity", s.diversity},         {"wall_seconds", s.wall_seconds}, {"mutations", std::move(muts)},
          {"noop_mutations", s.noop_mutations}};
}

namespace {

GenerationStats generation_stats_from_json(const Json& j, const std::string& where) {
  GenerationStats s;
  s.generation = as_int(require(j, "generation", where), where + ".generation");
  s.lambda = as_number(require(j, "lambda", where), where + ".lambda");
  s.best_penalized = as_number(require(j, "best_penalized", where), where + ".best_penalized");
  s.best_objective = as_number(require(j, "best_objective", where), where + ".best_objective");
  s.best_length = static_cast<std::size_t>(as_integer(require(j, "best_length", where), where + ".best_length"));
  s.mean_length = as_number(require(j, "mean_length", where), where + ".mean_length");
  s.diversity = as_number(require(j, "diversity", where), where + ".diversity");
  s.wall_seconds = as_number(require(j, "wall_seconds", where), where + ".wall_seconds");
  const Json& muts = require(j, "mutations", where);
  for (int k = 0; k < kNumMutations; ++k) {
    const std::string key(to_string(static_cast<Mutation>(k)));
    s.mutations[static_cast<std::size_t>(k)] = as_int(require(muts, key.c_str(), where), where + ".mutations." + key);
  }
  s.noop_mutations = as_int(require(j, "noop_mutations", where), where + ".noop_mutations");
  return s;
}

}  // namespace

Json individual_to_json(const Individual& ind) {
  Json j = sequence_to_json(ind.sequence);
  j["objective"] = ind.objective;
  j["penalized"] = ind.penalized;
  j["length"] = ind.sequence.size();
  return j;
}

Json checkpoint_to_json(const SearchState& state) {
  Json pop = Json::array();
  for (const Individual& ind : state.population) pop.push_back(sequence_to_json(ind.sequence)["gates"]);
  Json stats = Json::array();
  for (const GenerationStats& s : state.stats) stats.push_back(generation_stats_to_json(s));
  return {{"format", kCheckpointFormat},
          {"version", kCheckpointVersion},
          {"generation", state.generation},
          {"config", search_config_to_json(state.config)},
          {"population", std::move(pop)},
          {"stats", std::move(stats)}};
}

SearchState checkpoint_from_json(const Json& j) {
  const std::string where = "checkpoint";
  if (!j.is_object() || j.value("format", "") != kCheckpointFormat) bad(where, "not a dfs-forge checkpoint");
  if (as_int(require(j, "version", where), where + ".version") != kCheckpointVersion)
    bad(where, "unsupported checkpoint version");
  SearchState state;
  state.config = search_config_from_json(require(j, "config", where));
  state.generation = as_int(require(j, "generation", where), where + ".generation");
  if (state.generation < 0) bad(where + ".generation", "must be non-negative");
  const Json& pop = require(j, "population", where);
  if (!pop.is_array() || pop.empty()) bad(where + ".population", "expected a non-empty array");
  const double lambda = state.config.lambda_at(state.generation);
  for (const Json& gates : pop) state.population.push_back(evaluate(sequence_from_json({{"gates", gates}}), state.config, lambda));
  const Json& stats = require(j, "stats", where);
  if (!stats.is_array()) bad(where + ".stats", "expected an array");
  for (std::size_t i = 0; i < stats.size(); ++i)
    state.stats.push_back(generation_stats_from_json(stats[i], where + ".stats[" + std::to_string(i) + "]"));
  return state;
}

}  // namespace dfs_forge
