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


// dfs-forge command-line tool. Talks to the library only through the C API.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dfs_forge/dfs_forge.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

// Raised for problems with user input; maps to exit code 2.
struct InputProblem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised for library failures that are not input problems; exit code 1.
struct LibraryProblem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(dfs_status status, const std::string& what) {
  if (status == DFS_OK) return;
  const std::string msg = what + ": " + dfs_last_error();
  switch (status) {
    case DFS_ERR_INPUT:
    case DFS_ERR_INVALID_ARGUMENT:
    case DFS_ERR_OUT_OF_RANGE:
    case DFS_ERR_IO:
      throw InputProblem(msg);
    default:
      throw LibraryProblem(msg);
  }
}

// Owns a string returned by the C API.
Json take_json(char* raw) {
  std::unique_ptr<char, decltype(&dfs_string_free)> owned(raw, &dfs_string_free);
  return Json::parse(owned.get());
}

struct SequenceDeleter {
  void operator()(dfs_sequence* s) const { dfs_sequence_free(s); }
};
struct BlocksDeleter {
  void operator()(dfs_blocks* b) const { dfs_blocks_free(b); }
};
struct ReportDeleter {
  void operator()(dfs_report* r) const { dfs_report_free(r); }
};
struct SearchDeleter {
  void operator()(dfs_search* s) const { dfs_search_free(s); }
};
using SequencePtr = std::unique_ptr<dfs_sequence, SequenceDeleter>;
using BlocksPtr = std::unique_ptr<dfs_blocks, BlocksDeleter>;
using ReportPtr = std::unique_ptr<dfs_report, ReportDeleter>;
using SearchPtr = std::unique_ptr<dfs_search, SearchDeleter>;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw LibraryProblem("sha-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

// Reproducibility record attached to every output.
class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> arguments)
      : command_(std::move(command)), arguments_(std::move(arguments)), start_(std::chrono::steady_clock::now()) {}

  std::string read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputProblem("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    inputs_[path] = sha256_hex(text);
    return text;
  }

  void set_seed(std::uint64_t seed) { seed_ = seed; }

  Json to_json() const {
    Json digests = Json::object();
    for (const auto& [path, digest] : inputs_) digests[path] = {{"sha256", digest}};
    return {{"command", command_},
            {"arguments", arguments_},
            {"seed", seed_ ? Json(*seed_) : Json(nullptr)},
            {"version", dfs_version()},
            {"inputs", std::move(digests)},
            {"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count()}};
  }

 private:
  std::string command_;
  std::vector<std::string> arguments_;
  std::map<std::string, std::string> inputs_;
  std::optional<std::uint64_t> seed_;
  std::chrono::steady_clock::time_point start_;
};

void emit(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputProblem("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw InputProblem("failed writing '" + path + "'");
}

SequencePtr load_sequence(Manifest& manifest, const std::string& path) {
  const std::string text = manifest.read_input(path);
  dfs_sequence* raw = nullptr;
  check(dfs_sequence_from_json(text.c_str(), &raw), "reading '" + path + "'");
  return SequencePtr(raw);
}

Json sequence_json(const dfs_sequence* seq) {
  char* raw = nullptr;
  check(dfs_sequence_to_json(seq, &raw), "serializing sequence");
  return take_json(raw);
}

int time_steps(const dfs_sequence* seq) {
  int steps = 0;
  check(dfs_sequence_time_steps(seq, &steps), "scheduling");
  return steps;
}

dfs_target parse_target(const std::string& name) {
  if (name == "cnot") return DFS_TARGET_CNOT;
  if (name == "lro") return DFS_TARGET_LRO;
  throw InputProblem("unknown target '" + name + "'");
}

struct Options {
  std::string seq;
  std::string out;
  std::string report;
  std::string target;
  std::string generator = "ex";
  std::string config;
  std::string resume;
  std::string checkpoint;
  std::string stats;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int checkpoint_every = 10;
  int max_generations = -1;
  bool dump = false;
  bool full = false;
  bool quiet = false;
};

int cmd_basis(const Options& o, Manifest& manifest) {
  char* raw = nullptr;
  check(dfs_basis_to_json(&raw), "building basis");
  Json basis = take_json(raw);
  if (!o.dump)
    for (Json& v : basis["vectors"]) v.erase("components");
  basis["manifest"] = manifest.to_json();
  emit(basis, o.out);
  return kExitOk;
}

int cmd_simulate(const Options& o, Manifest& manifest) {
  SequencePtr seq = load_sequence(manifest, o.seq);
  const dfs_generator gen = o.generator == "sw" ? DFS_GENERATOR_SWAP : DFS_GENERATOR_EXCHANGE;
  dfs_blocks* raw_blocks = nullptr;
  check(dfs_simulate(seq.get(), gen, &raw_blocks), "simulating");
  BlocksPtr blocks(raw_blocks);
  char* raw = nullptr;
  check(dfs_blocks_to_json(blocks.get(), &raw), "serializing blocks");
  Json out = {{"generator", o.generator},
              {"pulses", dfs_sequence_length(seq.get())},
              {"time_steps", time_steps(seq.get())},
              {"sequence", sequence_json(seq.get())},
              {"blocks", take_json(raw)}};
  if (o.full) {
    std::vector<double> re(64 * 64), im(64 * 64);
    check(dfs_full_unitary(seq.get(), gen, re.data(), im.data()), "computing full unitary");
    Json rows = Json::array();
    for (int r = 0; r < 64; ++r) {
      Json row = Json::array();
      for (int c = 0; c < 64; ++c) row.push_back({re[r * 64 + c], im[r * 64 + c]});
      rows.push_back(std::move(row));
    }
    out["full"] = std::move(rows);
  }
  out["manifest"] = manifest.to_json();
  emit(out, o.out);
  return kExitOk;
}

int cmd_verify(const Options& o, Manifest& manifest) {
  const dfs_target target = parse_target(o.target);
  if (!(o.tol > 0.0)) throw InputProblem("--tol must be positive");
  SequencePtr seq = load_sequence(manifest, o.seq);
  dfs_report* raw_report = nullptr;
  check(dfs_verify(seq.get(), target, o.tol, &raw_report), "verifying");
  ReportPtr report(raw_report);
  char* raw = nullptr;
  check(dfs_report_to_json(report.get(), &raw), "serializing report");
  Json out = take_json(raw);
  out["manifest"] = manifest.to_json();
  emit(out, o.report);
  if (!o.quiet)
    std::cerr << "verify " << o.target << ": " << (dfs_report_pass(report.get()) ? "PASS" : "FAIL")
              << " (objective " << dfs_report_objective(report.get()) << ")\n";
  return dfs_report_pass(report.get()) ? kExitOk : kExitFailure;
}

int cmd_merge(const Options& o, Manifest& manifest) {
  SequencePtr seq = load_sequence(manifest, o.seq);
  dfs_sequence* raw = nullptr;
  check(dfs_sequence_merge(seq.get(), &raw), "merging");
  SequencePtr merged(raw);
  Json out = sequence_json(merged.get());
  out["original_length"] = dfs_sequence_length(seq.get());
  out["merged_length"] = dfs_sequence_length(merged.get());
  out["time_steps"] = time_steps(merged.get());
  out["manifest"] = manifest.to_json();
  emit(out, o.out);
  return kExitOk;
}

int cmd_schedule(const Options& o, Manifest& manifest) {
  SequencePtr seq = load_sequence(manifest, o.seq);
  const std::size_t n = dfs_sequence_length(seq.get());
  std::vector<int> layer(n);
  check(dfs_sequence_layers(seq.get(), layer.data(), layer.size()), "scheduling");
  const int steps = time_steps(seq.get());
  Json layers = Json::array();
  for (int s = 0; s < steps; ++s) layers.push_back(Json::array());
  for (std::size_t i = 0; i < n; ++i) {
    int pair = 0;
    double power = 0.0;
    check(dfs_sequence_gate(seq.get(), i, &pair, &power), "reading gate");
    layers[static_cast<std::size_t>(layer[i])].push_back({{"index", i}, {"pair", pair}, {"power", power}});
  }
  Json out = {{"pulses", n}, {"time_steps", steps}, {"layers", std::move(layers)}, {"manifest", manifest.to_json()}};
  emit(out, o.out);
  return kExitOk;
}

Json search_best(const dfs_search* search, bool by_objective) {
  char* raw = nullptr;
  check(dfs_search_best(search, by_objective ? 1 : 0, &raw), "reading best individual");
  return take_json(raw);
}

void write_checkpoint(const dfs_search* search, const std::string& path) {
  char* raw = nullptr;
  check(dfs_search_checkpoint(search, &raw), "writing checkpoint");
  std::unique_ptr<char, decltype(&dfs_string_free)> owned(raw, &dfs_string_free);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw InputProblem("cannot write '" + tmp + "'");
    out << owned.get() << '\n';
    if (!out) throw InputProblem("failed writing '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

int cmd_search(const Options& o, Manifest& manifest) {
  const dfs_target target = parse_target(o.target);
  manifest.set_seed(o.seed);
  SearchPtr search;
  if (!o.resume.empty()) {
    const std::string text = manifest.read_input(o.resume);
    dfs_search* raw = nullptr;
    check(dfs_search_resume(text.c_str(), &raw), "reading checkpoint '" + o.resume + "'");
    search.reset(raw);
    if (dfs_search_seed(search.get()) != o.seed)
      throw InputProblem("--seed " + std::to_string(o.seed) + " does not match the checkpoint seed " +
                         std::to_string(dfs_search_seed(search.get())));
  } else {
    if (o.config.empty()) throw InputProblem("search needs --config or --resume");
    const std::string text = manifest.read_input(o.config);
    Json config;
    try {
      config = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InputProblem("'" + o.config + "' is not valid JSON: " + e.what());
    }
    if (!config.is_object()) throw InputProblem("'" + o.config + "': expected a JSON object");
    if (config.contains("target") && config["target"] != o.target)
      throw InputProblem("--target " + o.target + " conflicts with the config's target");
    config["target"] = o.target;
    if (o.max_generations >= 0) config["max_generations"] = o.max_generations;
    const std::string base = std::filesystem::absolute(o.config).parent_path().string();
    dfs_search* raw = nullptr;
    check(dfs_search_create(config.dump().c_str(), o.seed, base.c_str(), &raw), "configuring search");
    search.reset(raw);
  }
  if (o.max_generations >= 0) check(dfs_search_set_max_generations(search.get(), o.max_generations), "--max-generations");
  {
    char* raw = nullptr;
    check(dfs_search_config(search.get(), &raw), "reading config");
    const Json config = take_json(raw);
    if (parse_target(config["target"].get<std::string>()) != target)
      throw InputProblem("--target " + o.target + " conflicts with the checkpoint's target");
  }

  std::ofstream stats;
  if (!o.stats.empty()) {
    stats.open(o.stats, o.resume.empty() ? std::ios::trunc : std::ios::app);
    if (!stats) throw InputProblem("cannot write '" + o.stats + "'");
  }
  while (!dfs_search_done(search.get())) {
    char* raw = nullptr;
    check(dfs_search_step(search.get(), &raw), "running generation");
    const Json s = take_json(raw);
    if (stats) stats << s.dump() << '\n' << std::flush;
    if (!o.quiet)
      std::cerr << "generation " << s["generation"] << ": best penalized " << s["best_penalized"].get<double>()
                << ", best objective " << s["best_objective"].get<double>() << ", length " << s["best_length"] << '\n';
    if (!o.checkpoint.empty() && o.checkpoint_every > 0 && dfs_search_generation(search.get()) % o.checkpoint_every == 0)
      write_checkpoint(search.get(), o.checkpoint);
  }
  if (!o.checkpoint.empty()) write_checkpoint(search.get(), o.checkpoint);

  Json out = search_best(search.get(), false);
  out["best_objective"] = search_best(search.get(), true);
  out["target"] = o.target;
  out["generations"] = dfs_search_generation(search.get());
  char* raw = nullptr;
  check(dfs_search_config(search.get(), &raw), "reading config");
  out["config"] = take_json(raw);
  out["manifest"] = manifest.to_json();
  emit(out, o.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dfs-forge: exchange-only gate sequences for three-qubit encoded qubits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dfs_version()));
  Options o;

  auto* basis = app.add_subcommand("basis", "Print the labeled six-qubit total-angular-momentum basis");
  basis->add_flag("--dump", o.dump, "Include every vector's computational-basis amplitudes");
  basis->add_option("--out", o.out, "Output file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Block unitary of a sequence");
  simulate->add_option("--seq", o.seq, "Sequence JSON")->required();
  simulate->add_option("--generator", o.generator, "ex: exp(-i pi p H); sw: SWAP-normalized pulses")
      ->check(CLI::IsMember({"ex", "sw"}));
  simulate->add_flag("--full", o.full, "Also emit the 64x64 computational-basis matrix");
  simulate->add_option("--out", o.out, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Check a sequence against a target form");
  verify->add_option("--target", o.target, "cnot or lro")->required()->check(CLI::IsMember({"cnot", "lro"}));
  verify->add_option("--seq", o.seq, "Sequence JSON")->required();
  verify->add_option("--tol", o.tol, "Tolerance for every residual");
  verify->add_option("--report", o.report, "Report file (default stdout)");
  verify->add_flag("--quiet", o.quiet, "No summary on stderr");

  auto* merge = app.add_subcommand("merge", "Combine same-pair gates separated by disjoint gates");
  merge->add_option("--seq", o.seq, "Sequence JSON")->required();
  merge->add_option("--out", o.out, "Output file (default stdout)");

  auto* schedule = app.add_subcommand("schedule", "Group gates into parallel time steps");
  schedule->add_option("--seq", o.seq, "Sequence JSON")->required();
  schedule->add_option("--out", o.out, "Output file (default stdout)");

  auto* search = app.add_subcommand("search", "Genetic search for a target");
  search->add_option("--target", o.target, "cnot or lro")->required()->check(CLI::IsMember({"cnot", "lro"}));
  search->add_option("--config", o.config, "Search config JSON");
  search->add_option("--seed", o.seed, "RNG seed")->required();
  search->add_option("--out", o.out, "Best-individual file (default stdout)");
  search->add_option("--resume", o.resume, "Continue from a checkpoint");
  search->add_option("--checkpoint", o.checkpoint, "Checkpoint file, rewritten periodically");
  search->add_option("--checkpoint-every", o.checkpoint_every, "Generations between checkpoints")
      ->check(CLI::NonNegativeNumber);
  search->add_option("--stats", o.stats, "Per-generation statistics as JSON lines");
  search->add_option("--max-generations", o.max_generations, "Override the generation limit")
      ->check(CLI::NonNegativeNumber);
  search->add_flag("--quiet", o.quiet, "No progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  CLI::App* cmd = app.get_subcommands().front();
  Manifest manifest(cmd->get_name(), std::vector<std::string>(argv + 1, argv + argc));
  try {
    if (cmd == basis) return cmd_basis(o, manifest);
    if (cmd == simulate) return cmd_simulate(o, manifest);
    if (cmd == verify) return cmd_verify(o, manifest);
    if (cmd == merge) return cmd_merge(o, manifest);
    if (cmd == schedule) return cmd_schedule(o, manifest);
    if (cmd == search) return cmd_search(o, manifest);
  } catch (const InputProblem& e) {
    std::cerr << "dfs-forge: error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Json::exception& e) {
    std::cerr << "dfs-forge: error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "dfs-forge: error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
