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


#ifndef DFS_FORGE_JSON_IO_HPP
#define DFS_FORGE_JSON_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "dfs_forge/am_basis.hpp"
#include "dfs_forge/exchange.hpp"
#include "dfs_forge/ga_search.hpp"
#include "dfs_forge/targets.hpp"

namespace dfs_forge {

using Json = nlohmann::json;

/// Malformed or inconsistent user input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& value);

/// {"layout": [...], "gates": [{"pair": k, "power": p}, ...]}
Json sequence_to_json(const PulseSequence& seq);
/// Accepts the form above or any object holding it under "sequence". A
/// present "layout" must match the built-in one.
PulseSequence sequence_from_json(const Json& j);

/// Nested [re, im] pairs, row-major.
Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

Json block_unitary_to_json(const BlockUnitary& u);
BlockUnitary block_unitary_from_json(const Json& j);

Json verify_report_to_json(const VerifyReport& report);
Json basis_to_json(const TamBasis& basis);

/// Unknown keys are rejected. String entries of "seed_sequences" are file
/// paths, resolved against `base_dir`.
SearchConfig search_config_from_json(const Json& j, const std::filesystem::path& base_dir = {});
Json search_config_to_json(const SearchConfig& config);

Json generation_stats_to_json(const GenerationStats& s);
Json individual_to_json(const Individual& ind);

Json checkpoint_to_json(const SearchState& state);
/// Cached objectives are recomputed from the stored sequences.
SearchState checkpoint_from_json(const Json& j);

}  // namespace dfs_forge

#endif  // DFS_FORGE_JSON_IO_HPP
