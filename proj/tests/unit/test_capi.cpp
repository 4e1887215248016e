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


#include <cmath>
#include <complex>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "dfs_forge/dfs_forge.h"

namespace {

using Json = nlohmann::json;

struct SeqDel {
  void operator()(dfs_sequence* p) const { dfs_sequence_free(p); }
};
struct BlocksDel {
  void operator()(dfs_blocks* p) const { dfs_blocks_free(p); }
};
struct ReportDel {
  void operator()(dfs_report* p) const { dfs_report_free(p); }
};
struct SearchDel {
  void operator()(dfs_search* p) const { dfs_search_free(p); }
};
using Seq = std::unique_ptr<dfs_sequence, SeqDel>;
using Blocks = std::unique_ptr<dfs_blocks, BlocksDel>;
using Report = std::unique_ptr<dfs_report, ReportDel>;
using Search = std::unique_ptr<dfs_search, SearchDel>;

std::string take(char* s) {
  std::string out = s ? s : "";
  dfs_string_free(s);
  return out;
}

std::string read_file(const std::string& name) {
  std::ifstream in(std::string(DFS_FORGE_TEST_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Seq reference(dfs_reference which) {
  dfs_sequence* raw = nullptr;
  EXPECT_EQ(dfs_sequence_reference(which, &raw), DFS_OK);
  return Seq(raw);
}

bool verify_pass(const dfs_sequence* seq, dfs_target target) {
  dfs_report* raw = nullptr;
  EXPECT_EQ(dfs_verify(seq, target, 1e-10, &raw), DFS_OK);
  Report r(raw);
  return dfs_report_pass(r.get()) == 1;
}

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(dfs_version(), "0.1.0");
  EXPECT_STREQ(dfs_status_name(DFS_OK), "ok");
  EXPECT_STRNE(dfs_status_name(DFS_ERR_INPUT), "");
}

TEST(CApi, BuildAndInspectSequence) {
  dfs_sequence* raw = nullptr;
  ASSERT_EQ(dfs_sequence_create(&raw), DFS_OK);
  Seq seq(raw);
  EXPECT_EQ(dfs_sequence_append(seq.get(), 2, 0.25), DFS_OK);
  EXPECT_EQ(dfs_sequence_append(seq.get(), 0, -0.5), DFS_OK);
  EXPECT_EQ(dfs_sequence_length(seq.get()), 2u);
  int pair = -1;
  double power = 0.0;
  EXPECT_EQ(dfs_sequence_gate(seq.get(), 1, &pair, &power), DFS_OK);
  EXPECT_EQ(pair, 0);
  EXPECT_EQ(power, -0.5);
  EXPECT_EQ(dfs_sequence_gate(seq.get(), 2, &pair, &power), DFS_ERR_OUT_OF_RANGE);
  int steps = 0;
  EXPECT_EQ(dfs_sequence_time_steps(seq.get(), &steps), DFS_OK);
  EXPECT_EQ(steps, 1);
  char* text = nullptr;
  ASSERT_EQ(dfs_sequence_to_json(seq.get(), &text), DFS_OK);
  const Json j = Json::parse(take(text));
  EXPECT_EQ(j["gates"].size(), 2u);
}

TEST(CApi, ErrorsAreReported) {
  dfs_sequence* raw = nullptr;
  ASSERT_EQ(dfs_sequence_create(&raw), DFS_OK);
  Seq seq(raw);
  EXPECT_EQ(dfs_sequence_append(seq.get(), 5, 0.1), DFS_ERR_INVALID_ARGUMENT);
  EXPECT_STRNE(dfs_last_error(), "");
  EXPECT_EQ(dfs_sequence_append(seq.get(), 1, NAN), DFS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dfs_sequence_append(nullptr, 1, 0.1), DFS_ERR_NULL_ARGUMENT);
  EXPECT_EQ(dfs_sequence_create(nullptr), DFS_ERR_NULL_ARGUMENT);
  dfs_sequence* bad = nullptr;
  EXPECT_EQ(dfs_sequence_from_json(R"({"gates": [{"pair": 1,)", &bad), DFS_ERR_INPUT);
  EXPECT_EQ(bad, nullptr);
  EXPECT_EQ(dfs_sequence_from_json(R"({"gates": [{"pair": 9, "power": 0}]})", &bad), DFS_ERR_INPUT);
  EXPECT_EQ(dfs_sequence_append(seq.get(), 1, 0.1), DFS_OK);
  EXPECT_STREQ(dfs_last_error(), "");
  // Freeing null handles is allowed.
  dfs_sequence_free(nullptr);
  dfs_blocks_free(nullptr);
  dfs_report_free(nullptr);
  dfs_search_free(nullptr);
  dfs_string_free(nullptr);
}

TEST(CApi, ReferenceSequencesVerify) {
  const Seq cnot = reference(DFS_REFERENCE_CNOT);
  const Seq local = reference(DFS_REFERENCE_CNOT_LOCAL);
  const Seq lro = reference(DFS_REFERENCE_LRO);
  EXPECT_EQ(dfs_sequence_length(cnot.get()), 22u);
  EXPECT_EQ(dfs_sequence_length(local.get()), 18u);
  EXPECT_EQ(dfs_sequence_length(lro.get()), 30u);
  EXPECT_TRUE(verify_pass(cnot.get(), DFS_TARGET_CNOT));
  EXPECT_FALSE(verify_pass(local.get(), DFS_TARGET_CNOT));
  EXPECT_TRUE(verify_pass(lro.get(), DFS_TARGET_LRO));
  EXPECT_FALSE(verify_pass(lro.get(), DFS_TARGET_CNOT));
}

TEST(CApi, ShippedFilesMatchReferences) {
  dfs_sequence* raw = nullptr;
  ASSERT_EQ(dfs_sequence_from_json(read_file("cnot.json").c_str(), &raw), DFS_OK);
  Seq file(raw);
  const Seq ref = reference(DFS_REFERENCE_CNOT);
  ASSERT_EQ(dfs_sequence_length(file.get()), dfs_sequence_length(ref.get()));
  for (std::size_t i = 0; i < dfs_sequence_length(ref.get()); ++i) {
    int p1 = 0, p2 = 0;
    double w1 = 0, w2 = 0;
    dfs_sequence_gate(file.get(), i, &p1, &w1);
    dfs_sequence_gate(ref.get(), i, &p2, &w2);
    EXPECT_EQ(p1, p2);
    EXPECT_EQ(w1, w2);
  }
}

TEST(CApi, BlocksAgreeWithFullUnitary) {
  const Seq seq = reference(DFS_REFERENCE_LRO);
  dfs_blocks* raw = nullptr;
  ASSERT_EQ(dfs_simulate(seq.get(), DFS_GENERATOR_EXCHANGE, &raw), DFS_OK);
  Blocks blocks(raw);
  std::vector<double> re(4096), im(4096), v(4096);
  ASSERT_EQ(dfs_full_unitary(seq.get(), DFS_GENERATOR_EXCHANGE, re.data(), im.data()), DFS_OK);
  ASSERT_EQ(dfs_basis_matrix(v.data()), DFS_OK);
  // Entry (r, c) of V·U·Vᵀ for basis rows r, c.
  auto tam = [&](int r, int c) {
    std::complex<double> s = 0.0;
    for (int x = 0; x < 64; ++x)
      for (int y = 0; y < 64; ++y)
        s += v[r * 64 + x] * std::complex<double>(re[x * 64 + y], im[x * 64 + y]) * v[c * 64 + y];
    return s;
  };
  const int offsets[3] = {0, 5, 14};
  const int sizes[3] = {5, 9, 5};
  for (int b = 0; b < 3; ++b)
    for (int r = 0; r < sizes[b]; ++r)
      for (int c = 0; c < sizes[b]; ++c) {
        double er = 0, ei = 0;
        ASSERT_EQ(dfs_blocks_entry(blocks.get(), b, r, c, &er, &ei), DFS_OK);
        const auto t = tam(offsets[b] + r, offsets[b] + c);
        EXPECT_NEAR(er, t.real(), 1e-10);
        EXPECT_NEAR(ei, t.imag(), 1e-10);
      }
  double er = 0, ei = 0;
  EXPECT_EQ(dfs_blocks_entry(blocks.get(), 0, 5, 0, &er, &ei), DFS_ERR_OUT_OF_RANGE);
  EXPECT_EQ(dfs_blocks_entry(blocks.get(), 3, 0, 0, &er, &ei), DFS_ERR_OUT_OF_RANGE);
  double obj = 1.0;
  ASSERT_EQ(dfs_blocks_objective(blocks.get(), DFS_TARGET_LRO, &obj), DFS_OK);
  EXPECT_LT(obj, 1e-10);
}

TEST(CApi, MergeAndLayers) {
  dfs_sequence* raw = nullptr;
  ASSERT_EQ(dfs_sequence_from_json(R"({"gates": [{"pair": 2, "power": 0.3}, {"pair": 0, "power": 0.1},
                                                  {"pair": 2, "power": 0.4}]})",
                                   &raw),
            DFS_OK);
  Seq seq(raw);
  dfs_sequence* merged_raw = nullptr;
  ASSERT_EQ(dfs_sequence_merge(seq.get(), &merged_raw), DFS_OK);
  Seq merged(merged_raw);
  EXPECT_EQ(dfs_sequence_length(merged.get()), 2u);
  int layers[3] = {-1, -1, -1};
  EXPECT_EQ(dfs_sequence_layers(seq.get(), layers, 3), DFS_OK);
  EXPECT_EQ(layers[0], 0);
  EXPECT_EQ(layers[1], 0);
  EXPECT_EQ(layers[2], 1);
  EXPECT_EQ(dfs_sequence_layers(seq.get(), layers, 2), DFS_ERR_OUT_OF_RANGE);
}

TEST(CApi, SearchStepsResumesAndReportsBest) {
  const std::string config = R"({"target": "cnot", "population_size": 6, "initial_length": [3, 6],
                                 "max_sequence_length": 10, "max_generations": 3, "threads": 1})";
  dfs_search* raw = nullptr;
  ASSERT_EQ(dfs_search_create(config.c_str(), 99, nullptr, &raw), DFS_OK);
  Search direct(raw);
  EXPECT_EQ(dfs_search_seed(direct.get()), 99u);
  while (!dfs_search_done(direct.get())) {
    char* stats = nullptr;
    ASSERT_EQ(dfs_search_step(direct.get(), &stats), DFS_OK);
    EXPECT_TRUE(Json::parse(take(stats)).contains("best_penalized"));
  }
  EXPECT_EQ(dfs_search_generation(direct.get()), 3);

  ASSERT_EQ(dfs_search_create(config.c_str(), 99, nullptr, &raw), DFS_OK);
  Search part(raw);
  char* stats = nullptr;
  ASSERT_EQ(dfs_search_step(part.get(), &stats), DFS_OK);
  dfs_string_free(stats);
  char* ckpt = nullptr;
  ASSERT_EQ(dfs_search_checkpoint(part.get(), &ckpt), DFS_OK);
  const std::string text = take(ckpt);
  ASSERT_EQ(dfs_search_resume(text.c_str(), &raw), DFS_OK);
  Search resumed(raw);
  EXPECT_EQ(dfs_search_generation(resumed.get()), 1);
  while (!dfs_search_done(resumed.get())) {
    ASSERT_EQ(dfs_search_step(resumed.get(), &stats), DFS_OK);
    dfs_string_free(stats);
  }
  char* a = nullptr;
  char* b = nullptr;
  ASSERT_EQ(dfs_search_best(direct.get(), 0, &a), DFS_OK);
  ASSERT_EQ(dfs_search_best(resumed.get(), 0, &b), DFS_OK);
  const Json ja = Json::parse(take(a)), jb = Json::parse(take(b));
  EXPECT_EQ(ja["gates"], jb["gates"]);
  EXPECT_EQ(ja["objective"], jb["objective"]);

  EXPECT_EQ(dfs_search_set_max_generations(resumed.get(), -1), DFS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dfs_search_set_max_generations(resumed.get(), 5), DFS_OK);
  EXPECT_FALSE(dfs_search_done(resumed.get()));
}

TEST(CApi, SearchRejectsBadInput) {
  dfs_search* raw = nullptr;
  EXPECT_EQ(dfs_search_create(R"({"population_size": 1})", 1, nullptr, &raw), DFS_ERR_INPUT);
  EXPECT_EQ(dfs_search_create("{not json", 1, nullptr, &raw), DFS_ERR_INPUT);
  EXPECT_EQ(dfs_search_resume(R"({"format": "other"})", &raw), DFS_ERR_INPUT);
  EXPECT_EQ(dfs_search_create(nullptr, 1, nullptr, &raw), DFS_ERR_NULL_ARGUMENT);
}

TEST(CApi, BasisJson) {
  char* text = nullptr;
  ASSERT_EQ(dfs_basis_to_json(&text), DFS_OK);
  const Json j = Json::parse(take(text));
  EXPECT_EQ(j["vectors"].size(), 64u);
}

}  // namespace
