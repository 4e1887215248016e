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
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "dfs_forge/exchange.hpp"
#include "dfs_forge/reference_sequences.hpp"
#include "test_support.hpp"

namespace dfs_forge {
namespace {

using testing::exchange_oracle;
using testing::random_sequence;
using testing::sequence_oracle;
using testing::swap_matrix;

constexpr double kPi = std::numbers::pi;

TEST(Exchange, HamiltonianIsHalfSwapMinusQuarter) {
  for (int m = 0; m < 5; ++m) {
    const Eigen::MatrixXcd want = 0.5 * swap_matrix(6, m, m + 1) - 0.25 * Eigen::MatrixXcd::Identity(64, 64);
    EXPECT_LT((exchange_hamiltonian(m, m + 1) - want).norm(), 1e-13);
  }
}

TEST(Exchange, FullGateMatchesSwapIdentity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> p(-1.5, 1.5);
  for (Generator g : {Generator::kExchange, Generator::kSwap})
    for (int pair = 0; pair < kNumPairs; ++pair) {
      const double power = p(rng);
      EXPECT_LT((full_gate_unitary({pair, power}, g) - exchange_oracle(6, pair, pair + 1, power, g)).norm(), 1e-12);
    }
}

TEST(Exchange, FullSwapPulseIsSwap) {
  for (int pair = 0; pair < kNumPairs; ++pair)
    EXPECT_LT((full_gate_unitary({pair, 1.0}, Generator::kSwap) - swap_matrix(6, pair, pair + 1)).norm(), 1e-12);
}

TEST(Exchange, BlocksMatchDenseOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const PulseSequence seq = random_sequence(rng, 1 + trial % 8);
    for (Generator g : {Generator::kExchange, Generator::kSwap}) {
      const Eigen::MatrixXcd tam = to_tam_basis(sequence_oracle(seq, g));
      const BlockUnitary u = sequence_unitary(seq, g);
      EXPECT_LT((sector_block(tam, HalfInteger(0), HalfInteger(0)) - Eigen::MatrixXcd(u.b0)).norm(), 1e-11);
      EXPECT_LT((sector_block(tam, HalfInteger(2), HalfInteger(-2)) - Eigen::MatrixXcd(u.b1)).norm(), 1e-11);
      EXPECT_LT((sector_block(tam, HalfInteger(4), HalfInteger(-4)) - Eigen::MatrixXcd(u.b2)).norm(), 1e-11);
      EXPECT_LT(std::abs(sector_block(tam, HalfInteger(6), HalfInteger(6))(0, 0) - u.b3_phase), 1e-11);
      EXPECT_LT(u.unitarity_error(), 1e-12);
    }
  }
}

TEST(Exchange, SpinThreePhase) {
  std::mt19937_64 rng(3);
  const PulseSequence seq = random_sequence(rng, 9);
  const Complex i{0.0, 1.0};
  EXPECT_LT(std::abs(sequence_unitary(seq, Generator::kExchange).b3_phase -
                     std::exp(-i * kPi * seq.total_power() / 4.0)),
            1e-12);
  EXPECT_LT(std::abs(sequence_unitary(seq, Generator::kSwap).b3_phase - 1.0), 1e-12);
}

TEST(Exchange, LeftAndRightApplicationAgree) {
  std::mt19937_64 rng(8);
  const PulseSequence seq = random_sequence(rng, 6);
  BlockUnitary left, right;
  for (const PulseGate& g : seq.gates) apply_gate_left(left, g);
  for (auto it = seq.gates.rbegin(); it != seq.gates.rend(); ++it) apply_gate_right(right, *it);
  EXPECT_LT(BlockUnitary::distance(left, right), 1e-12);
  EXPECT_LT(BlockUnitary::distance(left, sequence_unitary(seq)), 1e-12);
}

TEST(Exchange, InverseUndoesSequence) {
  std::mt19937_64 rng(9);
  const PulseSequence seq = random_sequence(rng, 12);
  const BlockUnitary u = sequence_unitary(seq) * sequence_unitary(seq.inverse());
  EXPECT_LT(BlockUnitary::distance(u, BlockUnitary::identity()), 1e-12);
}

TEST(Exchange, FullMatrixLeakageIsRejected) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(64, 64);
  u(0, 1) = 0.5;  // |000000⟩ is in the spin-3 sector, |100000⟩ is not
  EXPECT_THROW(blocks_from_full(u), std::domain_error);
}

TEST(Exchange, ValidateRejectsBadGates) {
  EXPECT_THROW((PulseSequence{{{5, 0.1}}}.validate()), std::invalid_argument);
  EXPECT_THROW((PulseSequence{{{-1, 0.1}}}.validate()), std::invalid_argument);
  EXPECT_THROW((PulseSequence{{{0, std::nan("")}}}.validate()), std::invalid_argument);
  EXPECT_THROW(gate_unitary({7, 0.5}), std::invalid_argument);
}

TEST(CanonicalPower, WrapsIntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(canonical_power(1.5), -0.5);
  EXPECT_DOUBLE_EQ(canonical_power(-1.0), 1.0);
  EXPECT_DOUBLE_EQ(canonical_power(1.0), 1.0);
  EXPECT_DOUBLE_EQ(canonical_power(2.0), 0.0);
  EXPECT_NEAR(canonical_power(-2.75), -0.75, 1e-15);
}

TEST(Merge, CombinesAcrossDisjointGates) {
  const PulseSequence in{{{2, 0.3}, {0, 0.1}, {2, 0.4}}};
  const PulseSequence out = merge_gates(in);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.gates[0], (PulseGate{0, 0.1}));
  EXPECT_EQ(out.gates[1].pair, 2);
  EXPECT_NEAR(out.gates[1].power, 0.7, 1e-15);
}

TEST(Merge, BlockedByOverlappingGate) {
  const PulseSequence in{{{2, 0.5}, {3, 0.1}, {2, 0.5}}};
  EXPECT_EQ(merge_gates(in), in);
}

TEST(Merge, CancellationRemovesGates) {
  EXPECT_TRUE(merge_gates(PulseSequence{{{1, 0.5}, {1, -0.5}}}).empty());
  EXPECT_TRUE(merge_gates(PulseSequence{{{3, 2.0}}}).empty());
  // Cascades: removing the middle pair lets the outer gates meet.
  const PulseSequence out = merge_gates(PulseSequence{{{0, 0.2}, {1, 0.3}, {1, -0.3}, {0, 0.2}}});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(out.gates[0].power, 0.4, 1e-15);
}

TEST(Merge, PreservesSwapGeneratorUnitaryExactly) {
  // Under the swap generator G(p + 2) = G(p), so merging and wrapping keep
  // the operator, phases included.
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    PulseSequence seq = random_sequence(rng, 15, 1.2);
    for (auto& g : seq.gates) g.pair = g.pair % 3;  // more merge opportunities
    const PulseSequence merged = merge_gates(seq);
    EXPECT_LE(merged.size(), seq.size());
    EXPECT_LT(BlockUnitary::distance(sequence_unitary(seq, Generator::kSwap),
                                     sequence_unitary(merged, Generator::kSwap)),
              1e-12);
    EXPECT_EQ(merge_gates(merged), merged);
  }
}

TEST(Schedule, ReferenceSequences) {
  EXPECT_EQ(cnot_sequence().size(), 22u);
  EXPECT_EQ(schedule_time_steps(cnot_sequence()), 13);
  EXPECT_EQ(cnot_local_sequence().size(), 18u);
  EXPECT_EQ(schedule_time_steps(cnot_local_sequence()), 11);
  EXPECT_EQ(lro_sequence().size(), 30u);
  EXPECT_EQ(schedule_time_steps(lro_sequence()), 20);
}

TEST(Schedule, SmallCases) {
  EXPECT_EQ(schedule_time_steps(PulseSequence{}), 0);
  EXPECT_EQ(schedule_time_steps(PulseSequence{{{0, 0.1}, {2, 0.1}, {4, 0.1}}}), 1);
  EXPECT_EQ(schedule_time_steps(PulseSequence{{{0, 0.1}, {1, 0.1}}}), 2);
  // The third gate can start at step 0 because it overlaps neither earlier gate.
  const PulseSequence seq{{{0, 0.1}, {1, 0.1}, {3, 0.1}}};
  EXPECT_EQ(schedule_layers(seq), (std::vector<int>{0, 1, 0}));
}

TEST(Schedule, LayersRespectOverlaps) {
  std::mt19937_64 rng(4);
  const PulseSequence seq = random_sequence(rng, 40);
  const std::vector<int> layer = schedule_layers(seq);
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (pairs_overlap(seq.gates[i].pair, seq.gates[j].pair)) EXPECT_LT(layer[i], layer[j]);
}

// Reads the 2x2 action on an encoded qubit (vectors {1, 3} for gauge +½,
// {2, 4} for gauge -½), with the basis order given.
Eigen::Matrix2cd encoded_block(const Eigen::Matrix<Complex, 8, 8>& u, int first, int second) {
  Eigen::Matrix2cd m;
  m << u(first, first), u(first, second), u(second, first), u(second, second);
  return m;
}

TEST(SingleDfs, GateMatchesThreeQubitOracle) {
  const Eigen::MatrixXd v = dfs_change_of_basis();
  for (int pair : {0, 1})
    for (double p : {0.17, -0.6, 1.0}) {
      const Eigen::MatrixXcd dense = exchange_oracle(3, pair, pair + 1, p, Generator::kExchange);
      const Eigen::MatrixXcd want = v.cast<Complex>() * dense * v.transpose().cast<Complex>();
      EXPECT_LT((single_dfs_gate(pair, p) - want).norm(), 1e-12);
    }
}

TEST(SingleDfs, NoLeakageAndGaugeIndependence) {
  for (int pair : {0, 1})
    for (double p : {0.3, 0.77}) {
      const auto u = single_dfs_gate(pair, p);
      EXPECT_LT((u.block<4, 4>(0, 4).norm()), 1e-13);
      EXPECT_LT((u.block<4, 4>(4, 0).norm()), 1e-13);
      EXPECT_LT(std::abs(u(0, 1)) + std::abs(u(0, 3)) + std::abs(u(2, 1)) + std::abs(u(2, 3)), 1e-13);
      EXPECT_LT((encoded_block(u, 0, 2) - encoded_block(u, 1, 3)).norm(), 1e-13);
    }
}

TEST(SingleDfs, RotationAxes) {
  const double p = 0.4;
  const EncodedRotation r12 = encoded_rotation(encoded_block(single_dfs_gate(0, p), 0, 2));
  const EncodedRotation r23 = encoded_rotation(encoded_block(single_dfs_gate(1, p), 0, 2));
  EXPECT_NEAR(std::abs(r12.axis.z()), 1.0, 1e-12);
  EXPECT_NEAR(r12.angle, kPi * p, 1e-12);
  EXPECT_NEAR(r23.angle, kPi * p, 1e-12);
  EXPECT_NEAR(r12.axis.dot(r23.axis), -0.5, 1e-12);  // 120 degrees apart
  // With the encoded states listed as (S12 = 1, S12 = 0) the (q1, q2) axis is
  // +z and the (q2, q3) axis is (√3/2, 0, -½).
  const EncodedRotation f12 = encoded_rotation(encoded_block(single_dfs_gate(0, p), 2, 0));
  const EncodedRotation f23 = encoded_rotation(encoded_block(single_dfs_gate(1, p), 2, 0));
  EXPECT_LT((f12.axis - Eigen::Vector3d(0, 0, 1)).norm(), 1e-12);
  EXPECT_LT((f23.axis - Eigen::Vector3d(std::sqrt(3.0) / 2, 0, -0.5)).norm(), 1e-12);
}

TEST(SingleDfs, EncodedRotationReadout) {
  const Complex i{0.0, 1.0};
  const Eigen::Vector3d n = Eigen::Vector3d(1, -2, 2).normalized();
  const double theta = 1.1;
  Eigen::Matrix2cd sigma_n;
  sigma_n << n.z(), n.x() - i * n.y(), n.x() + i * n.y(), -n.z();
  const Eigen::Matrix2cd u =
      std::exp(i * 0.3) * (std::cos(theta / 2) * Eigen::Matrix2cd::Identity() - i * std::sin(theta / 2) * sigma_n);
  const EncodedRotation r = encoded_rotation(u);
  EXPECT_NEAR(r.angle, theta, 1e-12);
  EXPECT_LT((r.axis - n).norm(), 1e-12);
}

}  // namespace
}  // namespace dfs_forge
