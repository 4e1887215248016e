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

#ifndef DFS_FORGE_EXCHANGE_HPP
#define DFS_FORGE_EXCHANGE_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dfs_forge/am_basis.hpp"

namespace dfs_forge {

using Complex = std::complex<double>;
using Block5 = Eigen::Matrix<Complex, 5, 5>;
using Block9 = Eigen::Matrix<Complex, 9, 9>;

inline constexpr int kNumPairs = kNumQubits - 1;

/// Exchange pulse on the adjacent pair (pair, pair + 1) of layout positions.
struct PulseGate {
  int pair = 0;
  double power = 0.0;

  friend bool operator==(const PulseGate&, const PulseGate&) = default;
};

/// Gates in time order: gates.front() acts first.
struct PulseSequence {
  std::vector<PulseGate> gates;

  std::size_t size() const { return gates.size(); }
  bool empty() const { return gates.empty(); }
  /// Throws std::invalid_argument on a pair outside [0, 4] or a non-finite power.
  void validate() const;
  /// Inverse sequence: reversed order, negated powers.
  PulseSequence inverse() const;
  double total_power() const;

  friend bool operator==(const PulseSequence&, const PulseSequence&) = default;
};

/// Two pairs share a qubit iff they are equal or adjacent.
constexpr bool pairs_overlap(int a, int b) { return a - b <= 1 && b - a <= 1; }

enum class Generator {
  kExchange,  // H = ¼ σ·σ
  kSwap,      // H = ¼ σ·σ - ¼, a full pulse is SWAP including phase
};

/// Reduced form of an exchange-built 64x64 operator: the spin-0 block, the
/// S_tot=1, S_z=-1 block, the S_tot=2, S_z=-2 block and the spin-3 phase.
struct BlockUnitary {
  Block5 b0 = Block5::Identity();
  Block9 b1 = Block9::Identity();
  Block5 b2 = Block5::Identity();
  Complex b3_phase{1.0, 0.0};

  static BlockUnitary identity() { return {}; }
  BlockUnitary operator*(const BlockUnitary& rhs) const;
  BlockUnitary adjoint() const;
  /// Largest Frobenius deviation of any block from unitarity.
  double unitarity_error() const;
  /// Largest per-block Frobenius distance.
  static double distance(const BlockUnitary& a, const BlockUnitary& b);
};

/// H^ex_{m,n} = ¼(σx σx + σy σy + σz σz) on layout positions m, n.
Eigen::MatrixXcd exchange_hamiltonian(int m, int n);

/// exp(-iπ p H) for the given gate as a BlockUnitary, using the closed-form
/// two-eigenvalue spectral decomposition in each block.
BlockUnitary gate_unitary(const PulseGate& gate, Generator generator = Generator::kExchange);

/// U ← G·U (gate applied after the current product).
void apply_gate_left(BlockUnitary& u, const PulseGate& gate, Generator generator = Generator::kExchange);
/// U ← U·G (gate applied before the current product).
void apply_gate_right(BlockUnitary& u, const PulseGate& gate, Generator generator = Generator::kExchange);

/// Time-ordered product; the last gate is leftmost.
BlockUnitary sequence_unitary(const PulseSequence& seq, Generator generator = Generator::kExchange);

/// Dense 64x64 gate built by eigendecomposition of the Pauli-sum Hamiltonian.
Eigen::MatrixXcd full_gate_unitary(const PulseGate& gate, Generator generator = Generator::kExchange);
Eigen::MatrixXcd full_sequence_unitary(const PulseSequence& seq, Generator generator = Generator::kExchange);

/// V·U·Vᵀ in the total-angular-momentum basis.
Eigen::MatrixXcd to_tam_basis(const Eigen::MatrixXcd& u64);
/// Diagonal block of a TAM-basis matrix on the (S_tot, S_z,tot) sector.
Eigen::MatrixXcd sector_block(const Eigen::MatrixXcd& tam, HalfInteger s_tot, HalfInteger sz_tot);

/// Extracts the BlockUnitary of a computational-basis 64x64 operator.
/// Throws std::domain_error if any entry coupling different sectors exceeds
/// `leakage_tol`.
BlockUnitary blocks_from_full(const Eigen::MatrixXcd& u64, double leakage_tol = 1e-10);

/// Canonical power in (-1, 1].
double canonical_power(double power);

/// Merges same-pair gates separated only by gates on disjoint pairs, adding
/// powers. The merged gate takes the later position. Powers are canonicalized
/// and zero-power gates dropped; repeats until nothing changes.
PulseSequence merge_gates(const PulseSequence& seq);

/// Number of parallel time steps under greedy earliest-start scheduling.
int schedule_time_steps(const PulseSequence& seq);
/// Layer index of every gate under the same schedule.
std::vector<int> schedule_layers(const PulseSequence& seq);

/// exp(-iπ p H^ex) on one encoded block in the eight-vector basis; pair 0
/// couples (q1, q2), pair 1 couples (q2, q3).
Eigen::Matrix<Complex, 8, 8> single_dfs_gate(int pair, double power);

/// Rotation read off a 2x2 unitary u ∝ cos(θ/2) I - i sin(θ/2) n·σ with θ in [0, π].
struct EncodedRotation {
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  double angle = 0.0;
};
EncodedRotation encoded_rotation(const Eigen::Matrix2cd& u);

}  // namespace dfs_forge

#endif  // DFS_FORGE_EXCHANGE_HPP
