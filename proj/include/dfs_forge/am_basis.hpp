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

#ifndef DFS_FORGE_AM_BASIS_HPP
#define DFS_FORGE_AM_BASIS_HPP

#include <array>
#include <compare>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dfs_forge {

/// A spin or spin projection stored as twice its value, so ½ is exact.
struct HalfInteger {
  int twice = 0;

  constexpr HalfInteger() = default;
  constexpr explicit HalfInteger(int twice_value) : twice(twice_value) {}

  /// Throws std::invalid_argument unless `value` is a multiple of ½.
  static HalfInteger from_double(double value);
  static constexpr HalfInteger half(int numerator) { return HalfInteger(numerator); }
  static constexpr HalfInteger whole(int value) { return HalfInteger(2 * value); }

  constexpr double value() const { return 0.5 * twice; }
  constexpr bool is_integer() const { return twice % 2 == 0; }

  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;
  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return HalfInteger(a.twice + b.twice); }
  friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) { return HalfInteger(a.twice - b.twice); }
  constexpr HalfInteger operator-() const { return HalfInteger(-twice); }
};

std::string to_string(HalfInteger h);

/// ⟨j1 m1; j2 m2 | J M⟩ with the Condon-Shortley phase convention.
///
/// Returns 0 when M ≠ m1 + m2 or the triangle rule fails. Throws
/// std::invalid_argument for negative spins, projections outside [-j, j],
/// or projections whose parity does not match their spin.
double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger big_j,
                      HalfInteger big_m);

/// Floating-point convenience overload; arguments must be multiples of ½.
double clebsch_gordan(double j1, double m1, double j2, double m2, double big_j, double big_m);

// Physical layout of the two encoded qubits on the line:
//   position  0   1   2   3   4   5
//   qubit     A3  A2  A1  B1  B2  B3
// Computational index bit k is the state of layout position k; bit value 0
// is spin up (m = +½).
inline constexpr int kNumQubits = 6;
inline constexpr int kDim = 64;
inline constexpr std::array<const char*, kNumQubits> kLayoutNames = {"A3", "A2", "A1", "B1", "B2", "B3"};
/// Layout positions of (qubit 1, qubit 2, qubit 3) for each encoded qubit.
inline constexpr std::array<int, 3> kDfsAPositions = {2, 1, 0};
inline constexpr std::array<int, 3> kDfsBPositions = {3, 4, 5};
/// Positions used when coupling block B: (B2, B1) first, then B3.
inline constexpr std::array<int, 3> kDfsBCouplingPositions = {4, 3, 5};

/// Quantum numbers of one three-qubit encoded block: (S, S_{1,2}, S_z).
struct DfsQuantumNumbers {
  HalfInteger s;
  HalfInteger s12;
  HalfInteger sz;
  friend constexpr bool operator==(const DfsQuantumNumbers&, const DfsQuantumNumbers&) = default;
};

struct QuantumNumbers {
  HalfInteger s_tot;
  HalfInteger sz_tot;
  HalfInteger s_a;
  HalfInteger s_b;
  HalfInteger s_a12;
  HalfInteger s_b12;

  /// Throws std::invalid_argument if the labels violate the coupling rules.
  void validate() const;
  friend constexpr bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

/// Three-qubit basis vector; amplitudes index bit k = qubit k+1.
struct DfsBasisVector {
  int index = 0;  // 1-based
  DfsQuantumNumbers labels;
  Eigen::VectorXd amplitudes;  // length 8
};

/// Six-qubit total-angular-momentum basis vector.
struct BasisVector {
  int index = 0;  // 1-based
  QuantumNumbers labels;
  Eigen::VectorXd amplitudes;  // length 64, real under Condon-Shortley
};

/// Encoded-state amplitudes α, β and gauge amplitudes γ, δ.
struct DfsState {
  std::complex<double> alpha{1.0, 0.0};
  std::complex<double> beta{0.0, 0.0};
  std::complex<double> gamma{1.0, 0.0};
  std::complex<double> delta{0.0, 0.0};

  void validate(double tol = 1e-12) const;
  /// α(γ|1⟩+δ|2⟩) + β(γ|3⟩+δ|4⟩) in the three-qubit computational basis.
  Eigen::VectorXcd computational_amplitudes() const;
};

/// Index in the three-qubit computational basis of a ket written "q1q2q3".
int dfs_ket_index(std::string_view ket);
/// Index in the six-qubit computational basis of a ket written in layout order.
int layout_ket_index(std::string_view ket);

/// Spin state |S M⟩ of one encoded block built by coupling (q1, q2) to S12,
/// then adding q3. Amplitudes over the three-qubit computational basis.
Eigen::VectorXd dfs_coupled_state(HalfInteger s, HalfInteger s12, HalfInteger m);

/// The eight single-block basis vectors in the standard table order: S=½
/// vectors (S12, Sz) = (0,+½), (0,-½), (1,+½), (1,-½), then S=3/2 with Sz
/// descending from +3/2.
std::vector<DfsBasisVector> build_dfs_basis();

/// Sector of fixed (S_tot, S_z,tot) in the six-qubit basis ordering.
struct Sector {
  HalfInteger s_tot;
  HalfInteger sz_tot;
  int offset = 0;
  int size = 0;
};

/// The 64 labeled six-qubit vectors, built from Condon-Shortley coefficients
/// with the coupling order
///   block A: (A1, A2) -> S_A12, then A3 -> S_A
///   block B: (B2, B1) -> S_B12, then B3 -> S_B
///   total:   (S_B, S_A) -> S_tot
/// The order only fixes relative signs of basis vectors; it is the one under
/// which the reference CNOT reads as CNOT with a single common phase.
///
/// Indices 1-5 are the spin-0 sector, 6-14 the S_tot=1, S_z=-1 sector and
/// 15-19 the S_tot=2, S_z=-2 sector;
/// the remaining S_tot=1, 2 sectors follow in increasing S_z, then S_tot=3.
/// Inside a sector the order is lexicographic in (S_A, S_B, S_A12, S_B12).
std::vector<BasisVector> build_six_qubit_basis();

/// Sector table matching build_six_qubit_basis() ordering.
std::vector<Sector> six_qubit_sectors();

/// Rows are the basis vectors over the computational basis (real orthogonal).
Eigen::MatrixXd change_of_basis();

/// Cached, shared read-only copy of the six-qubit basis and its change of basis.
struct TamBasis {
  std::vector<BasisVector> vectors;
  std::vector<Sector> sectors;
  Eigen::MatrixXd change;  // 64x64, rows = vectors

  const Sector& sector(HalfInteger s_tot, HalfInteger sz_tot) const;
};
const TamBasis& tam_basis();

/// Rows are build_dfs_basis() vectors.
Eigen::MatrixXd dfs_change_of_basis();

// Spin operators on n qubits (bit k = qubit k, bit value 0 = up), built from
// Pauli matrices.
Eigen::MatrixXcd pauli_operator(int num_qubits, int qubit, char axis);
Eigen::MatrixXcd spin_squared_operator(int num_qubits, std::span<const int> qubits);
Eigen::MatrixXcd spin_z_operator(int num_qubits, std::span<const int> qubits);

}  // namespace dfs_forge

#endif  // DFS_FORGE_AM_BASIS_HPP
