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

#ifndef DFS_FORGE_TARGETS_HPP
#define DFS_FORGE_TARGETS_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dfs_forge/exchange.hpp"

namespace dfs_forge {

enum class Target { kCnot, kLro };

std::string_view to_string(Target target);
/// Accepts "cnot" or "lro"; throws std::invalid_argument otherwise.
Target parse_target(std::string_view name);

// Block indices below are 0-based: b0 rows/cols 0-4 hold basis vectors 1-5,
// b1 holds 6-14, b2 holds 15-19.

/// sqrt(2 - ¼|U11+U22+U34+U43| - ¼|U66+U77+U89+U98|), evaluated through the
/// equivalent sum-of-squares form so values near zero keep full precision.
double f_cnot(const BlockUnitary& u);
/// The same objective evaluated literally; loses precision below ~1e-8.
double f_cnot_direct(const BlockUnitary& u);

/// The matrices entering the leakage-reduction objective.
struct LroParts {
  Eigen::Matrix2cd d1, d2;
  Eigen::Matrix2cd l1, l2, l3;
  Eigen::Matrix2cd h;
  Eigen::Matrix2cd m1, m2, m3;  // H†·L(j)
  Eigen::Matrix3cd e1, e2;
};
/// With `constrain_f_equals_h` false, M(j) uses the unitary polar factor of
/// the largest L(j) in place of H, so the reset block f is left free.
LroParts lro_parts(const BlockUnitary& u, bool constrain_f_equals_h = true);

/// Sum of Frobenius norms of ¼(D1+D2)†(D1+D2) - I, ¼(E1+E2)†(E1+E2) - I and H†H - I.
double f_lro(const BlockUnitary& u, bool constrain_f_equals_h = true);

double objective(Target target, const BlockUnitary& u, bool constrain_f_equals_h = true);

/// A smooth function with the same zero set as objective(), used by the
/// local minimizers: f_cnot² for CNOT, the sum of squared norms for LRO.
double smooth_objective(Target target, const BlockUnitary& u, bool constrain_f_equals_h = true);

/// Local invariants of a two-qubit gate, computed in the magic basis.
struct MakhlinInvariants {
  Complex g1;
  double g2 = 0.0;
};

/// Throws std::invalid_argument if ‖U†U - I‖ exceeds `unitarity_tol`.
MakhlinInvariants makhlin_invariants(const Eigen::Matrix4cd& u, double unitarity_tol = 1e-8);

/// Standard CNOT with the first qubit as control, basis |c t⟩ = |00⟩,|01⟩,|10⟩,|11⟩.
Eigen::Matrix4cd cnot_matrix();

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  // Checks against one specific published solution are reported but do not
  // decide the overall verdict.
  bool required = true;
};

struct LocalEquivalence {
  MakhlinInvariants spin0;
  MakhlinInvariants spin1;
  MakhlinInvariants reference;  // of cnot_matrix()
  double decoupling_residual = 0.0;
  double invariant_residual = 0.0;
  bool pass = false;
};

struct VerifyReport {
  Target target = Target::kCnot;
  double objective = 0.0;
  double tolerance = 0.0;
  std::vector<CheckResult> checks;
  std::map<std::string, Eigen::MatrixXcd> blocks;
  std::map<std::string, double> phases;
  std::optional<LocalEquivalence> local_equivalence;
  std::size_t pulses = 0;
  int time_steps = 0;
  bool pass = false;

  const CheckResult& check(std::string_view name) const;
};

/// Closed-form reference blocks of the published solutions.
Block5 cnot_spin0_solution();
Block9 cnot_spin1_solution();
struct LroSolution {
  Eigen::Matrix2cd d, f, h;
  Eigen::Matrix3cd e, g, k;
};
LroSolution lro_solution();

/// Decoupling and CNOT invariants of the unleaked 4x4 blocks of b0 and b1.
LocalEquivalence cnot_local_equivalence(const BlockUnitary& u, double tol);

// Verification simulates with the swap generator, so reported phases are
// those of SWAP-normalized pulses; objectives do not depend on this.
VerifyReport verify_cnot(const PulseSequence& seq, double tol = 1e-10);
VerifyReport verify_lro(const PulseSequence& seq, double tol = 1e-10, bool constrain_f_equals_h = true);
VerifyReport verify(Target target, const PulseSequence& seq, double tol = 1e-10, bool constrain_f_equals_h = true);

}  // namespace dfs_forge

#endif  // DFS_FORGE_TARGETS_HPP
