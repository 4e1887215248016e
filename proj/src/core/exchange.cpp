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

#include "dfs_forge/exchange.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dfs_forge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroPower = 1e-12;

// SWAP of one adjacent pair restricted to the three representative blocks.
struct PairSwapBlocks {
  Block5 s0;
  Block9 s1;
  Block5 s2;
};

const std::array<PairSwapBlocks, kNumPairs>& pair_swap_blocks() {
  static const std::array<PairSwapBlocks, kNumPairs> blocks = [] {
    const TamBasis& basis = tam_basis();
    const Sector& sec0 = basis.sector(HalfInteger::whole(0), HalfInteger::whole(0));
    const Sector& sec1 = basis.sector(HalfInteger::whole(1), HalfInteger::whole(-1));
    const Sector& sec2 = basis.sector(HalfInteger::whole(2), HalfInteger::whole(-2));
    std::array<PairSwapBlocks, kNumPairs> out;
    for (int pair = 0; pair < kNumPairs; ++pair) {
      Eigen::MatrixXd swap = Eigen::MatrixXd::Zero(kDim, kDim);
      for (int x = 0; x < kDim; ++x) {
        const int lo = (x >> pair) & 1;
        const int hi = (x >> (pair + 1)) & 1;
        int y = x & ~((1 << pair) | (1 << (pair + 1)));
        y |= (hi << pair) | (lo << (pair + 1));
        swap(y, x) = 1.0;
      }
      const Eigen::MatrixXd tam = basis.change * swap * basis.change.transpose();
      out[pair].s0 = tam.block(sec0.offset, sec0.offset, 5, 5).cast<Complex>();
      out[pair].s1 = tam.block(sec1.offset, sec1.offset, 9, 9).cast<Complex>();
      out[pair].s2 = tam.block(sec2.offset, sec2.offset, 5, 5).cast<Complex>();
    }
    return out;
  }();
  return blocks;
}

// exp(-iπpH) = α·I + β·SWAP on every pair; the spin-3 sector sees SWAP = 1.
struct GateCoefficients {
  Complex alpha;
  Complex beta;
  Complex spin3;
};

GateCoefficients gate_coefficients(double power, Generator generator) {
  const double theta = 0.5 * kPi * power;
  const double global = generator == Generator::kExchange ? 0.25 * kPi * power : 0.5 * kPi * power;
  const Complex phase = std::polar(1.0, global);
  return {phase * std::cos(theta), phase * Complex(0.0, -std::sin(theta)), phase * std::polar(1.0, -theta)};
}

void check_gate(const PulseGate& gate) {
  if (gate.pair < 0 || gate.pair >= kNumPairs)
    throw std::invalid_argument("gate pair " + std::to_string(gate.pair) + " outside [0, 4]");
  if (!std::isfinite(gate.power)) throw std::invalid_argument("gate power is not finite");
}

struct PairEigensystem {
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd values;
};

const std::array<PairEigensystem, kNumPairs>& pair_eigensystems() {
  static const std::array<PairEigensystem, kNumPairs> systems = [] {
    std::array<PairEigensystem, kNumPairs> out;
    for (int pair = 0; pair < kNumPairs; ++pair) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(exchange_hamiltonian(pair, pair + 1));
      out[pair] = {solver.eigenvectors(), solver.eigenvalues()};
    }
    return out;
  }();
  return systems;
}

std::vector<int> sector_ids() {
  std::vector<int> ids(kDim, -1);
  const auto& sectors = tam_basis().sectors;
  for (std::size_t s = 0; s < sectors.size(); ++s)
    for (int i = 0; i < sectors[s].size; ++i) ids[sectors[s].offset + i] = static_cast<int>(s);
  return ids;
}

Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& h, double power) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  Eigen::VectorXcd phases(solver.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::polar(1.0, -kPi * power * solver.eigenvalues()[i]);
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

void PulseSequence::validate() const {
  for (const PulseGate& g : gates) check_gate(g);
}

PulseSequence PulseSequence::inverse() const {
  PulseSequence out;
  out.gates.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) out.gates.push_back({it->pair, -it->power});
  return out;
}

double PulseSequence::total_power() const {
  double sum = 0.0;
  for (const PulseGate& g : gates) sum += g.power;
  return sum;
}

BlockUnitary BlockUnitary::operator*(const BlockUnitary& rhs) const {
  BlockUnitary out;
  out.b0 = b0 * rhs.b0;
  out.b1 = b1 * rhs.b1;
  out.b2 = b2 * rhs.b2;
  out.b3_phase = b3_phase * rhs.b3_phase;
  return out;
}

BlockUnitary BlockUnitary::adjoint() const {
  BlockUnitary out;
  out.b0 = b0.adjoint();
  out.b1 = b1.adjoint();
  out.b2 = b2.adjoint();
  out.b3_phase = std::conj(b3_phase);
  return out;
}

double BlockUnitary::unitarity_error() const {
  double err = (b0.adjoint() * b0 - Block5::Identity()).norm();
  err = std::max(err, (b1.adjoint() * b1 - Block9::Identity()).norm());
  err = std::max(err, (b2.adjoint() * b2 - Block5::Identity()).norm());
  return std::max(err, std::abs(std::abs(b3_phase) - 1.0));
}

double BlockUnitary::distance(const BlockUnitary& a, const BlockUnitary& b) {
  double d = (a.b0 - b.b0).norm();
  d = std::max(d, (a.b1 - b.b1).norm());
  d = std::max(d, (a.b2 - b.b2).norm());
  return std::max(d, std::abs(a.b3_phase - b.b3_phase));
}

Eigen::MatrixXcd exchange_hamiltonian(int m, int n) {
  if (m < 0 || m >= kNumQubits || n < 0 || n >= kNumQubits) throw std::invalid_argument("qubit index out of range");
  if (m == n) throw std::invalid_argument("exchange needs two distinct qubits");
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(kDim, kDim);
  for (char axis : {'x', 'y', 'z'}) h += pauli_operator(kNumQubits, m, axis) * pauli_operator(kNumQubits, n, axis);
  return 0.25 * h;
}

BlockUnitary gate_unitary(const PulseGate& gate, Generator generator) {
  BlockUnitary u;
  apply_gate_left(u, gate, generator);
  return u;
}

void apply_gate_left(BlockUnitary& u, const PulseGate& gate, Generator generator) {
  check_gate(gate);
  const PairSwapBlocks& s = pair_swap_blocks()[gate.pair];
  const GateCoefficients c = gate_coefficients(gate.power, generator);
  u.b0 = c.alpha * u.b0 + c.beta * (s.s0 * u.b0);
  u.b1 = c.alpha * u.b1 + c.beta * (s.s1 * u.b1);
  u.b2 = c.alpha * u.b2 + c.beta * (s.s2 * u.b2);
  u.b3_phase *= c.spin3;
}

void apply_gate_right(BlockUnitary& u, const PulseGate& gate, Generator generator) {
  check_gate(gate);
  const PairSwapBlocks& s = pair_swap_blocks()[gate.pair];
  const GateCoefficients c = gate_coefficients(gate.power, generator);
  u.b0 = c.alpha * u.b0 + c.beta * (u.b0 * s.s0);
  u.b1 = c.alpha * u.b1 + c.beta * (u.b1 * s.s1);
  u.b2 = c.alpha * u.b2 + c.beta * (u.b2 * s.s2);
  u.b3_phase *= c.spin3;
}

BlockUnitary sequence_unitary(const PulseSequence& seq, Generator generator) {
  BlockUnitary u;
  for (const PulseGate& g : seq.gates) apply_gate_left(u, g, generator);
  return u;
}

Eigen::MatrixXcd full_gate_unitary(const PulseGate& gate, Generator generator) {
  check_gate(gate);
  const PairEigensystem& sys = pair_eigensystems()[gate.pair];
  const double shift = generator == Generator::kSwap ? 0.25 : 0.0;
  Eigen::VectorXcd phases(sys.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases[i] = std::polar(1.0, -kPi * gate.power * (sys.values[i] - shift));
  return sys.vectors * phases.asDiagonal() * sys.vectors.adjoint();
}

Eigen::MatrixXcd full_sequence_unitary(const PulseSequence& seq, Generator generator) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(kDim, kDim);
  for (const PulseGate& g : seq.gates) u = full_gate_unitary(g, generator) * u;
  return u;
}

Eigen::MatrixXcd to_tam_basis(const Eigen::MatrixXcd& u64) {
  if (u64.rows() != kDim || u64.cols() != kDim) throw std::invalid_argument("expected a 64x64 matrix");
  const Eigen::MatrixXcd v = tam_basis().change.cast<Complex>();
  return v * u64 * v.transpose();
}

Eigen::MatrixXcd sector_block(const Eigen::MatrixXcd& tam, HalfInteger s_tot, HalfInteger sz_tot) {
  const Sector& s = tam_basis().sector(s_tot, sz_tot);
  return tam.block(s.offset, s.offset, s.size, s.size);
}

BlockUnitary blocks_from_full(const Eigen::MatrixXcd& u64, double leakage_tol) {
  const Eigen::MatrixXcd tam = to_tam_basis(u64);
  static const std::vector<int> ids = sector_ids();
  double leakage = 0.0;
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c)
      if (ids[r] != ids[c]) leakage = std::max(leakage, std::abs(tam(r, c)));
  if (leakage > leakage_tol)
    throw std::domain_error("operator couples different (S_tot, S_z,tot) sectors: leakage " + std::to_string(leakage));

  const TamBasis& basis = tam_basis();
  BlockUnitary out;
  out.b0 = sector_block(tam, HalfInteger::whole(0), HalfInteger::whole(0));
  out.b1 = sector_block(tam, HalfInteger::whole(1), HalfInteger::whole(-1));
  out.b2 = sector_block(tam, HalfInteger::whole(2), HalfInteger::whole(-2));
  const Sector& s3 = basis.sector(HalfInteger::whole(3), HalfInteger::whole(-3));
  out.b3_phase = tam(s3.offset, s3.offset);
  return out;
}

double canonical_power(double power) {
  double r = std::fmod(power, 2.0);
  if (r <= -1.0) r += 2.0;
  if (r > 1.0) r -= 2.0;
  return r;
}

PulseSequence merge_gates(const PulseSequence& seq) {
  seq.validate();
  std::vector<PulseGate> current;
  current.reserve(seq.size());
  for (const PulseGate& g : seq.gates) {
    const double p = canonical_power(g.power);
    if (std::abs(p) > kZeroPower) current.push_back({g.pair, p});
  }

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<PulseGate> out;
    out.reserve(current.size());
    for (const PulseGate& g : current) {
      bool merged = false;
      for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(out.size()) - 1; j >= 0; --j) {
        if (out[j].pair == g.pair) {
          const double p = canonical_power(out[j].power + g.power);
          out.erase(out.begin() + j);
          if (std::abs(p) > kZeroPower) out.push_back({g.pair, p});
          merged = true;
          break;
        }
        if (pairs_overlap(out[j].pair, g.pair)) break;
      }
      if (merged)
        changed = true;
      else
        out.push_back(g);
    }
    current = std::move(out);
  }
  return PulseSequence{std::move(current)};
}

std::vector<int> schedule_layers(const PulseSequence& seq) {
  seq.validate();
  std::array<int, kNumQubits> last{};
  last.fill(-1);
  std::vector<int> layers;
  layers.reserve(seq.size());
  for (const PulseGate& g : seq.gates) {
    const int t = std::max(last[g.pair], last[g.pair + 1]) + 1;
    last[g.pair] = last[g.pair + 1] = t;
    layers.push_back(t);
  }
  return layers;
}

int schedule_time_steps(const PulseSequence& seq) {
  const std::vector<int> layers = schedule_layers(seq);
  return layers.empty() ? 0 : *std::max_element(layers.begin(), layers.end()) + 1;
}

Eigen::Matrix<Complex, 8, 8> single_dfs_gate(int pair, double power) {
  if (pair != 0 && pair != 1) throw std::invalid_argument("single-block pair must be 0 (q1,q2) or 1 (q2,q3)");
  if (!std::isfinite(power)) throw std::invalid_argument("gate power is not finite");
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(8, 8);
  for (char axis : {'x', 'y', 'z'}) h += pauli_operator(3, pair, axis) * pauli_operator(3, pair + 1, axis);
  h *= 0.25;
  const Eigen::MatrixXcd v = dfs_change_of_basis().cast<Complex>();
  return v * expm_hermitian(h, power) * v.transpose();
}

EncodedRotation encoded_rotation(const Eigen::Matrix2cd& u) {
  const Complex det = u.determinant();
  if (std::abs(det) < 1e-12) throw std::invalid_argument("singular 2x2 matrix");
  Eigen::Matrix2cd su = u / std::sqrt(det);
  const Complex i_unit(0.0, 1.0);
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -i_unit, i_unit, 0;
  sz << 1, 0, 0, -1;
  double a0 = 0.5 * su.trace().real();
  Eigen::Vector3d a(0.5 * (i_unit * (su * sx).trace()).real(), 0.5 * (i_unit * (su * sy).trace()).real(),
                    0.5 * (i_unit * (su * sz).trace()).real());
  if (a0 < 0.0) {
    a0 = -a0;
    a = -a;
  }
  EncodedRotation out;
  out.angle = 2.0 * std::acos(std::clamp(a0, -1.0, 1.0));
  if (a.norm() > 1e-14) out.axis = a.normalized();
  return out;
}

}  // namespace dfs_forge
