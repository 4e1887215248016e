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

#include "dfs_forge/am_basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace dfs_forge {

namespace {

constexpr HalfInteger kHalf = HalfInteger::half(1);
constexpr HalfInteger kThreeHalves = HalfInteger::half(3);

double factorial(int n) {
  static const std::array<double, 32> table = [] {
    std::array<double, 32> t{};
    t[0] = 1.0;
    for (int i = 1; i < 32; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0 || n >= static_cast<int>(table.size())) throw std::out_of_range("factorial argument out of range");
  return table[n];
}

void check_spin_pair(HalfInteger j, HalfInteger m, const char* what) {
  if (j.twice < 0) throw std::invalid_argument(std::string("negative spin in ") + what);
  if (std::abs(m.twice) > j.twice) throw std::invalid_argument(std::string("projection exceeds spin in ") + what);
  if ((j.twice - m.twice) % 2 != 0)
    throw std::invalid_argument(std::string("projection parity does not match spin in ") + what);
}

// Spin-½ projection of bit value b (0 = up).
constexpr HalfInteger bit_projection(int b) { return HalfInteger(b == 0 ? 1 : -1); }

int embed_dfs_index(int local, const std::array<int, 3>& positions) {
  int out = 0;
  for (int q = 0; q < 3; ++q)
    if ((local >> q) & 1) out |= 1 << positions[q];
  return out;
}

struct Multiplet {
  HalfInteger s_a, s_b, s_a12, s_b12;
};

std::vector<Multiplet> multiplets_for(HalfInteger s_tot) {
  std::vector<Multiplet> out;
  for (HalfInteger s_a : {kHalf, kThreeHalves})
    for (HalfInteger s_b : {kHalf, kThreeHalves})
      for (int a12 : {0, 1})
        for (int b12 : {0, 1}) {
          if (a12 == 0 && s_a != kHalf) continue;
          if (b12 == 0 && s_b != kHalf) continue;
          if (s_tot.twice < std::abs(s_a.twice - s_b.twice) || s_tot.twice > s_a.twice + s_b.twice) continue;
          out.push_back({s_a, s_b, HalfInteger::whole(a12), HalfInteger::whole(b12)});
        }
  return out;
}

// (S_tot, S_z,tot) in storage order; the first three match the printed tables.
std::vector<std::pair<int, int>> sector_order() {
  std::vector<std::pair<int, int>> order = {{0, 0}, {1, -1}, {2, -2}, {1, 0}, {1, 1}};
  for (int m = -1; m <= 2; ++m) order.emplace_back(2, m);
  for (int m = -3; m <= 3; ++m) order.emplace_back(3, m);
  return order;
}

}  // namespace

HalfInteger HalfInteger::from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("spin value is not finite");
  const double twice = 2.0 * value;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9) throw std::invalid_argument("spin value is not a multiple of 1/2");
  return HalfInteger(static_cast<int>(rounded));
}

std::string to_string(HalfInteger h) {
  if (h.is_integer()) return std::to_string(h.twice / 2);
  return std::to_string(h.twice) + "/2";
}

double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger big_j,
                      HalfInteger big_m) {
  check_spin_pair(j1, m1, "j1/m1");
  check_spin_pair(j2, m2, "j2/m2");
  check_spin_pair(big_j, big_m, "J/M");
  if (m1.twice + m2.twice != big_m.twice) return 0.0;
  if (big_j.twice < std::abs(j1.twice - j2.twice) || big_j.twice > j1.twice + j2.twice) return 0.0;
  if ((j1.twice + j2.twice + big_j.twice) % 2 != 0) return 0.0;

  const int tj1 = j1.twice, tj2 = j2.twice, tj = big_j.twice;
  const int tm1 = m1.twice, tm2 = m2.twice, tm = big_m.twice;

  const int a = (tj + tj1 - tj2) / 2;
  const int b = (tj - tj1 + tj2) / 2;
  const int c = (tj1 + tj2 - tj) / 2;
  const double triangle = (tj + 1) * factorial(a) * factorial(b) * factorial(c) / factorial((tj1 + tj2 + tj) / 2 + 1);
  const double projections = factorial((tj + tm) / 2) * factorial((tj - tm) / 2) * factorial((tj1 - tm1) / 2) *
                             factorial((tj1 + tm1) / 2) * factorial((tj2 - tm2) / 2) * factorial((tj2 + tm2) / 2);

  // Racah's single-sum formula.
  double sum = 0.0;
  for (int k = 0; k <= c; ++k) {
    const int d1 = c - k;
    const int d2 = (tj1 - tm1) / 2 - k;
    const int d3 = (tj2 + tm2) / 2 - k;
    const int d4 = (tj - tj2 + tm1) / 2 + k;
    const int d5 = (tj - tj1 - tm2) / 2 + k;
    if (d1 < 0 || d2 < 0 || d3 < 0 || d4 < 0 || d5 < 0) continue;
    const double term =
        1.0 / (factorial(k) * factorial(d1) * factorial(d2) * factorial(d3) * factorial(d4) * factorial(d5));
    sum += (k % 2 == 0) ? term : -term;
  }
  return std::sqrt(triangle * projections) * sum;
}

double clebsch_gordan(double j1, double m1, double j2, double m2, double big_j, double big_m) {
  return clebsch_gordan(HalfInteger::from_double(j1), HalfInteger::from_double(m1), HalfInteger::from_double(j2),
                        HalfInteger::from_double(m2), HalfInteger::from_double(big_j),
                        HalfInteger::from_double(big_m));
}

void QuantumNumbers::validate() const {
  auto is_half_or_three_halves = [](HalfInteger s) { return s == kHalf || s == kThreeHalves; };
  auto is_zero_or_one = [](HalfInteger s) { return s == HalfInteger::whole(0) || s == HalfInteger::whole(1); };
  if (!is_half_or_three_halves(s_a) || !is_half_or_three_halves(s_b))
    throw std::invalid_argument("encoded-block spin must be 1/2 or 3/2");
  if (!is_zero_or_one(s_a12) || !is_zero_or_one(s_b12)) throw std::invalid_argument("pair spin must be 0 or 1");
  if (s_a12.twice == 0 && s_a != kHalf) throw std::invalid_argument("S_A12 = 0 requires S_A = 1/2");
  if (s_b12.twice == 0 && s_b != kHalf) throw std::invalid_argument("S_B12 = 0 requires S_B = 1/2");
  if (s_tot.twice < std::abs(s_a.twice - s_b.twice) || s_tot.twice > s_a.twice + s_b.twice)
    throw std::invalid_argument("S_tot violates the triangle rule");
  if (std::abs(sz_tot.twice) > s_tot.twice || (s_tot.twice - sz_tot.twice) % 2 != 0)
    throw std::invalid_argument("S_z,tot inconsistent with S_tot");
}

void DfsState::validate(double tol) const {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > tol)
    throw std::invalid_argument("encoded amplitudes are not normalized");
  if (std::abs(std::norm(gamma) + std::norm(delta) - 1.0) > tol)
    throw std::invalid_argument("gauge amplitudes are not normalized");
}

Eigen::VectorXcd DfsState::computational_amplitudes() const {
  validate();
  const Eigen::MatrixXd v = dfs_change_of_basis();
  return alpha * (gamma * v.row(0).transpose().cast<std::complex<double>>() +
                  delta * v.row(1).transpose().cast<std::complex<double>>()) +
         beta * (gamma * v.row(2).transpose().cast<std::complex<double>>() +
                 delta * v.row(3).transpose().cast<std::complex<double>>());
}

int dfs_ket_index(std::string_view ket) {
  if (ket.size() != 3) throw std::invalid_argument("three-qubit ket must have 3 characters");
  int index = 0;
  for (int q = 0; q < 3; ++q) {
    if (ket[q] != '0' && ket[q] != '1') throw std::invalid_argument("ket characters must be 0 or 1");
    if (ket[q] == '1') index |= 1 << q;
  }
  return index;
}

int layout_ket_index(std::string_view ket) {
  if (ket.size() != kNumQubits) throw std::invalid_argument("six-qubit ket must have 6 characters");
  int index = 0;
  for (int q = 0; q < kNumQubits; ++q) {
    if (ket[q] != '0' && ket[q] != '1') throw std::invalid_argument("ket characters must be 0 or 1");
    if (ket[q] == '1') index |= 1 << q;
  }
  return index;
}

Eigen::VectorXd dfs_coupled_state(HalfInteger s, HalfInteger s12, HalfInteger m) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(8);
  for (int index = 0; index < 8; ++index) {
    const HalfInteger m1 = bit_projection(index & 1);
    const HalfInteger m2 = bit_projection((index >> 1) & 1);
    const HalfInteger m3 = bit_projection((index >> 2) & 1);
    const HalfInteger m12 = m1 + m2;
    if (std::abs(m12.twice) > s12.twice) continue;
    const double pair = clebsch_gordan(kHalf, m1, kHalf, m2, s12, m12);
    if (pair == 0.0) continue;
    if (std::abs(m.twice) > s.twice) continue;
    out[index] = pair * clebsch_gordan(s12, m12, kHalf, m3, s, m);
  }
  return out;
}

std::vector<DfsBasisVector> build_dfs_basis() {
  const std::array<DfsQuantumNumbers, 8> labels = {{
      {kHalf, HalfInteger::whole(0), HalfInteger(1)},
      {kHalf, HalfInteger::whole(0), HalfInteger(-1)},
      {kHalf, HalfInteger::whole(1), HalfInteger(1)},
      {kHalf, HalfInteger::whole(1), HalfInteger(-1)},
      {kThreeHalves, HalfInteger::whole(1), HalfInteger(3)},
      {kThreeHalves, HalfInteger::whole(1), HalfInteger(1)},
      {kThreeHalves, HalfInteger::whole(1), HalfInteger(-1)},
      {kThreeHalves, HalfInteger::whole(1), HalfInteger(-3)},
  }};
  std::vector<DfsBasisVector> out;
  out.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    out.push_back({static_cast<int>(i) + 1, labels[i], dfs_coupled_state(labels[i].s, labels[i].s12, labels[i].sz)});
  return out;
}

std::vector<Sector> six_qubit_sectors() {
  std::vector<Sector> out;
  int offset = 0;
  for (auto [s, m] : sector_order()) {
    const int size = static_cast<int>(multiplets_for(HalfInteger::whole(s)).size());
    out.push_back({HalfInteger::whole(s), HalfInteger::whole(m), offset, size});
    offset += size;
  }
  return out;
}

std::vector<BasisVector> build_six_qubit_basis() {
  std::vector<BasisVector> out;
  out.reserve(kDim);
  for (const Sector& sector : six_qubit_sectors()) {
    for (const Multiplet& mult : multiplets_for(sector.s_tot)) {
      QuantumNumbers labels{sector.s_tot, sector.sz_tot, mult.s_a, mult.s_b, mult.s_a12, mult.s_b12};
      labels.validate();
      Eigen::VectorXd amplitudes = Eigen::VectorXd::Zero(kDim);
      for (int tma = -mult.s_a.twice; tma <= mult.s_a.twice; tma += 2) {
        const HalfInteger ma(tma);
        const HalfInteger mb = sector.sz_tot - ma;
        if (std::abs(mb.twice) > mult.s_b.twice) continue;
        const double coupling = clebsch_gordan(mult.s_b, mb, mult.s_a, ma, sector.s_tot, sector.sz_tot);
        if (coupling == 0.0) continue;
        const Eigen::VectorXd a = dfs_coupled_state(mult.s_a, mult.s_a12, ma);
        const Eigen::VectorXd b = dfs_coupled_state(mult.s_b, mult.s_b12, mb);
        for (int i = 0; i < 8; ++i) {
          if (a[i] == 0.0) continue;
          const int ia = embed_dfs_index(i, kDfsAPositions);
          for (int j = 0; j < 8; ++j) {
            if (b[j] == 0.0) continue;
            amplitudes[ia | embed_dfs_index(j, kDfsBCouplingPositions)] += coupling * a[i] * b[j];
          }
        }
      }
      out.push_back({static_cast<int>(out.size()) + 1, labels, std::move(amplitudes)});
    }
  }
  return out;
}

Eigen::MatrixXd change_of_basis() {
  const auto vectors = build_six_qubit_basis();
  Eigen::MatrixXd v(kDim, kDim);
  for (int i = 0; i < kDim; ++i) v.row(i) = vectors[i].amplitudes.transpose();
  return v;
}

Eigen::MatrixXd dfs_change_of_basis() {
  const auto vectors = build_dfs_basis();
  Eigen::MatrixXd v(8, 8);
  for (int i = 0; i < 8; ++i) v.row(i) = vectors[i].amplitudes.transpose();
  return v;
}

const Sector& TamBasis::sector(HalfInteger s_tot, HalfInteger sz_tot) const {
  for (const Sector& s : sectors)
    if (s.s_tot == s_tot && s.sz_tot == sz_tot) return s;
  throw std::invalid_argument("no such (S_tot, S_z,tot) sector");
}

const TamBasis& tam_basis() {
  static const TamBasis basis = [] {
    TamBasis b;
    b.vectors = build_six_qubit_basis();
    b.sectors = six_qubit_sectors();
    b.change.resize(kDim, kDim);
    for (int i = 0; i < kDim; ++i) b.change.row(i) = b.vectors[i].amplitudes.transpose();
    return b;
  }();
  return basis;
}

Eigen::MatrixXcd pauli_operator(int num_qubits, int qubit, char axis) {
  if (num_qubits < 1 || num_qubits > 12) throw std::invalid_argument("unsupported qubit count");
  if (qubit < 0 || qubit >= num_qubits) throw std::invalid_argument("qubit index out of range");
  const int dim = 1 << num_qubits;
  const std::complex<double> i_unit(0.0, 1.0);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const int bit = (col >> qubit) & 1;
    switch (axis) {
      case 'x':
        out(col ^ (1 << qubit), col) = 1.0;
        break;
      case 'y':
        out(col ^ (1 << qubit), col) = bit == 0 ? i_unit : -i_unit;
        break;
      case 'z':
        out(col, col) = bit == 0 ? 1.0 : -1.0;
        break;
      default:
        throw std::invalid_argument("Pauli axis must be x, y or z");
    }
  }
  return out;
}

Eigen::MatrixXcd spin_squared_operator(int num_qubits, std::span<const int> qubits) {
  const int dim = 1 << num_qubits;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (char axis : {'x', 'y', 'z'}) {
    Eigen::MatrixXcd component = Eigen::MatrixXcd::Zero(dim, dim);
    for (int q : qubits) component += 0.5 * pauli_operator(num_qubits, q, axis);
    out += component * component;
  }
  return out;
}

Eigen::MatrixXcd spin_z_operator(int num_qubits, std::span<const int> qubits) {
  const int dim = 1 << num_qubits;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int q : qubits) out += 0.5 * pauli_operator(num_qubits, q, 'z');
  return out;
}

}  // namespace dfs_forge
