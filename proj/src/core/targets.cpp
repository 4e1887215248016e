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

#include "dfs_forge/targets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dfs_forge {

namespace {

constexpr Complex kI{0.0, 1.0};

// 1 - |z| for z = ¼ tr(Pᵀ X), X the leading 4x4 block of a unitary block and
// P the CNOT permutation. Equals (‖X - e^{i arg z} P‖² + ‖leakage‖²) / 8,
// where leakage is the rest of the first four columns.
template <typename Block>
double cnot_defect(const Block& u) {
  const Complex z = 0.25 * (u(0, 0) + u(1, 1) + u(2, 3) + u(3, 2));
  const Complex phase = std::abs(z) > 0.0 ? z / std::abs(z) : Complex{1.0, 0.0};
  double sum = 0.0;
  for (int c = 0; c < 4; ++c) {
    for (int r = 0; r < u.rows(); ++r) {
      Complex target{0.0, 0.0};
      if (r < 4) {
        const int image = c < 2 ? c : 5 - c;  // 0->0, 1->1, 2->3, 3->2
        if (r == image) target = phase;
      }
      sum += std::norm(u(r, c) - target);
    }
  }
  return sum / 8.0;
}

template <typename Block>
Complex cnot_trace(const Block& u) {
  return u(0, 0) + u(1, 1) + u(2, 3) + u(3, 2);
}

Eigen::Matrix2cd sub2(const Eigen::Ref<const Eigen::MatrixXcd>& m, std::array<int, 2> rows, std::array<int, 2> cols) {
  Eigen::Matrix2cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

Eigen::Matrix3cd sub3(const Eigen::Ref<const Eigen::MatrixXcd>& m, std::array<int, 3> rows, std::array<int, 3> cols) {
  Eigen::Matrix3cd out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

// Unitary polar factor of a 2x2 matrix; identity for a zero matrix.
Eigen::Matrix2cd polar_unitary(const Eigen::Matrix2cd& m) {
  if (m.norm() == 0.0) return Eigen::Matrix2cd::Identity();
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

struct LroTerms {
  double d = 0.0;
  double e = 0.0;
  double h = 0.0;
};

LroTerms lro_terms(const LroParts& p) {
  const Eigen::Matrix2cd ds = p.d1 + p.d2;
  const Eigen::Matrix3cd es = p.e1 + p.e2;
  return {(0.25 * ds.adjoint() * ds - Eigen::Matrix2cd::Identity()).norm(),
          (0.25 * es.adjoint() * es - Eigen::Matrix3cd::Identity()).norm(),
          (p.h.adjoint() * p.h - Eigen::Matrix2cd::Identity()).norm()};
}

template <typename M>
double max_abs_entry(const M& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename A, typename B>
double max_modulus_gap(const A& a, const B& b) {
  return (a.cwiseAbs() - b.cwiseAbs()).cwiseAbs().maxCoeff();
}

// Largest modulus over the listed (row, col) entries of `m`.
template <typename M>
double max_over(const M& m, std::initializer_list<int> rows, std::initializer_list<int> cols) {
  double out = 0.0;
  for (int r : rows)
    for (int c : cols) out = std::max(out, std::abs(m(r, c)));
  return out;
}

void add_check(VerifyReport& report, std::string name, double residual, double tol, bool required = true) {
  report.checks.push_back({std::move(name), residual, tol, residual < tol, required});
}

void finalize(VerifyReport& report) {
  report.pass = report.objective < report.tolerance;
  for (const CheckResult& c : report.checks)
    if (c.required && !c.pass) report.pass = false;
}

}  // namespace

std::string_view to_string(Target target) { return target == Target::kCnot ? "cnot" : "lro"; }

Target parse_target(std::string_view name) {
  if (name == "cnot") return Target::kCnot;
  if (name == "lro") return Target::kLro;
  throw std::invalid_argument("unknown target '" + std::string(name) + "' (expected cnot or lro)");
}

double f_cnot(const BlockUnitary& u) {
  return std::sqrt(std::max(0.0, cnot_defect(u.b0) + cnot_defect(u.b1)));
}

double f_cnot_direct(const BlockUnitary& u) {
  const double value = 2.0 - 0.25 * std::abs(cnot_trace(u.b0)) - 0.25 * std::abs(cnot_trace(u.b1));
  return std::sqrt(std::max(0.0, value));
}

LroParts lro_parts(const BlockUnitary& u, bool constrain_f_equals_h) {
  LroParts p;
  p.d1 = u.b0.block<2, 2>(0, 0);
  p.d2 = u.b0.block<2, 2>(2, 2);
  p.l1 = sub2(u.b1, {0, 2}, {6, 7});
  p.l2 = sub2(u.b1, {1, 3}, {6, 7});
  p.l3 = sub2(u.b1, {4, 5}, {6, 7});
  p.h = u.b2.block<2, 2>(0, 2);
  Eigen::Matrix2cd f = p.h;
  if (!constrain_f_equals_h) {
    // Any unitary f shared by the three L blocks: take the polar factor of
    // the largest one.
    const Eigen::Matrix2cd* largest = &p.l1;
    if (p.l2.norm() > largest->norm()) largest = &p.l2;
    if (p.l3.norm() > largest->norm()) largest = &p.l3;
    f = polar_unitary(*largest);
  }
  p.m1 = f.adjoint() * p.l1;
  p.m2 = f.adjoint() * p.l2;
  p.m3 = f.adjoint() * p.l3;
  const auto& b = u.b1;
  p.e1 << b(0, 0), b(0, 1), p.m1(0, 0),  //
      b(1, 0), b(1, 1), p.m2(0, 0),      //
      b(4, 0), b(4, 1), p.m3(0, 0);
  p.e2 << b(2, 2), b(2, 3), p.m1(1, 1),  //
      b(3, 2), b(3, 3), p.m2(1, 1),      //
      b(5, 2), b(5, 3), p.m3(1, 1);
  return p;
}

double f_lro(const BlockUnitary& u, bool constrain_f_equals_h) {
  const LroTerms t = lro_terms(lro_parts(u, constrain_f_equals_h));
  return t.d + t.e + t.h;
}

double objective(Target target, const BlockUnitary& u, bool constrain_f_equals_h) {
  return target == Target::kCnot ? f_cnot(u) : f_lro(u, constrain_f_equals_h);
}

double smooth_objective(Target target, const BlockUnitary& u, bool constrain_f_equals_h) {
  if (target == Target::kCnot) return cnot_defect(u.b0) + cnot_defect(u.b1);
  const LroTerms t = lro_terms(lro_parts(u, constrain_f_equals_h));
  return t.d * t.d + t.e * t.e + t.h * t.h;
}

Eigen::Matrix4cd cnot_matrix() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

MakhlinInvariants makhlin_invariants(const Eigen::Matrix4cd& u, double unitarity_tol) {
  const double err = (u.adjoint() * u - Eigen::Matrix4cd::Identity()).norm();
  if (!(err <= unitarity_tol))
    throw std::invalid_argument("makhlin_invariants: input is not unitary (deviation " + std::to_string(err) + ")");
  const double s = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix4cd q;
  q << s, 0, 0, s * kI,  //
      0, s * kI, s, 0,   //
      0, s * kI, -s, 0,  //
      s, 0, 0, -s * kI;
  const Eigen::Matrix4cd ub = q.adjoint() * u * q;
  const Eigen::Matrix4cd m = ub.transpose() * ub;
  const Complex det = u.determinant();
  const Complex tr = m.trace();
  const Complex tr2 = (m * m).trace();
  MakhlinInvariants out;
  out.g1 = tr * tr / (16.0 * det);
  out.g2 = ((tr * tr - tr2) / (4.0 * det)).real();
  return out;
}

const CheckResult& VerifyReport::check(std::string_view name) const {
  for (const CheckResult& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no check named '" + std::string(name) + "'");
}

Block5 cnot_spin0_solution() {
  Block5 p = Block5::Zero();
  p(0, 0) = p(1, 1) = p(2, 3) = p(3, 2) = 1.0;
  p(4, 4) = -1.0;
  return p;
}

Block9 cnot_spin1_solution() {
  const double r3 = std::sqrt(3.0), r5 = std::sqrt(5.0), r15 = std::sqrt(15.0);
  Block9 p = Block9::Zero();
  p(0, 0) = p(1, 1) = p(2, 3) = p(3, 2) = 1.0;
  const double c[5][5] = {{-11.0 / 16, -5 * r3 / 16, 0, 0, -r15 / 8},
                          {-5 * r3 / 16, -1.0 / 16, 0, 0, 3 * r5 / 8},
                          {0, 0, 0, 1, 0},
                          {0, 0, 1, 0, 0},
                          {-r15 / 8, 3 * r5 / 8, 0, 0, -0.25}};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) p(4 + i, 4 + j) = c[i][j];
  return p;
}

LroSolution lro_solution() {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r5 = std::sqrt(5.0);
  const Complex d12 = (1.0 / 6) * kI * (kI + r2) * (3.0 * kI + r3);
  const Complex d21 = std::polar(1.0, 5.0 * std::numbers::pi / 6.0);
  const Complex g12 = std::sqrt(Complex(-7.0 / 12, r2 / 3));
  LroSolution s;
  s.d << 0, d12, d21, 0;
  s.e << 0, d12, 0,                               //
      (1.0 / 6) * (-kI + r3), 0, -2 * r2 / 3,     //
      (r2 / 3) * (-kI + r3), 0, 1.0 / 3;
  s.f << (1.0 / 12) * (-kI + 2 * r2) * (3.0 * kI + r3), (1.0 / 12) * (1.0 - kI * r2) * (3.0 * kI + r3),
      0.25 * (-kI + r3), -0.25 * (-kI + r2) * (-kI + r3);
  s.h = s.f;
  s.g << -0.5, g12, 0,                                                   //
      std::sqrt(Complex(-7.0 / 972, -r2 / 243)), 1.0 / 18, -4 * r5 / 9,  //
      -std::sqrt(Complex(-140.0 / 243, -80 * r2 / 243)), -2 * r5 / 9, -1.0 / 9;
  s.k << 0.5, -g12, 0,                                 //
      -std::sqrt(Complex(-7.0 / 12, -r2 / 3)), -0.5, 0,  //
      0, 0, -1;
  return s;
}

LocalEquivalence cnot_local_equivalence(const BlockUnitary& u, double tol) {
  LocalEquivalence le;
  le.decoupling_residual = std::max({max_abs_entry(u.b0.block<4, 1>(0, 4)), max_abs_entry(u.b0.block<1, 4>(4, 0)),
                                     max_abs_entry(u.b1.block<4, 5>(0, 4)), max_abs_entry(u.b1.block<5, 4>(4, 0))});
  le.reference = makhlin_invariants(cnot_matrix());
  // Invariants of a leaky block are still defined; the decoupling residual
  // decides whether they mean anything.
  const double any = std::numeric_limits<double>::infinity();
  le.spin0 = makhlin_invariants(u.b0.block<4, 4>(0, 0), any);
  le.spin1 = makhlin_invariants(u.b1.block<4, 4>(0, 0), any);
  le.invariant_residual = std::max({std::abs(le.spin0.g1 - le.reference.g1), std::abs(le.spin0.g2 - le.reference.g2),
                                    std::abs(le.spin1.g1 - le.reference.g1), std::abs(le.spin1.g2 - le.reference.g2)});
  le.pass = le.decoupling_residual < tol && le.invariant_residual < tol;
  return le;
}

VerifyReport verify_cnot(const PulseSequence& seq, double tol) {
  seq.validate();
  const BlockUnitary u = sequence_unitary(seq, Generator::kSwap);
  VerifyReport r;
  r.target = Target::kCnot;
  r.tolerance = tol;
  r.pulses = seq.size();
  r.time_steps = schedule_time_steps(seq);
  r.objective = f_cnot(u);
  add_check(r, "objective", r.objective, tol);

  const Block5 p0 = cnot_spin0_solution();
  const Block9 p1 = cnot_spin1_solution();
  add_check(r, "spin0_modulus", max_modulus_gap(u.b0, p0), tol);
  add_check(r, "spin1_unleaked_modulus", max_modulus_gap(u.b1.block<4, 4>(0, 0), p1.block<4, 4>(0, 0)), tol);
  add_check(r, "leak_coupling",
            std::max({max_abs_entry(u.b0.block<4, 1>(0, 4)), max_abs_entry(u.b0.block<1, 4>(4, 0)),
                      max_abs_entry(u.b1.block<4, 5>(0, 4)), max_abs_entry(u.b1.block<5, 4>(4, 0))}),
            tol);
  add_check(r, "phase_agreement", std::abs(std::arg(u.b0(0, 0) * std::conj(u.b1(0, 0)))), tol);
  add_check(r, "spin1_leaked_modulus", max_modulus_gap(u.b1.block<5, 5>(4, 4), p1.block<5, 5>(4, 4)), tol, false);
  const double theta = std::arg(u.b0(0, 0));
  const Complex unphase = std::polar(1.0, -theta);
  add_check(r, "signed_match", std::max(max_abs_entry(u.b0 * unphase - p0), max_abs_entry(u.b1 * unphase - p1)), tol,
            false);

  r.phases["theta_c"] = theta;
  r.phases["phi_spin0_fifth"] = std::arg(u.b0(4, 4));
  r.blocks["c"] = u.b1.block<5, 5>(4, 4);
  r.blocks["spin0"] = u.b0;
  r.blocks["spin1"] = u.b1;
  r.local_equivalence = cnot_local_equivalence(u, tol);
  finalize(r);
  return r;
}

VerifyReport verify_lro(const PulseSequence& seq, double tol, bool constrain_f_equals_h) {
  seq.validate();
  const BlockUnitary u = sequence_unitary(seq, Generator::kSwap);
  VerifyReport r;
  r.target = Target::kLro;
  r.tolerance = tol;
  r.pulses = seq.size();
  r.time_steps = schedule_time_steps(seq);
  r.objective = f_lro(u, constrain_f_equals_h);
  add_check(r, "objective", r.objective, tol);

  const Block5& b0 = u.b0;
  const Block9& b1 = u.b1;
  const Block5& b2 = u.b2;
  const LroParts p = lro_parts(u, constrain_f_equals_h);

  add_check(r, "spin0_pattern",
            std::max({max_over(b0, {0, 1}, {2, 3, 4}), max_over(b0, {2, 3}, {0, 1, 4}), max_over(b0, {4}, {0, 1, 2, 3})}),
            tol);
  add_check(r, "spin0_d_repeat", max_abs_entry(p.d1 - p.d2), tol);
  add_check(r, "spin0_fifth_modulus", std::abs(std::abs(b0(4, 4)) - 1.0), tol);
  add_check(r, "spin1_pattern",
            std::max({max_over(b1, {0, 1, 2, 3, 4, 5}, {4, 5, 8}), max_over(b1, {6, 7, 8}, {0, 1, 2, 3}),
                      max_over(b1, {0, 1, 4}, {2, 3}), max_over(b1, {2, 3, 5}, {0, 1})}),
            tol);
  add_check(r, "leaked_columns_repaired", max_over(b1, {6, 7, 8}, {6, 7}), tol);
  add_check(r, "spin1_e_repeat",
            std::max(max_abs_entry(b1.block<2, 2>(0, 0) - b1.block<2, 2>(2, 2)),
                     max_abs_entry(b1.block<1, 2>(4, 0) - b1.block<1, 2>(5, 2))),
            tol);
  {
    // L(j) = e_j3 · f for one common unitary f (f = H under the constraint)
    // is equivalent to every M(j) being a multiple of the identity.
    double res = 0.0;
    for (const Eigen::Matrix2cd* m : {&p.m1, &p.m2, &p.m3})
      res = std::max(res, max_abs_entry(*m - (*m)(0, 0) * Eigen::Matrix2cd::Identity()));
    add_check(r, constrain_f_equals_h ? "f_equals_h" : "f_common", res, tol);
  }
  add_check(r, "spin2_pattern", std::max(max_over(b2, {0, 1}, {0, 1, 4}), max_over(b2, {2, 3, 4}, {2, 3})), tol);

  // Extracted blocks.
  const Eigen::Matrix2cd d = p.d1;
  const Eigen::Matrix3cd e = p.e1;
  int jmax = 0;
  for (int j = 1; j < 3; ++j)
    if (std::abs(e(j, 2)) > std::abs(e(jmax, 2))) jmax = j;
  const std::array<const Eigen::Matrix2cd*, 3> ls = {&p.l1, &p.l2, &p.l3};
  const Eigen::Matrix2cd f =
      std::abs(e(jmax, 2)) > 0.0 ? Eigen::Matrix2cd(*ls[jmax] / e(jmax, 2)) : Eigen::Matrix2cd::Zero();
  const Eigen::Matrix3cd g = sub3(b1, {6, 7, 8}, {4, 5, 8});
  const Eigen::Matrix2cd h = p.h;
  const Eigen::Matrix3cd k = sub3(b2, {2, 3, 4}, {0, 1, 4});
  r.blocks["d"] = d;
  r.blocks["e"] = e;
  r.blocks["f"] = f;
  r.blocks["g"] = g;
  r.blocks["h"] = h;
  r.blocks["k"] = k;
  r.phases["phi"] = std::arg(b0(4, 4));

  const LroSolution s = lro_solution();
  add_check(r, "solution_modulus",
            std::max({max_modulus_gap(d, s.d), max_modulus_gap(e, s.e), max_modulus_gap(f, s.f),
                      max_modulus_gap(g, s.g), max_modulus_gap(h, s.h), max_modulus_gap(k, s.k)}),
            tol, false);
  add_check(r, "signed_match",
            std::max({max_abs_entry(d - s.d), max_abs_entry(e - s.e), max_abs_entry(f - s.f), max_abs_entry(g - s.g),
                      max_abs_entry(h - s.h), max_abs_entry(k - s.k), std::abs(b0(4, 4) - 1.0)}),
            tol, false);
  add_check(r, "f_h_modulus", max_modulus_gap(f, h), tol, false);
  finalize(r);
  return r;
}

VerifyReport verify(Target target, const PulseSequence& seq, double tol, bool constrain_f_equals_h) {
  return target == Target::kCnot ? verify_cnot(seq, tol) : verify_lro(seq, tol, constrain_f_equals_h);
}

}  // namespace dfs_forge
