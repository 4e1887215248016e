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

#include "dfs_forge/reference_sequences.hpp"

#include <cmath>
#include <numbers>

namespace dfs_forge {

namespace {
constexpr double kPi = std::numbers::pi;
// Pair indices on the A3 A2 A1 B1 B2 B3 line.
constexpr int kA3A2 = 0;
constexpr int kA2A1 = 1;
constexpr int kA1B1 = 2;
constexpr int kB1B2 = 3;
constexpr int kB2B3 = 4;
}  // namespace

double cnot_power_p1() { return std::acos(-1.0 / std::sqrt(3.0)) / kPi; }
double cnot_power_p2() { return std::asin(1.0 / 3.0) / kPi; }
double lro_power_q1() { return std::acos(1.0 / 3.0) / kPi; }
double lro_power_q2() { return std::asin(1.0 / std::sqrt(3.0)) / kPi; }

PulseSequence cnot_sequence() {
  const double p1 = cnot_power_p1();
  const double p2 = cnot_power_p2();
  // One line per time step.
  return PulseSequence{{
      {kB1B2, p1},
      {kA1B1, 0.5}, {kB2B3, p2},
      {kB1B2, 1.0},
      {kA1B1, -0.5}, {kB2B3, -0.5},
      {kA2A1, 1.0}, {kB1B2, -0.5},
      {kA1B1, -0.5}, {kB2B3, 1.0},
      {kA2A1, -0.5}, {kB1B2, 0.5},
      {kA1B1, -0.5}, {kB2B3, 1.0},
      {kA2A1, 1.0}, {kB1B2, -0.5},
      {kA1B1, -0.5}, {kB2B3, -0.5},
      {kB1B2, 1.0},
      {kA1B1, 0.5}, {kB2B3, 1.0 - p2},
      {kB1B2, -p1},
  }};
}

PulseSequence cnot_local_sequence() {
  PulseSequence full = cnot_sequence();
  PulseSequence out;
  const std::size_t n = full.size();
  for (std::size_t i = 0; i < n; ++i) {
    // Drop the p1, p2 pulses at the start and the 1-p2, -p1 pulses at the end.
    if (i == 0 || i == 2 || i == n - 2 || i == n - 1) continue;
    out.gates.push_back(full.gates[i]);
  }
  return out;
}

PulseSequence lro_sequence() {
  const double q1 = lro_power_q1();
  const double q2 = lro_power_q2();
  return PulseSequence{{
      {kA2A1, -q1},
      {kA3A2, q1 - 1.0}, {kA1B1, q1 - 1.0},
      {kB1B2, 2.0 / 3.0},
      {kA1B1, 1.0 - q1}, {kB2B3, 1.0 - q1},
      {kB1B2, -2.0 / 3.0},
      {kA1B1, q1 - 1.0}, {kB2B3, q2 - 1.0},
      {kA2A1, 1.0}, {kB1B2, 1.0 - q1},
      {kA3A2, -0.5}, {kA1B1, 0.5}, {kB2B3, 2.0 / 3.0},
      {kA2A1, 1.0},
      {kA3A2, 0.5}, {kA1B1, 0.5},
      {kB1B2, 1.0},
      {kA1B1, q1},
      {kA2A1, 1.0 - q1},
      {kA1B1, q1 - 1.0},
      {kA2A1, -q1}, {kB1B2, -0.5},
      {kA3A2, 1.0},
      {kA2A1, 0.5},
      {kA1B1, -0.5},
      {kA2A1, 1.0}, {kB1B2, 1.0},
      {kA3A2, q1}, {kA1B1, 0.5},
  }};
}

}  // namespace dfs_forge
