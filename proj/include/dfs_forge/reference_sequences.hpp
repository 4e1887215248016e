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

#ifndef DFS_FORGE_REFERENCE_SEQUENCES_HPP
#define DFS_FORGE_REFERENCE_SEQUENCES_HPP

#include "dfs_forge/exchange.hpp"

namespace dfs_forge {

// Closed-form powers used by the reference sequences.
double cnot_power_p1();  // arccos(-1/√3)/π
double cnot_power_p2();  // arcsin(1/3)/π
double lro_power_q1();   // arccos(1/3)/π
double lro_power_q2();   // arcsin(1/√3)/π

/// 22-pulse, 13-step encoded CNOT (A control, B target).
PulseSequence cnot_sequence();

/// cnot_sequence() without its four outer pulses on the target block; a
/// locally equivalent CNOT with 18 pulses in 11 steps.
PulseSequence cnot_local_sequence();

/// 30-pulse, 20-step leakage reduction of block A using fiducial block B.
PulseSequence lro_sequence();

}  // namespace dfs_forge

#endif  // DFS_FORGE_REFERENCE_SEQUENCES_HPP
