// Copyright 2026 The QLBM Authors
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

#pragma once

#include <span>
#include <vector>

#include "qlbm/gate.hpp"

namespace qlbm {

enum class RotationAxis { Y, Z };

// Rotation of `target` by angles[c], where c spells the control values
// (controls[0] least significant). Gray-code form: 2^k rotations and 2^k
// CNOTs for k >= 1 controls, one bare rotation for k = 0.
std::vector<GateOp> uniformly_controlled_rotation(RotationAxis axis, int target,
                                                  std::span<const int> controls,
                                                  std::span<const double> angles);

// Basis-gate form of diag(exp(i phases)) over `targets`, up to global phase:
// peel the top qubit as a uniformly controlled RZ and recurse. Costs
// 2^n - 2 CNOTs for n targets.
std::vector<GateOp> diagonal_gates(std::span<const int> targets, std::span<const double> phases);

}  // namespace qlbm
