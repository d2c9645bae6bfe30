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

#include <Eigen/Dense>

#include "qlbm/circuit.hpp"

namespace qlbm {

inline constexpr int kMaxUnitaryQubits = 12;

/// Dense matrix of one gate on `num_qubits` qubits, assembled from sparse
/// triplets.
Eigen::MatrixXcd gate_unitary(const GateOp& op, int num_qubits);
/// Dense matrix of a gate sequence, built by in-place row updates that do not
/// share code with the statevector kernels, so the two can check each other.
Eigen::MatrixXcd circuit_unitary(std::span<const GateOp> ops, int num_qubits);
Eigen::MatrixXcd circuit_unitary(const CircuitIR& circuit);

/// max |b - e^{i phi} a| over entries, minimized over the global phase
/// aligned on the largest entry of `a`.
double unitary_distance_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace qlbm
