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

#include <array>
#include <complex>
#include <string_view>
#include <vector>

namespace qlbm {

using Complex = std::complex<double>;
/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Matrix2 = std::array<Complex, 4>;

enum class GateKind { H, X, RZ, PHASE, U1Q, MCX, DIAG };

std::string_view gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);

struct Control {
  int qubit = 0;
  /// Basis value the control must hold for the gate to act.
  bool value = true;

  bool operator==(const Control&) const = default;
};

/// One gate of the circuit IR.
///
/// Parameters by kind:
///   RZ, PHASE: {theta}
///   U1Q:       {re00, im00, re01, im01, re10, im10, re11, im11}
///   DIAG:      2^|targets| phase angles; entry j multiplies the basis state
///              whose target bits (targets[0] least significant) spell j.
///   H, X, MCX: none
///
/// Any kind may carry controls. An MCX with a single positive control is a
/// CNOT. Build gates through the factory functions in `gates::`, which
/// validate their arguments.
struct GateOp {
  GateKind kind = GateKind::H;
  std::vector<int> targets;
  std::vector<Control> controls;
  std::vector<double> params;

  bool operator==(const GateOp&) const = default;

  /// Local 2x2 matrix for single-target kinds (MCX yields X).
  Matrix2 matrix() const;
  /// Target and control qubits, targets first.
  std::vector<int> qubits() const;
  bool is_cnot() const;
  bool is_single_qubit() const;
};

namespace gates {

GateOp h(int q);
GateOp x(int q);
GateOp rz(int q, double theta);
GateOp phase(int q, double theta);
GateOp ry(int q, double theta);
GateOp u1q(int q, const Matrix2& m);
GateOp mcx(int target, std::vector<Control> controls);
GateOp cnot(int control, int target);
GateOp diag(std::vector<int> targets, std::vector<double> phases, std::vector<Control> controls = {});
GateOp with_controls(GateOp op, std::vector<Control> extra);

}  // namespace gates

/// Throws ConfigurationError for overlapping targets/controls, negative
/// indices, wrong parameter counts or a non-unitary U1Q (1e-12).
void validate_gate(const GateOp& op);

/// Inverse gate (used by tests and the optional cancellation pass).
GateOp inverse(const GateOp& op);

}  // namespace qlbm
