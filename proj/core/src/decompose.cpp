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

#include <cmath>
#include <numbers>

#include "multiplexor.hpp"
#include "qlbm/error.hpp"
#include "qlbm/resources.hpp"

namespace qlbm {
namespace {

void lower(const GateOp& op, std::vector<GateOp>& out);

std::size_t match_index(const std::vector<Control>& controls) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (controls[i].value) c |= std::size_t{1} << i;
  }
  return c;
}

// diag(base) on op.targets, active only when the controls match, as one
// diagonal over controls followed by targets. Targets go on top so they are
// peeled first; a single-target gate then leaves no residue on the controls.
void lower_controlled_diagonal(const GateOp& op, const std::vector<double>& base,
                               std::vector<GateOp>& out) {
  std::vector<int> qubits;
  for (const auto& c : op.controls) qubits.push_back(c.qubit);
  qubits.insert(qubits.end(), op.targets.begin(), op.targets.end());
  const std::size_t cdim = std::size_t{1} << op.controls.size();
  std::vector<double> phases(base.size() * cdim, 0.0);
  const std::size_t m = match_index(op.controls);
  for (std::size_t j = 0; j < base.size(); ++j) phases[m + cdim * j] = base[j];
  auto ops = diagonal_gates(qubits, phases);
  out.insert(out.end(), ops.begin(), ops.end());
}

void lower_mcx(const GateOp& op, std::vector<GateOp>& out) {
  const int t = op.targets[0];
  if (op.controls.empty()) {
    out.push_back(gates::x(t));
    return;
  }
  if (op.controls.size() == 1) {
    const auto& c = op.controls[0];
    if (!c.value) out.push_back(gates::x(c.qubit));
    out.push_back(gates::cnot(c.qubit, t));
    if (!c.value) out.push_back(gates::x(c.qubit));
    return;
  }
  // Controlled Z in the Hadamard frame of the target.
  out.push_back(gates::h(t));
  std::vector<int> qubits;
  for (const auto& c : op.controls) qubits.push_back(c.qubit);
  qubits.push_back(t);
  std::vector<double> phases(std::size_t{1} << qubits.size(), 0.0);
  phases[match_index(op.controls) | (std::size_t{1} << op.controls.size())] = std::numbers::pi;
  auto ops = diagonal_gates(qubits, phases);
  out.insert(out.end(), ops.begin(), ops.end());
  out.push_back(gates::h(t));
}

struct ZYZ {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

// U = e^{i alpha} RZ(beta) RY(gamma) RZ(delta).
ZYZ zyz(const Matrix2& u) {
  ZYZ r;
  const Complex det = u[0] * u[3] - u[1] * u[2];
  r.alpha = std::arg(det) / 2.0;
  const Complex ph = std::polar(1.0, -r.alpha);
  const Complex v00 = u[0] * ph;
  const Complex v10 = u[2] * ph;
  r.gamma = 2.0 * std::atan2(std::abs(v10), std::abs(v00));
  constexpr double tiny = 1e-14;
  if (std::abs(v00) < tiny) {
    r.beta = 2.0 * std::arg(v10);
  } else if (std::abs(v10) < tiny) {
    r.beta = -2.0 * std::arg(v00);
  } else {
    r.beta = std::arg(v10) - std::arg(v00);
    r.delta = -std::arg(v00) - std::arg(v10);
  }
  return r;
}

Matrix2 mul(const Matrix2& a, const Matrix2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

Matrix2 rz_matrix(double t) {
  return {std::polar(1.0, -t / 2.0), 0.0, 0.0, std::polar(1.0, t / 2.0)};
}

Matrix2 ry_matrix(double t) {
  const double c = std::cos(t / 2.0);
  const double s = std::sin(t / 2.0);
  return {c, -s, s, c};
}

// Controlled U as C . CX . B . CX . A (time order) with ABC = I and
// A X B X C = e^{-i alpha} U, plus the phase e^{i alpha} on the controls.
void lower_controlled_unitary(const GateOp& op, std::vector<GateOp>& out) {
  const int t = op.targets[0];
  const auto p = zyz(op.matrix());
  const Matrix2 a = mul(rz_matrix(p.beta), ry_matrix(p.gamma / 2.0));
  const Matrix2 b = mul(ry_matrix(-p.gamma / 2.0), rz_matrix(-(p.delta + p.beta) / 2.0));
  const Matrix2 c = rz_matrix((p.delta - p.beta) / 2.0);
  const GateOp cx{GateKind::MCX, {t}, op.controls, {}};
  out.push_back(gates::u1q(t, c));
  lower_mcx(cx, out);
  out.push_back(gates::u1q(t, b));
  lower_mcx(cx, out);
  out.push_back(gates::u1q(t, a));
  // Phase on the control pattern: diag over the controls alone.
  std::vector<int> qubits;
  for (const auto& ctl : op.controls) qubits.push_back(ctl.qubit);
  std::vector<double> phases(std::size_t{1} << qubits.size(), 0.0);
  phases[match_index(op.controls)] = p.alpha;
  auto ops = diagonal_gates(qubits, phases);
  out.insert(out.end(), ops.begin(), ops.end());
}

void lower(const GateOp& op, std::vector<GateOp>& out) {
  const bool controlled = !op.controls.empty();
  switch (op.kind) {
    case GateKind::X:
    case GateKind::MCX: lower_mcx(op, out); return;
    case GateKind::RZ:
      if (!controlled) {
        out.push_back(op);
      } else {
        lower_controlled_diagonal(op, {-op.params[0] / 2.0, op.params[0] / 2.0}, out);
      }
      return;
    case GateKind::PHASE:
      if (!controlled) {
        out.push_back(op);
      } else {
        lower_controlled_diagonal(op, {0.0, op.params[0]}, out);
      }
      return;
    case GateKind::DIAG:
      lower_controlled_diagonal(op, op.params, out);
      return;
    case GateKind::H:
    case GateKind::U1Q:
      if (!controlled) {
        out.push_back(op);
      } else {
        lower_controlled_unitary(op, out);
      }
      return;
  }
}

void push_with_cancellation(std::vector<GateOp>& out, GateOp op) {
  if (!out.empty() && out.back() == inverse(op)) {
    out.pop_back();
    return;
  }
  out.push_back(std::move(op));
}

}  // namespace

CircuitIR decompose_to_basis(const CircuitIR& circuit, const DecomposeOptions& options) {
  circuit.validate();
  CircuitIR lowered(circuit.layout);
  for (const auto& s : circuit.sections) {
    std::vector<GateOp> ops;
    for (std::size_t i = s.begin; i < s.end; ++i) lower(circuit.gates[i], ops);
    if (options.cancel_adjacent_inverses) {
      std::vector<GateOp> kept;
      for (auto& g : ops) push_with_cancellation(kept, std::move(g));
      ops = std::move(kept);
    }
    lowered.append(s.kind, std::move(ops));
  }
  return lowered;
}

bool is_basis_circuit(const CircuitIR& circuit) {
  for (const auto& g : circuit.gates) {
    if (!g.is_cnot() && !(g.is_single_qubit() && g.kind != GateKind::MCX)) return false;
  }
  return true;
}

}  // namespace qlbm
