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

#include "qlbm/gate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "qlbm/error.hpp"

namespace qlbm {

std::string_view gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::RZ: return "RZ";
    case GateKind::PHASE: return "PHASE";
    case GateKind::U1Q: return "U1Q";
    case GateKind::MCX: return "MCX";
    case GateKind::DIAG: return "DIAG";
  }
  return "?";
}

GateKind gate_kind_from_name(std::string_view name) {
  for (auto k : {GateKind::H, GateKind::X, GateKind::RZ, GateKind::PHASE, GateKind::U1Q,
                 GateKind::MCX, GateKind::DIAG}) {
    if (gate_kind_name(k) == name) return k;
  }
  throw FormatError("unknown gate kind '" + std::string(name) + "'");
}

Matrix2 GateOp::matrix() const {
  using std::numbers::sqrt2;
  const Complex i(0.0, 1.0);
  switch (kind) {
    case GateKind::H: return {1.0 / sqrt2, 1.0 / sqrt2, 1.0 / sqrt2, -1.0 / sqrt2};
    case GateKind::X:
    case GateKind::MCX: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::RZ:
      return {std::exp(-i * params[0] / 2.0), 0.0, 0.0, std::exp(i * params[0] / 2.0)};
    case GateKind::PHASE: return {1.0, 0.0, 0.0, std::exp(i * params[0])};
    case GateKind::U1Q:
      return {Complex(params[0], params[1]), Complex(params[2], params[3]),
              Complex(params[4], params[5]), Complex(params[6], params[7])};
    case GateKind::DIAG:
      if (targets.size() == 1) return {std::exp(i * params[0]), 0.0, 0.0, std::exp(i * params[1])};
      break;
  }
  throw ConfigurationError("gate has no 2x2 matrix");
}

std::vector<int> GateOp::qubits() const {
  std::vector<int> q = targets;
  for (const auto& c : controls) q.push_back(c.qubit);
  return q;
}

bool GateOp::is_cnot() const {
  return kind == GateKind::MCX && controls.size() == 1 && controls[0].value;
}

bool GateOp::is_single_qubit() const { return controls.empty() && targets.size() == 1; }

namespace gates {

GateOp h(int q) { return {GateKind::H, {q}, {}, {}}; }
GateOp x(int q) { return {GateKind::X, {q}, {}, {}}; }
GateOp rz(int q, double theta) { return {GateKind::RZ, {q}, {}, {theta}}; }
GateOp phase(int q, double theta) { return {GateKind::PHASE, {q}, {}, {theta}}; }

GateOp ry(int q, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return u1q(q, {c, -s, s, c});
}

GateOp u1q(int q, const Matrix2& m) {
  GateOp op{GateKind::U1Q, {q}, {}, {}};
  for (const auto& z : m) {
    op.params.push_back(z.real());
    op.params.push_back(z.imag());
  }
  validate_gate(op);
  return op;
}

GateOp mcx(int target, std::vector<Control> controls) {
  GateOp op{GateKind::MCX, {target}, std::move(controls), {}};
  validate_gate(op);
  return op;
}

GateOp cnot(int control, int target) { return mcx(target, {{control, true}}); }

GateOp diag(std::vector<int> targets, std::vector<double> phases, std::vector<Control> controls) {
  GateOp op{GateKind::DIAG, std::move(targets), std::move(controls), std::move(phases)};
  validate_gate(op);
  return op;
}

GateOp with_controls(GateOp op, std::vector<Control> extra) {
  op.controls.insert(op.controls.end(), extra.begin(), extra.end());
  validate_gate(op);
  return op;
}

}  // namespace gates

void validate_gate(const GateOp& op) {
  if (op.targets.empty()) throw ConfigurationError("gate has no targets");
  std::set<int> seen;
  for (int q : op.qubits()) {
    if (q < 0) throw ConfigurationError("negative qubit index");
    if (!seen.insert(q).second) {
      throw ConfigurationError("qubit " + std::to_string(q) + " appears twice in a " +
                               std::string(gate_kind_name(op.kind)) + " gate");
    }
  }
  std::size_t expected = 0;
  switch (op.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::MCX: expected = 0; break;
    case GateKind::RZ:
    case GateKind::PHASE: expected = 1; break;
    case GateKind::U1Q: expected = 8; break;
    case GateKind::DIAG: expected = std::size_t{1} << op.targets.size(); break;
  }
  if (op.kind != GateKind::DIAG && op.targets.size() != 1) {
    throw ConfigurationError(std::string(gate_kind_name(op.kind)) + " takes exactly one target");
  }
  if (op.params.size() != expected) {
    throw ConfigurationError(std::string(gate_kind_name(op.kind)) + " expects " +
                             std::to_string(expected) + " parameters, got " +
                             std::to_string(op.params.size()));
  }
  for (double p : op.params) {
    if (!std::isfinite(p)) throw ConfigurationError("non-finite gate parameter");
  }
  if (op.kind == GateKind::U1Q) {
    const auto m = op.matrix();
    // M^dagger M == I
    const Complex a = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
    const Complex b = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
    const Complex d = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
    if (std::abs(a - 1.0) > 1e-12 || std::abs(b) > 1e-12 || std::abs(d - 1.0) > 1e-12) {
      throw ConfigurationError("U1Q matrix is not unitary");
    }
  }
}

GateOp inverse(const GateOp& op) {
  GateOp inv = op;
  switch (op.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::MCX: break;
    case GateKind::RZ:
    case GateKind::PHASE:
    case GateKind::DIAG:
      for (auto& p : inv.params) p = -p;
      break;
    case GateKind::U1Q: {
      const auto m = op.matrix();
      const Matrix2 mi{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
      inv.params.clear();
      for (const auto& z : mi) {
        inv.params.push_back(z.real());
        inv.params.push_back(z.imag());
      }
      break;
    }
  }
  return inv;
}

}  // namespace qlbm
