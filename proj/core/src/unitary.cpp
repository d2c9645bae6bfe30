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

#include "qlbm/unitary.hpp"

#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "qlbm/error.hpp"

namespace qlbm {
namespace {

using Triplet = Eigen::Triplet<Complex>;

void check_width(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxUnitaryQubits) {
    throw ConfigurationError("dense unitaries are limited to " +
                             std::to_string(kMaxUnitaryQubits) + " qubits");
  }
}

Eigen::SparseMatrix<Complex> sparse_gate(const GateOp& op, int num_qubits) {
  validate_gate(op);
  for (int q : op.qubits()) {
    if (q >= num_qubits) throw ConfigurationError("gate qubit outside the register");
  }
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * dim));
  const bool diagonal = op.kind == GateKind::DIAG;
  const Matrix2 m = diagonal ? Matrix2{} : op.matrix();
  for (Eigen::Index col = 0; col < dim; ++col) {
    bool active = true;
    for (const auto& c : op.controls) {
      if ((((col >> c.qubit) & 1) != 0) != c.value) active = false;
    }
    if (!active) {
      triplets.emplace_back(col, col, Complex(1.0));
      continue;
    }
    if (diagonal) {
      std::size_t j = 0;
      for (std::size_t t = 0; t < op.targets.size(); ++t) {
        j |= static_cast<std::size_t>((col >> op.targets[t]) & 1) << t;
      }
      triplets.emplace_back(col, col, std::polar(1.0, op.params[j]));
      continue;
    }
    const int t = op.targets[0];
    const Eigen::Index bit = (col >> t) & 1;
    const Eigen::Index base = col & ~(Eigen::Index{1} << t);
    for (Eigen::Index out = 0; out < 2; ++out) {
      const Complex v = m[static_cast<std::size_t>(2 * out + bit)];
      if (v != Complex{}) triplets.emplace_back(base | (out << t), col, v);
    }
  }
  Eigen::SparseMatrix<Complex> g(dim, dim);
  g.setFromTriplets(triplets.begin(), triplets.end());
  return g;
}

}  // namespace

Eigen::MatrixXcd gate_unitary(const GateOp& op, int num_qubits) {
  check_width(num_qubits);
  return Eigen::MatrixXcd(sparse_gate(op, num_qubits));
}

Eigen::MatrixXcd circuit_unitary(std::span<const GateOp> ops, int num_qubits) {
  check_width(num_qubits);
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  // Left-multiplying by a gate mixes rows, so rows are kept contiguous and
  // updated in place: one 2x2 row combination (or row scaling) per pair.
  RowMajor u = RowMajor::Identity(dim, dim);
  for (const auto& op : ops) {
    validate_gate(op);
    for (int q : op.qubits()) {
      if (q >= num_qubits) throw ConfigurationError("gate qubit outside the register");
    }
    auto active = [&](Eigen::Index row) {
      for (const auto& c : op.controls) {
        if ((((row >> c.qubit) & 1) != 0) != c.value) return false;
      }
      return true;
    };
    if (op.kind == GateKind::DIAG) {
      for (Eigen::Index row = 0; row < dim; ++row) {
        if (!active(row)) continue;
        std::size_t j = 0;
        for (std::size_t t = 0; t < op.targets.size(); ++t) {
          j |= static_cast<std::size_t>((row >> op.targets[t]) & 1) << t;
        }
        u.row(row) *= std::polar(1.0, op.params[j]);
      }
      continue;
    }
    const Matrix2 m = op.matrix();
    const Eigen::Index bit = Eigen::Index{1} << op.targets[0];
    Eigen::Matrix<Complex, 1, Eigen::Dynamic> r0(dim);
    for (Eigen::Index row = 0; row < dim; ++row) {
      if ((row & bit) != 0 || !active(row)) continue;
      const Eigen::Index row1 = row | bit;
      r0 = u.row(row);
      u.row(row) = m[0] * r0 + m[1] * u.row(row1);
      u.row(row1) = m[2] * r0 + m[3] * u.row(row1);
    }
  }
  return u;
}

Eigen::MatrixXcd circuit_unitary(const CircuitIR& circuit) {
  return circuit_unitary(circuit.gates, circuit.num_qubits());
}

double unitary_distance_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ConfigurationError("unitaries of different shape");
  }
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  Complex phase(1.0);
  if (std::abs(a(r, c)) > 0.0 && std::abs(b(r, c)) > 0.0) {
    phase = b(r, c) / a(r, c);
    phase /= std::abs(phase);
  }
  return (b - phase * a).cwiseAbs().maxCoeff();
}

}  // namespace qlbm
