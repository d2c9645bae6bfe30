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

#include "multiplexor.hpp"

#include <bit>

#include "qlbm/error.hpp"

namespace qlbm {
namespace {

GateOp rotation(RotationAxis axis, int q, double theta) {
  return axis == RotationAxis::Y ? gates::ry(q, theta) : gates::rz(q, theta);
}

// In-place fast Walsh-Hadamard transform (unnormalized).
void walsh_hadamard(std::vector<double>& v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += 2 * len) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = v[j];
        const double b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

}  // namespace

std::vector<GateOp> uniformly_controlled_rotation(RotationAxis axis, int target,
                                                  std::span<const int> controls,
                                                  std::span<const double> angles) {
  const std::size_t count = std::size_t{1} << controls.size();
  if (angles.size() != count) throw ConfigurationError("multiplexor angle count mismatch");
  std::vector<GateOp> ops;
  if (controls.empty()) {
    ops.push_back(rotation(axis, target, angles[0]));
    return ops;
  }
  // Conjugating by X negates the rotation, so the net angle for control
  // value c is sum_i (-1)^{|c & g_i|} alpha_i with g_i the Gray code of i.
  std::vector<double> w(angles.begin(), angles.end());
  walsh_hadamard(w);
  const double scale = 1.0 / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t g = i ^ (i >> 1);
    const std::size_t next = ((i + 1) % count) ^ (((i + 1) % count) >> 1);
    ops.push_back(rotation(axis, target, w[g] * scale));
    const int bit = std::countr_zero(g ^ next);
    ops.push_back(gates::cnot(controls[static_cast<std::size_t>(bit)], target));
  }
  return ops;
}

std::vector<GateOp> diagonal_gates(std::span<const int> targets, std::span<const double> phases) {
  if (phases.size() != (std::size_t{1} << targets.size())) {
    throw ConfigurationError("diagonal phase count mismatch");
  }
  std::vector<GateOp> ops;
  std::vector<double> phi(phases.begin(), phases.end());
  for (std::size_t n = targets.size(); n >= 1; --n) {
    const std::size_t half = std::size_t{1} << (n - 1);
    std::vector<double> theta(half);
    std::vector<double> mean(half);
    for (std::size_t j = 0; j < half; ++j) {
      theta[j] = phi[j + half] - phi[j];
      mean[j] = 0.5 * (phi[j + half] + phi[j]);
    }
    if (n == 1) {
      // A single-qubit diagonal with equal phases is a global phase.
      if (theta[0] != 0.0) ops.push_back(gates::rz(targets[0], theta[0]));
      break;
    }
    auto uc = uniformly_controlled_rotation(RotationAxis::Z, targets[n - 1],
                                            targets.subspan(0, n - 1), theta);
    ops.insert(ops.end(), uc.begin(), uc.end());
    phi = std::move(mean);
  }
  return ops;
}

}  // namespace qlbm
