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

#include "qlbm/builders.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qlbm/error.hpp"
#include "multiplexor.hpp"

namespace qlbm {
namespace {

constexpr double kClampSlack = 1e-12;
constexpr std::array<double, 2> kAtRest{0.0, 0.0};

void require_matching(const LatticeScheme& scheme, const RegisterLayout& layout) {
  if (layout.is_generic() || layout.dimension() != scheme.dimension() ||
      layout.link_qubits() != scheme.link_qubits()) {
    throw ConfigurationError("register layout does not fit the " + scheme.name() + " scheme");
  }
}

std::vector<int> data_qubits_of(const RegisterLayout& layout) {
  auto q = layout.position_qubits();
  for (int i : layout.d().qubits()) q.push_back(i);
  return q;
}

}  // namespace

std::vector<double> LCUPair::angles() const {
  std::vector<double> a(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) a[i] = std::acos(k[i]);
  return a;
}

LCUPair make_lcu(std::span<const double> k) {
  LCUPair p;
  p.k.reserve(k.size());
  for (double v : k) {
    if (!std::isfinite(v) || std::abs(v) > 1.0 + kClampSlack) {
      throw CoefficientRangeError("collision coefficient " + std::to_string(v) +
                                  " is outside [-1, 1] and cannot be block-encoded");
    }
    p.k.push_back(std::clamp(v, -1.0, 1.0));
  }
  for (double theta : p.angles()) {
    p.c1.push_back(std::polar(1.0, theta));
    p.c2.push_back(std::polar(1.0, -theta));
  }
  return p;
}

RegisterLayout layout_for(const LatticeScheme& scheme, std::size_t extent, bool source,
                          bool boundary) {
  if (!is_power_of_two(extent) || extent < 2) {
    throw ConfigurationError("lattice extent " + std::to_string(extent) +
                             " must be a power of two >= 2");
  }
  return RegisterLayout::make(scheme.dimension(), scheme.link_qubits(),
                              std::countr_zero(extent), source, boundary);
}

std::vector<double> collision_coefficients(const LatticeScheme& scheme,
                                           std::array<double, 2> velocity, int link_qubits) {
  std::vector<double> k(std::size_t{1} << link_qubits, 0.0);
  if (scheme.num_links() > k.size()) throw ConfigurationError("link register too narrow");
  const double cs2 = scheme.sound_speed_squared();
  for (std::size_t a = 0; a < scheme.num_links(); ++a) {
    const auto& e = scheme.link(a);
    k[a] = scheme.weight(a) * (1.0 + (e[0] * velocity[0] + e[1] * velocity[1]) / cs2);
  }
  return k;
}

std::vector<double> collision_coefficients(const LatticeScheme& scheme,
                                           const VelocityField& velocity, int link_qubits) {
  const std::size_t slots = std::size_t{1} << link_qubits;
  const std::size_t n = velocity.dims.sites();
  if (scheme.num_links() > slots) throw ConfigurationError("link register too narrow");
  std::vector<double> k(n * slots, 0.0);
  const double cs2 = scheme.sound_speed_squared();
  for (std::size_t a = 0; a < scheme.num_links(); ++a) {
    const auto& e = scheme.link(a);
    for (std::size_t r = 0; r < n; ++r) {
      k[r + n * a] =
          scheme.weight(a) * (1.0 + (e[0] * velocity.u[r] + e[1] * velocity.v[r]) / cs2);
    }
  }
  return k;
}

CircuitIR build_collision_block(const LCUPair& pair, const RegisterLayout& layout,
                                std::span<const int> data_qubits, std::vector<Control> controls) {
  if (pair.k.size() != (std::size_t{1} << data_qubits.size())) {
    throw ConfigurationError("collision coefficients do not match the data register");
  }
  const int a = layout.a().offset;
  std::vector<int> targets(data_qubits.begin(), data_qubits.end());
  targets.push_back(a);
  const auto theta = pair.angles();
  std::vector<double> phases(2 * theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    phases[j] = theta[j];
    phases[j + theta.size()] = -theta[j];
  }
  CircuitIR c(layout);
  c.append(SectionKind::Collision,
           {gates::h(a), gates::diag(std::move(targets), std::move(phases), std::move(controls)),
            gates::h(a)});
  return c;
}

CircuitIR build_collision_block(const LCUPair& pair, const RegisterLayout& layout) {
  return build_collision_block(pair, layout, layout.d().qubits());
}

std::vector<GateOp> shift_gates(ShiftDirection direction, std::span<const int> reg,
                                std::span<const Control> controls) {
  std::vector<GateOp> ops;
  for (std::size_t i = reg.size(); i-- > 0;) {
    std::vector<Control> c;
    for (std::size_t j = 0; j < i; ++j) c.push_back({reg[j], true});
    c.insert(c.end(), controls.begin(), controls.end());
    ops.push_back(c.empty() ? gates::x(reg[i]) : gates::mcx(reg[i], std::move(c)));
  }
  if (direction == ShiftDirection::Left) std::reverse(ops.begin(), ops.end());
  return ops;
}

CircuitIR build_shift_circuit(ShiftDirection direction, const RegisterLayout& layout, int axis,
                              std::vector<Control> controls) {
  const auto reg = axis == 0 ? layout.r0() : layout.r1();
  if (reg.width == 0) throw ConfigurationError("layout has no position register on that axis");
  CircuitIR c(layout);
  c.append(SectionKind::Streaming, shift_gates(direction, reg.qubits(), controls));
  return c;
}

std::vector<Control> link_controls(const RegisterLayout& layout, std::size_t slot) {
  const auto d = layout.d();
  std::vector<Control> c;
  for (int i = 0; i < d.width; ++i) c.push_back({d.offset + i, ((slot >> i) & 1u) != 0});
  return c;
}

CircuitIR build_streaming_block(const LatticeScheme& scheme, const RegisterLayout& layout,
                                std::vector<Control> controls) {
  require_matching(scheme, layout);
  std::vector<GateOp> ops;
  for (std::size_t alpha = 0; alpha < scheme.num_links(); ++alpha) {
    const auto& e = scheme.link(alpha);
    auto c = link_controls(layout, alpha);
    c.insert(c.end(), controls.begin(), controls.end());
    for (int axis = 0; axis < scheme.dimension(); ++axis) {
      if (e[axis] == 0) continue;
      const auto dir = e[axis] > 0 ? ShiftDirection::Right : ShiftDirection::Left;
      const auto reg = (axis == 0 ? layout.r0() : layout.r1()).qubits();
      for (auto& g : shift_gates(dir, reg, c)) ops.push_back(std::move(g));
    }
  }
  CircuitIR out(layout);
  out.append(SectionKind::Streaming, std::move(ops));
  return out;
}

CircuitIR build_macro_block(const RegisterLayout& layout, bool sum_source) {
  std::vector<GateOp> ops;
  for (int q : layout.d().qubits()) ops.push_back(gates::h(q));
  if (sum_source && layout.has_source()) ops.push_back(gates::h(layout.s().offset));
  CircuitIR c(layout);
  c.append(SectionKind::Macro, std::move(ops));
  return c;
}

CircuitIR build_boundary_block(const RegisterLayout& layout) {
  if (!layout.has_boundary()) throw ConfigurationError("boundary block needs the b qubit");
  const int b = layout.b().offset;
  const std::size_t n = layout.sites();
  const Extents dims{layout.extent(), layout.dimension() == 2 ? layout.extent() : 1};
  std::vector<double> phases(2 * n, 0.0);
  for (std::size_t y = 0; y < dims.ny; ++y) {
    for (std::size_t x = 0; x < dims.nx; ++x) {
      if (!is_wall_site(dims, x, y)) continue;
      const std::size_t site = y * dims.nx + x;
      phases[site] = std::numbers::pi / 2.0;
      phases[site + n] = -std::numbers::pi / 2.0;
    }
  }
  auto targets = layout.position_qubits();
  targets.push_back(b);
  CircuitIR c(layout);
  c.append(SectionKind::Boundary,
           {gates::h(b), gates::diag(std::move(targets), std::move(phases)), gates::h(b)});
  return c;
}

CircuitIR build_encode_section(const RegisterLayout& layout, std::span<const double> values) {
  if (layout.is_generic()) throw ConfigurationError("encoding needs a named layout");
  const int n = layout.b().offset;  // data qubits sit below b and a
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> v(values.begin(), values.end());
  if (v.empty()) v.assign(dim, 1.0);
  if (v.size() != dim) {
    throw ConfigurationError("encode values need " + std::to_string(dim) + " entries");
  }
  // Subtree norms, level by level from the full vector up to the root.
  std::vector<GateOp> ops;
  for (int level = 0; level < n; ++level) {
    const int target = n - 1 - level;
    const std::size_t block = std::size_t{1} << (target + 1);
    const std::size_t half = block / 2;
    std::vector<double> angles(std::size_t{1} << level);
    for (std::size_t p = 0; p < angles.size(); ++p) {
      const std::size_t base = p * block;
      if (half == 1) {
        angles[p] = 2.0 * std::atan2(v[base + 1], v[base]);
        continue;
      }
      double n0 = 0.0;
      double n1 = 0.0;
      for (std::size_t i = 0; i < half; ++i) {
        n0 += v[base + i] * v[base + i];
        n1 += v[base + half + i] * v[base + half + i];
      }
      angles[p] = 2.0 * std::atan2(std::sqrt(n1), std::sqrt(n0));
    }
    std::vector<int> controls;
    for (int q = target + 1; q < n; ++q) controls.push_back(q);
    for (auto& g : uniformly_controlled_rotation(RotationAxis::Y, target, controls, angles)) {
      ops.push_back(std::move(g));
    }
  }
  CircuitIR c(layout);
  c.append(SectionKind::Encode, std::move(ops));
  return c;
}

CircuitIR with_encode(const CircuitIR& circuit, std::span<const double> values) {
  auto c = build_encode_section(circuit.layout, values);
  c.append(circuit);
  return c;
}

CircuitIR build_advection_diffusion_circuit(const LatticeScheme& scheme, const FlowParams& params,
                                            const RegisterLayout& layout) {
  require_matching(scheme, layout);
  const auto k = collision_coefficients(scheme, params.advection_velocity, layout.link_qubits());
  auto c = build_collision_block(make_lcu(k), layout);
  c.append(build_streaming_block(scheme, layout));
  c.append(build_macro_block(layout));
  return c;
}

CircuitIR build_vorticity_circuit(const LatticeScheme& scheme, BoundaryMode mode,
                                  const RegisterLayout& layout, const VelocityField& velocity) {
  require_matching(scheme, layout);
  if (layout.has_boundary() != (mode == BoundaryMode::Quantum)) {
    throw ConfigurationError("the b qubit must be present exactly in quantum boundary mode");
  }
  if (velocity.dims.sites() != layout.sites()) {
    throw ConfigurationError("velocity field does not match the lattice");
  }
  const auto k = collision_coefficients(scheme, velocity, layout.link_qubits());
  auto c = build_collision_block(make_lcu(k), layout, data_qubits_of(layout));
  c.append(build_streaming_block(scheme, layout));
  c.append(build_macro_block(layout));
  if (mode == BoundaryMode::Quantum) c.append(build_boundary_block(layout));
  return c;
}

CircuitIR build_stream_function_circuit(const LatticeScheme& scheme, BoundaryMode mode,
                                        const RegisterLayout& layout) {
  require_matching(scheme, layout);
  if (!layout.has_source()) throw ConfigurationError("stream-function circuit needs the s qubit");
  if (layout.has_boundary() != (mode == BoundaryMode::Quantum)) {
    throw ConfigurationError("the b qubit must be present exactly in quantum boundary mode");
  }
  const auto k = collision_coefficients(scheme, kAtRest, layout.link_qubits());
  auto c = build_collision_block(make_lcu(k), layout);
  c.append(build_streaming_block(scheme, layout));
  c.append(build_macro_block(layout, true));
  if (mode == BoundaryMode::Quantum) c.append(build_boundary_block(layout));
  return c;
}

CircuitIR build_single_circuit(const LatticeScheme& scheme, const RegisterLayout& layout,
                               const VelocityField& velocity) {
  require_matching(scheme, layout);
  if (!layout.has_source() || !layout.has_boundary()) {
    throw ConfigurationError("the single circuit needs both the s and b qubits");
  }
  if (velocity.dims.sites() != layout.sites()) {
    throw ConfigurationError("velocity field does not match the lattice");
  }
  const int s = layout.s().offset;
  const auto kw = collision_coefficients(scheme, kAtRest, layout.link_qubits());
  auto c = build_collision_block(make_lcu(kw), layout, layout.d().qubits(), {{s, false}});
  const auto kv = collision_coefficients(scheme, velocity, layout.link_qubits());
  c.append(build_collision_block(make_lcu(kv), layout, data_qubits_of(layout), {{s, true}}));
  c.append(build_streaming_block(scheme, layout));
  c.append(build_macro_block(layout, false));
  c.append(build_boundary_block(layout));
  return c;
}

}  // namespace qlbm
