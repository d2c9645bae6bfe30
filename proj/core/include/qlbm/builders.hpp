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

#include <cstddef>
#include <span>
#include <vector>

#include "qlbm/circuit.hpp"
#include "qlbm/lattice.hpp"

namespace qlbm {

enum class BoundaryMode { Classical, Quantum };
enum class ShiftDirection { Right, Left };

/// Collision operator A = diag(k) written as (C1 + C2) / 2 with
/// C1,2 = exp(+-i arccos k).
struct LCUPair {
  std::vector<double> k;
  std::vector<Complex> c1;
  std::vector<Complex> c2;

  /// arccos(k), the phase of c1.
  std::vector<double> angles() const;
};

/// Entries within 1e-12 of [-1, 1] are clamped; anything further out throws
/// CoefficientRangeError.
LCUPair make_lcu(std::span<const double> k);

/// Layout for `scheme` on an extent^dimension lattice.
RegisterLayout layout_for(const LatticeScheme& scheme, std::size_t extent, bool source = false,
                          bool boundary = false);

/// k_alpha = w_alpha (1 + e_alpha . c / c_s^2), padded with zeros to the
/// 2^|d| link slots.
std::vector<double> collision_coefficients(const LatticeScheme& scheme,
                                           std::array<double, 2> velocity, int link_qubits);

/// Site-dependent coefficients k(alpha, r) indexed site + sites * slot.
std::vector<double> collision_coefficients(const LatticeScheme& scheme,
                                           const VelocityField& velocity, int link_qubits);

/// H(a) . DIAG(+-arccos k over `data_qubits`, sign from a) . H(a). Selecting
/// a = 0 afterwards applies diag(k), with entry j matching the data-qubit
/// pattern j (data_qubits[0] least significant).
CircuitIR build_collision_block(const LCUPair& pair, const RegisterLayout& layout,
                                std::span<const int> data_qubits,
                                std::vector<Control> controls = {});
/// Uniform collision over the link register.
CircuitIR build_collision_block(const LCUPair& pair, const RegisterLayout& layout);

/// Cyclic increment (Right) or decrement (Left) of `reg`, as a cascade of
/// multi-controlled X gates, each also conditioned on `controls`.
std::vector<GateOp> shift_gates(ShiftDirection direction, std::span<const int> reg,
                                std::span<const Control> controls = {});
/// Shift of position register `axis` (0 = r0, 1 = r1).
CircuitIR build_shift_circuit(ShiftDirection direction, const RegisterLayout& layout, int axis,
                              std::vector<Control> controls = {});

/// Controls that fire when the link register holds `slot`.
std::vector<Control> link_controls(const RegisterLayout& layout, std::size_t slot);

/// For every moving link, in ascending order, the shifts of e_alpha
/// conditioned on the link register. `controls` are added to every gate.
CircuitIR build_streaming_block(const LatticeScheme& scheme, const RegisterLayout& layout,
                                std::vector<Control> controls = {});

/// H on every link qubit, plus the source qubit when `sum_source` and the
/// layout has one.
CircuitIR build_macro_block(const RegisterLayout& layout, bool sum_source = true);

/// LCU on qubit b whose b = 0 block is the wall projector B (zero on walls,
/// identity inside).
CircuitIR build_boundary_block(const RegisterLayout& layout);

/// State-preparation tree of uniformly controlled RY rotations over the data
/// qubits (everything below b and a), preparing `values` / ||values|| from
/// |0>. An empty `values` uses a uniform placeholder: the gate structure does
/// not depend on the data.
CircuitIR build_encode_section(const RegisterLayout& layout, std::span<const double> values = {});

/// Prepends an encode section to `circuit`.
CircuitIR with_encode(const CircuitIR& circuit, std::span<const double> values = {});

/// collision -> streaming -> macro for a uniform advection velocity.
CircuitIR build_advection_diffusion_circuit(const LatticeScheme& scheme, const FlowParams& params,
                                            const RegisterLayout& layout);

/// Advection-diffusion of the vorticity with site-dependent coefficients from
/// `velocity`. Quantum mode needs a layout with b and appends the boundary
/// block.
CircuitIR build_vorticity_circuit(const LatticeScheme& scheme, BoundaryMode mode,
                                  const RegisterLayout& layout, const VelocityField& velocity);

/// Poisson relaxation with the source on qubit s: collision diag(w) on both
/// s branches, streaming, then macro with H on s so the s = 0 branch carries
/// the sum of the stream-function and source populations.
CircuitIR build_stream_function_circuit(const LatticeScheme& scheme, BoundaryMode mode,
                                        const RegisterLayout& layout);

/// Baseline single circuit on a layout with s and b. Here s selects the
/// field: s = 0 holds psi + lambda S, s = 1 holds omega. Poisson collision
/// (controlled on s = 0), vorticity collision (controlled on s = 1), one
/// shared streaming block, macro over d, then the boundary block.
CircuitIR build_single_circuit(const LatticeScheme& scheme, const RegisterLayout& layout,
                               const VelocityField& velocity);

}  // namespace qlbm
