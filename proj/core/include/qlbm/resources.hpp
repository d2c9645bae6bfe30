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
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qlbm/circuit.hpp"

namespace qlbm {

struct DecomposeOptions {
  /// Drop adjacent gate pairs that multiply to the identity.
  bool cancel_adjacent_inverses = false;
};

/// Lowers every gate to single-qubit gates and CNOTs, section by section.
///
/// Rules (global phase dropped):
///  * controlled RZ / PHASE / DIAG  -> one diagonal over targets and controls
///  * n-qubit diagonal               -> uniformly controlled RZ cascade,
///                                      2^n - 2 CNOTs
///  * MCX with one positive control  -> CNOT (negative: X . CNOT . X)
///  * MCX with k >= 2 controls       -> H . diagonal(k + 1 qubits) . H
///  * controlled H / U1Q             -> Z-Y-Z split A . X . B . X . C with
///                                      multi-controlled X and a phase on
///                                      the controls
/// Zero-angle rotations from multiplexors are kept, so counts depend on the
/// gate structure only; a single-qubit diagonal with equal phases is a
/// global phase and disappears.
CircuitIR decompose_to_basis(const CircuitIR& circuit, const DecomposeOptions& options = {});

/// True when every gate is an uncontrolled single-qubit gate or a CNOT.
bool is_basis_circuit(const CircuitIR& circuit);

struct GateDurationTable {
  double single_qubit = 3.5e-8;
  double cnot = 5.3e-7;

  /// Throws ConfigurationError unless both durations are positive and finite.
  void validate() const;
};

struct SectionCounts {
  std::string section;
  std::uint64_t cnot = 0;
  std::uint64_t single_qubit = 0;
};

struct ResourceReport {
  int qubits = 0;
  std::uint64_t cnot_count = 0;
  std::uint64_t single_qubit_count = 0;
  /// Longest qubit-dependency chain, in gates.
  std::uint64_t depth = 0;
  /// Critical path under the duration table, in seconds.
  double runtime_s = 0.0;
  /// One entry per section label in order of first appearance.
  std::vector<SectionCounts> sections;

  std::uint64_t total_gates() const { return cnot_count + single_qubit_count; }
};

/// Counts a basis circuit. Throws ConfigurationError otherwise.
ResourceReport count_resources(const CircuitIR& basis_circuit,
                               const GateDurationTable& durations = {});

enum class Variant {
  SingleCircuit,
  StreamFunction,
  Vorticity,
  StreamFunctionNoBoundary,
  VorticityNoBoundary,
};

std::string_view variant_name(Variant v);

struct VariantReport {
  Variant variant = Variant::SingleCircuit;
  /// Step circuit without state preparation.
  ResourceReport report;
  /// State-preparation section, counted separately.
  ResourceReport encode;
};

/// Construction-only comparison at one D2Q5 extent. Vorticity circuits use a
/// zero velocity placeholder: the gate structure does not depend on it.
struct Comparison {
  std::size_t extent = 0;
  std::vector<VariantReport> variants;

  const VariantReport& get(Variant v) const;
  /// Stream + vorticity CNOTs with classical (true) or quantum boundaries.
  std::uint64_t frugal_cnot(bool classical_boundaries) const;
  /// max(stream depth, vorticity depth).
  std::uint64_t concurrent_depth(bool classical_boundaries) const;
  double concurrent_runtime(bool classical_boundaries) const;
  /// 100 * (single - frugal) / single.
  double cnot_reduction_pct(bool classical_boundaries) const;
  double depth_reduction_pct(bool classical_boundaries) const;
  /// single CNOTs - frugal CNOTs (classical boundaries).
  std::int64_t cnot_gap() const;
};

Comparison compare_single_vs_frugal(std::size_t extent, const GateDurationTable& durations = {});
std::vector<Comparison> scaling_sweep(const std::vector<std::size_t>& extents,
                                      const GateDurationTable& durations = {});

/// extent,variant,qubits,cnot,single_qubit,depth,concurrent_depth,runtime_s,section,section_cnot
/// One row per section, a `total` row, then an `encode` row that is not
/// part of the total.
void write_resource_csv(std::ostream& os, const std::vector<Comparison>& comparisons);
/// JSON summary: per extent, the five variant rows plus frugal totals and
/// reduction percentages.
std::string resource_summary_json(const std::vector<Comparison>& comparisons);

}  // namespace qlbm
