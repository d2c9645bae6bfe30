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
#include <span>
#include <vector>

#include "qlbm/circuit.hpp"
#include "qlbm/gate.hpp"

namespace qlbm {

/// Dense state of `num_qubits` qubits plus the classical scale that maps
/// normalized amplitudes back to field values.
struct QuantumState {
  int num_qubits = 0;
  std::vector<Complex> amplitudes;
  double norm_factor = 1.0;

  QuantumState() = default;
  /// |0...0>.
  explicit QuantumState(int n);

  std::size_t dimension() const { return amplitudes.size(); }
  double norm() const;
  double probability(std::size_t index) const { return std::norm(amplitudes[index]); }
};

/// Normalizes `values` into a state; norm_factor holds the 2-norm.
/// Throws EncodingError for an all-zero or non-finite vector and
/// ConfigurationError when the length is not a power of two.
QuantumState amplitude_encode(std::span<const double> values);
/// Same, zero-padded to `num_qubits` (the values fill the low indices).
QuantumState amplitude_encode(std::span<const double> values, int num_qubits);

void apply_gate(QuantumState& state, const GateOp& op);
void apply_gates(QuantumState& state, std::span<const GateOp> ops);
/// Throws ConfigurationError if the circuit width differs from the state.
void apply_circuit(QuantumState& state, const CircuitIR& circuit);

/// Projects onto the basis states matching every condition, renormalizes and
/// multiplies norm_factor by sqrt(p). Returns p. Throws PostSelectionError
/// when p <= 1e-14 (the state is left untouched).
double postselect(QuantumState& state, std::span<const Control> conditions);
double postselect(QuantumState& state, int qubit, bool value);
/// Probability of the conditions without collapsing.
double outcome_probability(const QuantumState& state, std::span<const Control> conditions);

struct SampleHistogram {
  int num_qubits = 0;
  std::uint64_t shots = 0;
  /// Dense counts indexed by basis state.
  std::vector<std::uint64_t> counts;
};

/// Draws `shots` computational-basis samples from |amplitude|^2 using a
/// counter-based stream keyed by `seed`.
SampleHistogram sample(const QuantumState& state, std::uint64_t shots, std::uint64_t seed);

/// sqrt(count / shots) per basis state: the non-negative amplitude estimate.
std::vector<double> reconstruct_amplitudes(const SampleHistogram& histogram);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double state_fidelity(std::span<const Complex> a, std::span<const Complex> b);
double state_fidelity(std::span<const double> a, std::span<const double> b);
/// Fidelity of the histogram reconstruction against `reference`.
double state_fidelity(const SampleHistogram& histogram, std::span<const double> reference);

/// "QSTV" | u32 qubits | f64 norm_factor | (f64 re, f64 im) * 2^qubits, little-endian.
void write_state_binary(std::ostream& os, const QuantumState& state);
QuantumState read_state_binary(std::istream& is);

/// basis_index,bitstring,count for every non-zero bin; bitstrings print the
/// highest qubit first.
void write_histogram_csv(std::ostream& os, const SampleHistogram& histogram);

}  // namespace qlbm
