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

#include "qlbm/statevector.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "qlbm/error.hpp"
#include "qlbm/field_io.hpp"
#include "qlbm/rng.hpp"

namespace qlbm {
namespace {

constexpr double kPostSelectFloor = 1e-14;
constexpr int kMaxQubits = 30;

struct ControlMask {
  std::size_t mask = 0;
  std::size_t value = 0;

  bool matches(std::size_t i) const { return (i & mask) == value; }
};

ControlMask control_mask(std::span<const Control> controls) {
  ControlMask m;
  for (const auto& c : controls) {
    const std::size_t bit = std::size_t{1} << c.qubit;
    m.mask |= bit;
    if (c.value) m.value |= bit;
  }
  return m;
}

// Inserts a zero at bit position `q` of `i`.
inline std::size_t insert_zero(std::size_t i, int q) {
  const std::size_t low = i & ((std::size_t{1} << q) - 1);
  return ((i >> q) << (q + 1)) | low;
}

void check_qubits(const QuantumState& state, const GateOp& op) {
  for (int q : op.qubits()) {
    if (q >= state.num_qubits) {
      throw ConfigurationError("gate on qubit " + std::to_string(q) + " exceeds a " +
                               std::to_string(state.num_qubits) + "-qubit state");
    }
  }
}

void apply_single(QuantumState& state, int target, const Matrix2& m, const ControlMask& cm) {
  auto& a = state.amplitudes;
  const std::size_t half = a.size() / 2;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = insert_zero(k, target);
    if (!cm.matches(i0)) continue;
    const std::size_t i1 = i0 | tbit;
    const Complex v0 = a[i0];
    const Complex v1 = a[i1];
    a[i0] = m[0] * v0 + m[1] * v1;
    a[i1] = m[2] * v0 + m[3] * v1;
  }
}

void apply_x(QuantumState& state, int target, const ControlMask& cm) {
  auto& a = state.amplitudes;
  const std::size_t half = a.size() / 2;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = insert_zero(k, target);
    if (cm.matches(i0)) std::swap(a[i0], a[i0 | tbit]);
  }
}

void apply_diag(QuantumState& state, const GateOp& op, const ControlMask& cm) {
  std::vector<Complex> factors(op.params.size());
  for (std::size_t j = 0; j < factors.size(); ++j) {
    factors[j] = std::polar(1.0, op.params[j]);
  }
  auto& a = state.amplitudes;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!cm.matches(i)) continue;
    std::size_t j = 0;
    for (std::size_t t = 0; t < op.targets.size(); ++t) {
      j |= ((i >> op.targets[t]) & 1u) << t;
    }
    a[i] *= factors[j];
  }
}

}  // namespace

QuantumState::QuantumState(int n) : num_qubits(n) {
  if (n < 1 || n > kMaxQubits) {
    throw ConfigurationError("qubit count " + std::to_string(n) + " outside [1, " +
                             std::to_string(kMaxQubits) + "]");
  }
  amplitudes.assign(std::size_t{1} << n, Complex{});
  amplitudes[0] = 1.0;
}

double QuantumState::norm() const {
  double s = 0.0;
  for (const auto& z : amplitudes) s += std::norm(z);
  return std::sqrt(s);
}

QuantumState amplitude_encode(std::span<const double> values) {
  if (values.empty() || (values.size() & (values.size() - 1)) != 0) {
    throw ConfigurationError("amplitude encoding needs a power-of-two length, got " +
                             std::to_string(values.size()));
  }
  return amplitude_encode(values, std::max(1, std::countr_zero(values.size())));
}

QuantumState amplitude_encode(std::span<const double> values, int num_qubits) {
  QuantumState state(num_qubits);
  if (values.size() > state.dimension()) {
    throw ConfigurationError("vector of length " + std::to_string(values.size()) +
                             " does not fit in " + std::to_string(num_qubits) + " qubits");
  }
  double sq = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw EncodingError("cannot encode a non-finite value");
    sq += v * v;
  }
  if (sq == 0.0) throw EncodingError("cannot encode an all-zero vector");
  const double norm = std::sqrt(sq);
  std::fill(state.amplitudes.begin(), state.amplitudes.end(), Complex{});
  for (std::size_t i = 0; i < values.size(); ++i) state.amplitudes[i] = values[i] / norm;
  state.norm_factor = norm;
  return state;
}

void apply_gate(QuantumState& state, const GateOp& op) {
  check_qubits(state, op);
  const auto cm = control_mask(op.controls);
  switch (op.kind) {
    case GateKind::X:
    case GateKind::MCX: apply_x(state, op.targets[0], cm); break;
    case GateKind::DIAG: apply_diag(state, op, cm); break;
    case GateKind::H:
    case GateKind::RZ:
    case GateKind::PHASE:
    case GateKind::U1Q: apply_single(state, op.targets[0], op.matrix(), cm); break;
  }
}

void apply_gates(QuantumState& state, std::span<const GateOp> ops) {
  for (const auto& op : ops) apply_gate(state, op);
}

void apply_circuit(QuantumState& state, const CircuitIR& circuit) {
  if (circuit.num_qubits() != state.num_qubits) {
    throw ConfigurationError("circuit has " + std::to_string(circuit.num_qubits()) +
                             " qubits but the state has " + std::to_string(state.num_qubits));
  }
  apply_gates(state, circuit.gates);
}

double outcome_probability(const QuantumState& state, std::span<const Control> conditions) {
  const auto cm = control_mask(conditions);
  double p = 0.0;
  for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
    if (cm.matches(i)) p += std::norm(state.amplitudes[i]);
  }
  return p;
}

double postselect(QuantumState& state, std::span<const Control> conditions) {
  for (const auto& c : conditions) {
    if (c.qubit < 0 || c.qubit >= state.num_qubits) {
      throw ConfigurationError("post-selection on a qubit outside the state");
    }
  }
  const double total = state.norm();
  const double p = outcome_probability(state, conditions) / (total * total);
  if (!(p > kPostSelectFloor)) {
    throw PostSelectionError("post-selection probability " + detail::format_double(p) +
                             " is below 1e-14");
  }
  const auto cm = control_mask(conditions);
  const double scale = 1.0 / (std::sqrt(p) * total);
  for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
    state.amplitudes[i] = cm.matches(i) ? state.amplitudes[i] * scale : Complex{};
  }
  state.norm_factor *= std::sqrt(p);
  return p;
}

double postselect(QuantumState& state, int qubit, bool value) {
  const Control c{qubit, value};
  return postselect(state, std::span<const Control>(&c, 1));
}

SampleHistogram sample(const QuantumState& state, std::uint64_t shots, std::uint64_t seed) {
  SampleHistogram h;
  h.num_qubits = state.num_qubits;
  h.shots = shots;
  h.counts.assign(state.dimension(), 0);
  std::vector<double> cdf(state.dimension());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    acc += state.probability(i);
    cdf[i] = acc;
  }
  if (!(acc > 0.0)) throw EncodingError("cannot sample from a zero state");
  // Last index with non-zero weight absorbs rounding at the top of the CDF.
  std::size_t last = cdf.size() - 1;
  while (last > 0 && state.probability(last) == 0.0) --last;
  CounterRng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx > last) idx = last;
    ++h.counts[idx];
  }
  return h;
}

std::vector<double> reconstruct_amplitudes(const SampleHistogram& histogram) {
  std::vector<double> out(histogram.counts.size());
  if (histogram.shots == 0) return out;
  const double inv = 1.0 / static_cast<double>(histogram.shots);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::sqrt(static_cast<double>(histogram.counts[i]) * inv);
  }
  return out;
}

double state_fidelity(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw ConfigurationError("fidelity of states of different size");
  Complex overlap{};
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    overlap += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  if (na == 0.0 || nb == 0.0) throw EncodingError("fidelity with a zero state");
  return std::norm(overlap) / (na * nb);
}

double state_fidelity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigurationError("fidelity of states of different size");
  double overlap = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    overlap += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw EncodingError("fidelity with a zero state");
  return overlap * overlap / (na * nb);
}

double state_fidelity(const SampleHistogram& histogram, std::span<const double> reference) {
  const auto est = reconstruct_amplitudes(histogram);
  return state_fidelity(std::span<const double>(est), reference);
}

void write_state_binary(std::ostream& os, const QuantumState& state) {
  os.write("QSTV", 4);
  detail::put_u32(os, static_cast<std::uint32_t>(state.num_qubits));
  detail::put_f64(os, state.norm_factor);
  for (const auto& z : state.amplitudes) {
    detail::put_f64(os, z.real());
    detail::put_f64(os, z.imag());
  }
}

QuantumState read_state_binary(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || std::memcmp(magic.data(), "QSTV", 4) != 0) {
    throw FormatError("not a QSTV state dump");
  }
  const auto n = detail::get_u32(is);
  if (n < 1 || n > static_cast<std::uint32_t>(kMaxQubits)) {
    throw FormatError("QSTV qubit count out of range");
  }
  QuantumState s(static_cast<int>(n));
  s.norm_factor = detail::get_f64(is);
  for (auto& z : s.amplitudes) {
    const double re = detail::get_f64(is);
    const double im = detail::get_f64(is);
    z = {re, im};
  }
  return s;
}

void write_histogram_csv(std::ostream& os, const SampleHistogram& histogram) {
  os << "basis_index,bitstring,count\n";
  for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
    if (histogram.counts[i] == 0) continue;
    std::string bits(static_cast<std::size_t>(histogram.num_qubits), '0');
    for (int q = 0; q < histogram.num_qubits; ++q) {
      if ((i >> q) & 1u) bits[static_cast<std::size_t>(histogram.num_qubits - 1 - q)] = '1';
    }
    os << i << ',' << bits << ',' << histogram.counts[i] << '\n';
  }
}

}  // namespace qlbm
