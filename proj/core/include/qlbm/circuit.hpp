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
#include <string>
#include <string_view>
#include <vector>

#include "qlbm/gate.hpp"

namespace qlbm {

struct QubitRange {
  int offset = 0;
  int width = 0;

  std::vector<int> qubits() const;
  bool contains(int q) const { return q >= offset && q < offset + width; }
};

/// Named registers of a QLBM circuit mapped onto contiguous qubit indices.
///
/// Qubit 0 is the least-significant bit of a basis index. From low to high:
///   r0 (x position) | r1 (y position, 2D only) | d (link) | s | b | a
/// so an amplitude index reads site + sites * (link + slots * (s + 2 * b))
/// below the ancilla, matching the link-major distribution layout.
class RegisterLayout {
 public:
  RegisterLayout() = default;

  static RegisterLayout make(int dimension, int link_qubits, int site_qubits, bool source,
                             bool boundary);
  /// A bare n-qubit layout without named registers, for hand-built circuits.
  static RegisterLayout generic(int num_qubits);

  bool is_generic() const { return generic_; }
  int dimension() const { return dimension_; }
  int site_qubits() const { return site_qubits_; }
  int link_qubits() const { return link_qubits_; }
  bool has_source() const { return source_; }
  bool has_boundary() const { return boundary_; }
  std::size_t extent() const { return std::size_t{1} << site_qubits_; }
  std::size_t sites() const;
  std::size_t link_slots() const { return std::size_t{1} << link_qubits_; }

  QubitRange r0() const;
  QubitRange r1() const;
  QubitRange d() const;
  QubitRange s() const;
  QubitRange b() const;
  QubitRange a() const;
  /// r0 then r1.
  std::vector<int> position_qubits() const;
  int total_qubits() const;

  bool operator==(const RegisterLayout&) const = default;

 private:
  bool generic_ = false;
  int generic_qubits_ = 0;
  int dimension_ = 1;
  int link_qubits_ = 1;
  int site_qubits_ = 1;
  bool source_ = false;
  bool boundary_ = false;
};

enum class SectionKind { Encode, Collision, Streaming, Macro, Boundary };

std::string_view section_name(SectionKind kind);
SectionKind section_from_name(std::string_view name);

/// Half-open gate-index span [begin, end) carrying a stage label.
struct Section {
  SectionKind kind = SectionKind::Collision;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const Section&) const = default;
};

/// Ordered gate list over a register layout, partitioned into labelled sections.
struct CircuitIR {
  RegisterLayout layout;
  std::vector<GateOp> gates;
  std::vector<Section> sections;

  CircuitIR() = default;
  explicit CircuitIR(RegisterLayout l) : layout(l) {}

  int num_qubits() const { return layout.total_qubits(); }
  std::size_t size() const { return gates.size(); }

  /// Appends `ops` as a new section (an empty section is still recorded).
  void append(SectionKind kind, std::vector<GateOp> ops);
  /// Appends every section of `other`; layouts must match.
  void append(const CircuitIR& other);
  /// Sections with the given label, in order.
  std::vector<Section> sections_of(SectionKind kind) const;
  /// Throws ConfigurationError if a gate touches a qubit outside the layout
  /// or the sections do not partition the gate list.
  void validate() const;

  bool operator==(const CircuitIR&) const = default;
};

/// Line-oriented text form:
///
///   qlbm-circuit 1
///   layout dim=2 d=3 site=3 s=1 b=0        (or: layout generic n=5)
///   section collision 0 4
///   H [11] [] []
///   DIAG [6,7,8] [~11] [0.5,1.25,...]
///   MCX [0] [6,~7,8] []
///
/// One gate per line as `KIND [targets] [controls] [params]`; `~q` marks a
/// control that fires on |0>. Doubles carry 17 significant digits, so the
/// text round-trips exactly.
std::string to_text(const CircuitIR& circuit);
CircuitIR circuit_from_text(std::string_view text);

}  // namespace qlbm
