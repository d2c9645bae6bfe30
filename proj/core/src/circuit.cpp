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

#include "qlbm/circuit.hpp"

#include <string>

#include "qlbm/error.hpp"

namespace qlbm {

std::vector<int> QubitRange::qubits() const {
  std::vector<int> q;
  for (int i = 0; i < width; ++i) q.push_back(offset + i);
  return q;
}

RegisterLayout RegisterLayout::make(int dimension, int link_qubits, int site_qubits, bool source,
                                    bool boundary) {
  if (dimension != 1 && dimension != 2) throw ConfigurationError("dimension must be 1 or 2");
  if (link_qubits < 1 || site_qubits < 1) {
    throw ConfigurationError("register widths must be at least one qubit");
  }
  RegisterLayout l;
  l.dimension_ = dimension;
  l.link_qubits_ = link_qubits;
  l.site_qubits_ = site_qubits;
  l.source_ = source;
  l.boundary_ = boundary;
  return l;
}

RegisterLayout RegisterLayout::generic(int num_qubits) {
  if (num_qubits < 1) throw ConfigurationError("a circuit needs at least one qubit");
  RegisterLayout l;
  l.generic_ = true;
  l.generic_qubits_ = num_qubits;
  return l;
}

std::size_t RegisterLayout::sites() const {
  return dimension_ == 2 ? extent() * extent() : extent();
}

namespace {
void require_named(bool generic) {
  if (generic) throw ConfigurationError("generic layouts have no named registers");
}
}  // namespace

QubitRange RegisterLayout::r0() const {
  require_named(generic_);
  return {0, site_qubits_};
}
QubitRange RegisterLayout::r1() const {
  require_named(generic_);
  return {site_qubits_, dimension_ == 2 ? site_qubits_ : 0};
}
QubitRange RegisterLayout::d() const {
  const auto r = r1();
  return {r.offset + r.width, link_qubits_};
}
QubitRange RegisterLayout::s() const {
  const auto dd = d();
  return {dd.offset + dd.width, source_ ? 1 : 0};
}
QubitRange RegisterLayout::b() const {
  const auto ss = s();
  return {ss.offset + ss.width, boundary_ ? 1 : 0};
}
QubitRange RegisterLayout::a() const {
  const auto bb = b();
  return {bb.offset + bb.width, 1};
}

std::vector<int> RegisterLayout::position_qubits() const {
  auto q = r0().qubits();
  for (int i : r1().qubits()) q.push_back(i);
  return q;
}

int RegisterLayout::total_qubits() const {
  if (generic_) return generic_qubits_;
  return 1 + link_qubits_ + dimension_ * site_qubits_ + (source_ ? 1 : 0) + (boundary_ ? 1 : 0);
}

std::string_view section_name(SectionKind kind) {
  switch (kind) {
    case SectionKind::Encode: return "encode";
    case SectionKind::Collision: return "collision";
    case SectionKind::Streaming: return "streaming";
    case SectionKind::Macro: return "macro";
    case SectionKind::Boundary: return "boundary";
  }
  return "?";
}

SectionKind section_from_name(std::string_view name) {
  for (auto k : {SectionKind::Encode, SectionKind::Collision, SectionKind::Streaming,
                 SectionKind::Macro, SectionKind::Boundary}) {
    if (section_name(k) == name) return k;
  }
  throw FormatError("unknown section '" + std::string(name) + "'");
}

void CircuitIR::append(SectionKind kind, std::vector<GateOp> ops) {
  const std::size_t begin = gates.size();
  gates.insert(gates.end(), std::make_move_iterator(ops.begin()),
               std::make_move_iterator(ops.end()));
  sections.push_back({kind, begin, gates.size()});
}

void CircuitIR::append(const CircuitIR& other) {
  if (!(other.layout == layout)) throw ConfigurationError("cannot join circuits on different layouts");
  const std::size_t offset = gates.size();
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  for (auto s : other.sections) {
    s.begin += offset;
    s.end += offset;
    sections.push_back(s);
  }
}

std::vector<Section> CircuitIR::sections_of(SectionKind kind) const {
  std::vector<Section> out;
  for (const auto& s : sections) {
    if (s.kind == kind) out.push_back(s);
  }
  return out;
}

void CircuitIR::validate() const {
  const int n = num_qubits();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    validate_gate(gates[i]);
    for (int q : gates[i].qubits()) {
      if (q >= n) {
        throw ConfigurationError("gate " + std::to_string(i) + " touches qubit " +
                                 std::to_string(q) + " outside a " + std::to_string(n) +
                                 "-qubit layout");
      }
    }
  }
  std::size_t cursor = 0;
  for (const auto& s : sections) {
    if (s.begin != cursor || s.end < s.begin) {
      throw ConfigurationError("sections do not partition the gate list");
    }
    cursor = s.end;
  }
  if (cursor != gates.size()) throw ConfigurationError("sections do not cover the gate list");
}

}  // namespace qlbm
