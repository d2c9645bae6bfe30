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

#include "qlbm/resources.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

#include "qlbm/builders.hpp"
#include "qlbm/error.hpp"
#include "qlbm/field_io.hpp"

namespace qlbm {

void GateDurationTable::validate() const {
  if (!(single_qubit > 0.0) || !(cnot > 0.0) || !std::isfinite(single_qubit) ||
      !std::isfinite(cnot)) {
    throw ConfigurationError("gate durations must be positive and finite");
  }
}

ResourceReport count_resources(const CircuitIR& circuit, const GateDurationTable& durations) {
  durations.validate();
  if (!is_basis_circuit(circuit)) {
    throw ConfigurationError("count_resources expects a circuit lowered to the CNOT basis");
  }
  ResourceReport r;
  r.qubits = circuit.num_qubits();
  std::vector<std::uint64_t> layer(static_cast<std::size_t>(r.qubits), 0);
  std::vector<double> clock(static_cast<std::size_t>(r.qubits), 0.0);
  for (const auto& s : circuit.sections) {
    const std::string name(section_name(s.kind));
    auto it = std::find_if(r.sections.begin(), r.sections.end(),
                           [&](const SectionCounts& c) { return c.section == name; });
    if (it == r.sections.end()) {
      r.sections.push_back({name, 0, 0});
      it = std::prev(r.sections.end());
    }
    for (std::size_t i = s.begin; i < s.end; ++i) {
      const auto& g = circuit.gates[i];
      const auto qubits = g.qubits();
      const bool two = g.is_cnot();
      std::uint64_t start_layer = 0;
      double start = 0.0;
      for (int q : qubits) {
        start_layer = std::max(start_layer, layer[static_cast<std::size_t>(q)]);
        start = std::max(start, clock[static_cast<std::size_t>(q)]);
      }
      const double finish = start + (two ? durations.cnot : durations.single_qubit);
      for (int q : qubits) {
        layer[static_cast<std::size_t>(q)] = start_layer + 1;
        clock[static_cast<std::size_t>(q)] = finish;
      }
      r.depth = std::max(r.depth, start_layer + 1);
      r.runtime_s = std::max(r.runtime_s, finish);
      if (two) {
        ++r.cnot_count;
        ++it->cnot;
      } else {
        ++r.single_qubit_count;
        ++it->single_qubit;
      }
    }
  }
  return r;
}

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::SingleCircuit: return "single-circuit";
    case Variant::StreamFunction: return "stream-function";
    case Variant::Vorticity: return "vorticity";
    case Variant::StreamFunctionNoBoundary: return "stream-function-no-boundary";
    case Variant::VorticityNoBoundary: return "vorticity-no-boundary";
  }
  return "?";
}

const VariantReport& Comparison::get(Variant v) const {
  for (const auto& r : variants) {
    if (r.variant == v) return r;
  }
  throw ConfigurationError("variant missing from comparison");
}

namespace {
std::pair<Variant, Variant> frugal_pair(bool classical) {
  return classical ? std::pair{Variant::StreamFunctionNoBoundary, Variant::VorticityNoBoundary}
                   : std::pair{Variant::StreamFunction, Variant::Vorticity};
}
}  // namespace

std::uint64_t Comparison::frugal_cnot(bool classical_boundaries) const {
  const auto [s, v] = frugal_pair(classical_boundaries);
  return get(s).report.cnot_count + get(v).report.cnot_count;
}

std::uint64_t Comparison::concurrent_depth(bool classical_boundaries) const {
  const auto [s, v] = frugal_pair(classical_boundaries);
  return std::max(get(s).report.depth, get(v).report.depth);
}

double Comparison::concurrent_runtime(bool classical_boundaries) const {
  const auto [s, v] = frugal_pair(classical_boundaries);
  return std::max(get(s).report.runtime_s, get(v).report.runtime_s);
}

double Comparison::cnot_reduction_pct(bool classical_boundaries) const {
  const double single = static_cast<double>(get(Variant::SingleCircuit).report.cnot_count);
  return 100.0 * (single - static_cast<double>(frugal_cnot(classical_boundaries))) / single;
}

double Comparison::depth_reduction_pct(bool classical_boundaries) const {
  const double single = static_cast<double>(get(Variant::SingleCircuit).report.depth);
  return 100.0 * (single - static_cast<double>(concurrent_depth(classical_boundaries))) / single;
}

std::int64_t Comparison::cnot_gap() const {
  return static_cast<std::int64_t>(get(Variant::SingleCircuit).report.cnot_count) -
         static_cast<std::int64_t>(frugal_cnot(true));
}

Comparison compare_single_vs_frugal(std::size_t extent, const GateDurationTable& durations) {
  const auto scheme = LatticeScheme::d2q5();
  const Extents dims{extent, extent};
  const auto zero = VelocityField::uniform(dims, {0.0, 0.0});
  Comparison cmp;
  cmp.extent = extent;
  auto add = [&](Variant v, const CircuitIR& c) {
    VariantReport vr;
    vr.variant = v;
    vr.report = count_resources(decompose_to_basis(c), durations);
    vr.encode = count_resources(decompose_to_basis(build_encode_section(c.layout)), durations);
    cmp.variants.push_back(std::move(vr));
  };
  const auto single_layout = layout_for(scheme, extent, true, true);
  add(Variant::SingleCircuit, build_single_circuit(scheme, single_layout, zero));
  add(Variant::StreamFunction,
      build_stream_function_circuit(scheme, BoundaryMode::Quantum,
                                    layout_for(scheme, extent, true, true)));
  add(Variant::Vorticity, build_vorticity_circuit(scheme, BoundaryMode::Quantum,
                                                  layout_for(scheme, extent, false, true), zero));
  add(Variant::StreamFunctionNoBoundary,
      build_stream_function_circuit(scheme, BoundaryMode::Classical,
                                    layout_for(scheme, extent, true, false)));
  add(Variant::VorticityNoBoundary,
      build_vorticity_circuit(scheme, BoundaryMode::Classical,
                              layout_for(scheme, extent, false, false), zero));
  return cmp;
}

std::vector<Comparison> scaling_sweep(const std::vector<std::size_t>& extents,
                                      const GateDurationTable& durations) {
  if (extents.empty()) throw ConfigurationError("scaling sweep needs at least one extent");
  std::vector<Comparison> out;
  out.reserve(extents.size());
  for (auto e : extents) out.push_back(compare_single_vs_frugal(e, durations));
  return out;
}

void write_resource_csv(std::ostream& os, const std::vector<Comparison>& comparisons) {
  os << "extent,variant,qubits,cnot,single_qubit,depth,concurrent_depth,runtime_s,section,"
        "section_cnot\n";
  for (const auto& cmp : comparisons) {
    for (const auto& vr : cmp.variants) {
      std::uint64_t concurrent = vr.report.depth;
      if (vr.variant == Variant::StreamFunction || vr.variant == Variant::Vorticity) {
        concurrent = cmp.concurrent_depth(false);
      } else if (vr.variant != Variant::SingleCircuit) {
        concurrent = cmp.concurrent_depth(true);
      }
      const auto& r = vr.report;
      auto row = [&](const ResourceReport& rep, std::string_view section, std::uint64_t cnot) {
        os << cmp.extent << ',' << variant_name(vr.variant) << ',' << rep.qubits << ','
           << rep.cnot_count << ',' << rep.single_qubit_count << ',' << rep.depth << ','
           << concurrent << ',' << detail::format_double(rep.runtime_s) << ',' << section << ','
           << cnot << '\n';
      };
      for (const auto& s : r.sections) row(r, s.section, s.cnot);
      row(r, "total", r.cnot_count);
      row(vr.encode, "encode", vr.encode.cnot_count);
    }
  }
}

std::string resource_summary_json(const std::vector<Comparison>& comparisons) {
  using nlohmann::ordered_json;
  ordered_json root = ordered_json::array();
  for (const auto& cmp : comparisons) {
    ordered_json e;
    e["extent"] = cmp.extent;
    ordered_json rows = ordered_json::array();
    for (const auto& vr : cmp.variants) {
      ordered_json row;
      row["variant"] = variant_name(vr.variant);
      row["qubits"] = vr.report.qubits;
      row["cnot"] = vr.report.cnot_count;
      row["single_qubit"] = vr.report.single_qubit_count;
      row["depth"] = vr.report.depth;
      row["runtime_s"] = vr.report.runtime_s;
      ordered_json sections = ordered_json::object();
      for (const auto& s : vr.report.sections) sections[s.section] = s.cnot;
      row["section_cnot"] = sections;
      row["encode_cnot"] = vr.encode.cnot_count;
      rows.push_back(row);
    }
    e["variants"] = rows;
    for (bool classical : {true, false}) {
      ordered_json f;
      f["cnot"] = cmp.frugal_cnot(classical);
      f["concurrent_depth"] = cmp.concurrent_depth(classical);
      f["concurrent_runtime_s"] = cmp.concurrent_runtime(classical);
      f["cnot_reduction_pct"] = cmp.cnot_reduction_pct(classical);
      f["depth_reduction_pct"] = cmp.depth_reduction_pct(classical);
      e[classical ? "frugal_classical_boundaries" : "frugal_quantum_boundaries"] = f;
    }
    root.push_back(e);
  }
  return root.dump(2) + "\n";
}

}  // namespace qlbm
