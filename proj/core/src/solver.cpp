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

#include "qlbm/solver.hpp"

#include <cmath>
#include <future>

#include "qlbm/error.hpp"
#include "qlbm/rng.hpp"
#include "qlbm/statevector.hpp"

namespace qlbm {
namespace {

std::size_t extent_of(const RunConfig& c) { return c.extents.nx; }

// Field values copied into every used link slot: index site + sites * slot.
void replicate(const std::vector<double>& field, std::size_t links, std::size_t sites,
               std::vector<double>& out, std::size_t offset) {
  for (std::size_t a = 0; a < links; ++a) {
    for (std::size_t r = 0; r < sites; ++r) out[offset + r + sites * a] = field[r];
  }
}

bool all_zero(const std::vector<double>& v) {
  for (double x : v) {
    if (x != 0.0) return false;
  }
  return true;
}

// Selects a = 0, then b and s (when present and requested), then d = 0...0.
double select_branches(QuantumState& state, const RegisterLayout& layout, const std::string& tag,
                       std::vector<BranchProbability>& record, bool select_source = true) {
  auto one = [&](std::vector<Control> c, const char* name) {
    const double p = postselect(state, c);
    record.push_back({tag + name, p});
  };
  one({{layout.a().offset, false}}, "a");
  if (layout.has_boundary()) one({{layout.b().offset, false}}, "b");
  if (select_source && layout.has_source()) one({{layout.s().offset, false}}, "s");
  std::vector<Control> d;
  for (int q : layout.d().qubits()) d.push_back({q, false});
  one(d, "d");
  return state.norm_factor;
}

ScalarField decode(const QuantumState& state, Extents dims, std::size_t offset, double scale) {
  ScalarField f(dims);
  for (std::size_t r = 0; r < f.size(); ++r) {
    f.values[r] = state.amplitudes[offset + r].real() * state.norm_factor * scale;
  }
  return f;
}

double macro_scale(const RegisterLayout& layout, bool include_source) {
  int h = layout.link_qubits() + (include_source && layout.has_source() ? 1 : 0);
  return std::pow(std::sqrt(2.0), h);
}

void check_finite(const ScalarField& f, int step, const char* what) {
  if (!f.all_finite()) throw DivergenceError(step, std::string(what) + " became non-finite");
}

// Rethrows library errors with the step number in front.
template <typename Fn>
auto at_step(int step, Fn&& fn) {
  try {
    return fn();
  } catch (const PostSelectionError& e) {
    throw PostSelectionError("step " + std::to_string(step) + ": " + e.what());
  } catch (const EncodingError& e) {
    throw EncodingError("step " + std::to_string(step) + ": " + e.what());
  }
}

struct JobResult {
  ScalarField field;
  std::vector<BranchProbability> branches;
  double norm_factor = 1.0;
};

JobResult run_job(const CircuitIR& circuit, const std::vector<double>& encoded, Extents dims,
                  bool sum_source, const std::string& tag) {
  JobResult out;
  if (all_zero(encoded)) {
    // The step map is linear: a zero input stays zero without running a job.
    out.field = ScalarField(dims);
    out.branches.push_back({tag + "skipped", 1.0});
    out.norm_factor = 0.0;
    return out;
  }
  auto state = amplitude_encode(encoded, circuit.num_qubits());
  apply_circuit(state, circuit);
  select_branches(state, circuit.layout, tag, out.branches);
  out.field = decode(state, dims, 0, macro_scale(circuit.layout, sum_source));
  out.norm_factor = state.norm_factor;
  return out;
}

ScalarField source_term(const ScalarField& omega, double lambda) {
  // S = -omega; the circuit carries lambda * S.
  ScalarField s(omega.dims);
  for (std::size_t i = 0; i < s.size(); ++i) s.values[i] = -lambda * omega.values[i];
  return s;
}

void validate_cavity(const RunConfig& config) {
  config.validate();
  if (config.scheme.name() != "D2Q5") throw ConfigurationError("the cavity uses the D2Q5 scheme");
  if (config.cavity.extent != config.extents.nx) {
    throw ConfigurationError("cavity extent does not match the run extents");
  }
  if (config.backend != Backend::Statevector) {
    throw ConfigurationError(
        "the cavity drivers need the statevector backend: psi and omega change sign, so "
        "sqrt-frequency decoding cannot recover them");
  }
}

}  // namespace

void RunConfig::validate() const {
  require_power_of_two(extents);
  if (scheme.dimension() == 1 && extents.ny != 1) {
    throw ConfigurationError("1D schemes need ny = 1");
  }
  if (scheme.dimension() == 2 && extents.nx != extents.ny) {
    throw ConfigurationError("2D runs need a square lattice");
  }
  if (extents.nx < 2) throw ConfigurationError("lattice extent must be at least 2");
  if (steps < 0) throw ConfigurationError("steps must be non-negative");
  if (backend == Backend::Sampling && shots < 1) {
    throw ConfigurationError("sampling needs at least one shot");
  }
  if (std::abs(params.epsilon() - 1.0) > 1e-12) {
    throw ConfigurationError("only the full-relaxation regime (dt = tau) is supported");
  }
}

std::vector<StepRecord> run_advdiff(const RunConfig& config) {
  config.validate();
  if (config.initial.dims != config.extents) {
    throw ConfigurationError("initial field does not match the run extents");
  }
  if (!config.initial.all_finite()) throw EncodingError("initial field is not finite");
  const auto& scheme = config.scheme;
  const auto layout = layout_for(scheme, extent_of(config));
  const auto circuit = build_advection_diffusion_circuit(scheme, config.params, layout);
  const std::size_t n = config.extents.sites();
  const std::size_t data = n * layout.link_slots();
  const double scale = macro_scale(layout, false);

  std::vector<StepRecord> out;
  out.push_back({0, config.initial, {}, {}, 1.0});
  for (int t = 1; t <= config.steps; ++t) {
    const auto& prev = out.back().field;
    std::vector<double> encoded(data, 0.0);
    replicate(prev.values, scheme.num_links(), n, encoded, 0);
    StepRecord rec;
    rec.step = t;
    if (all_zero(encoded)) {
      rec.field = ScalarField(config.extents);
      rec.branch_probabilities.push_back({"skipped", 1.0});
      rec.norm_factor = 0.0;
    } else if (config.backend == Backend::Statevector) {
      at_step(t, [&] {
        auto state = amplitude_encode(encoded, circuit.num_qubits());
        apply_circuit(state, circuit);
        select_branches(state, layout, "", rec.branch_probabilities);
        rec.field = decode(state, config.extents, 0, scale);
        rec.norm_factor = state.norm_factor;
        return 0;
      });
    } else {
      at_step(t, [&] {
        auto state = amplitude_encode(encoded, circuit.num_qubits());
        const double norm_in = state.norm_factor;
        apply_circuit(state, circuit);
        const auto hist = sample(state, config.shots, CounterRng::derive(config.seed, t));
        rec.field = ScalarField(config.extents);
        std::uint64_t hits = 0;
        for (std::size_t r = 0; r < n; ++r) {
          hits += hist.counts[r];
          rec.field.values[r] = std::sqrt(static_cast<double>(hist.counts[r]) /
                                          static_cast<double>(config.shots)) *
                                norm_in * scale;
        }
        if (hits == 0) throw PostSelectionError("no sample landed in the a = 0, d = 0 branch");
        const double p = static_cast<double>(hits) / static_cast<double>(config.shots);
        rec.branch_probabilities.push_back({"a,d", p});
        rec.norm_factor = norm_in * std::sqrt(p);
        return 0;
      });
    }
    check_finite(rec.field, t, "field");
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<StepRecord> run_advdiff_classical(const RunConfig& config) {
  config.validate();
  if (config.initial.dims != config.extents) {
    throw ConfigurationError("initial field does not match the run extents");
  }
  std::vector<StepRecord> out;
  out.push_back({0, config.initial, {}, {}, 1.0});
  for (int t = 1; t <= config.steps; ++t) {
    auto f = step_advection_diffusion(config.scheme, out.back().field, config.params);
    check_finite(f, t, "field");
    out.push_back({t, std::move(f), {}, {}, 1.0});
  }
  return out;
}

std::vector<StepRecord> run_cavity_classical(const RunConfig& config) {
  config.validate();
  auto spec = config.cavity;
  spec.steps = config.steps;
  const auto history = solve_cavity_classical(spec, config.params);
  std::vector<StepRecord> out;
  for (std::size_t t = 0; t < history.size(); ++t) {
    out.push_back({static_cast<int>(t), history[t].psi, history[t].omega, {}, 1.0});
  }
  return out;
}

std::vector<StepRecord> run_cavity_frugal(const RunConfig& config) {
  validate_cavity(config);
  const auto& scheme = config.scheme;
  auto spec = config.cavity;
  const bool quantum = config.boundary_mode == BoundaryMode::Quantum;
  const auto mode = config.boundary_mode;
  const auto stream_layout = layout_for(scheme, spec.extent, true, quantum);
  const auto vort_layout = layout_for(scheme, spec.extent, false, quantum);
  const auto stream_circuit = build_stream_function_circuit(scheme, mode, stream_layout);
  const double lambda = poisson_source_scale(scheme, config.params);
  const Extents dims = spec.extents();
  const std::size_t n = dims.sites();
  const std::size_t slots = stream_layout.link_slots();

  std::vector<StepRecord> out;
  const auto init = cavity_initial_state(spec);
  out.push_back({0, init.psi, init.omega, {}, 1.0});
  for (int t = 1; t <= config.steps; ++t) {
    const ScalarField psi = out.back().field;
    const ScalarField omega = out.back().omega;

    auto stream_job = std::async(std::launch::async, [&, psi, omega] {
      std::vector<double> encoded(2 * n * slots, 0.0);
      replicate(psi.values, scheme.num_links(), n, encoded, 0);
      replicate(source_term(omega, lambda).values, scheme.num_links(), n, encoded, n * slots);
      return at_step(t, [&] { return run_job(stream_circuit, encoded, dims, true, "stream."); });
    });
    auto vort_job = std::async(std::launch::async, [&, psi, omega] {
      const auto velocity = velocity_from_stream_function(psi, spec.dx, spec.dy);
      const auto circuit = build_vorticity_circuit(scheme, mode, vort_layout, velocity);
      std::vector<double> encoded(n * slots, 0.0);
      replicate(omega.values, scheme.num_links(), n, encoded, 0);
      return at_step(t, [&] { return run_job(circuit, encoded, dims, false, "vorticity."); });
    });
    auto s = stream_job.get();
    auto v = vort_job.get();

    auto bc = apply_cavity_boundaries(s.field, v.field, spec);
    check_finite(bc.psi, t, "psi");
    check_finite(bc.omega, t, "omega");
    StepRecord rec{t, std::move(bc.psi), std::move(bc.omega), std::move(s.branches), 1.0};
    rec.branch_probabilities.insert(rec.branch_probabilities.end(), v.branches.begin(),
                                    v.branches.end());
    rec.norm_factor = s.norm_factor * v.norm_factor;
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<StepRecord> run_cavity_single(const RunConfig& config) {
  validate_cavity(config);
  const auto& scheme = config.scheme;
  const auto spec = config.cavity;
  const auto layout = layout_for(scheme, spec.extent, true, true);
  const double lambda = poisson_source_scale(scheme, config.params);
  const Extents dims = spec.extents();
  const std::size_t n = dims.sites();
  const std::size_t block = n * layout.link_slots();
  const double scale = macro_scale(layout, false);

  std::vector<StepRecord> out;
  const auto init = cavity_initial_state(spec);
  out.push_back({0, init.psi, init.omega, {}, 1.0});
  for (int t = 1; t <= config.steps; ++t) {
    const auto& psi = out.back().field;
    const auto& omega = out.back().omega;
    ScalarField combined(dims);
    const auto src = source_term(omega, lambda);
    for (std::size_t i = 0; i < n; ++i) combined.values[i] = psi.values[i] + src.values[i];
    std::vector<double> encoded(2 * block, 0.0);
    replicate(combined.values, scheme.num_links(), n, encoded, 0);
    replicate(omega.values, scheme.num_links(), n, encoded, block);

    StepRecord rec;
    rec.step = t;
    ScalarField psi_next(dims);
    ScalarField omega_next(dims);
    if (all_zero(encoded)) {
      rec.branch_probabilities.push_back({"skipped", 1.0});
      rec.norm_factor = 0.0;
    } else {
      at_step(t, [&] {
        const auto velocity = velocity_from_stream_function(psi, spec.dx, spec.dy);
        const auto circuit = build_single_circuit(scheme, layout, velocity);
        auto state = amplitude_encode(encoded, circuit.num_qubits());
        apply_circuit(state, circuit);
        // s selects the field here, so both branches are kept.
        select_branches(state, layout, "", rec.branch_probabilities, false);
        psi_next = decode(state, dims, 0, scale);
        omega_next = decode(state, dims, block, scale);
        rec.norm_factor = state.norm_factor;
        return 0;
      });
    }
    auto bc = apply_cavity_boundaries(psi_next, omega_next, spec);
    check_finite(bc.psi, t, "psi");
    check_finite(bc.omega, t, "omega");
    rec.field = std::move(bc.psi);
    rec.omega = std::move(bc.omega);
    out.push_back(std::move(rec));
  }
  return out;
}

RelativeError relative_error(const ScalarField& classical, const ScalarField& quantum,
                             double floor) {
  if (classical.dims != quantum.dims) throw ConfigurationError("error fields on different grids");
  RelativeError e{ScalarField(classical.dims), std::vector<bool>(classical.size(), false), 0.0};
  for (std::size_t i = 0; i < classical.size(); ++i) {
    const double c = classical.values[i];
    if (std::abs(c) < floor) {
      e.masked[i] = true;
      continue;
    }
    e.values.values[i] = (c - quantum.values[i]) / c;
    e.max_abs = std::max(e.max_abs, std::abs(e.values.values[i]));
  }
  return e;
}

ErrorField relative_error_fields(const ScalarField& psi_classical,
                                 const ScalarField& omega_classical,
                                 const ScalarField& psi_quantum, const ScalarField& omega_quantum,
                                 double floor) {
  return {relative_error(psi_classical, psi_quantum, floor),
          relative_error(omega_classical, omega_quantum, floor)};
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ConfigurationError("a slope fit needs at least two points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw ConfigurationError("slope fit over identical abscissae");
  return sxy / sxx;
}

FidelitySweep fidelity_sweep(const RunConfig& config, const std::vector<std::uint64_t>& shots,
                             int trials) {
  if (trials < 1) throw ConfigurationError("fidelity sweep needs at least one trial");
  if (shots.empty()) throw ConfigurationError("fidelity sweep needs at least one shot count");
  auto sv = config;
  sv.backend = Backend::Statevector;
  const auto history = run_advdiff(sv);
  const auto& field = history.back().field;
  // The post-selected site state is the decoded field up to its norm.
  std::size_t dim = 1;
  int qubits = 0;
  while (dim < field.size()) {
    dim <<= 1;
    ++qubits;
  }
  std::vector<double> reference(field.values.begin(), field.values.end());
  reference.resize(dim, 0.0);
  const auto ref_state = amplitude_encode(reference, std::max(qubits, 1));

  FidelitySweep sweep;
  sweep.step = config.steps;
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < shots.size(); ++i) {
    if (shots[i] < 1) throw ConfigurationError("shot counts must be positive");
    FidelityPoint p;
    p.shots = shots[i];
    double sum = 0.0;
    for (int k = 0; k < trials; ++k) {
      const auto seed = CounterRng::derive(config.seed, (i << 20) + static_cast<std::size_t>(k));
      const auto hist = sample(ref_state, shots[i], seed);
      const double f = state_fidelity(hist, reference);
      p.fidelities.push_back(f);
      p.seeds.push_back(seed);
      sum += f;
    }
    p.mean_fidelity = sum / trials;
    if (p.mean_fidelity < 1.0) {
      lx.push_back(std::log(static_cast<double>(p.shots)));
      ly.push_back(std::log(1.0 / (1.0 - p.mean_fidelity)));
    }
    sweep.points.push_back(std::move(p));
  }
  if (lx.size() >= 2) sweep.slope = fit_slope(lx, ly);
  return sweep;
}

}  // namespace qlbm
