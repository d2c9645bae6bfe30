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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI/CLI.hpp>
#include <nlohmann/json.hpp>

#include "qlbm/error.hpp"
#include "qlbm/field_io.hpp"
#include "qlbm/lattice.hpp"
#include "qlbm/manifest.hpp"
#include "qlbm/resources.hpp"
#include "qlbm/solver.hpp"

namespace qlbm::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr double kAdvdiffTolerance = 1e-8;
constexpr double kCavityTolerance = 1e-6;

struct Flags {
  std::string manifest;
  std::optional<std::string> out;
  std::optional<std::string> variant;
  std::optional<std::string> backend;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sets;
};

// Raised while turning a manifest into a run plan; reported as a usage error.
[[noreturn]] void bad_value(const Manifest& m, std::string_view key, const std::string& what) {
  throw ManifestError(m.line_of(key), "key '" + std::string(key) + "': " + what);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string pick(const Manifest& m, std::string_view key, std::string_view fallback,
                 std::initializer_list<std::string_view> allowed) {
  const auto v = lower(m.get_string(key, fallback));
  if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
    std::string list;
    for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    bad_value(m, key, "expected one of " + list + ", got '" + v + "'");
  }
  return v;
}

int positive_int(const Manifest& m, std::string_view key, std::int64_t fallback,
                 std::int64_t min = 1) {
  const auto v = m.get_int(key, fallback);
  if (v < min || v > 1'000'000) bad_value(m, key, "out of range");
  return static_cast<int>(v);
}

std::size_t extent_value(const Manifest& m, std::string_view key, std::size_t fallback) {
  const auto v = m.get_int(key, static_cast<std::int64_t>(fallback));
  if (v < 2 || !is_power_of_two(static_cast<std::size_t>(v)) || v > (1 << 12)) {
    bad_value(m, key, "must be a power of two >= 2");
  }
  return static_cast<std::size_t>(v);
}

Backend backend_of(const Manifest& m) {
  return pick(m, "backend", "statevector", {"statevector", "sampling"}) == "sampling"
             ? Backend::Sampling
             : Backend::Statevector;
}

void apply_flags(Manifest& m, const Flags& f) {
  for (const auto& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ManifestError(0, "--set expects key=value, got '" + kv + "'");
    }
    m.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (f.out) m.set("out", *f.out);
  if (f.variant) m.set("variant", *f.variant);
  if (f.backend) m.set("backend", *f.backend);
  if (f.seed) m.set("seed", std::to_string(*f.seed));
}

// ---------------------------------------------------------------------------
// Output helpers.

class OutputDir {
 public:
  explicit OutputDir(fs::path root) : root_(std::move(root)) {}

  const fs::path& root() const { return root_; }
  std::size_t files() const { return files_; }

  void write(const fs::path& rel, const std::string& text) {
    const auto p = root_ / rel;
    fs::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    os << text;
    if (!os) throw std::runtime_error("cannot write '" + p.string() + "'");
    ++files_;
  }

  template <typename Fn>
  void write_with(const fs::path& rel, Fn&& fn) {
    std::ostringstream os;
    fn(os);
    write(rel, os.str());
  }

 private:
  fs::path root_;
  std::size_t files_ = 0;
};

std::string step_name(int step, int last) {
  const auto width = std::max<std::size_t>(4, std::to_string(last).size());
  auto s = std::to_string(step);
  return "step_" + std::string(width - s.size(), '0') + s + ".csv";
}

std::string fmt(double v) { return detail::format_double(v); }

ordered_json branches_json(const std::vector<BranchProbability>& b) {
  ordered_json j = ordered_json::object();
  for (const auto& p : b) j[p.label] = p.value;
  return j;
}

double min_branch(const std::vector<StepRecord>& records) {
  double m = 1.0;
  for (const auto& r : records) {
    for (const auto& b : r.branch_probabilities) m = std::min(m, b.value);
  }
  return m;
}

void write_error_grid(std::ostream& os, const RelativeError& e) {
  os << "x,y,epsilon,masked\n";
  const auto& d = e.values.dims;
  for (std::size_t y = 0; y < d.ny; ++y) {
    for (std::size_t x = 0; x < d.nx; ++x) {
      const auto i = y * d.nx + x;
      os << x << ',' << y << ',' << fmt(e.values.values[i]) << ',' << (e.masked[i] ? 1 : 0)
         << '\n';
    }
  }
}

void write_history(std::ostream& os, const std::vector<StepRecord>& records) {
  os << "step,x,y,psi,omega\n";
  for (const auto& r : records) {
    const auto& d = r.field.dims;
    for (std::size_t y = 0; y < d.ny; ++y) {
      for (std::size_t x = 0; x < d.nx; ++x) {
        os << r.step << ',' << x << ',' << y << ',' << fmt(r.field.at(x, y)) << ','
           << fmt(r.omega.at(x, y)) << '\n';
      }
    }
  }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Advection-diffusion set-up shared by advdiff, fidelity and verify.

const std::vector<std::string_view> kAdvdiffKeys = {
    "scheme", "nx", "ny", "steps", "backend", "shots", "seed", "out", "variant",
    "velocity", "background", "peak", "peak_x", "peak_y"};

RunConfig advdiff_config(const Manifest& m, int default_steps_1d, int default_steps_2d) {
  RunConfig c;
  try {
    c.scheme = LatticeScheme::from_name(m.get_string("scheme", "D1Q3"));
  } catch (const ConfigurationError& e) {
    bad_value(m, "scheme", e.what());
  }
  const bool two = c.scheme.dimension() == 2;
  const auto nx = extent_value(m, "nx", two ? 8 : 32);
  std::size_t ny = 1;
  if (two) {
    ny = extent_value(m, "ny", nx);
  } else if (m.has("ny") && m.get_int("ny") != 1) {
    bad_value(m, "ny", "1D schemes need ny = 1");
  }
  c.extents = {nx, ny};
  c.steps = positive_int(m, "steps", two ? default_steps_2d : default_steps_1d, 0);
  c.backend = backend_of(m);
  c.shots = m.get_uint("shots", 1u << 14);
  if (c.shots < 1) bad_value(m, "shots", "must be at least 1");
  c.seed = m.get_uint("seed", 0);
  c.params = FlowParams::standard(c.scheme);
  std::vector<double> vel = two ? std::vector<double>{0.2, 0.2} : std::vector<double>{0.2, 0.0};
  if (m.has("velocity")) vel = m.get_doubles("velocity");
  if (vel.size() == 1) vel.push_back(0.0);
  if (vel.size() != 2 || !std::isfinite(vel[0]) || !std::isfinite(vel[1])) {
    bad_value(m, "velocity", "expected one or two finite components");
  }
  if (!two && vel[1] != 0.0) bad_value(m, "velocity", "1D schemes have no y component");
  c.params.advection_velocity = {vel[0], vel[1]};

  const double background = m.get_double("background", 0.1);
  const double peak = m.get_double("peak", two ? 0.3 : 0.2);
  const auto px = m.get_int("peak_x", two ? 4 : 10);
  const auto py = m.get_int("peak_y", two ? 4 : 0);
  if (px < 0 || static_cast<std::size_t>(px) >= nx) bad_value(m, "peak_x", "outside the lattice");
  if (py < 0 || static_cast<std::size_t>(py) >= ny) bad_value(m, "peak_y", "outside the lattice");
  if (!std::isfinite(background) || !std::isfinite(peak)) {
    bad_value(m, "background", "initial values must be finite");
  }
  c.initial = ScalarField(c.extents, background);
  c.initial.at(static_cast<std::size_t>(px), static_cast<std::size_t>(py)) = peak;
  if (all_of(c.initial.values.begin(), c.initial.values.end(), [](double v) { return v == 0.0; })) {
    bad_value(m, "peak", "the initial field must be non-zero somewhere");
  }
  if (c.backend == Backend::Sampling &&
      any_of(c.initial.values.begin(), c.initial.values.end(), [](double v) { return v < 0.0; })) {
    bad_value(m, "backend", "sampling decodes non-negative fields only");
  }
  try {
    c.validate();
    // Coefficient range is a property of the set-up, so check it here.
    make_lcu(collision_coefficients(c.scheme, c.params.advection_velocity,
                                    c.scheme.link_qubits()));
  } catch (const Error& e) {
    throw ManifestError(0, e.what());
  }
  return c;
}

ordered_json advdiff_header(const RunConfig& c) {
  ordered_json j;
  j["scheme"] = c.scheme.name();
  j["extents"] = {c.extents.nx, c.extents.ny};
  j["steps"] = c.steps;
  j["backend"] = c.backend == Backend::Sampling ? "sampling" : "statevector";
  if (c.backend == Backend::Sampling) j["shots"] = c.shots;
  j["seed"] = c.seed;
  j["advection_velocity"] = {c.params.advection_velocity[0], c.params.advection_velocity[1]};
  j["diffusion"] = c.params.diffusion;
  return j;
}

// ---------------------------------------------------------------------------
// Cavity set-up shared by cavity and verify.

struct CavityPlan {
  RunConfig config;
  std::string variant;
};

// In verify the `scheme` key belongs to the advection-diffusion check.
RunConfig cavity_config(const Manifest& m, std::string_view steps_key, bool owns_scheme = true) {
  RunConfig c;
  c.scheme = LatticeScheme::d2q5();
  if (owns_scheme && m.has("scheme") && lower(m.get_string("scheme")) != "d2q5") {
    bad_value(m, "scheme", "the cavity uses D2Q5");
  }
  const auto n = extent_value(m, "extent", 8);
  if (n < 4) bad_value(m, "extent", "the cavity needs an interior (extent >= 4)");
  c.extents = {n, n};
  c.steps = positive_int(m, steps_key, 80, 0);
  c.backend = backend_of(m);
  if (c.backend != Backend::Statevector) {
    bad_value(m, "backend", "the cavity runs on the statevector backend only");
  }
  c.seed = m.get_uint("seed", 0);
  c.boundary_mode = pick(m, "boundary_mode", "classical", {"classical", "quantum"}) == "quantum"
                        ? BoundaryMode::Quantum
                        : BoundaryMode::Classical;
  c.params = FlowParams::standard(c.scheme);
  c.cavity.extent = n;
  c.cavity.steps = c.steps;
  c.cavity.lid_speed = m.get_double("lid_speed", 1.0);
  if (!std::isfinite(c.cavity.lid_speed)) bad_value(m, "lid_speed", "must be finite");
  try {
    c.validate();
  } catch (const Error& e) {
    throw ManifestError(0, e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Subcommands. Each one parses its manifest into a plan (usage errors) and
// returns a callable that performs the run (run errors).

using Runner = std::function<void(OutputDir&, ordered_json& timing)>;

Runner plan_advdiff(const Manifest& m) {
  m.require_known(kAdvdiffKeys);
  const auto c = advdiff_config(m, 50, 20);
  const auto variant = pick(m, "variant", "all", {"all", "classical"});
  return [c, variant](OutputDir& out, ordered_json&) {
    const auto classical = run_advdiff_classical(c);
    auto summary = ordered_json{{"command", "advdiff"}};
    summary.update(advdiff_header(c));
    summary["variant"] = variant;
    for (const auto& r : classical) {
      out.write_with(fs::path("classical") / step_name(r.step, c.steps),
                     [&](std::ostream& os) { write_field_csv(os, r.field); });
    }
    const double mass0 = c.initial.sum();
    if (variant == "classical") {
      summary["mass"] = {{"initial", mass0}, {"final", classical.back().field.sum()}};
      out.write("summary.json", dump(summary));
      return;
    }
    const auto quantum = run_advdiff(c);
    double worst = 0.0;
    double drift = 0.0;
    ordered_json records = ordered_json::array();
    std::ostringstream errors;
    errors << "step,max_rel_err,mass,norm_factor\n";
    for (std::size_t t = 0; t < quantum.size(); ++t) {
      const auto& q = quantum[t];
      out.write_with(fs::path("quantum") / step_name(q.step, c.steps),
                     [&](std::ostream& os) { write_field_csv(os, q.field); });
      const double e = relative_error(classical[t].field, q.field).max_abs;
      const double mass = q.field.sum();
      worst = std::max(worst, e);
      drift = std::max(drift, std::abs(mass - mass0));
      errors << q.step << ',' << fmt(e) << ',' << fmt(mass) << ',' << fmt(q.norm_factor) << '\n';
      if (t == 0) continue;
      records.push_back({{"step", q.step},
                         {"max_rel_err", e},
                         {"norm_factor", q.norm_factor},
                         {"branch_probabilities", branches_json(q.branch_probabilities)}});
    }
    out.write("errors.csv", errors.str());
    summary["max_rel_err"] = worst;
    summary["mass"] = {{"initial", mass0},
                       {"final", quantum.back().field.sum()},
                       {"max_abs_drift", drift}};
    summary["records"] = records;
    out.write("summary.json", dump(summary));
  };
}

struct VortexCenter {
  std::size_t x = 0;
  std::size_t y = 0;
  double psi = 0.0;
  std::size_t extrema = 0;
};

// Largest |psi| in the interior and the number of interior local extrema.
VortexCenter find_vortex(const ScalarField& psi) {
  VortexCenter v;
  const auto& d = psi.dims;
  for (std::size_t y = 1; y + 1 < d.ny; ++y) {
    for (std::size_t x = 1; x + 1 < d.nx; ++x) {
      const double p = psi.at(x, y);
      if (std::abs(p) > std::abs(v.psi)) v = {x, y, p, v.extrema};
      bool min = true;
      bool max = true;
      for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        const double q = psi.at(x + static_cast<std::size_t>(dx), y + static_cast<std::size_t>(dy));
        min = min && p < q;
        max = max && p > q;
      }
      if (min || max) ++v.extrema;
    }
  }
  return v;
}

ordered_json quantum_cavity_json(const std::vector<StepRecord>& q,
                                 const std::vector<StepRecord>& classical, double& worst) {
  const auto e = relative_error_fields(classical.back().field, classical.back().omega,
                                       q.back().field, q.back().omega);
  double worst_all = 0.0;
  for (std::size_t t = 0; t < q.size(); ++t) {
    const auto et = relative_error_fields(classical[t].field, classical[t].omega, q[t].field,
                                          q[t].omega);
    worst_all = std::max({worst_all, et.psi.max_abs, et.omega.max_abs});
  }
  worst = worst_all;
  ordered_json j;
  j["max_eps_psi"] = e.psi.max_abs;
  j["max_eps_omega"] = e.omega.max_abs;
  j["max_eps_any_step"] = worst_all;
  j["min_branch_probability"] = min_branch(q);
  ordered_json records = ordered_json::array();
  for (std::size_t t = 1; t < q.size(); ++t) {
    records.push_back({{"step", q[t].step},
                       {"norm_factor", q[t].norm_factor},
                       {"branch_probabilities", branches_json(q[t].branch_probabilities)}});
  }
  j["records"] = records;
  return j;
}

double max_history_error(const std::vector<StepRecord>& a, const std::vector<StepRecord>& b) {
  double worst = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const auto e = relative_error_fields(a[t].field, a[t].omega, b[t].field, b[t].omega);
    worst = std::max({worst, e.psi.max_abs, e.omega.max_abs});
  }
  return worst;
}

const std::vector<std::string_view> kCavityKeys = {
    "scheme", "extent", "steps", "lid_speed", "boundary_mode", "backend", "seed", "out",
    "variant"};

Runner plan_cavity(const Manifest& m) {
  m.require_known(kCavityKeys);
  const auto c = cavity_config(m, "steps");
  const auto variant = pick(m, "variant", "all", {"all", "classical", "single", "frugal"});
  return [c, variant](OutputDir& out, ordered_json& timing) {
    using clock = std::chrono::steady_clock;
    ordered_json summary{{"command", "cavity"},
                         {"scheme", c.scheme.name()},
                         {"extent", c.cavity.extent},
                         {"steps", c.steps},
                         {"lid_speed", c.cavity.lid_speed},
                         {"boundary_mode",
                          c.boundary_mode == BoundaryMode::Quantum ? "quantum" : "classical"},
                         {"variant", variant}};
    auto t0 = clock::now();
    const auto classical = run_cavity_classical(c);
    timing["classical_s"] = std::chrono::duration<double>(clock::now() - t0).count();
    auto emit = [&](const std::string& name, const std::vector<StepRecord>& h) {
      out.write_with(fs::path(name) / "history.csv", [&](std::ostream& os) { write_history(os, h); });
      out.write_with(fs::path(name) / "psi_final.csv",
                     [&](std::ostream& os) { write_field_csv(os, h.back().field); });
      out.write_with(fs::path(name) / "omega_final.csv",
                     [&](std::ostream& os) { write_field_csv(os, h.back().omega); });
    };
    emit("classical", classical);
    const auto vortex = find_vortex(classical.back().field);
    summary["classical"] = {{"vortex_center", {vortex.x, vortex.y}},
                            {"vortex_psi", vortex.psi},
                            {"interior_extrema", vortex.extrema},
                            {"steady_state_step", steady_state_step(
                                                      [&] {
                                                        std::vector<CavityState> s;
                                                        for (const auto& r : classical) {
                                                          s.push_back({r.field, r.omega});
                                                        }
                                                        return s;
                                                      }(),
                                                      1e-8)}};

    std::optional<std::vector<StepRecord>> single;
    std::optional<std::vector<StepRecord>> frugal;
    auto quantum = [&](const std::string& name, auto driver) {
      const auto s0 = clock::now();
      auto h = driver(c);
      timing[name + "_s"] = std::chrono::duration<double>(clock::now() - s0).count();
      emit(name, h);
      const auto e = relative_error_fields(classical.back().field, classical.back().omega,
                                           h.back().field, h.back().omega);
      out.write_with(fs::path("errors") / (name + "_psi.csv"),
                     [&](std::ostream& os) { write_error_grid(os, e.psi); });
      out.write_with(fs::path("errors") / (name + "_omega.csv"),
                     [&](std::ostream& os) { write_error_grid(os, e.omega); });
      double worst = 0.0;
      summary[name] = quantum_cavity_json(h, classical, worst);
      return h;
    };
    if (variant == "all" || variant == "single") single = quantum("single", run_cavity_single);
    if (variant == "all" || variant == "frugal") frugal = quantum("frugal", run_cavity_frugal);
    if (single && frugal) summary["frugal_vs_single"] = max_history_error(*single, *frugal);
    out.write("summary.json", dump(summary));
  };
}

const std::vector<std::string_view> kFidelityKeys = {
    "scheme", "nx", "ny", "steps", "backend", "shots", "seed", "out", "variant",
    "velocity", "background", "peak", "peak_x", "peak_y", "shot_list", "trials"};

Runner plan_fidelity(const Manifest& m) {
  m.require_known(kFidelityKeys);
  const auto c = advdiff_config(m, 50, 20);
  pick(m, "variant", "all", {"all"});
  std::vector<std::uint64_t> shots;
  for (int p = 10; p <= 18; ++p) shots.push_back(std::uint64_t{1} << p);
  if (m.has("shot_list")) shots = m.get_uints("shot_list");
  if (shots.empty()) bad_value(m, "shot_list", "needs at least one value");
  for (auto s : shots) {
    if (s < 1 || s > (std::uint64_t{1} << 32)) bad_value(m, "shot_list", "shots out of range");
  }
  const int trials = positive_int(m, "trials", 5);
  return [c, shots, trials](OutputDir& out, ordered_json&) {
    const auto sweep = fidelity_sweep(c, shots, trials);
    std::ostringstream raw;
    raw << "shots,trial,seed,fidelity\n";
    std::ostringstream mean;
    mean << "shots,mean_fidelity,infidelity\n";
    ordered_json points = ordered_json::array();
    for (const auto& p : sweep.points) {
      for (std::size_t k = 0; k < p.fidelities.size(); ++k) {
        raw << p.shots << ',' << k << ',' << p.seeds[k] << ',' << fmt(p.fidelities[k]) << '\n';
      }
      mean << p.shots << ',' << fmt(p.mean_fidelity) << ',' << fmt(1.0 - p.mean_fidelity) << '\n';
      points.push_back(
          {{"shots", p.shots}, {"mean_fidelity", p.mean_fidelity}, {"seeds", p.seeds}});
    }
    out.write("fidelity.csv", raw.str());
    out.write("fidelity_mean.csv", mean.str());
    ordered_json summary{{"command", "fidelity"}};
    summary.update(advdiff_header(c));
    summary["backend"] = "sampling";
    summary.erase("shots");
    summary["trials"] = trials;
    summary["points"] = points;
    if (sweep.slope) summary["slope"] = *sweep.slope;
    out.write("summary.json", dump(summary));
  };
}

const std::vector<std::string_view> kResourceKeys = {
    "extents", "single_qubit_time", "cnot_time", "backend", "seed", "out", "variant"};

Runner plan_resources(const Manifest& m) {
  m.require_known(kResourceKeys);
  pick(m, "variant", "all", {"all"});
  backend_of(m);
  std::vector<std::uint64_t> raw{2, 4, 8, 16, 32, 64};
  if (m.has("extents")) raw = m.get_uints("extents");
  if (raw.empty()) bad_value(m, "extents", "needs at least one extent");
  std::vector<std::size_t> extents;
  for (auto e : raw) {
    if (e < 2 || e > 256 || !is_power_of_two(e)) {
      bad_value(m, "extents", "extents must be powers of two in [2, 256]");
    }
    extents.push_back(e);
  }
  GateDurationTable durations;
  durations.single_qubit = m.get_double("single_qubit_time", durations.single_qubit);
  durations.cnot = m.get_double("cnot_time", durations.cnot);
  try {
    durations.validate();
  } catch (const Error& e) {
    throw ManifestError(m.line_of("cnot_time"), e.what());
  }
  return [extents, durations](OutputDir& out, ordered_json&) {
    const auto sweep = scaling_sweep(extents, durations);
    out.write_with("resources.csv", [&](std::ostream& os) { write_resource_csv(os, sweep); });
    out.write("resources.json", resource_summary_json(sweep));
    ordered_json gaps = ordered_json::array();
    bool monotone = true;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      gaps.push_back({{"extent", sweep[i].extent}, {"cnot_gap", sweep[i].cnot_gap()}});
      if (i > 0 && sweep[i].cnot_gap() < sweep[i - 1].cnot_gap()) monotone = false;
    }
    ordered_json summary{{"command", "resources"},
                         {"single_qubit_time_s", durations.single_qubit},
                         {"cnot_time_s", durations.cnot},
                         {"cnot_gap", gaps},
                         {"cnot_gap_non_decreasing", monotone}};
    out.write("summary.json", dump(summary));
  };
}

const std::vector<std::string_view> kVerifyKeys = {
    "scheme", "nx", "ny", "steps", "velocity", "background", "peak", "peak_x", "peak_y",
    "extent", "cavity_steps", "lid_speed", "boundary_mode", "backend", "seed", "out",
    "variant", "shots"};

// Clears `passed` when a check fails; the caller maps that to a run error.
Runner plan_verify(const Manifest& m, bool& passed) {
  m.require_known(kVerifyKeys);
  const auto variant = pick(m, "variant", "all", {"all", "advdiff", "cavity"});
  if (backend_of(m) != Backend::Statevector) {
    bad_value(m, "backend", "verification runs on the statevector backend");
  }
  const auto ad = advdiff_config(m, 50, 20);
  const auto cav = cavity_config(m, "cavity_steps", false);
  return [ad, cav, variant, &passed](OutputDir& out, ordered_json&) {
    ordered_json checks = ordered_json::array();
    auto check = [&](const std::string& name, double value, double tol) {
      const bool ok = value <= tol;
      passed = passed && ok;
      checks.push_back({{"check", name}, {"value", value}, {"tolerance", tol}, {"pass", ok}});
    };
    if (variant != "cavity") {
      const auto q = run_advdiff(ad);
      const auto k = run_advdiff_classical(ad);
      double worst = 0.0;
      for (std::size_t t = 0; t < q.size(); ++t) {
        worst = std::max(worst, relative_error(k[t].field, q[t].field).max_abs);
      }
      check("advdiff_" + ad.scheme.name() + "_vs_classical", worst, kAdvdiffTolerance);
      check("advdiff_mass_drift", std::abs(q.back().field.sum() - q.front().field.sum()),
            kAdvdiffTolerance);
    }
    if (variant != "advdiff") {
      const auto k = run_cavity_classical(cav);
      const auto f = run_cavity_frugal(cav);
      const auto s = run_cavity_single(cav);
      check("cavity_frugal_vs_classical", max_history_error(k, f), kCavityTolerance);
      check("cavity_single_vs_classical", max_history_error(k, s), kCavityTolerance);
      check("cavity_frugal_vs_single", max_history_error(s, f), kCavityTolerance);
    }
    out.write("verify.json", dump({{"command", "verify"}, {"checks", checks}, {"pass", passed}}));
  };
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("manifest", f.manifest, "Run manifest (key = value)")->required();
  sub->add_option("--out", f.out, "Output directory (manifest key: out)");
  sub->add_option("--seed", f.seed, "RNG seed (manifest key: seed)");
  sub->add_option("--variant", f.variant, "Variant selector (manifest key: variant)");
  sub->add_option("--backend", f.backend, "statevector | sampling (manifest key: backend)");
  sub->add_option("--set", f.sets, "Override any manifest key: --set key=value");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum lattice Boltzmann toolkit"};
  app.name("qlbm");
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"advdiff", "Advection-diffusion run, quantum against the classical oracle"},
      {"cavity", "Lid-driven cavity: classical, single-circuit and two-circuit runs"},
      {"fidelity", "Fidelity against shot count on the sampled final state"},
      {"resources", "Gate counts, depth and runtime of single vs two-circuit variants"},
      {"verify", "Oracle checks with pass/fail verdicts"}};
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  Runner runner;
  bool verified = true;
  fs::path out_dir;
  try {
    auto m = Manifest::load(flags.manifest);
    apply_flags(m, flags);
    out_dir = m.get_string("out", "qlbm-out");
    if (command == "advdiff") runner = plan_advdiff(m);
    if (command == "cavity") runner = plan_cavity(m);
    if (command == "fidelity") runner = plan_fidelity(m);
    if (command == "resources") runner = plan_resources(m);
    if (command == "verify") runner = plan_verify(m, verified);
  } catch (const ManifestError& e) {
    err << "qlbm: " << flags.manifest << ": " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "qlbm: " << flags.manifest << ": " << e.what() << '\n';
    return kUsageError;
  }

  try {
    OutputDir dir(out_dir);
    ordered_json timing{{"command", command}};
    const auto t0 = std::chrono::steady_clock::now();
    runner(dir, timing);
    timing["wall_clock_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    dir.write("timing.json", dump(timing));
    out << command << ": wrote " << dir.files() << " files to " << dir.root().string() << '\n';
  } catch (const std::exception& e) {
    err << "qlbm " << command << ": " << e.what() << '\n';
    return kRunError;
  }
  if (!verified) {
    err << "qlbm verify: one or more checks failed (see verify.json)\n";
    return kRunError;
  }
  return kOk;
}

}  // namespace qlbm::cli
