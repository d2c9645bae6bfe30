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

#include "qlbm/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "qlbm/error.hpp"

namespace qlbm {

LatticeScheme::LatticeScheme(std::string name, int dimension, std::vector<LinkVelocity> links,
                             std::vector<Rational> weights, Rational cs2)
    : name_(std::move(name)),
      dimension_(dimension),
      links_(std::move(links)),
      weights_(std::move(weights)),
      cs2_(cs2),
      sound_speed_(std::sqrt(cs2.value())) {}

LatticeScheme LatticeScheme::d1q2() {
  return LatticeScheme("D1Q2", 1, {{1, 0}, {-1, 0}}, {{1, 2}, {1, 2}}, {1, 1});
}

LatticeScheme LatticeScheme::d1q3() {
  return LatticeScheme("D1Q3", 1, {{0, 0}, {1, 0}, {-1, 0}}, {{2, 3}, {1, 6}, {1, 6}}, {1, 3});
}

LatticeScheme LatticeScheme::d2q5() {
  // w_1 is not listed separately in the literature; sum(w) = 1 forces 1/6.
  return LatticeScheme("D2Q5", 2, {{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                       {{2, 6}, {1, 6}, {1, 6}, {1, 6}, {1, 6}}, {1, 3});
}

LatticeScheme LatticeScheme::from_name(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "D1Q2") return d1q2();
  if (upper == "D1Q3") return d1q3();
  if (upper == "D2Q5") return d2q5();
  throw ConfigurationError("unknown lattice scheme '" + std::string(name) + "'");
}

int LatticeScheme::link_qubits() const {
  int q = 0;
  while ((std::size_t{1} << q) < links_.size()) ++q;
  return std::max(q, 1);
}

FlowParams FlowParams::standard(const LatticeScheme& scheme) {
  FlowParams p;
  p.relaxation_time = 1.0;
  p.dt = 1.0;
  p.diffusion = diffusion_from_relaxation(scheme, p.relaxation_time, p.dt);
  return p;
}

double diffusion_from_relaxation(const LatticeScheme& scheme, double relaxation_time, double dt) {
  return scheme.sound_speed_squared() * (relaxation_time - dt / 2.0);
}

double poisson_source_scale(const LatticeScheme& scheme, const FlowParams& params) {
  return scheme.sound_speed_squared() * (params.dt / 2.0 - params.relaxation_time);
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_power_of_two(const Extents& extents) {
  if (!is_power_of_two(extents.nx) || !is_power_of_two(extents.ny)) {
    throw ConfigurationError("grid extents must be powers of two, got " +
                             std::to_string(extents.nx) + "x" + std::to_string(extents.ny));
  }
}

ScalarField::ScalarField(Extents e, std::vector<double> v) : dims(e), values(std::move(v)) {
  if (values.size() != dims.sites()) {
    throw ConfigurationError("field has " + std::to_string(values.size()) + " values for " +
                             std::to_string(dims.sites()) + " sites");
  }
}

double ScalarField::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

bool ScalarField::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

VelocityField VelocityField::uniform(Extents dims, std::array<double, 2> c) {
  return {dims, std::vector<double>(dims.sites(), c[0]), std::vector<double>(dims.sites(), c[1])};
}

DistributionField::DistributionField(LatticeScheme s, Extents e)
    : scheme(std::move(s)), dims(e), values(scheme.num_links() * e.sites(), 0.0) {}

namespace {

void check_dimension(const LatticeScheme& scheme, const Extents& dims) {
  if (scheme.dimension() == 1 && dims.ny != 1) {
    throw ConfigurationError(scheme.name() + " needs a one-dimensional field, got ny = " +
                             std::to_string(dims.ny));
  }
}

// Destination site of `site` moved by (ex, ey) with wraparound.
std::size_t shifted_site(const Extents& dims, std::size_t site, int ex, int ey) {
  const auto nx = static_cast<std::ptrdiff_t>(dims.nx);
  const auto ny = static_cast<std::ptrdiff_t>(dims.ny);
  const auto x = static_cast<std::ptrdiff_t>(site % dims.nx);
  const auto y = static_cast<std::ptrdiff_t>(site / dims.nx);
  const auto xs = ((x + ex) % nx + nx) % nx;
  const auto ys = ((y + ey) % ny + ny) % ny;
  return static_cast<std::size_t>(ys * nx + xs);
}

}  // namespace

DistributionField equilibrium_distribution(const LatticeScheme& scheme, const ScalarField& field,
                                           const VelocityField& velocity) {
  check_dimension(scheme, field.dims);
  if (velocity.dims != field.dims) {
    throw ConfigurationError("velocity field extents do not match the scalar field");
  }
  DistributionField f(scheme, field.dims);
  const double cs2 = scheme.sound_speed_squared();
  for (std::size_t alpha = 0; alpha < scheme.num_links(); ++alpha) {
    const auto& e = scheme.link(alpha);
    const double w = scheme.weight(alpha);
    for (std::size_t site = 0; site < field.size(); ++site) {
      const double eu = e[0] * velocity.u[site] + e[1] * velocity.v[site];
      f.at(alpha, site) = w * (1.0 + eu / cs2) * field.values[site];
    }
  }
  return f;
}

DistributionField equilibrium_distribution(const LatticeScheme& scheme, const ScalarField& field,
                                           std::array<double, 2> velocity) {
  return equilibrium_distribution(scheme, field, VelocityField::uniform(field.dims, velocity));
}

DistributionField stream_periodic(const DistributionField& field) {
  DistributionField out(field.scheme, field.dims);
  for (std::size_t alpha = 0; alpha < field.scheme.num_links(); ++alpha) {
    const auto& e = field.scheme.link(alpha);
    for (std::size_t site = 0; site < field.sites(); ++site) {
      out.at(alpha, shifted_site(field.dims, site, e[0], e[1])) = field.at(alpha, site);
    }
  }
  return out;
}

ScalarField macro_moment(const DistributionField& field) {
  ScalarField phi(field.dims);
  for (std::size_t alpha = 0; alpha < field.scheme.num_links(); ++alpha) {
    for (std::size_t site = 0; site < field.sites(); ++site) {
      phi.values[site] += field.at(alpha, site);
    }
  }
  return phi;
}

ScalarField step_advection_diffusion(const LatticeScheme& scheme, const ScalarField& field,
                                     const FlowParams& params) {
  return step_advection_diffusion(
      scheme, field, VelocityField::uniform(field.dims, params.advection_velocity), params);
}

ScalarField step_advection_diffusion(const LatticeScheme& scheme, const ScalarField& field,
                                     const VelocityField& velocity, const FlowParams& params) {
  require_power_of_two(field.dims);
  if (std::abs(params.epsilon() - 1.0) > 1e-12) {
    throw ConfigurationError("only the full-relaxation regime (dt = tau) is supported");
  }
  return macro_moment(stream_periodic(equilibrium_distribution(scheme, field, velocity)));
}

ScalarField step_poisson(const LatticeScheme& scheme, const ScalarField& psi,
                         const ScalarField& source, const FlowParams& params) {
  if (psi.dims != source.dims) {
    throw ConfigurationError("stream function and source grids differ");
  }
  require_power_of_two(psi.dims);
  const double lambda = poisson_source_scale(scheme, params);
  ScalarField combined(psi.dims);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    combined.values[i] = psi.values[i] + lambda * source.values[i];
  }
  return macro_moment(stream_periodic(equilibrium_distribution(scheme, combined, std::array<double, 2>{0.0, 0.0})));
}

// ---------------------------------------------------------------------------

bool is_wall_site(const Extents& dims, std::size_t x, std::size_t y) {
  if (dims.ny == 1) return x == 0 || x + 1 == dims.nx;
  return x == 0 || y == 0 || x + 1 == dims.nx || y + 1 == dims.ny;
}

namespace {

// d(psi)/d(axis) at (x, y); axis 0 is x.
double derivative(const ScalarField& psi, std::size_t x, std::size_t y, int axis, double h) {
  const std::size_t n = axis == 0 ? psi.dims.nx : psi.dims.ny;
  const std::size_t i = axis == 0 ? x : y;
  auto value = [&](std::size_t j) { return axis == 0 ? psi.at(j, y) : psi.at(x, j); };
  if (n < 2) return 0.0;
  if (i > 0 && i + 1 < n) return (value(i + 1) - value(i - 1)) / (2.0 * h);
  if (n == 2) return (value(1) - value(0)) / h;
  if (i == 0) return (-3.0 * value(0) + 4.0 * value(1) - value(2)) / (2.0 * h);
  return (3.0 * value(n - 1) - 4.0 * value(n - 2) + value(n - 3)) / (2.0 * h);
}

}  // namespace

VelocityField velocity_from_stream_function(const ScalarField& psi, double dx, double dy) {
  VelocityField vel{psi.dims, std::vector<double>(psi.size()), std::vector<double>(psi.size())};
  for (std::size_t y = 0; y < psi.dims.ny; ++y) {
    for (std::size_t x = 0; x < psi.dims.nx; ++x) {
      const std::size_t site = y * psi.dims.nx + x;
      vel.u[site] = psi.dims.ny > 1 ? derivative(psi, x, y, 1, dy) : 0.0;
      vel.v[site] = -derivative(psi, x, y, 0, dx);
    }
  }
  return vel;
}

double wall_vorticity(const ScalarField& psi, const CavitySpec& spec, std::size_t x,
                      std::size_t y) {
  const std::size_t n = psi.dims.nx;
  const std::size_t top = psi.dims.ny - 1;
  auto interior = [&](std::size_t xi, std::size_t yi) {
    return n > 2 && psi.dims.ny > 2 ? psi.at(xi, yi) : 0.0;
  };
  if (y == top) {
    return -2.0 * (interior(x, top - 1) / (spec.dy * spec.dy) + spec.lid_speed / spec.dy);
  }
  if (y == 0) return -2.0 * interior(x, 1) / (spec.dy * spec.dy);
  if (x == 0) return -2.0 * interior(1, y) / (spec.dx * spec.dx);
  if (x == n - 1) return -2.0 * interior(n - 2, y) / (spec.dx * spec.dx);
  throw ConfigurationError("wall_vorticity called on an interior site");
}

namespace {

// Index of the D2Q5 link pointing from a wall site into the domain.
std::size_t inward_link(const Extents& dims, std::size_t x, std::size_t y) {
  if (y == 0) return 2;               // (0, 1)
  if (y + 1 == dims.ny) return 4;     // (0,-1)
  if (x == 0) return 1;               // (1, 0)
  return 3;                           // (-1,0)
}

}  // namespace

CavityBoundaryResult apply_cavity_boundaries(const ScalarField& psi, const ScalarField& omega,
                                             const CavitySpec& spec) {
  if (psi.dims != spec.extents() || omega.dims != spec.extents()) {
    throw ConfigurationError("cavity fields do not match the cavity extents");
  }
  const auto scheme = LatticeScheme::d2q5();
  CavityBoundaryResult out{psi, omega, DistributionField(scheme, psi.dims),
                           DistributionField(scheme, psi.dims)};
  const auto& dims = psi.dims;

  for (std::size_t y = 0; y < dims.ny; ++y) {
    for (std::size_t x = 0; x < dims.nx; ++x) {
      if (is_wall_site(dims, x, y)) out.psi.at(x, y) = 0.0;
    }
  }
  for (std::size_t y = 0; y < dims.ny; ++y) {
    for (std::size_t x = 0; x < dims.nx; ++x) {
      if (is_wall_site(dims, x, y)) out.omega.at(x, y) = wall_vorticity(out.psi, spec, x, y);
    }
  }

  for (std::size_t y = 0; y < dims.ny; ++y) {
    for (std::size_t x = 0; x < dims.nx; ++x) {
      const std::size_t site = y * dims.nx + x;
      for (std::size_t alpha = 0; alpha < scheme.num_links(); ++alpha) {
        out.psi_wall_distribution.at(alpha, site) = scheme.weight(alpha) * psi.values[site];
        out.omega_wall_distribution.at(alpha, site) = scheme.weight(alpha) * omega.values[site];
      }
      if (!is_wall_site(dims, x, y)) continue;
      const std::size_t in = inward_link(dims, x, y);
      double g_rest = 0.0;
      double f_rest = 0.0;
      for (std::size_t alpha = 0; alpha < scheme.num_links(); ++alpha) {
        if (alpha == in) continue;
        g_rest += out.psi_wall_distribution.at(alpha, site);
        f_rest += out.omega_wall_distribution.at(alpha, site);
      }
      out.psi_wall_distribution.at(in, site) = -g_rest;
      out.omega_wall_distribution.at(in, site) = out.omega.values[site] - f_rest;
    }
  }
  return out;
}

CavityState cavity_initial_state(const CavitySpec& spec) {
  const ScalarField zero(spec.extents());
  auto bc = apply_cavity_boundaries(zero, zero, spec);
  return {std::move(bc.psi), std::move(bc.omega)};
}

CavityState step_cavity_classical(const CavityState& state, const CavitySpec& spec,
                                  const FlowParams& params) {
  const auto scheme = LatticeScheme::d2q5();
  const auto velocity = velocity_from_stream_function(state.psi, spec.dx, spec.dy);
  ScalarField source(state.omega.dims);
  for (std::size_t i = 0; i < source.size(); ++i) source.values[i] = -state.omega.values[i];

  auto omega = step_advection_diffusion(scheme, state.omega, velocity, params);
  auto psi = step_poisson(scheme, state.psi, source, params);
  auto bc = apply_cavity_boundaries(psi, omega, spec);
  return {std::move(bc.psi), std::move(bc.omega)};
}

std::vector<CavityState> solve_cavity_classical(const CavitySpec& spec, const FlowParams& params) {
  require_power_of_two(spec.extents());
  std::vector<CavityState> history;
  history.reserve(static_cast<std::size_t>(std::max(spec.steps, 0)) + 1);
  history.push_back(cavity_initial_state(spec));
  for (int t = 1; t <= spec.steps; ++t) {
    auto next = step_cavity_classical(history.back(), spec, params);
    if (!next.psi.all_finite() || !next.omega.all_finite()) {
      throw DivergenceError(t, "classical cavity solver produced a non-finite value");
    }
    history.push_back(std::move(next));
  }
  return history;
}

int steady_state_step(const std::vector<CavityState>& history, double tolerance) {
  for (std::size_t t = 1; t < history.size(); ++t) {
    double change = 0.0;
    for (std::size_t i = 0; i < history[t].psi.size(); ++i) {
      change = std::max(change, std::abs(history[t].psi.values[i] - history[t - 1].psi.values[i]));
    }
    if (change < tolerance) return static_cast<int>(t);
  }
  return -1;
}

}  // namespace qlbm
