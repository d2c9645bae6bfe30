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

// Classical lattice Boltzmann reference solver.
//
// Everything in this header is the ground truth the quantum drivers are
// checked against: the equilibrium/stream/moment primitives, the
// advection-diffusion step, the Poisson relaxation for the stream function,
// and the lid-driven cavity in stream-function/vorticity form.
//
// Site ordering is row-major with x fastest: site = y * nx + x. Distribution
// fields are link-major on top of that: index = alpha * sites + site.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qlbm {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

using LinkVelocity = std::array<int, 2>;

/// DnQm descriptor: link velocities, weights and the lattice sound speed.
class LatticeScheme {
 public:
  static LatticeScheme d1q2();
  static LatticeScheme d1q3();
  static LatticeScheme d2q5();
  /// Accepts "D1Q2", "D1Q3", "D2Q5" (case-insensitive).
  static LatticeScheme from_name(std::string_view name);

  const std::string& name() const { return name_; }
  int dimension() const { return dimension_; }
  std::size_t num_links() const { return links_.size(); }
  const std::vector<LinkVelocity>& links() const { return links_; }
  const LinkVelocity& link(std::size_t alpha) const { return links_.at(alpha); }
  const std::vector<Rational>& weights() const { return weights_; }
  double weight(std::size_t alpha) const { return weights_.at(alpha).value(); }
  double sound_speed() const { return sound_speed_; }
  /// c_s^2 evaluated exactly from its rational form.
  double sound_speed_squared() const { return cs2_.value(); }
  Rational sound_speed_squared_exact() const { return cs2_; }
  /// ceil(log2(num_links)): width of the link register.
  int link_qubits() const;

  bool operator==(const LatticeScheme& other) const { return name_ == other.name_; }

 private:
  LatticeScheme(std::string name, int dimension, std::vector<LinkVelocity> links,
                std::vector<Rational> weights, Rational cs2);

  std::string name_;
  int dimension_ = 1;
  std::vector<LinkVelocity> links_;
  std::vector<Rational> weights_;
  Rational cs2_;
  double sound_speed_ = 1.0;
};

struct FlowParams {
  std::array<double, 2> advection_velocity{0.0, 0.0};
  double diffusion = 1.0 / 6.0;
  double relaxation_time = 1.0;
  double dt = 1.0;
  double reynolds = 0.0;

  double epsilon() const { return dt / relaxation_time; }

  /// tau = dt = 1 and D = c_s^2 (tau - dt/2).
  static FlowParams standard(const LatticeScheme& scheme);
};

/// Diffusion constant implied by a relaxation time, D = c_s^2 (tau - dt/2).
double diffusion_from_relaxation(const LatticeScheme& scheme, double relaxation_time,
                                 double dt = 1.0);

/// Coefficient multiplying w_alpha * S in the Poisson relaxation step.
///
/// Equal to c_s^2 (dt/2 - tau); with it the relaxation's fixed point solves the
/// five-point system lap(psi) = S_bar where S_bar is the link-weighted average
/// of the source around each site.
double poisson_source_scale(const LatticeScheme& scheme, const FlowParams& params);

struct Extents {
  std::size_t nx = 1;
  std::size_t ny = 1;

  std::size_t sites() const { return nx * ny; }
  bool operator==(const Extents&) const = default;
};

bool is_power_of_two(std::size_t n);

/// Throws ConfigurationError unless both extents are powers of two.
void require_power_of_two(const Extents& extents);

struct ScalarField {
  Extents dims;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(Extents e, double fill = 0.0) : dims(e), values(e.sites(), fill) {}
  ScalarField(Extents e, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double& at(std::size_t x, std::size_t y = 0) { return values[y * dims.nx + x]; }
  double at(std::size_t x, std::size_t y = 0) const { return values[y * dims.nx + x]; }
  double sum() const;
  bool all_finite() const;
};

/// Per-site velocity (u, v); v is all zeros in 1D.
struct VelocityField {
  Extents dims;
  std::vector<double> u;
  std::vector<double> v;

  static VelocityField uniform(Extents dims, std::array<double, 2> c);
};

struct DistributionField {
  LatticeScheme scheme;
  Extents dims;
  std::vector<double> values;

  DistributionField(LatticeScheme s, Extents e);

  std::size_t sites() const { return dims.sites(); }
  double& at(std::size_t alpha, std::size_t site) { return values[alpha * sites() + site]; }
  double at(std::size_t alpha, std::size_t site) const { return values[alpha * sites() + site]; }
};

/// f_alpha = w_alpha * phi * (1 + e_alpha . u / c_s^2).
DistributionField equilibrium_distribution(const LatticeScheme& scheme, const ScalarField& field,
                                           const VelocityField& velocity);
DistributionField equilibrium_distribution(const LatticeScheme& scheme, const ScalarField& field,
                                           std::array<double, 2> velocity);

/// Cyclic shift of every link's site array by e_alpha.
DistributionField stream_periodic(const DistributionField& field);

/// phi(r) = sum_alpha f_alpha(r).
ScalarField macro_moment(const DistributionField& field);

/// One full-relaxation (epsilon = 1) collide-and-stream step with periodic walls.
ScalarField step_advection_diffusion(const LatticeScheme& scheme, const ScalarField& field,
                                     const FlowParams& params);

/// Same as above with a site-dependent advection velocity.
ScalarField step_advection_diffusion(const LatticeScheme& scheme, const ScalarField& field,
                                     const VelocityField& velocity, const FlowParams& params);

/// One Poisson relaxation step: g_alpha = w_alpha (psi + lambda S), streamed, summed.
/// lambda is poisson_source_scale(scheme, params).
ScalarField step_poisson(const LatticeScheme& scheme, const ScalarField& psi,
                         const ScalarField& source, const FlowParams& params);

// ---------------------------------------------------------------------------
// Lid-driven cavity (stream function / vorticity form).

struct CavitySpec {
  double lid_speed = 1.0;
  std::size_t extent = 8;
  double dx = 1.0;
  double dy = 1.0;
  int steps = 80;

  Extents extents() const { return {extent, extent}; }
};

bool is_wall_site(const Extents& dims, std::size_t x, std::size_t y);

/// u = dpsi/dy, v = -dpsi/dx. Second-order central differences in the
/// interior, second-order one-sided at the walls (first order when an
/// extent is 2).
VelocityField velocity_from_stream_function(const ScalarField& psi, double dx, double dy);

/// Wall vorticity from the first interior stream-function value:
///   lid:    omega = -2 (psi_in / dy^2 + U / dy)
///   others: omega = -2 psi_in / h^2
/// Corners on the lid row take the lid value; other corners use the
/// bottom-wall form.
double wall_vorticity(const ScalarField& psi, const CavitySpec& spec, std::size_t x, std::size_t y);

struct CavityBoundaryResult {
  ScalarField psi;
  ScalarField omega;
  /// Poisson populations g_alpha = w_alpha psi with the inward wall link
  /// replaced by -(sum of the others), so each wall site sums to psi = 0.
  DistributionField psi_wall_distribution;
  /// Vorticity populations with the inward wall link set so each wall site
  /// sums to its wall vorticity.
  DistributionField omega_wall_distribution;
};

/// psi = 0 on the walls and wall vorticity from the Taylor formula.
CavityBoundaryResult apply_cavity_boundaries(const ScalarField& psi, const ScalarField& omega,
                                             const CavitySpec& spec);

struct CavityState {
  ScalarField psi;
  ScalarField omega;
};

/// psi = 0, omega = 0 in the interior with boundaries applied.
CavityState cavity_initial_state(const CavitySpec& spec);

/// Velocities from psi, vorticity advection-diffusion step, Poisson step with
/// S = -omega (both from the previous state), boundary application.
CavityState step_cavity_classical(const CavityState& state, const CavitySpec& spec,
                                  const FlowParams& params);

/// History of spec.steps + 1 states (index 0 is the initial state).
/// Throws DivergenceError naming the step if any value becomes non-finite.
std::vector<CavityState> solve_cavity_classical(const CavitySpec& spec, const FlowParams& params);

/// First step t at which max|psi_t - psi_{t-1}| < tolerance, or -1.
int steady_state_step(const std::vector<CavityState>& history, double tolerance = 1e-8);

}  // namespace qlbm
