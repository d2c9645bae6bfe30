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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "qlbm/error.hpp"
#include "qlbm/field_io.hpp"
#include "qlbm/lattice.hpp"
#include "test_util.hpp"

namespace qlbm {
namespace {

std::vector<LatticeScheme> all_schemes() {
  return {LatticeScheme::d1q2(), LatticeScheme::d1q3(), LatticeScheme::d2q5()};
}

Extents extents_for(const LatticeScheme& s, std::size_t n) {
  return s.dimension() == 2 ? Extents{n, n} : Extents{n, 1};
}

TEST(Scheme, WeightsSumToOneAndFirstMomentVanishes) {
  for (const auto& s : all_schemes()) {
    std::int64_t lcm = 1;
    for (const auto& w : s.weights()) lcm = std::lcm(lcm, w.den);
    std::int64_t total = 0;
    std::array<std::int64_t, 2> moment{0, 0};
    for (std::size_t a = 0; a < s.num_links(); ++a) {
      const auto w = s.weights()[a];
      total += w.num * (lcm / w.den);
      moment[0] += w.num * (lcm / w.den) * s.link(a)[0];
      moment[1] += w.num * (lcm / w.den) * s.link(a)[1];
    }
    EXPECT_EQ(total, lcm) << s.name();
    EXPECT_EQ(moment[0], 0) << s.name();
    EXPECT_EQ(moment[1], 0) << s.name();
  }
}

TEST(Scheme, Parameters) {
  const auto d1q2 = LatticeScheme::d1q2();
  EXPECT_EQ(d1q2.num_links(), 2u);
  EXPECT_EQ(d1q2.link(0)[0], 1);
  EXPECT_EQ(d1q2.link(1)[0], -1);
  EXPECT_DOUBLE_EQ(d1q2.sound_speed(), 1.0);
  EXPECT_EQ(d1q2.link_qubits(), 1);

  const auto d1q3 = LatticeScheme::d1q3();
  EXPECT_DOUBLE_EQ(d1q3.weight(0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(d1q3.weight(1), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(d1q3.sound_speed_squared(), 1.0 / 3.0);
  EXPECT_EQ(d1q3.link_qubits(), 2);

  const auto d2q5 = LatticeScheme::d2q5();
  EXPECT_EQ(d2q5.dimension(), 2);
  EXPECT_DOUBLE_EQ(d2q5.weight(0), 1.0 / 3.0);
  EXPECT_EQ(d2q5.link(2), (LinkVelocity{0, 1}));
  EXPECT_EQ(d2q5.link(3), (LinkVelocity{-1, 0}));
  EXPECT_EQ(d2q5.link_qubits(), 3);
  EXPECT_NEAR(d2q5.sound_speed(), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(Scheme, FromName) {
  EXPECT_EQ(LatticeScheme::from_name("d2q5").name(), "D2Q5");
  EXPECT_EQ(LatticeScheme::from_name("D1Q2"), LatticeScheme::d1q2());
  EXPECT_THROW(LatticeScheme::from_name("D2Q9"), ConfigurationError);
}

TEST(FlowParams, StandardRegime) {
  const auto p = FlowParams::standard(LatticeScheme::d1q3());
  EXPECT_DOUBLE_EQ(p.epsilon(), 1.0);
  EXPECT_DOUBLE_EQ(p.diffusion, 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(diffusion_from_relaxation(LatticeScheme::d2q5(), 1.0), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(diffusion_from_relaxation(LatticeScheme::d1q2(), 1.0), 0.5);
}

TEST(Extents, PowerOfTwoGuard) {
  EXPECT_TRUE(is_power_of_two(1));
  EXPECT_TRUE(is_power_of_two(64));
  EXPECT_FALSE(is_power_of_two(0));
  EXPECT_FALSE(is_power_of_two(12));
  EXPECT_THROW(require_power_of_two({6, 1}), ConfigurationError);
  EXPECT_NO_THROW(require_power_of_two({8, 4}));
  EXPECT_THROW(ScalarField(Extents{4, 1}, std::vector<double>{1.0, 2.0}), ConfigurationError);
}

TEST(Equilibrium, D1Q2Advected) {
  const auto s = LatticeScheme::d1q2();
  const ScalarField phi({2, 1}, 1.0);
  const auto f = equilibrium_distribution(s, phi, std::array<double, 2>{0.2, 0.0});
  EXPECT_NEAR(f.at(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(f.at(1, 0), 0.4, 1e-15);
}

TEST(Equilibrium, D2Q5AtRestIsTheWeights) {
  const auto s = LatticeScheme::d2q5();
  const ScalarField phi({2, 2}, 1.0);
  const auto f = equilibrium_distribution(s, phi, std::array<double, 2>{0.0, 0.0});
  const double expect[] = {1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6};
  for (std::size_t a = 0; a < 5; ++a) EXPECT_DOUBLE_EQ(f.at(a, 3), expect[a]);
}

TEST(Equilibrium, ZeroFieldAndMomentIdentity) {
  for (const auto& s : all_schemes()) {
    const auto dims = extents_for(s, 8);
    const auto zero = equilibrium_distribution(s, ScalarField(dims), std::array<double, 2>{0.1, 0.0});
    EXPECT_TRUE(std::all_of(zero.values.begin(), zero.values.end(), [](double v) { return v == 0; }));

    ScalarField phi(dims, test::uniform_values(7, dims.sites(), 0.0, 2.0));
    const auto velocity = VelocityField{dims, test::uniform_values(8, dims.sites(), -0.1, 0.1),
                                        s.dimension() == 2
                                            ? test::uniform_values(9, dims.sites(), -0.1, 0.1)
                                            : std::vector<double>(dims.sites(), 0.0)};
    const auto back = macro_moment(equilibrium_distribution(s, phi, velocity));
    EXPECT_LT(test::max_abs_diff(back.values, phi.values), 1e-15) << s.name();
  }
}

TEST(Equilibrium, DimensionMismatchThrows) {
  const ScalarField phi({4, 1}, 1.0);
  EXPECT_THROW(equilibrium_distribution(LatticeScheme::d1q3(), phi,
                                        VelocityField::uniform({8, 1}, {0.0, 0.0})),
               ConfigurationError);
  EXPECT_THROW(equilibrium_distribution(LatticeScheme::d1q3(), ScalarField({4, 4}, 1.0),
                                        std::array<double, 2>{0.0, 0.0}),
               ConfigurationError);
}

TEST(Stream, D1Q2ShiftsWithWraparound) {
  DistributionField f(LatticeScheme::d1q2(), {4, 1});
  f.at(0, 0) = 1.0;
  f.at(1, 0) = 1.0;
  const auto g = stream_periodic(f);
  EXPECT_EQ(g.at(0, 1), 1.0);
  EXPECT_EQ(g.at(0, 0), 0.0);
  EXPECT_EQ(g.at(1, 3), 1.0);
  EXPECT_EQ(g.at(1, 0), 0.0);
}

TEST(Stream, RestLinkUntouchedAndValuesPermuted) {
  const auto s = LatticeScheme::d2q5();
  DistributionField f(s, {8, 8});
  f.values = test::uniform_values(11, f.values.size());
  const auto g = stream_periodic(f);
  for (std::size_t r = 0; r < 64; ++r) EXPECT_EQ(g.at(0, r), f.at(0, r));
  // Link (0,1): site (x, y) moves to (x, y + 1).
  EXPECT_EQ(g.at(2, 8 * 3 + 5), f.at(2, 8 * 2 + 5));
  EXPECT_EQ(g.at(2, 5), f.at(2, 8 * 7 + 5));
  auto a = f.values;
  auto b = g.values;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(Macro, SumsLinks) {
  DistributionField f(LatticeScheme::d1q3(), {2, 1});
  f.at(0, 0) = 0.2;
  f.at(1, 0) = 0.05;
  f.at(2, 0) = 0.05;
  EXPECT_NEAR(macro_moment(f).values[0], 0.3, 1e-16);
}

ScalarField point_source(Extents dims, double background, double peak, std::size_t x,
                         std::size_t y = 0) {
  ScalarField f(dims, background);
  f.at(x, y) = peak;
  return f;
}

TEST(AdvectionDiffusion, ConservesMassOverFiftySteps) {
  for (const auto& s : all_schemes()) {
    auto params = FlowParams::standard(s);
    params.advection_velocity = {0.2, s.dimension() == 2 ? 0.1 : 0.0};
    const auto dims = extents_for(s, s.dimension() == 2 ? 8 : 32);
    auto phi = point_source(dims, 0.1, 0.2, 5, s.dimension() == 2 ? 3 : 0);
    const double m0 = phi.sum();
    for (int t = 0; t < 50; ++t) {
      phi = step_advection_diffusion(s, phi, params);
      ASSERT_NEAR(phi.sum(), m0, 1e-12 * m0) << s.name() << " step " << t;
    }
  }
}

TEST(AdvectionDiffusion, PeakAdvectsAndSpreads) {
  const auto s = LatticeScheme::d1q3();
  auto params = FlowParams::standard(s);
  params.advection_velocity = {0.2, 0.0};
  auto phi = point_source({32, 1}, 0.1, 0.2, 10);
  for (int t = 0; t < 50; ++t) phi = step_advection_diffusion(s, phi, params);
  const auto peak = std::max_element(phi.values.begin(), phi.values.end()) - phi.values.begin();
  // The mean drift is c t = 10 sites.
  EXPECT_NEAR(static_cast<double>(peak), 20.0, 2.0);
  EXPECT_LT(*std::max_element(phi.values.begin(), phi.values.end()), 0.2);
  EXPECT_GT(*std::min_element(phi.values.begin(), phi.values.end()), 0.09);
}

TEST(AdvectionDiffusion, UniformAtRestIsAFixedPoint) {
  for (const auto& s : all_schemes()) {
    const auto dims = extents_for(s, 8);
    ScalarField phi(dims, 0.37);
    const auto params = FlowParams::standard(s);
    for (int t = 0; t < 10; ++t) phi = step_advection_diffusion(s, phi, params);
    for (double v : phi.values) EXPECT_DOUBLE_EQ(v, 0.37);
  }
}

TEST(AdvectionDiffusion, D1Q2CheckerboardsD1Q3DoesNot) {
  const auto d1q2 = LatticeScheme::d1q2();
  const auto d1q3 = LatticeScheme::d1q3();
  auto a = point_source({32, 1}, 0.0, 1.0, 16);
  auto b = a;
  for (int t = 1; t <= 9; ++t) {
    a = step_advection_diffusion(d1q2, a, FlowParams::standard(d1q2));
    b = step_advection_diffusion(d1q3, b, FlowParams::standard(d1q3));
    for (std::size_t x = 0; x < 32; ++x) {
      const int dist = static_cast<int>(x) - 16;
      const bool same_parity = ((dist + t) % 2 + 2) % 2 == 0;
      if (!same_parity) EXPECT_EQ(a.values[x], 0.0) << "step " << t << " x " << x;
      if (t >= 2 && std::abs(dist) <= t) EXPECT_GT(b.values[x], 0.0) << "step " << t;
    }
  }
}

TEST(AdvectionDiffusion, RejectsNonPowerOfTwo) {
  const auto s = LatticeScheme::d1q3();
  EXPECT_THROW(step_advection_diffusion(s, ScalarField({6, 1}, 1.0), FlowParams::standard(s)),
               ConfigurationError);
}

TEST(Poisson, ZeroIsAFixedPoint) {
  const auto s = LatticeScheme::d2q5();
  const ScalarField zero({8, 8});
  const auto psi = step_poisson(s, zero, zero, FlowParams::standard(s));
  for (double v : psi.values) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(step_poisson(s, zero, ScalarField({4, 4}), FlowParams::standard(s)),
               ConfigurationError);
}

// Fixed point of the relaxation with psi = 0 walls, against a dense solve of
// the five-point system lap(psi) = -omega_bar, where omega_bar is the
// link-weighted average of omega around each site.
TEST(Poisson, ConvergesToDenseFivePointSolve) {
  const auto s = LatticeScheme::d2q5();
  const auto params = FlowParams::standard(s);
  const std::size_t n = 8;
  const Extents dims{n, n};
  ScalarField omega(dims, test::uniform_values(21, n * n, -1.0, 1.0));
  ScalarField source(dims);
  for (std::size_t i = 0; i < source.size(); ++i) source.values[i] = -omega.values[i];

  ScalarField psi(dims);
  for (int it = 0; it < 4000; ++it) {
    psi = step_poisson(s, psi, source, params);
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t x = 0; x < n; ++x) {
        if (is_wall_site(dims, x, y)) psi.at(x, y) = 0.0;
      }
    }
  }

  const std::size_t m = n - 2;
  auto idx = [&](std::size_t x, std::size_t y) {
    return static_cast<Eigen::Index>((y - 1) * m + (x - 1));
  };
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m * m),
                                            static_cast<Eigen::Index>(m * m));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(m * m));
  for (std::size_t y = 1; y + 1 < n; ++y) {
    for (std::size_t x = 1; x + 1 < n; ++x) {
      double bar = 0.0;
      for (std::size_t a = 0; a < s.num_links(); ++a) {
        bar += s.weight(a) * omega.at(x - static_cast<std::size_t>(s.link(a)[0]),
                                      y - static_cast<std::size_t>(s.link(a)[1]));
      }
      const auto i = idx(x, y);
      rhs(i) = -bar;
      A(i, i) = -4.0;
      for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        const auto nx = x + static_cast<std::size_t>(dx);
        const auto ny = y + static_cast<std::size_t>(dy);
        if (!is_wall_site(dims, nx, ny)) A(i, idx(nx, ny)) = 1.0;
      }
    }
  }
  const Eigen::VectorXd exact = A.partialPivLu().solve(rhs);
  double worst = 0.0;
  for (std::size_t y = 1; y + 1 < n; ++y) {
    for (std::size_t x = 1; x + 1 < n; ++x) {
      worst = std::max(worst, std::abs(psi.at(x, y) - exact(idx(x, y))));
    }
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Poisson, UnitSourceGivesSymmetricResponse) {
  const auto s = LatticeScheme::d2q5();
  const Extents dims{8, 8};
  ScalarField source(dims);
  source.at(4, 4) = 1.0;
  ScalarField psi(dims);
  for (int it = 0; it < 20; ++it) psi = step_poisson(s, psi, source, FlowParams::standard(s));
  for (int d = 1; d <= 3; ++d) {
    const auto u = static_cast<std::size_t>(d);
    EXPECT_NEAR(psi.at(4 + u, 4), psi.at(4 - u, 4), 1e-14);
    EXPECT_NEAR(psi.at(4, 4 + u), psi.at(4, 4 - u), 1e-14);
    EXPECT_NEAR(psi.at(4 + u, 4), psi.at(4, 4 + u), 1e-14);
  }
}

TEST(Cavity, VelocityFromStreamFunction) {
  // psi = x^2 + 3 y: u = 3 everywhere, v = -2x (second-order stencils are exact).
  ScalarField psi({8, 8});
  for (std::size_t y = 0; y < 8; ++y) {
    for (std::size_t x = 0; x < 8; ++x) psi.at(x, y) = double(x * x) + 3.0 * double(y);
  }
  const auto vel = velocity_from_stream_function(psi, 1.0, 1.0);
  for (std::size_t y = 0; y < 8; ++y) {
    for (std::size_t x = 0; x < 8; ++x) {
      EXPECT_NEAR(vel.u[y * 8 + x], 3.0, 1e-12);
      EXPECT_NEAR(vel.v[y * 8 + x], -2.0 * double(x), 1e-12);
    }
  }
}

TEST(Cavity, LidVorticityFromWallFormula) {
  CavitySpec spec;
  ScalarField zero(spec.extents());
  const auto bc = apply_cavity_boundaries(zero, zero, spec);
  for (std::size_t x = 0; x < 8; ++x) EXPECT_DOUBLE_EQ(bc.omega.at(x, 7), -2.0);
  EXPECT_DOUBLE_EQ(bc.omega.at(3, 0), 0.0);
  EXPECT_DOUBLE_EQ(bc.omega.at(0, 3), 0.0);
  EXPECT_DOUBLE_EQ(bc.omega.at(4, 4), 0.0);

  ScalarField psi(spec.extents(), 0.25);
  const auto b2 = apply_cavity_boundaries(psi, zero, spec);
  EXPECT_DOUBLE_EQ(b2.omega.at(3, 7), -2.0 * (0.25 + 1.0));
  EXPECT_DOUBLE_EQ(b2.omega.at(3, 0), -0.5);
  EXPECT_DOUBLE_EQ(b2.omega.at(7, 3), -0.5);
  EXPECT_DOUBLE_EQ(b2.psi.at(3, 3), 0.25);
}

TEST(Cavity, WallDistributionsSumToWallValues) {
  CavitySpec spec;
  const auto dims = spec.extents();
  ScalarField psi(dims, test::uniform_values(3, dims.sites()));
  ScalarField omega(dims, test::uniform_values(4, dims.sites()));
  const auto bc = apply_cavity_boundaries(psi, omega, spec);
  for (std::size_t y = 0; y < 8; ++y) {
    for (std::size_t x = 0; x < 8; ++x) {
      const auto site = y * 8 + x;
      double g = 0.0;
      double f = 0.0;
      for (std::size_t a = 0; a < 5; ++a) {
        g += bc.psi_wall_distribution.at(a, site);
        f += bc.omega_wall_distribution.at(a, site);
      }
      if (is_wall_site(dims, x, y)) {
        EXPECT_NEAR(g, 0.0, 1e-15);
        EXPECT_NEAR(f, bc.omega.at(x, y), 1e-15);
        EXPECT_EQ(bc.psi.at(x, y), 0.0);
      } else {
        EXPECT_NEAR(g, psi.at(x, y), 1e-15);
      }
    }
  }
}

TEST(Cavity, QuiescentWithoutLid) {
  CavitySpec spec;
  spec.lid_speed = 0.0;
  spec.steps = 20;
  for (const auto& st : solve_cavity_classical(spec, FlowParams::standard(LatticeScheme::d2q5()))) {
    for (double v : st.psi.values) EXPECT_EQ(v, 0.0);
    for (double v : st.omega.values) EXPECT_EQ(v, 0.0);
  }
}

TEST(Cavity, EightyStepsGiveOnePrimaryVortexInTheUpperHalf) {
  CavitySpec spec;
  const auto history = solve_cavity_classical(spec, FlowParams::standard(LatticeScheme::d2q5()));
  ASSERT_EQ(history.size(), 81u);
  for (const auto& st : history) {
    for (std::size_t y = 0; y < 8; ++y) {
      for (std::size_t x = 0; x < 8; ++x) {
        if (is_wall_site(spec.extents(), x, y)) ASSERT_EQ(st.psi.at(x, y), 0.0);
      }
    }
  }
  const auto& psi = history.back().psi;
  std::size_t bx = 0;
  std::size_t by = 0;
  int extrema = 0;
  for (std::size_t y = 1; y < 7; ++y) {
    for (std::size_t x = 1; x < 7; ++x) {
      if (std::abs(psi.at(x, y)) > std::abs(psi.at(bx, by))) {
        bx = x;
        by = y;
      }
      const double p = psi.at(x, y);
      const bool lo = p < psi.at(x + 1, y) && p < psi.at(x - 1, y) && p < psi.at(x, y + 1) &&
                      p < psi.at(x, y - 1);
      const bool hi = p > psi.at(x + 1, y) && p > psi.at(x - 1, y) && p > psi.at(x, y + 1) &&
                      p > psi.at(x, y - 1);
      extrema += lo || hi;
    }
  }
  EXPECT_EQ(extrema, 1);
  EXPECT_GE(by, 4u);
  // Clockwise circulation under a lid moving in +x: psi < 0 inside.
  EXPECT_LT(psi.at(bx, by), 0.0);
}

// Steady-state consistency: once the history stops changing, the fields
// satisfy the discrete Poisson and transport equations they relax.
TEST(Cavity, SteadyStateSatisfiesTheDiscreteEquations) {
  CavitySpec spec;
  spec.steps = 3000;
  const auto params = FlowParams::standard(LatticeScheme::d2q5());
  const auto history = solve_cavity_classical(spec, params);
  const int steady = steady_state_step(history, 1e-10);
  ASSERT_GT(steady, 0);
  const auto& st = history[static_cast<std::size_t>(steady)];
  const auto next = step_cavity_classical(st, spec, params);
  for (std::size_t i = 0; i < st.psi.size(); ++i) {
    EXPECT_NEAR(next.psi.values[i], st.psi.values[i], 1e-9);
    EXPECT_NEAR(next.omega.values[i], st.omega.values[i], 1e-8);
  }
  const auto s = LatticeScheme::d2q5();
  for (std::size_t y = 2; y < 6; ++y) {
    for (std::size_t x = 2; x < 6; ++x) {
      double bar = 0.0;
      for (std::size_t a = 0; a < 5; ++a) {
        bar += s.weight(a) * st.omega.at(x - static_cast<std::size_t>(s.link(a)[0]),
                                         y - static_cast<std::size_t>(s.link(a)[1]));
      }
      const double lap = st.psi.at(x + 1, y) + st.psi.at(x - 1, y) + st.psi.at(x, y + 1) +
                         st.psi.at(x, y - 1) - 4.0 * st.psi.at(x, y);
      EXPECT_NEAR(lap, -bar, 1e-8);
    }
  }
  EXPECT_EQ(steady_state_step({history[0]}), -1);
}

TEST(FieldIo, CsvLayout) {
  ScalarField f({2, 2}, std::vector<double>{0.1, 2.0, -3.5, 1e-20});
  std::ostringstream os;
  write_field_csv(os, f);
  EXPECT_EQ(os.str(), "x,y,value\n0,0,0.10000000000000001\n1,0,2\n0,1,-3.5\n1,1,9.9999999999999995e-21\n");
}

TEST(FieldIo, BinaryRoundTripAndMagic) {
  ScalarField f({4, 2}, test::uniform_values(5, 8));
  std::stringstream ss;
  write_field_binary(ss, f);
  const auto bytes = ss.str();
  ASSERT_EQ(bytes.size(), 4u + 8u + 8u * 8u);
  EXPECT_EQ(bytes.substr(0, 4), "QLBF");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 4);
  const auto g = read_field_binary(ss);
  EXPECT_EQ(g.dims, f.dims);
  EXPECT_EQ(g.values, f.values);

  std::stringstream bad("QLBX\x01");
  EXPECT_THROW(read_field_binary(bad), FormatError);
  std::stringstream truncated(bytes.substr(0, 20));
  EXPECT_THROW(read_field_binary(truncated), FormatError);
}

}  // namespace
}  // namespace qlbm
