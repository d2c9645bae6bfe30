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

#include <cmath>

#include <gtest/gtest.h>

#include "qlbm/builders.hpp"
#include "qlbm/error.hpp"
#include "qlbm/statevector.hpp"
#include "qlbm/unitary.hpp"
#include "test_util.hpp"

namespace qlbm {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

Extents dims_of(const RegisterLayout& l) {
  return {l.extent(), l.dimension() == 2 ? l.extent() : 1};
}

// Field copied into every link slot of the s = `branch` block.
void replicate(std::vector<double>& out, const RegisterLayout& l, std::size_t links,
               const std::vector<double>& field, std::size_t branch = 0) {
  const std::size_t n = l.sites();
  for (std::size_t a = 0; a < links; ++a) {
    for (std::size_t r = 0; r < n; ++r) out[r + n * (a + l.link_slots() * branch)] = field[r];
  }
}

struct Decoded {
  std::vector<double> values;
  double probability = 1.0;
};

// Runs `c` on the encoded vector, selects a = 0, b = 0, optionally s = 0 and
// d = 0, and rescales the first `sites` amplitudes (from `offset`).
Decoded run_step(const CircuitIR& c, const std::vector<double>& encoded, bool select_s,
                 double scale, std::size_t offset = 0) {
  const auto& l = c.layout;
  auto state = amplitude_encode(encoded, c.num_qubits());
  apply_circuit(state, c);
  std::vector<Control> sel{{l.a().offset, false}};
  if (l.has_boundary()) sel.push_back({l.b().offset, false});
  if (select_s && l.has_source()) sel.push_back({l.s().offset, false});
  for (int q : l.d().qubits()) sel.push_back({q, false});
  Decoded d;
  d.probability = postselect(state, sel);
  for (std::size_t r = 0; r < l.sites(); ++r) {
    d.values.push_back(state.amplitudes[offset + r].real() * state.norm_factor * scale);
  }
  return d;
}

TEST(Layout, ClosedFormQubitCount) {
  for (const auto& s : {LatticeScheme::d1q2(), LatticeScheme::d1q3(), LatticeScheme::d2q5()}) {
    for (std::size_t n = 2; n <= 64; n *= 2) {
      for (int flags = 0; flags < 4; ++flags) {
        const bool src = flags & 1;
        const bool bnd = flags & 2;
        const auto l = layout_for(s, n, src, bnd);
        const int expect = 1 + static_cast<int>(std::ceil(std::log2(double(s.num_links())))) +
                           s.dimension() * static_cast<int>(std::log2(double(n))) + src + bnd;
        EXPECT_EQ(l.total_qubits(), expect) << s.name() << " " << n;
      }
    }
  }
  EXPECT_THROW(layout_for(LatticeScheme::d1q3(), 12), ConfigurationError);
  EXPECT_THROW(layout_for(LatticeScheme::d1q3(), 1), ConfigurationError);
}

TEST(Layout, RegisterOrder) {
  const auto l = layout_for(LatticeScheme::d2q5(), 8, true, true);
  EXPECT_EQ(l.r0().offset, 0);
  EXPECT_EQ(l.r1().offset, 3);
  EXPECT_EQ(l.d().offset, 6);
  EXPECT_EQ(l.d().width, 3);
  EXPECT_EQ(l.s().offset, 9);
  EXPECT_EQ(l.b().offset, 10);
  EXPECT_EQ(l.a().offset, 11);
  const auto one = layout_for(LatticeScheme::d1q2(), 4);
  EXPECT_EQ(one.r1().width, 0);
  EXPECT_EQ(one.s().width, 0);
  EXPECT_EQ(one.a().offset, 3);
}

TEST(Lcu, ExampleAndReconstruction) {
  const std::vector<double> k{0.6, 0.4};
  const auto p = make_lcu(k);
  EXPECT_NEAR(std::arg(p.c1[0]), 0.9273, 1e-4);
  EXPECT_NEAR(std::arg(p.c1[1]), 1.1593, 1e-4);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(((p.c1[i] + p.c2[i]) / 2.0).real(), k[i], 1e-15);
    EXPECT_NEAR(((p.c1[i] + p.c2[i]) / 2.0).imag(), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p.c1[i]), 1.0, 1e-15);
  }
  const auto unit = make_lcu(std::vector<double>{1.0, 1.0});
  EXPECT_EQ(unit.c1[0], Complex(1.0));
  EXPECT_EQ(unit.c2[1], Complex(1.0));
  EXPECT_THROW(make_lcu(std::vector<double>{1.5}), CoefficientRangeError);
  EXPECT_THROW(make_lcu(std::vector<double>{NAN}), CoefficientRangeError);
  EXPECT_EQ(make_lcu(std::vector<double>{1.0 + 1e-13}).k[0], 1.0);
  EXPECT_EQ(make_lcu(std::vector<double>{-1.0 - 1e-13}).k[0], -1.0);
}

TEST(Collision, BranchProbabilityExample) {
  const auto l = RegisterLayout::make(1, 1, 1, false, false);
  const auto c = build_collision_block(make_lcu(std::vector<double>{0.6, 0.4}), l);
  auto s = amplitude_encode(std::vector<double>{1.0, 0.0, 0.0, 0.0}, 3);
  apply_circuit(s, c);
  EXPECT_NEAR(postselect(s, l.a().offset, false), 0.36, 1e-15);
  EXPECT_NEAR(s.amplitudes[0].real(), 1.0, 1e-15);
  EXPECT_NEAR(s.norm_factor, 0.6, 1e-15);
}

TEST(Collision, UnitCoefficientsActAsIdentity) {
  const auto l = RegisterLayout::make(1, 1, 1, false, false);
  const auto c = build_collision_block(make_lcu(std::vector<double>{1.0, 1.0}), l);
  auto s = amplitude_encode(test::uniform_values(3, 4), 3);
  const auto before = s.amplitudes;
  apply_circuit(s, c);
  EXPECT_NEAR(postselect(s, l.a().offset, false), 1.0, 1e-15);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(s.amplitudes[i] - before[i]), 0.0, 1e-15);
}

TEST(Collision, SuperpositionScalesByCoefficients) {
  const auto l = RegisterLayout::make(1, 1, 1, false, false);
  const auto c = build_collision_block(make_lcu(std::vector<double>{0.6, 0.4}), l);
  // Site 0 in an equal superposition of the two links: indices 0 and 2.
  auto s = amplitude_encode(std::vector<double>{1.0, 0.0, 1.0, 0.0}, 3);
  apply_circuit(s, c);
  postselect(s, l.a().offset, false);
  EXPECT_NEAR(s.amplitudes[2].real() / s.amplitudes[0].real(), 0.4 / 0.6, 1e-14);
}

// a = 0 -> a = 0 block of the collision unitary is diag(k), for random k.
TEST(Collision, BlockEncodingProperty) {
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    const int m = 1 + static_cast<int>(trial % 3);
    const auto k = test::uniform_values(trial, std::size_t{1} << m);
    const auto l = RegisterLayout::make(1, m, 1, false, false);
    std::vector<int> data;
    for (int q = 0; q < m; ++q) data.push_back(l.d().offset + q);
    const auto u = circuit_unitary(build_collision_block(make_lcu(k), l, data));
    const Eigen::Index half = u.rows() / 2;
    for (Eigen::Index i = 0; i < half; ++i) {
      for (Eigen::Index j = 0; j < half; ++j) {
        const double expect = i == j ? k[static_cast<std::size_t>(i >> 1)] : 0.0;
        EXPECT_NEAR(std::abs(u(i, j) - expect), 0.0, 1e-12);
      }
    }
  }
}

TEST(Collision, MismatchedCoefficientsRejected) {
  const auto l = RegisterLayout::make(1, 2, 1, false, false);
  EXPECT_THROW(build_collision_block(make_lcu(std::vector<double>{0.5, 0.5}), l), ConfigurationError);
}

TEST(Shift, RightWrapsAround) {
  const auto l = RegisterLayout::make(1, 1, 2, false, false);
  const auto u = circuit_unitary(build_shift_circuit(ShiftDirection::Right, l, 0));
  EXPECT_EQ(u(0, 3), Complex(1.0));
  EXPECT_EQ(u(1, 0), Complex(1.0));
}

TEST(Shift, PermutationMatricesAndInverse) {
  for (int m = 1; m <= 4; ++m) {
    const auto l = RegisterLayout::make(1, 1, m, false, false);
    const auto r = circuit_unitary(build_shift_circuit(ShiftDirection::Right, l, 0));
    const auto left = circuit_unitary(build_shift_circuit(ShiftDirection::Left, l, 0));
    const Eigen::Index size = r.rows();
    const Eigen::Index n = Eigen::Index{1} << m;
    for (Eigen::Index col = 0; col < size; ++col) {
      const Eigen::Index pos = col % n;
      const Eigen::Index rest = col - pos;
      for (Eigen::Index row = 0; row < size; ++row) {
        EXPECT_EQ(r(row, col), Complex(row == rest + (pos + 1) % n ? 1.0 : 0.0));
        EXPECT_EQ(left(row, col), Complex(row == rest + (pos + n - 1) % n ? 1.0 : 0.0));
      }
    }
    EXPECT_TRUE((left * r).isIdentity(0.0));
  }
}

TEST(Shift, ControlledOnTheLinkQubit) {
  for (int m = 1; m <= 4; ++m) {
    const auto l = RegisterLayout::make(1, 1, m, false, false);
    const auto c = build_shift_circuit(ShiftDirection::Right, l, 0, {{l.d().offset, true}});
    const auto u = circuit_unitary(c);
    const Eigen::Index n = Eigen::Index{1} << m;
    for (Eigen::Index link = 0; link < 2; ++link) {
      for (Eigen::Index x = 0; x < n; ++x) {
        const Eigen::Index in = x + n * link;
        const Eigen::Index out = link == 1 ? (x + 1) % n + n : in;
        EXPECT_EQ(u(out, in), Complex(1.0));
      }
    }
  }
}

// Quantum streaming of every basis state against the classical shift.
TEST(Streaming, MatchesClassicalStreamOnRandomFields) {
  for (const auto& s : {LatticeScheme::d1q2(), LatticeScheme::d1q3(), LatticeScheme::d2q5()}) {
    for (std::size_t n = 2; n <= 16; n *= 2) {
      const auto l = layout_for(s, n);
      const auto dims = dims_of(l);
      DistributionField f(s, dims);
      f.values = test::uniform_values(n, f.values.size());
      std::vector<double> encoded(l.sites() * l.link_slots(), 0.0);
      std::copy(f.values.begin(), f.values.end(), encoded.begin());
      auto state = amplitude_encode(encoded, l.total_qubits());
      apply_circuit(state, build_streaming_block(s, l));
      const auto g = stream_periodic(f);
      for (std::size_t i = 0; i < g.values.size(); ++i) {
        ASSERT_NEAR(state.amplitudes[i].real() * state.norm_factor, g.values[i], 1e-12)
            << s.name() << " n=" << n;
      }
    }
  }
}

TEST(Streaming, AxisSeparationAndRestLink) {
  const auto s = LatticeScheme::d2q5();
  const auto l = layout_for(s, 4);
  const auto c = build_streaming_block(s, l);
  const auto rest = link_controls(l, 0);
  const auto up = link_controls(l, 2);
  for (const auto& g : c.gates) {
    bool is_rest = true;
    bool is_up = true;
    for (const auto& r : rest) is_rest = is_rest && std::find(g.controls.begin(), g.controls.end(), r) != g.controls.end();
    for (const auto& r : up) is_up = is_up && std::find(g.controls.begin(), g.controls.end(), r) != g.controls.end();
    EXPECT_FALSE(is_rest);
    if (is_up) EXPECT_TRUE(l.r1().contains(g.targets[0]));
  }
  EXPECT_EQ(c.size(), 4u * 2u);
}

TEST(Macro, SumsLinkAmplitudes) {
  const auto l = RegisterLayout::make(1, 1, 1, false, false);
  QuantumState s(3);
  s.amplitudes.assign(8, 0.0);
  s.amplitudes[0] = 0.3;
  s.amplitudes[2] = 0.1;
  apply_circuit(s, build_macro_block(l));
  EXPECT_NEAR(s.amplitudes[0].real(), 0.4 / kSqrt2, 1e-16);

  auto single = amplitude_encode(std::vector<double>{0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  apply_circuit(single, build_macro_block(l));
  EXPECT_NEAR(single.amplitudes[1].real(), 1.0 / kSqrt2, 1e-16);

  auto cancel = amplitude_encode(std::vector<double>{0.5, 0.0, -0.5, 0.0, 0.0, 0.0, 0.0, 0.0});
  apply_circuit(cancel, build_macro_block(l));
  const std::vector<Control> sel{{l.d().offset, false}};
  EXPECT_THROW(postselect(cancel, sel), PostSelectionError);

  CircuitIR one(RegisterLayout::generic(1));
  one.append(SectionKind::Macro, {gates::h(0)});
  const auto h = circuit_unitary(one);
  EXPECT_NEAR(h(1, 1).real(), -1.0 / kSqrt2, 1e-16);
  const auto src = RegisterLayout::make(1, 1, 1, true, false);
  EXPECT_EQ(build_macro_block(src).size(), 2u);
  EXPECT_EQ(build_macro_block(src, false).size(), 1u);
}

TEST(Boundary, ProjectsOutTheWalls) {
  const auto l = RegisterLayout::make(1, 1, 2, false, true);
  const auto c = build_boundary_block(l);
  auto s = amplitude_encode(std::vector<double>{0.1, 0.2, 0.3, 0.4}, l.total_qubits());
  apply_circuit(s, c);
  const double p = postselect(s, l.b().offset, false);
  EXPECT_NEAR(p, (0.04 + 0.09) / 0.30, 1e-14);
  EXPECT_NEAR(std::abs(s.amplitudes[0]), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(s.amplitudes[3]), 0.0, 1e-16);
  EXPECT_NEAR(s.amplitudes[1].real() * s.norm_factor, 0.2, 1e-15);
  EXPECT_NEAR(s.amplitudes[2].real() * s.norm_factor, 0.3, 1e-15);

  auto inner = amplitude_encode(std::vector<double>{0.0, 0.6, 0.8, 0.0}, l.total_qubits());
  apply_circuit(inner, c);
  EXPECT_NEAR(postselect(inner, l.b().offset, false), 1.0, 1e-15);

  auto walls = amplitude_encode(std::vector<double>{0.6, 0.0, 0.0, 0.8}, l.total_qubits());
  apply_circuit(walls, c);
  EXPECT_THROW(postselect(walls, l.b().offset, false), PostSelectionError);
  EXPECT_THROW(build_boundary_block(layout_for(LatticeScheme::d1q2(), 4)), ConfigurationError);
}

TEST(Boundary, TwoDimensionalBlockIsTheWallProjector) {
  const auto l = layout_for(LatticeScheme::d1q2(), 4, false, true);
  const auto l2 = RegisterLayout::make(2, 1, 2, false, true);
  for (const auto& layout : {l, l2}) {
    const auto u = circuit_unitary(build_boundary_block(layout));
    const auto dims = dims_of(layout);
    const Eigen::Index b = Eigen::Index{1} << layout.b().offset;
    for (Eigen::Index i = 0; i < b; ++i) {
      const auto site = static_cast<std::size_t>(i) % layout.sites();
      const bool wall = is_wall_site(dims, site % dims.nx, site / dims.nx);
      EXPECT_NEAR(std::abs(u(i, i) - (wall ? 0.0 : 1.0)), 0.0, 1e-15);
    }
  }
}

TEST(AdvectionDiffusion, CollisionCoefficients) {
  const auto k = collision_coefficients(LatticeScheme::d1q3(), std::array<double, 2>{0.2, 0.0}, 2);
  ASSERT_EQ(k.size(), 4u);
  EXPECT_NEAR(k[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(k[1], 0.26666666666666666, 1e-15);
  EXPECT_NEAR(k[2], 0.06666666666666667, 1e-15);
  EXPECT_EQ(k[3], 0.0);
  const auto w = collision_coefficients(LatticeScheme::d2q5(), std::array<double, 2>{0.0, 0.0}, 3);
  for (std::size_t a = 0; a < 5; ++a) EXPECT_DOUBLE_EQ(w[a], LatticeScheme::d2q5().weight(a));
  for (std::size_t a = 5; a < 8; ++a) EXPECT_EQ(w[a], 0.0);

  const auto s = LatticeScheme::d1q3();
  auto params = FlowParams::standard(s);
  params.advection_velocity = {2.0, 0.0};
  EXPECT_THROW(build_advection_diffusion_circuit(s, params, layout_for(s, 8)), CoefficientRangeError);
}

TEST(AdvectionDiffusion, OneStepMatchesClassical) {
  for (const auto& s : {LatticeScheme::d1q2(), LatticeScheme::d1q3(), LatticeScheme::d2q5()}) {
    const std::size_t n = s.dimension() == 2 ? 4 : 16;
    const auto l = layout_for(s, n);
    auto params = FlowParams::standard(s);
    params.advection_velocity = {0.15, s.dimension() == 2 ? -0.1 : 0.0};
    const auto c = build_advection_diffusion_circuit(s, params, l);
    ScalarField phi(dims_of(l), test::uniform_values(n, l.sites(), 0.0, 1.0));
    std::vector<double> encoded(l.sites() * l.link_slots(), 0.0);
    replicate(encoded, l, s.num_links(), phi.values);
    const auto q = run_step(c, encoded, false, std::pow(kSqrt2, l.link_qubits()));
    const auto k = step_advection_diffusion(s, phi, params);
    for (std::size_t r = 0; r < l.sites(); ++r) {
      EXPECT_NEAR(q.values[r], k.values[r], 1e-9 * std::abs(k.values[r])) << s.name();
    }
    // Same step through the dense unitary.
    auto state = amplitude_encode(encoded, c.num_qubits());
    const Eigen::VectorXcd expect = circuit_unitary(c) * test::as_vector(state);
    apply_circuit(state, c);
    EXPECT_LT((test::as_vector(state) - expect).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Vorticity, ZeroVelocityIsPureDiffusion) {
  const auto s = LatticeScheme::d2q5();
  const auto l = layout_for(s, 4);
  const auto dims = dims_of(l);
  const auto v = build_vorticity_circuit(s, BoundaryMode::Classical, l,
                                         VelocityField::uniform(dims, {0.0, 0.0}));
  const auto d = build_advection_diffusion_circuit(s, FlowParams::standard(s), l);
  EXPECT_LT(unitary_distance_up_to_phase(circuit_unitary(d), circuit_unitary(v)), 1e-12);
  for (const auto& g : v.gates) {
    for (int q : g.qubits()) EXPECT_LT(q, l.total_qubits());
  }
  EXPECT_FALSE(l.has_boundary());
  EXPECT_THROW(build_vorticity_circuit(s, BoundaryMode::Quantum, l,
                                       VelocityField::uniform(dims, {0.0, 0.0})),
               ConfigurationError);
}

TEST(Vorticity, SiteDependentStepMatchesClassical) {
  const auto s = LatticeScheme::d2q5();
  for (bool quantum : {false, true}) {
    const auto l = layout_for(s, 4, false, quantum);
    const auto dims = dims_of(l);
    VelocityField vel{dims, test::uniform_values(1, 16, -0.2, 0.2), test::uniform_values(2, 16, -0.2, 0.2)};
    ScalarField omega(dims, test::uniform_values(3, 16, -1.0, 1.0));
    const auto c = build_vorticity_circuit(s, quantum ? BoundaryMode::Quantum : BoundaryMode::Classical, l, vel);
    std::vector<double> encoded(l.sites() * l.link_slots(), 0.0);
    replicate(encoded, l, s.num_links(), omega.values);
    const auto q = run_step(c, encoded, false, std::pow(kSqrt2, 3));
    const auto k = step_advection_diffusion(s, omega, vel, FlowParams::standard(s));
    for (std::size_t y = 0; y < 4; ++y) {
      for (std::size_t x = 0; x < 4; ++x) {
        const auto r = y * 4 + x;
        const bool wall = is_wall_site(dims, x, y);
        EXPECT_NEAR(q.values[r], quantum && wall ? 0.0 : k.values[r], 1e-12);
      }
    }
  }
}

TEST(StreamFunction, MatchesPoissonStep) {
  const auto s = LatticeScheme::d2q5();
  const auto params = FlowParams::standard(s);
  const double lambda = poisson_source_scale(s, params);
  for (bool quantum : {false, true}) {
    const auto l = layout_for(s, 4, true, quantum);
    const auto dims = dims_of(l);
    const auto c = build_stream_function_circuit(
        s, quantum ? BoundaryMode::Quantum : BoundaryMode::Classical, l);
    for (int variant = 0; variant < 3; ++variant) {
      ScalarField psi(dims, test::uniform_values(10 + variant, 16, -1.0, 1.0));
      ScalarField source(dims, test::uniform_values(20 + variant, 16, -1.0, 1.0));
      if (variant == 0) source = ScalarField(dims);
      if (variant == 1) {
        psi = ScalarField(dims);
        source = ScalarField(dims);
        source.at(1, 2) = 1.0;
      }
      std::vector<double> encoded(2 * l.sites() * l.link_slots(), 0.0);
      replicate(encoded, l, s.num_links(), psi.values, 0);
      std::vector<double> scaled(16);
      for (std::size_t i = 0; i < 16; ++i) scaled[i] = lambda * source.values[i];
      replicate(encoded, l, s.num_links(), scaled, 1);
      const auto q = run_step(c, encoded, true, std::pow(kSqrt2, 4));
      const auto k = step_poisson(s, psi, source, params);
      for (std::size_t y = 0; y < 4; ++y) {
        for (std::size_t x = 0; x < 4; ++x) {
          const auto r = y * 4 + x;
          const bool wall = is_wall_site(dims, x, y);
          EXPECT_NEAR(q.values[r], quantum && wall ? 0.0 : k.values[r], 1e-9)
              << "variant " << variant << " quantum " << quantum;
        }
      }
    }
  }
  EXPECT_THROW(build_stream_function_circuit(s, BoundaryMode::Classical, layout_for(s, 4)),
               ConfigurationError);
}

TEST(SingleCircuit, CarriesBothFields) {
  const auto s = LatticeScheme::d2q5();
  const auto params = FlowParams::standard(s);
  const double lambda = poisson_source_scale(s, params);
  const auto l = layout_for(s, 4, true, true);
  const auto dims = dims_of(l);
  VelocityField vel{dims, test::uniform_values(4, 16, -0.2, 0.2), test::uniform_values(5, 16, -0.2, 0.2)};
  ScalarField psi(dims, test::uniform_values(6, 16, -1.0, 1.0));
  ScalarField omega(dims, test::uniform_values(7, 16, -1.0, 1.0));
  std::vector<double> combined(16);
  for (std::size_t i = 0; i < 16; ++i) combined[i] = psi.values[i] - lambda * omega.values[i];
  std::vector<double> encoded(2 * 16 * 8, 0.0);
  replicate(encoded, l, 5, combined, 0);
  replicate(encoded, l, 5, omega.values, 1);
  const auto c = build_single_circuit(s, l, vel);
  EXPECT_EQ(c.num_qubits(), 10);
  ScalarField source(dims);
  for (std::size_t i = 0; i < 16; ++i) source.values[i] = -omega.values[i];
  const auto kp = step_poisson(s, psi, source, params);
  const auto kw = step_advection_diffusion(s, omega, vel, params);
  const auto qp = run_step(c, encoded, false, std::pow(kSqrt2, 3), 0);
  const auto qw = run_step(c, encoded, false, std::pow(kSqrt2, 3), 16 * 8);
  for (std::size_t y = 1; y < 3; ++y) {
    for (std::size_t x = 1; x < 3; ++x) {
      EXPECT_NEAR(qp.values[y * 4 + x], kp.values[y * 4 + x], 1e-9);
      EXPECT_NEAR(qw.values[y * 4 + x], kw.values[y * 4 + x], 1e-9);
    }
  }
  EXPECT_THROW(build_single_circuit(s, layout_for(s, 4, true, false), vel), ConfigurationError);
}

TEST(Encode, PreparesTheNormalizedVector) {
  for (const auto& l : {layout_for(LatticeScheme::d1q3(), 4), layout_for(LatticeScheme::d2q5(), 2, true, true)}) {
    const std::size_t dim = std::size_t{1} << l.b().offset;
    auto v = test::uniform_values(l.total_qubits(), dim, -1.0, 1.0);
    const auto c = build_encode_section(l, v);
    QuantumState s(l.total_qubits());
    apply_circuit(s, c);
    const auto ref = amplitude_encode(v, l.total_qubits());
    for (std::size_t i = 0; i < s.dimension(); ++i) {
      EXPECT_NEAR(std::abs(s.amplitudes[i] - ref.amplitudes[i]), 0.0, 1e-12);
    }
    EXPECT_EQ(with_encode(c, v).sections.front().kind, SectionKind::Encode);
  }
  EXPECT_THROW(build_encode_section(layout_for(LatticeScheme::d1q3(), 4), std::vector<double>(3, 1.0)),
               ConfigurationError);
}

}  // namespace
}  // namespace qlbm
