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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlbm/builders.hpp"
#include "qlbm/lattice.hpp"

namespace qlbm {

enum class Backend { Statevector, Sampling };

struct RunConfig {
  LatticeScheme scheme = LatticeScheme::d1q3();
  Extents extents{32, 1};
  int steps = 50;
  Backend backend = Backend::Statevector;
  std::uint64_t shots = 1u << 14;
  std::uint64_t seed = 0;
  BoundaryMode boundary_mode = BoundaryMode::Classical;
  FlowParams params;
  /// Advection-diffusion initial field.
  ScalarField initial;
  /// Cavity set-up; its extent must match `extents`.
  CavitySpec cavity;

  /// Throws ConfigurationError on inconsistent settings.
  void validate() const;
};

struct BranchProbability {
  std::string label;
  double value = 1.0;
};

struct StepRecord {
  int step = 0;
  /// phi for advection-diffusion, psi for the cavity.
  ScalarField field;
  /// Cavity only.
  ScalarField omega;
  /// Post-selection probabilities in the order they were applied.
  std::vector<BranchProbability> branch_probabilities;
  /// Encoded norm times sqrt of every branch probability (product over the
  /// circuits of the step for the cavity).
  double norm_factor = 1.0;
};

/// Step 0 echoes the initial field. Statevector backend: encode, run the
/// step circuit, select a = 0 and d = 0, decode. Sampling backend: the
/// selected amplitudes are estimated as sqrt(count / shots) of the full
/// output distribution, which assumes a non-negative field.
std::vector<StepRecord> run_advdiff(const RunConfig& config);

/// Baseline single-circuit cavity driver (statevector only).
std::vector<StepRecord> run_cavity_single(const RunConfig& config);

/// Two-circuit cavity driver: the stream-function and vorticity circuits of
/// each step run as independent concurrent jobs (statevector only).
std::vector<StepRecord> run_cavity_frugal(const RunConfig& config);

/// Classical reference of the same run, as step records.
std::vector<StepRecord> run_advdiff_classical(const RunConfig& config);
std::vector<StepRecord> run_cavity_classical(const RunConfig& config);

inline constexpr double kRelativeErrorFloor = 1e-9;

struct RelativeError {
  /// (classical - quantum) / classical; 0 where masked.
  ScalarField values;
  /// True where |classical| < floor.
  std::vector<bool> masked;
  double max_abs = 0.0;
};

RelativeError relative_error(const ScalarField& classical, const ScalarField& quantum,
                             double floor = kRelativeErrorFloor);

struct ErrorField {
  RelativeError psi;
  RelativeError omega;
};

ErrorField relative_error_fields(const ScalarField& psi_classical,
                                 const ScalarField& omega_classical,
                                 const ScalarField& psi_quantum, const ScalarField& omega_quantum,
                                 double floor = kRelativeErrorFloor);

struct FidelityPoint {
  std::uint64_t shots = 0;
  double mean_fidelity = 0.0;
  std::vector<double> fidelities;
  std::vector<std::uint64_t> seeds;
};

struct FidelitySweep {
  int step = 0;
  std::vector<FidelityPoint> points;
  /// Least-squares slope of log(1 / (1 - F)) against log(shots); absent
  /// with fewer than two usable points.
  std::optional<double> slope;
};

/// Runs the statevector advection-diffusion pipeline for `config.steps`
/// steps, then samples the post-selected site state of the last step
/// `trials` times per shot count and averages the fidelity of the
/// sqrt-frequency reconstruction.
FidelitySweep fidelity_sweep(const RunConfig& config, const std::vector<std::uint64_t>& shots,
                             int trials);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qlbm
