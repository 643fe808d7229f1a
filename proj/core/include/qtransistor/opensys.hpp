// Copyright 2026 The qtransistor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Open-system dynamics of the spin chain:
//
//   dephasing:  d rho/dt = -i [H, rho] + sum_i lambda_i (Z_i rho Z_i - rho)
//   intrinsic:  d rho/dt = -i [H, rho] - (gamma / 2) [H, [H, rho]]
//
// Each model has a production path (superoperator exponential, eigenbasis
// closed form) and an RK4 integration path used as an independent check.
//
// Superoperators act on the row-major flattening of rho,
// vec(rho)[i * d + j] = rho(i, j), for which vec(A rho B) = (A (x) B^T) vec(rho).

#include <span>
#include <string>
#include <vector>

#include "qtransistor/qmatrix.hpp"
#include "qtransistor/spinchain.hpp"

namespace qtransistor {

class DensityMatrix {
 public:
  // Validates: Hermitian to 1e-10, unit trace to 1e-9, min eigenvalue >= -1e-8.
  static DensityMatrix from_matrix(ComplexMatrix m);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int n_sites);
  // Wraps solver output without validation; callers inspect the diagnostics.
  static DensityMatrix adopt(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dimension() const noexcept { return m_.rows(); }
  double population(std::size_t index) const { return m_(index, index).real(); }

  double trace_deviation() const;
  double hermiticity_deviation() const;
  double min_eigenvalue() const;
  // Re tr(rho^2)
  double purity() const;

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

struct DephasingRates {
  std::vector<double> lambdas;  // rad/s, one per site

  static DephasingRates uniform(int n_sites, double lambda);
  void validate(int n_sites) const;
  double total() const;
};

struct MilburnRate {
  double gamma = 0.0;  // s

  void validate() const;
};

struct SolverDiagnostics {
  // max |rho - rho^dagger| before the (rho + rho^dagger)/2 correction.
  double hermiticity_deviation = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;
  long rk4_steps = 0;
  std::vector<std::string> warnings;
};

struct EvolvedState {
  DensityMatrix rho;
  SolverDiagnostics diagnostics;
};

enum class LindbladMethod { superop_exp, rk4 };

ComplexMatrix vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(const ComplexMatrix& v, std::size_t dim);

// L = -i (H (x) I - I (x) H^T) + sum_i lambda_i (Z_i (x) Z_i^T - I (x) I)
ComplexMatrix lindblad_liouvillian(const ComplexMatrix& h,
                                   const DephasingRates& rates);
ComplexMatrix lindblad_liouvillian(const ChainParams& p,
                                   const DephasingRates& rates);

EvolvedState lindblad_evolve(const ComplexMatrix& h, const DephasingRates& rates,
                             const DensityMatrix& rho0, double t,
                             LindbladMethod method = LindbladMethod::superop_exp);
EvolvedState lindblad_evolve(const ChainParams& p, const DephasingRates& rates,
                             const DensityMatrix& rho0, double t,
                             LindbladMethod method = LindbladMethod::superop_exp);

// rho(t_k) on an increasing time grid. A uniform grid reuses one
// exp(L dt) for every step.
std::vector<EvolvedState> lindblad_trajectory(const ChainParams& p,
                                              const DephasingRates& rates,
                                              const DensityMatrix& rho0,
                                              std::span<const double> times);

// Closed form in the H eigenbasis:
//   rho'_mn(t) = rho'_mn(0) exp(-i w t - (gamma / 2) w^2 t),  w = E_m - E_n.
EvolvedState milburn_evolve(const ChainParams& p, const MilburnRate& rate,
                            const DensityMatrix& rho0, double t);
EvolvedState milburn_evolve_rk4(const ChainParams& p, const MilburnRate& rate,
                                const DensityMatrix& rho0, double t);
std::vector<EvolvedState> milburn_trajectory(const ChainParams& p,
                                             const MilburnRate& rate,
                                             const DensityMatrix& rho0,
                                             std::span<const double> times);

// sqrt(<target| rho |target>). Inner values in [-1e-6, 0) are treated as
// rounding noise and clamped to 0; anything lower is an InvalidStateError.
double bures_fidelity(const PureState& target, const DensityMatrix& rho);

enum class ExperimentKind { transfer, blockade };
enum class NoiseModel { lindblad, milburn };

struct FidelityExperiment {
  ExperimentKind kind = ExperimentKind::blockade;
  NoiseModel model = NoiseModel::lindblad;
  ChainParams params;
  // lambda (rad/s, applied to every site) or gamma (s).
  double rate = 0.0;
  Complex alpha = 1.0;
  Complex beta = 0.0;
  std::vector<double> times;
  // Transfer normally runs at delta = 0; set to run it detuned.
  bool allow_detuned_transfer = false;
  // Transfer with beta != 0 needs this flag. The target is then
  // a e^{i phi} |ddu> + beta |ddd>, with phi the relative phase the ideal
  // unitary transfer imprints between the two sectors at tau_T.
  bool allow_superposition_transfer = false;
};

struct FidelityTrace {
  std::vector<double> times;
  std::vector<double> fidelity;
  double max_trace_deviation = 0.0;
  double max_hermiticity_deviation = 0.0;
  double min_eigenvalue = 0.0;
  std::vector<std::string> warnings;
};

// Pure target state scored by the experiment.
PureState experiment_target(const FidelityExperiment& e);

FidelityTrace fidelity_experiment(const FidelityExperiment& e);

}  // namespace qtransistor
