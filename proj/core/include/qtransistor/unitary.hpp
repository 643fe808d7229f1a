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

// Closed-system dynamics of the three-spin transistor: numerical propagation
// through the Hamiltonian eigenbasis and the closed-form source/drain
// probabilities it is checked against.

#include <span>
#include <vector>

#include "qtransistor/qmatrix.hpp"
#include "qtransistor/spinchain.hpp"

namespace qtransistor {

// Probability threshold that defines the blockade window.
inline constexpr double kBlockadeThreshold = 0.999;

struct TransferTimes {
  double tau_transfer = 0.0;  // s
  double tau_blockade = 0.0;  // s
};

struct ProbabilityTrace {
  std::vector<double> times;
  std::vector<double> p_source;          // |<udd|U(t)|udd>|^2
  std::vector<double> p_drain;           // |<ddu|U(t)|udd>|^2
  std::vector<double> p_blockade_total;  // |<Psi(0)|Psi(t)>|^2
};

// Diagonalizes H once; every query afterwards is O(dim^2) or better.
class Propagator {
 public:
  explicit Propagator(const ChainParams& p);

  const ChainParams& params() const noexcept { return params_; }
  const ComplexMatrix& hamiltonian() const noexcept { return hamiltonian_; }
  const EigenDecomposition& spectrum() const noexcept { return spectrum_; }

  ComplexMatrix unitary(double t) const;
  PureState evolve(const PureState& psi0, double t) const;
  // <to| U(t) |from>
  Complex amplitude(const BasisLabel& to, const BasisLabel& from, double t) const;
  double transition_probability(const BasisLabel& to, const BasisLabel& from,
                                double t) const {
    return std::norm(amplitude(to, from, t));
  }

 private:
  ChainParams params_;
  ComplexMatrix hamiltonian_;
  EigenDecomposition spectrum_;
};

PureState evolve(const ChainParams& p, const PureState& psi0, double t);

// Exact source-retention probability p_udd(t) of the three-site chain with
// omega_1 = omega_3, Delta^2 = delta^2 + 2 J^2. J = delta = 0 gives 1.
double p_source_analytic(double j, double delta, double t);

// Fourth-order small-J/delta expansion of p_source_analytic. Requires
// delta > 0. Not clamped.
double p_source_expansion(double j, double delta, double t);

// sin^4(J t / sqrt 2): drain population at zero detuning.
double p_drain_resonant(double j, double t);

// Survival probability |<Psi(0)|Psi(t)>|^2 for Psi(0) = (alpha|u> +
// beta|d>)|d>|d>, computed from the propagated state.
double blockade_probability(Complex alpha, Complex beta, double j, double delta,
                            double t, double omega0 = 0.0);

// Probability that the encoded qubit is still on the source,
// <Psi(t)| (|udd><udd| + |ddd><ddd|) |Psi(t)> = |beta|^2 + |alpha|^2 p_udd(t).
// This is the weighting the propagated state confirms; it differs from the
// survival probability by the cross-sector phase term.
double source_retention_probability(Complex alpha, Complex beta, double j,
                                    double delta, double t);

// Largest t with p_source_analytic >= threshold on all of [0, t]. Requires
// j > 0.
double blockade_window(double j, double delta,
                       double threshold = kBlockadeThreshold);

// tau_transfer = pi / (J sqrt 2). tau_blockade is 10 tau_transfer at
// delta / J = 1e3 and blockade_window(j, delta) otherwise.
TransferTimes transfer_times(double j, double delta);

ProbabilityTrace probability_trace(const ChainParams& p, Complex alpha,
                                   Complex beta, std::span<const double> times);

}  // namespace qtransistor
