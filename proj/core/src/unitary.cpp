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

#include "qtransistor/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qtransistor/error.hpp"

namespace qtransistor {
namespace {

void require_three_sites(const ChainParams& p, const char* op) {
  if (p.n_sites != 3) {
    std::ostringstream msg;
    msg << op << " is defined for the three-site transistor only";
    throw ParameterError(msg.str());
  }
}

}  // namespace

Propagator::Propagator(const ChainParams& p)
    : params_(p), hamiltonian_(qtransistor::hamiltonian(p)),
      spectrum_(eigh(hamiltonian_)) {}

ComplexMatrix Propagator::unitary(double t) const {
  return expm_hermitian_generator(spectrum_, t, PhaseSign::negative);
}

PureState Propagator::evolve(const PureState& psi0, double t) const {
  if (psi0.dimension() != params_.dimension()) {
    throw DimensionError("evolve: state and Hamiltonian dimensions differ");
  }
  const ComplexMatrix& v = spectrum_.eigenvectors;
  const std::size_t n = v.rows();
  // Coefficients in the eigenbasis, phase-rotated, mapped back.
  std::vector<Complex> coeff(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(v(i, k)) * psi0.amplitude(i);
    coeff[k] = acc * std::polar(1.0, -spectrum_.eigenvalues[k] * t);
  }
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += v(i, k) * coeff[k];
    out[i] = acc;
  }
  return PureState(std::move(out));
}

Complex Propagator::amplitude(const BasisLabel& to, const BasisLabel& from,
                              double t) const {
  const ComplexMatrix& v = spectrum_.eigenvectors;
  Complex acc = 0.0;
  for (std::size_t k = 0; k < v.cols(); ++k) {
    acc += v(to.index(), k) * std::conj(v(from.index(), k)) *
           std::polar(1.0, -spectrum_.eigenvalues[k] * t);
  }
  return acc;
}

PureState evolve(const ChainParams& p, const PureState& psi0, double t) {
  return Propagator(p).evolve(psi0, t);
}

double p_source_analytic(double j, double delta, double t) {
  const double big_delta2 = delta * delta + 2.0 * j * j;
  if (big_delta2 == 0.0) return 1.0;
  const double big_delta = std::sqrt(big_delta2);
  return (3.0 + delta * delta / big_delta2) / 8.0 +
         0.5 * std::cos(delta * t) * std::cos(big_delta * t) +
         j * j / (4.0 * big_delta2) * std::cos(2.0 * big_delta * t) +
         delta / (2.0 * big_delta) * std::sin(delta * t) * std::sin(big_delta * t);
}

double p_source_expansion(double j, double delta, double t) {
  if (!(delta > 0.0)) {
    throw ParameterError("p_source_expansion requires delta > 0");
  }
  const double r2 = (j / delta) * (j / delta);
  const double dt = delta * t;
  const double s = std::sin(dt);
  // Printed form: leading minus sign and bracket kept as-is.
  return 1.0 - r2 * s * s -
         (r2 * r2 / 8.0) *
             (-7.0 + 2.0 * dt * dt + 7.0 * std::cos(2.0 * dt) +
              6.0 * dt * std::sin(2.0 * dt));
}

double p_drain_resonant(double j, double t) {
  const double s = std::sin(j * t / std::numbers::sqrt2);
  return s * s * s * s;
}

double blockade_probability(Complex alpha, Complex beta, double j, double delta,
                            double t, double omega0) {
  const ChainParams p = ChainParams::transistor(j, delta, omega0);
  const PureState psi0 = source_state(alpha, beta, 3);
  const PureState psi_t = Propagator(p).evolve(psi0, t);
  return std::norm(psi0.inner(psi_t));
}

double source_retention_probability(Complex alpha, Complex beta, double j,
                                    double delta, double t) {
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw InvalidStateError("source_retention_probability: |alpha|^2 + |beta|^2 != 1");
  }
  return std::norm(beta) + std::norm(alpha) * p_source_analytic(j, delta, t);
}

double blockade_window(double j, double delta, double threshold) {
  if (!(j > 0.0)) throw ParameterError("blockade_window requires J > 0");
  const double big_delta = std::sqrt(delta * delta + 2.0 * j * j);
  const double fastest = std::abs(delta) + big_delta + 2.0 * big_delta;
  const double tau_t = std::numbers::pi / (j * std::numbers::sqrt2);
  const double step = std::min(0.05 / fastest, tau_t / 200.0);
  constexpr long kMaxSteps = 200'000'000;

  double prev = 0.0;
  for (long k = 1; k <= kMaxSteps; ++k) {
    const double t = static_cast<double>(k) * step;
    if (p_source_analytic(j, delta, t) < threshold) {
      double lo = prev;
      double hi = t;
      for (int it = 0; it < 100 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (p_source_analytic(j, delta, mid) >= threshold ? lo : hi) = mid;
      }
      return lo;
    }
    prev = t;
  }
  throw ConvergenceError("blockade_window: threshold never crossed within scan");
}

TransferTimes transfer_times(double j, double delta) {
  if (!(j > 0.0)) {
    throw ParameterError("transfer_times: J must be > 0 (no transfer at J = 0)");
  }
  TransferTimes out;
  out.tau_transfer = std::numbers::pi / (j * std::numbers::sqrt2);
  if (std::abs(delta / j - 1e3) <= 1e-9) {
    out.tau_blockade = 10.0 * out.tau_transfer;
  } else {
    out.tau_blockade = blockade_window(j, delta);
  }
  return out;
}

ProbabilityTrace probability_trace(const ChainParams& p, Complex alpha,
                                   Complex beta, std::span<const double> times) {
  require_three_sites(p, "probability_trace");
  const Propagator prop(p);
  const PureState psi0 = source_state(alpha, beta, 3);
  const BasisLabel udd = BasisLabel::parse("udd");
  const BasisLabel ddu = BasisLabel::parse("ddu");

  ProbabilityTrace out;
  out.times.assign(times.begin(), times.end());
  out.p_source.reserve(times.size());
  out.p_drain.reserve(times.size());
  out.p_blockade_total.reserve(times.size());
  for (double t : times) {
    out.p_source.push_back(prop.transition_probability(udd, udd, t));
    out.p_drain.push_back(prop.transition_probability(ddu, udd, t));
    out.p_blockade_total.push_back(std::norm(psi0.inner(prop.evolve(psi0, t))));
  }
  return out;
}

}  // namespace qtransistor
