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

#include "qtransistor/opensys.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qtransistor/error.hpp"
#include "qtransistor/unitary.hpp"

namespace qtransistor {
namespace {

constexpr double kStepBound = 0.05;        // rate_bound * dt
constexpr double kRefinementTol = 1e-8;    // successive-halving agreement
constexpr int kMaxHalvings = 14;
constexpr double kPositivityWarning = -1e-6;

int sites_for_dimension(std::size_t dim) {
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim || n == 0) {
    throw DimensionError("operator dimension is not a power of two");
  }
  return n;
}

void require_dimension(const ComplexMatrix& h, const DensityMatrix& rho) {
  if (h.rows() != rho.dimension()) {
    throw DimensionError("density matrix and Hamiltonian dimensions differ");
  }
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw ParameterError("evolution time must be finite and >= 0");
  }
}

void require_grid(std::span<const double> times) {
  if (times.empty()) throw ParameterError("time grid is empty");
  for (std::size_t k = 0; k < times.size(); ++k) {
    require_time(times[k]);
    if (k > 0 && times[k] < times[k - 1]) {
      throw ParameterError("time grid must be non-decreasing");
    }
  }
}

bool is_uniform(std::span<const double> times) {
  if (times.size() < 3) return true;
  const double step = times[1] - times[0];
  for (std::size_t k = 2; k < times.size(); ++k) {
    if (std::abs((times[k] - times[k - 1]) - step) > 1e-9 * std::abs(step)) {
      return false;
    }
  }
  return true;
}

double spectral_norm(const ComplexMatrix& h) {
  const auto eig = eigh(h);
  return std::max(std::abs(eig.eigenvalues.front()),
                  std::abs(eig.eigenvalues.back()));
}

std::vector<ComplexMatrix> site_z_operators(int n_sites) {
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(n_sites));
  for (int i = 0; i < n_sites; ++i) out.push_back(pauli_at(Pauli::z, i, n_sites));
  return out;
}

EvolvedState finalize(ComplexMatrix rho, long steps) {
  SolverDiagnostics diag;
  diag.rk4_steps = steps;
  diag.hermiticity_deviation = hermiticity_deviation(rho);
  rho = 0.5 * (rho + rho.adjoint());
  diag.trace_deviation = std::abs(rho.trace() - 1.0);
  diag.min_eigenvalue = eigh(rho).eigenvalues.front();
  if (diag.min_eigenvalue < kPositivityWarning) {
    std::ostringstream msg;
    msg << "positivity violated: min eigenvalue " << diag.min_eigenvalue;
    diag.warnings.push_back(msg.str());
  }
  return EvolvedState{DensityMatrix::adopt(std::move(rho)), std::move(diag)};
}

template <class Rhs>
ComplexMatrix rk4_fixed(const Rhs& rhs, const ComplexMatrix& rho0, double t,
                        long steps) {
  const double h = t / static_cast<double>(steps);
  ComplexMatrix rho = rho0;
  for (long s = 0; s < steps; ++s) {
    const ComplexMatrix k1 = rhs(rho);
    const ComplexMatrix k2 = rhs(rho + (0.5 * h) * k1);
    const ComplexMatrix k3 = rhs(rho + (0.5 * h) * k2);
    const ComplexMatrix k4 = rhs(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

// Integrates with rate_bound * dt <= kStepBound, then halves dt until two
// successive solutions agree to kRefinementTol.
template <class Rhs>
EvolvedState rk4_refined(const Rhs& rhs, const ComplexMatrix& rho0, double t,
                         double rate_bound) {
  if (t == 0.0) return finalize(rho0, 0);
  long steps = std::max(1L, static_cast<long>(std::ceil(rate_bound * t / kStepBound)));
  ComplexMatrix coarse = rk4_fixed(rhs, rho0, t, steps);
  double diff = 0.0;
  for (int halving = 0; halving < kMaxHalvings; ++halving) {
    steps *= 2;
    ComplexMatrix fine = rk4_fixed(rhs, rho0, t, steps);
    diff = max_abs_diff(fine, coarse);
    if (diff < kRefinementTol) return finalize(std::move(fine), steps);
    coarse = std::move(fine);
  }
  std::ostringstream msg;
  msg << "rk4: step halving did not converge after " << kMaxHalvings
      << " halvings (last successive difference " << diff << ")";
  throw ConvergenceError(msg.str());
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  if (m.empty() || !m.is_square()) {
    throw DimensionError("density matrix must be square");
  }
  if (!all_finite(m)) throw InvalidStateError("density matrix has non-finite entries");
  DensityMatrix rho(std::move(m));
  std::ostringstream problems;
  if (rho.hermiticity_deviation() > 1e-10)
    problems << "not Hermitian (" << rho.hermiticity_deviation() << "); ";
  if (rho.trace_deviation() > 1e-9)
    problems << "trace deviates from 1 by " << rho.trace_deviation() << "; ";
  if (problems.str().empty() && rho.min_eigenvalue() < -1e-8)
    problems << "negative eigenvalue " << rho.min_eigenvalue() << "; ";
  if (!problems.str().empty()) {
    throw InvalidStateError("invalid density matrix: " + problems.str());
  }
  return rho;
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_sites) {
  const std::size_t dim = std::size_t{1} << n_sites;
  return DensityMatrix((1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim));
}

DensityMatrix DensityMatrix::adopt(ComplexMatrix m) {
  return DensityMatrix(std::move(m));
}

double DensityMatrix::trace_deviation() const {
  return std::abs(m_.trace() - 1.0);
}

double DensityMatrix::hermiticity_deviation() const {
  return qtransistor::hermiticity_deviation(m_);
}

double DensityMatrix::min_eigenvalue() const {
  return eigh(0.5 * (m_ + m_.adjoint())).eigenvalues.front();
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum_ij rho_ij rho_ji
  double sum = 0.0;
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = 0; j < m_.cols(); ++j) sum += (m_(i, j) * m_(j, i)).real();
  return sum;
}

DephasingRates DephasingRates::uniform(int n_sites, double lambda) {
  DephasingRates r{std::vector<double>(static_cast<std::size_t>(n_sites), lambda)};
  r.validate(n_sites);
  return r;
}

void DephasingRates::validate(int n_sites) const {
  if (lambdas.size() != static_cast<std::size_t>(n_sites)) {
    std::ostringstream msg;
    msg << "expected " << n_sites << " dephasing rates, got " << lambdas.size();
    throw ParameterError(msg.str());
  }
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw ParameterError("dephasing rates must be finite and >= 0");
    }
  }
}

double DephasingRates::total() const {
  double sum = 0.0;
  for (double l : lambdas) sum += l;
  return sum;
}

void MilburnRate::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ParameterError("Milburn gamma must be finite and >= 0");
  }
}

ComplexMatrix vectorize(const ComplexMatrix& rho) {
  return ComplexMatrix::column(rho.data());
}

ComplexMatrix unvectorize(const ComplexMatrix& v, std::size_t dim) {
  if (v.cols() != 1 || v.rows() != dim * dim) {
    throw DimensionError("unvectorize: length is not dim^2");
  }
  return ComplexMatrix(dim, dim, std::vector<Complex>(v.data().begin(), v.data().end()));
}

ComplexMatrix lindblad_liouvillian(const ComplexMatrix& h,
                                   const DephasingRates& rates) {
  if (!h.is_square()) throw DimensionError("Hamiltonian must be square");
  const int n_sites = sites_for_dimension(h.rows());
  rates.validate(n_sites);
  const std::size_t dim = h.rows();
  const ComplexMatrix id = ComplexMatrix::identity(dim);
  const Complex minus_i{0.0, -1.0};
  ComplexMatrix l = minus_i * (kron(h, id) - kron(id, h.transpose()));
  const ComplexMatrix id_super = ComplexMatrix::identity(dim * dim);
  const auto zs = site_z_operators(n_sites);
  for (int i = 0; i < n_sites; ++i) {
    const double lambda = rates.lambdas[static_cast<std::size_t>(i)];
    if (lambda == 0.0) continue;
    const auto& z = zs[static_cast<std::size_t>(i)];
    l += lambda * (kron(z, z.transpose()) - id_super);
  }
  return l;
}

ComplexMatrix lindblad_liouvillian(const ChainParams& p,
                                   const DephasingRates& rates) {
  return lindblad_liouvillian(hamiltonian(p), rates);
}

EvolvedState lindblad_evolve(const ComplexMatrix& h, const DephasingRates& rates,
                             const DensityMatrix& rho0, double t,
                             LindbladMethod method) {
  require_dimension(h, rho0);
  require_time(t);
  const int n_sites = sites_for_dimension(h.rows());
  rates.validate(n_sites);
  if (t == 0.0) return finalize(rho0.matrix(), 0);

  if (method == LindbladMethod::superop_exp) {
    const ComplexMatrix prop = expm(t * lindblad_liouvillian(h, rates));
    return finalize(unvectorize(prop * vectorize(rho0.matrix()), h.rows()), 0);
  }

  // Works on rho directly so this path shares nothing with the superoperator.
  const auto zs = site_z_operators(n_sites);
  const Complex minus_i{0.0, -1.0};
  auto rhs = [&](const ComplexMatrix& rho) {
    ComplexMatrix out = minus_i * commutator(h, rho);
    for (int i = 0; i < n_sites; ++i) {
      const double lambda = rates.lambdas[static_cast<std::size_t>(i)];
      if (lambda == 0.0) continue;
      const auto& z = zs[static_cast<std::size_t>(i)];
      out += lambda * (z * rho * z - rho);
    }
    return out;
  };
  return rk4_refined(rhs, rho0.matrix(), t, spectral_norm(h) + rates.total());
}

EvolvedState lindblad_evolve(const ChainParams& p, const DephasingRates& rates,
                             const DensityMatrix& rho0, double t,
                             LindbladMethod method) {
  return lindblad_evolve(hamiltonian(p), rates, rho0, t, method);
}

std::vector<EvolvedState> lindblad_trajectory(const ChainParams& p,
                                              const DephasingRates& rates,
                                              const DensityMatrix& rho0,
                                              std::span<const double> times) {
  require_grid(times);
  const ComplexMatrix h = hamiltonian(p);
  require_dimension(h, rho0);
  const ComplexMatrix l = lindblad_liouvillian(h, rates);
  const std::size_t dim = h.rows();

  std::vector<EvolvedState> out;
  out.reserve(times.size());
  const ComplexMatrix v0 = vectorize(rho0.matrix());
  if (is_uniform(times)) {
    ComplexMatrix v = times.front() == 0.0 ? v0 : expm(times.front() * l) * v0;
    const ComplexMatrix step =
        times.size() > 1 ? expm((times[1] - times[0]) * l) : ComplexMatrix::identity(dim * dim);
    for (std::size_t k = 0; k < times.size(); ++k) {
      if (k > 0) v = step * v;
      out.push_back(finalize(unvectorize(v, dim), 0));
    }
  } else {
    for (double t : times) {
      const ComplexMatrix v = t == 0.0 ? v0 : expm(t * l) * v0;
      out.push_back(finalize(unvectorize(v, dim), 0));
    }
  }
  return out;
}

std::vector<EvolvedState> milburn_trajectory(const ChainParams& p,
                                             const MilburnRate& rate,
                                             const DensityMatrix& rho0,
                                             std::span<const double> times) {
  require_grid(times);
  rate.validate();
  const ComplexMatrix h = hamiltonian(p);
  require_dimension(h, rho0);
  const EigenDecomposition eig = eigh(h);
  const ComplexMatrix& v = eig.eigenvectors;
  const ComplexMatrix v_adj = v.adjoint();
  const ComplexMatrix rho_eig = v_adj * rho0.matrix() * v;
  const std::size_t dim = h.rows();

  std::vector<EvolvedState> out;
  out.reserve(times.size());
  for (double t : times) {
    if (t == 0.0) {
      out.push_back(finalize(rho0.matrix(), 0));
      continue;
    }
    ComplexMatrix scaled = rho_eig;
    for (std::size_t m = 0; m < dim; ++m)
      for (std::size_t n = 0; n < dim; ++n) {
        if (m == n) continue;
        const double w = eig.eigenvalues[m] - eig.eigenvalues[n];
        scaled(m, n) *= std::exp(Complex{-0.5 * rate.gamma * w * w * t, -w * t});
      }
    out.push_back(finalize(v * scaled * v_adj, 0));
  }
  return out;
}

EvolvedState milburn_evolve(const ChainParams& p, const MilburnRate& rate,
                            const DensityMatrix& rho0, double t) {
  require_time(t);
  const double times[] = {t};
  return std::move(milburn_trajectory(p, rate, rho0, times).front());
}

EvolvedState milburn_evolve_rk4(const ChainParams& p, const MilburnRate& rate,
                                const DensityMatrix& rho0, double t) {
  require_time(t);
  rate.validate();
  const ComplexMatrix h = hamiltonian(p);
  require_dimension(h, rho0);
  const Complex minus_i{0.0, -1.0};
  const double half_gamma = 0.5 * rate.gamma;
  auto rhs = [&](const ComplexMatrix& rho) {
    const ComplexMatrix c = commutator(h, rho);
    return minus_i * c - half_gamma * commutator(h, c);
  };
  const double norm = spectral_norm(h);
  return rk4_refined(rhs, rho0.matrix(), t, norm + rate.gamma * norm * norm);
}

double bures_fidelity(const PureState& target, const DensityMatrix& rho) {
  if (target.dimension() != rho.dimension()) {
    throw DimensionError("bures_fidelity: dimension mismatch");
  }
  const auto amps = target.amplitudes();
  const auto rho_psi = matvec(rho.matrix(), amps);
  double inner = 0.0;
  for (std::size_t k = 0; k < amps.size(); ++k)
    inner += (std::conj(amps[k]) * rho_psi[k]).real();
  if (inner < -1e-6) {
    std::ostringstream msg;
    msg << "bures_fidelity: <psi|rho|psi> = " << inner << " is negative";
    throw InvalidStateError(msg.str());
  }
  return std::sqrt(std::max(inner, 0.0));
}

PureState experiment_target(const FidelityExperiment& e) {
  if (e.params.n_sites != 3) {
    throw ParameterError("fidelity experiments are defined for three sites");
  }
  if (e.kind == ExperimentKind::blockade) {
    return source_state(e.alpha, e.beta, 3);
  }
  if (e.beta == Complex{}) return drain_state(e.alpha, e.beta, 3);
  if (!e.allow_superposition_transfer) {
    throw ParameterError(
        "transfer with beta != 0 requires allow_superposition_transfer");
  }
  const Propagator prop(e.params);
  const double tau = transfer_times(e.params.coupling_j, e.params.delta).tau_transfer;
  const Complex moved = prop.amplitude(BasisLabel::parse("ddu"), BasisLabel::parse("udd"), tau);
  const Complex stayed = prop.amplitude(BasisLabel::parse("ddd"), BasisLabel::parse("ddd"), tau);
  const double phi = std::arg(moved) - std::arg(stayed);
  return drain_state(e.alpha * std::polar(1.0, phi), e.beta, 3);
}

FidelityTrace fidelity_experiment(const FidelityExperiment& e) {
  e.params.validate();
  if (e.kind == ExperimentKind::transfer && e.params.delta != 0.0 &&
      !e.allow_detuned_transfer) {
    throw ParameterError(
        "transfer experiment with delta != 0 requires allow_detuned_transfer");
  }
  require_grid(e.times);
  const PureState target = experiment_target(e);
  const DensityMatrix rho0 = DensityMatrix::from_pure(source_state(e.alpha, e.beta, 3));

  std::vector<EvolvedState> states;
  if (e.model == NoiseModel::lindblad) {
    states = lindblad_trajectory(e.params, DephasingRates::uniform(3, e.rate), rho0, e.times);
  } else {
    states = milburn_trajectory(e.params, MilburnRate{e.rate}, rho0, e.times);
  }

  FidelityTrace out;
  out.times = e.times;
  out.fidelity.reserve(states.size());
  out.min_eigenvalue = states.front().diagnostics.min_eigenvalue;
  for (const auto& s : states) {
    out.fidelity.push_back(bures_fidelity(target, s.rho));
    out.max_trace_deviation = std::max(out.max_trace_deviation, s.diagnostics.trace_deviation);
    out.max_hermiticity_deviation =
        std::max(out.max_hermiticity_deviation, s.diagnostics.hermiticity_deviation);
    out.min_eigenvalue = std::min(out.min_eigenvalue, s.diagnostics.min_eigenvalue);
    for (const auto& w : s.diagnostics.warnings) out.warnings.push_back(w);
  }
  return out;
}

}  // namespace qtransistor
