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

#include "qtransistor/spinchain.hpp"

#include <cmath>
#include <sstream>

#include "qtransistor/error.hpp"

namespace qtransistor {
namespace {

constexpr int kMaxSites = 10;  // 2^10 x 2^10 hits the matrix entry cap

void check_site_count(int n_sites) {
  if (n_sites < 1 || n_sites > kMaxSites) {
    std::ostringstream msg;
    msg << "n_sites must be in [1, " << kMaxSites << "], got " << n_sites;
    throw DimensionError(msg.str());
  }
}

// Single-site matrices in the index basis (index 0 = down, 1 = up), so
// sigma_z |up> = +|up> lands at position (1, 1).
ComplexMatrix local_pauli(Pauli which) {
  const Complex i{0.0, 1.0};
  switch (which) {
    case Pauli::x:
      return {{0.0, 1.0}, {1.0, 0.0}};
    case Pauli::y:
      return {{0.0, i}, {-i, 0.0}};
    case Pauli::z:
      return {{-1.0, 0.0}, {0.0, 1.0}};
  }
  throw ParameterError("unknown Pauli label");
}

}  // namespace

ChainParams ChainParams::transistor(double coupling_j, double delta,
                                    double omega0) {
  ChainParams p;
  p.n_sites = 3;
  p.gate_site = 1;
  p.coupling_j = coupling_j;
  p.delta = delta;
  p.omega0 = omega0;
  p.validate();
  return p;
}

void ChainParams::validate() const {
  std::ostringstream problems;
  if (n_sites < 2 || n_sites > kMaxSites)
    problems << "n_sites must be in [2, " << kMaxSites << "], got " << n_sites
             << "; ";
  if (!(coupling_j >= 0.0) || !std::isfinite(coupling_j))
    problems << "coupling_j must be finite and >= 0, got " << coupling_j << "; ";
  if (gate_site < 0 || gate_site >= n_sites)
    problems << "gate_site " << gate_site << " outside [0, " << n_sites << "); ";
  if (!std::isfinite(omega0)) problems << "omega0 must be finite; ";
  if (!std::isfinite(delta)) problems << "delta must be finite; ";
  const std::string text = problems.str();
  if (!text.empty()) throw ParameterError("invalid ChainParams: " + text);
}

double ChainParams::site_frequency(int site) const {
  if (site < 0 || site >= n_sites) throw ParameterError("site out of range");
  return site == gate_site ? omega0 + delta : omega0;
}

BasisLabel BasisLabel::from_index(std::size_t index, int n_sites) {
  check_site_count(n_sites);
  if (index >= (std::size_t{1} << n_sites)) {
    throw ParameterError("basis index out of range");
  }
  std::vector<Spin> spins(static_cast<std::size_t>(n_sites));
  for (int s = 0; s < n_sites; ++s) {
    const int bit = n_sites - 1 - s;
    spins[static_cast<std::size_t>(s)] = ((index >> bit) & 1U) ? Spin::up : Spin::down;
  }
  return BasisLabel(std::move(spins), index);
}

BasisLabel BasisLabel::from_spins(std::vector<Spin> spins) {
  check_site_count(static_cast<int>(spins.size()));
  std::size_t index = 0;
  for (Spin s : spins) index = (index << 1) | (s == Spin::up ? 1U : 0U);
  return BasisLabel(std::move(spins), index);
}

BasisLabel BasisLabel::parse(std::string_view text) {
  std::vector<Spin> spins;
  for (char c : text) {
    if (c == 'u' || c == 'U') {
      spins.push_back(Spin::up);
    } else if (c == 'd' || c == 'D') {
      spins.push_back(Spin::down);
    } else {
      throw ParameterError("basis label may only contain 'u' and 'd': " +
                           std::string(text));
    }
  }
  return from_spins(std::move(spins));
}

int BasisLabel::magnetization() const noexcept {
  int m = 0;
  for (Spin s : spins_) m += s == Spin::up ? 1 : -1;
  return m;
}

std::string BasisLabel::to_string() const {
  std::string out;
  for (Spin s : spins_) out.push_back(s == Spin::up ? 'u' : 'd');
  return out;
}

PureState::PureState(std::vector<Complex> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  const std::size_t dim = amplitudes_.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw InvalidStateError("state length must be a power of two >= 2");
  }
  while ((std::size_t{1} << n_sites_) < dim) ++n_sites_;
  const double n = norm();
  if (!std::isfinite(n) || std::abs(n * n - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "state is not normalized (sum |a|^2 = " << n * n << ")";
    throw InvalidStateError(msg.str());
  }
}

double PureState::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

Complex PureState::inner(const PureState& other) const {
  if (other.dimension() != dimension()) {
    throw DimensionError("inner product of states with different dimensions");
  }
  Complex acc = 0.0;
  for (std::size_t k = 0; k < dimension(); ++k)
    acc += std::conj(amplitudes_[k]) * other.amplitudes_[k];
  return acc;
}

ComplexMatrix PureState::projector() const {
  const std::size_t n = dimension();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
  return out;
}

ComplexMatrix pauli_at(Pauli which, int site, int n_sites) {
  check_site_count(n_sites);
  if (site < 0 || site >= n_sites) {
    std::ostringstream msg;
    msg << "pauli_at: site " << site << " outside [0, " << n_sites << ")";
    throw ParameterError(msg.str());
  }
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  ComplexMatrix out = site == 0 ? local_pauli(which) : id2;
  for (int s = 1; s < n_sites; ++s) {
    out = kron(out, s == site ? local_pauli(which) : id2);
  }
  return out;
}

ComplexMatrix hamiltonian(const ChainParams& p) {
  p.validate();
  const std::size_t dim = p.dimension();
  ComplexMatrix h(dim, dim);
  for (int i = 0; i < p.n_sites; ++i) {
    const double omega = p.site_frequency(i);
    if (omega != 0.0) h += omega * pauli_at(Pauli::z, i, p.n_sites);
  }
  if (p.coupling_j != 0.0) {
    for (int i = 0; i + 1 < p.n_sites; ++i) {
      const ComplexMatrix xx =
          pauli_at(Pauli::x, i, p.n_sites) * pauli_at(Pauli::x, i + 1, p.n_sites);
      const ComplexMatrix yy =
          pauli_at(Pauli::y, i, p.n_sites) * pauli_at(Pauli::y, i + 1, p.n_sites);
      h += (0.5 * p.coupling_j) * (xx + yy);
    }
  }
  return h;
}

ComplexMatrix magnetization_operator(int n_sites) {
  check_site_count(n_sites);
  const std::size_t dim = std::size_t{1} << n_sites;
  std::vector<double> diag(dim);
  for (std::size_t k = 0; k < dim; ++k)
    diag[k] = BasisLabel::from_index(k, n_sites).magnetization();
  return ComplexMatrix::diagonal(std::span<const double>(diag));
}

PureState product_state(std::span<const Spin> spins) {
  const BasisLabel label =
      BasisLabel::from_spins(std::vector<Spin>(spins.begin(), spins.end()));
  std::vector<Complex> amps(std::size_t{1} << label.n_sites());
  amps[label.index()] = 1.0;
  return PureState(std::move(amps));
}

PureState encoded_state(Complex alpha, Complex beta, int site, int n_sites) {
  check_site_count(n_sites);
  if (site < 0 || site >= n_sites) throw ParameterError("site out of range");
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "|alpha|^2 + |beta|^2 = " << norm2 << ", expected 1";
    throw InvalidStateError(msg.str());
  }
  std::vector<Complex> amps(std::size_t{1} << n_sites);
  amps[std::size_t{1} << (n_sites - 1 - site)] = alpha;
  amps[0] += beta;
  return PureState(std::move(amps));
}

}  // namespace qtransistor
