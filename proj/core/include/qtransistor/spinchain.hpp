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

// XY spin chain with per-site Z fields:
//
//   H = sum_i omega_i sigma_z^(i)
//       + (J / 2) sum_i [sigma_x^(i) sigma_x^(i+1) + sigma_y^(i) sigma_y^(i+1)]
//
// with hbar = 1, omega_gate = omega0 + delta and omega_i = omega0 elsewhere.
// Frequencies are angular (rad/s), times in seconds.
//
// Basis convention: computational index bit = 1 means spin up, and site 0
// (the source) is the most significant bit. For three sites |up,dn,dn> is
// index 4 and |dn,dn,up> is index 1.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtransistor/qmatrix.hpp"

namespace qtransistor {

enum class Pauli { x, y, z };
enum class Spin { down = 0, up = 1 };

struct ChainParams {
  int n_sites = 3;
  double omega0 = 0.0;
  double delta = 0.0;
  double coupling_j = 0.0;
  int gate_site = 1;

  // Three-site transistor with the gate in the middle.
  static ChainParams transistor(double coupling_j, double delta,
                                double omega0 = 0.0);

  // Throws ParameterError listing the violated invariant.
  void validate() const;
  double site_frequency(int site) const;
  std::size_t dimension() const { return std::size_t{1} << n_sites; }
};

class BasisLabel {
 public:
  static BasisLabel from_index(std::size_t index, int n_sites);
  static BasisLabel from_spins(std::vector<Spin> spins);
  // Parses "udd", "dud", ... (u = up, d = down), site 0 first.
  static BasisLabel parse(std::string_view text);

  std::size_t index() const noexcept { return index_; }
  const std::vector<Spin>& spins() const noexcept { return spins_; }
  int n_sites() const noexcept { return static_cast<int>(spins_.size()); }
  // (#up - #down)
  int magnetization() const noexcept;
  std::string to_string() const;

 private:
  BasisLabel(std::vector<Spin> spins, std::size_t index)
      : spins_(std::move(spins)), index_(index) {}

  std::vector<Spin> spins_;
  std::size_t index_;
};

// Normalized amplitude vector over the 2^n computational basis.
class PureState {
 public:
  // Throws InvalidStateError unless the length is a power of two (>= 2) and
  // sum |a|^2 = 1 to 1e-10.
  explicit PureState(std::vector<Complex> amplitudes);

  int n_sites() const noexcept { return n_sites_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_.at(index); }
  Complex amplitude(const BasisLabel& label) const {
    return amplitude(label.index());
  }
  double probability(const BasisLabel& label) const {
    return std::norm(amplitude(label));
  }
  double norm() const;

  // <this|other>
  Complex inner(const PureState& other) const;
  // |psi><psi|
  ComplexMatrix projector() const;

 private:
  std::vector<Complex> amplitudes_;
  int n_sites_ = 0;
};

// I (x) ... (x) sigma_which (x) ... (x) I with sigma at `site`, in the
// index basis described above.
ComplexMatrix pauli_at(Pauli which, int site, int n_sites);

ComplexMatrix hamiltonian(const ChainParams& p);

// sum_i sigma_z^(i); diagonal with entries #up - #down.
ComplexMatrix magnetization_operator(int n_sites);

PureState product_state(std::span<const Spin> spins);

// alpha |dn..up..dn> + beta |dn...dn>, the up spin at `site`. Rejects
// |alpha|^2 + |beta|^2 != 1 beyond 1e-10.
PureState encoded_state(Complex alpha, Complex beta, int site, int n_sites);

// |psi>_s |dn>_g |dn>_d for psi = alpha |up> + beta |dn>.
inline PureState source_state(Complex alpha, Complex beta, int n_sites = 3) {
  return encoded_state(alpha, beta, 0, n_sites);
}
inline PureState drain_state(Complex alpha, Complex beta, int n_sites = 3) {
  return encoded_state(alpha, beta, n_sites - 1, n_sites);
}

}  // namespace qtransistor
