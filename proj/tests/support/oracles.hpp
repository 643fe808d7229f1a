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

// Test-only reference implementations. Nothing here calls into the library's
// eigensolver, exponentials, or Hamiltonian builder.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>
#include <random>

#include "qtransistor/qmatrix.hpp"

namespace qtransistor::testing {

using EigenMatrix = Eigen::MatrixXcd;

inline EigenMatrix to_eigen(const ComplexMatrix& m) {
  EigenMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return out;
}

inline ComplexMatrix from_eigen(const EigenMatrix& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return out;
}

inline ComplexMatrix oracle_expm(const ComplexMatrix& m) {
  return from_eigen(to_eigen(m).exp());
}

// Three-site XY Hamiltonian built entry by entry from its action on basis
// states: Z fields on the diagonal, J on every nearest-neighbour flip-flop.
// Index bit = 1 is spin up, site 0 is the most significant bit.
inline ComplexMatrix brute_force_hamiltonian(int n_sites, double omega0, double delta,
                                             double j, int gate_site) {
  const std::size_t dim = std::size_t{1} << n_sites;
  ComplexMatrix h(dim, dim);
  auto up = [&](std::size_t idx, int site) { return (idx >> (n_sites - 1 - site)) & 1U; };
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double diag = 0.0;
    for (int s = 0; s < n_sites; ++s) {
      const double omega = s == gate_site ? omega0 + delta : omega0;
      diag += up(idx, s) ? omega : -omega;
    }
    h(idx, idx) = diag;
    for (int s = 0; s + 1 < n_sites; ++s) {
      if (up(idx, s) != up(idx, s + 1)) {
        const std::size_t flipped =
            idx ^ (std::size_t{1} << (n_sites - 1 - s)) ^ (std::size_t{1} << (n_sites - 2 - s));
        h(flipped, idx) = j;
      }
    }
  }
  return h;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = u(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = Complex{u(rng), u(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

inline ComplexMatrix random_matrix(std::size_t n, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  ComplexMatrix m(n, n);
  for (auto& z : m.data()) z = Complex{u(rng), u(rng)};
  return m;
}

}  // namespace qtransistor::testing
