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

// Dense complex linear algebra sized for few-spin systems: operators of a
// 3-spin chain (8x8) and their superoperators (64x64). Storage is row-major
// with no sparsity; everything here is a value type.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qtransistor {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxMatrixEntries = std::size_t{1} << 20;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  // Zero-initialized rows x cols. Both must be positive and the entry count
  // may not exceed kMaxMatrixEntries.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  static ComplexMatrix diagonal(std::span<const double> values);
  // Single column holding `values`.
  static ComplexMatrix column(std::span<const Complex> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scale);

// Matrix-vector product.
std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> v);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Element-wise max |m_ij|.
double max_abs(const ComplexMatrix& m);
// Induced 1-norm (max column sum).
double norm_1(const ComplexMatrix& m);
double norm_frobenius(const ComplexMatrix& m);
// max |a_ij - b_ij|; shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// max |m - m^dagger|.
double hermiticity_deviation(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);

// (a (x) b)[i*b.rows + k][j*b.cols + l] = a[i][j] * b[k][l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Solves a * x = b by LU with partial pivoting. Throws InvalidStateError
// when a is numerically singular.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Relative tolerance against max(1, max|m|) used to accept Hermitian input.
inline constexpr double kHermitianTolerance = 1e-12;

// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
// Rejects non-Hermitian input with NotHermitianError and throws
// ConvergenceError if 100 sweeps do not reduce the off-diagonal mass below
// 1e-13 * ||m||_F.
EigenDecomposition eigh(const ComplexMatrix& m);

enum class PhaseSign { negative, positive };

// V diag(exp(s * lambda_k * t)) V^dagger with s = -i or +i.
ComplexMatrix expm_hermitian_generator(const ComplexMatrix& h, double t,
                                       PhaseSign sign = PhaseSign::negative);
// Same, reusing an existing decomposition of h.
ComplexMatrix expm_hermitian_generator(const EigenDecomposition& eig, double t,
                                       PhaseSign sign = PhaseSign::negative);

// General matrix exponential: scaling and squaring with a [13/13] Pade
// approximant, scaled so that ||m / 2^s||_1 <= 5.37.
ComplexMatrix expm(const ComplexMatrix& m);

}  // namespace qtransistor
