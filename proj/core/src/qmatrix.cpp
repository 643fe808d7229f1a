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

#include "qtransistor/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "qtransistor/error.hpp"

namespace qtransistor {
namespace {

std::size_t checked_entries(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix dimensions must be positive");
  }
  if (rows > kMaxMatrixEntries / cols) {
    std::ostringstream msg;
    msg << "matrix " << rows << "x" << cols << " exceeds the cap of "
        << kMaxMatrixEntries << " entries";
    throw DimensionError(msg.str());
  }
  return rows * cols;
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs "
        << b.rows() << "x" << b.cols();
    throw DimensionError(msg.str());
  }
}

void require_square(const ComplexMatrix& m, const char* op) {
  if (m.empty() || !m.is_square()) {
    std::ostringstream msg;
    msg << op << ": expected a non-empty square matrix, got " << m.rows()
        << "x" << m.cols();
    throw DimensionError(msg.str());
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(checked_entries(rows, cols)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != checked_entries(rows, cols)) {
    throw DimensionError("data length does not match rows * cols");
  }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = n_rows == 0 ? 0 : rows.begin()->size();
  data_.reserve(checked_entries(n_rows, n_cols));
  for (const auto& row : rows) {
    if (row.size() != n_cols) {
      throw DimensionError("ragged initializer list");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
  rows_ = n_rows;
  cols_ = n_cols;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
  return ComplexMatrix(values.size(), 1,
                       std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  require_square(*this, "trace");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) sum += (*this)(i, i);
  return sum;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    std::ostringstream msg;
    msg << "operator*: inner dimensions differ (" << lhs.cols() << " vs "
        << rhs.rows() << ")";
    throw DimensionError(msg.str());
  }
  ComplexMatrix out(lhs.rows(), rhs.cols());
  const std::size_t n = rhs.cols();
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    Complex* out_row = &out(i, 0);
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex a = lhs(i, k);
      // Spin operators are mostly zeros; skipping them is exact.
      if (a == Complex{}) continue;
      const Complex* rhs_row = &rhs(k, 0);
      for (std::size_t j = 0; j < n; ++j) out_row[j] += a * rhs_row[j];
    }
  }
  return out;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
  m *= scale;
  return m;
}

ComplexMatrix operator*(ComplexMatrix m, Complex scale) {
  m *= scale;
  return m;
}

std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) {
    throw DimensionError("matvec: vector length does not match matrix columns");
  }
  std::vector<Complex> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const auto& z : m.data()) best = std::max(best, std::abs(z));
  return best;
}

double norm_1(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

double norm_frobenius(const ComplexMatrix& m) {
  double sum = 0.0;
  for (const auto& z : m.data()) sum += std::norm(z);
  return std::sqrt(sum);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double best = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    best = std::max(best, std::abs(a.data()[k] - b.data()[k]));
  return best;
}

double hermiticity_deviation(const ComplexMatrix& m) {
  require_square(m, "hermiticity_deviation");
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
  return best;
}

bool all_finite(const ComplexMatrix& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.empty() || b.empty()) throw DimensionError("kron: empty operand");
  if (a.rows() > kMaxMatrixEntries / b.rows() ||
      a.cols() > kMaxMatrixEntries / b.cols()) {
    throw DimensionError("kron: result dimensions overflow");
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "solve");
  if (b.rows() != a.rows()) throw DimensionError("solve: rhs row mismatch");
  const std::size_t n = a.rows();
  ComplexMatrix lu = a;
  ComplexMatrix x = b;
  const double scale = std::max(max_abs(a), 1e-300);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(lu(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(lu(r, col)) > best) {
        best = std::abs(lu(r, col));
        pivot = r;
      }
    }
    if (best <= 1e-300 * scale || best == 0.0) {
      throw InvalidStateError("solve: matrix is singular to working precision");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(pivot, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(col, j), x(pivot, j));
    }
    const Complex inv = 1.0 / lu(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex factor = lu(r, col) * inv;
      if (factor == Complex{}) continue;
      lu(r, col) = factor;
      for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= factor * lu(col, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(r, j) -= factor * x(col, j);
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      Complex acc = x(col, j);
      for (std::size_t k = col + 1; k < n; ++k) acc -= lu(col, k) * x(k, j);
      x(col, j) = acc / lu(col, col);
    }
  }
  return x;
}

EigenDecomposition eigh(const ComplexMatrix& m) {
  require_square(m, "eigh");
  if (!all_finite(m)) throw InvalidStateError("eigh: non-finite entries");
  const double asymmetry = hermiticity_deviation(m);
  if (asymmetry > kHermitianTolerance * std::max(1.0, max_abs(m))) {
    std::ostringstream msg;
    msg << "eigh: input is not Hermitian (max |m - m^dagger| = " << asymmetry
        << ")";
    throw NotHermitianError(msg.str(), asymmetry);
  }

  constexpr int kMaxSweeps = 100;
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = 1e-13 * norm_frobenius(m);

  auto off_diagonal = [&] {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
  };

  int sweep = 0;
  for (double off = off_diagonal(); off > threshold; off = off_diagonal()) {
    if (++sweep > kMaxSweeps) {
      std::ostringstream msg;
      msg << "eigh: no convergence after " << kMaxSweeps
          << " sweeps (off-diagonal norm " << off << ", threshold "
          << threshold << ")";
      throw ConvergenceError(msg.str());
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g == 0.0) continue;
        // Phase e^{i phi} of a_pq; rotating column q by e^{-i phi} makes the
        // (p, q) block real symmetric, then a real Jacobi rotation zeroes it.
        const Complex phase = a(p, q) / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = std::abs(tau) > 1e150
                             ? 0.5 / tau
                             : (tau >= 0.0 ? 1.0 : -1.0) /
                                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + gqp * akq;
          a(k, q) = s * akp + gqq * akq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + gqp * vkq;
          v(k, q) = s * vkp + gqq * vkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(gqp) * aqk;
          a(q, k) = s * apk + std::conj(gqq) * aqk;
        }
        a(p, p) = app - t * g;
        a(q, q) = aqq + t * g;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

ComplexMatrix expm_hermitian_generator(const EigenDecomposition& eig, double t,
                                       PhaseSign sign) {
  const ComplexMatrix& v = eig.eigenvectors;
  const std::size_t n = v.rows();
  const double s = sign == PhaseSign::negative ? -1.0 : 1.0;
  ComplexMatrix scaled = v;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex f = std::polar(1.0, s * eig.eigenvalues[k] * t);
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= f;
  }
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += scaled(i, k) * std::conj(v(j, k));
      out(i, j) = acc;
    }
  return out;
}

ComplexMatrix expm_hermitian_generator(const ComplexMatrix& h, double t,
                                       PhaseSign sign) {
  return expm_hermitian_generator(eigh(h), t, sign);
}

ComplexMatrix expm(const ComplexMatrix& m) {
  require_square(m, "expm");
  if (!all_finite(m)) throw InvalidStateError("expm: non-finite entries");

  // Higham (2005) coefficients for the [13/13] approximant.
  static constexpr double b[] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  constexpr double kTheta13 = 5.371920351148152;

  const std::size_t n = m.rows();
  const double norm = norm_1(m);
  int squarings = 0;
  if (norm > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  }
  const ComplexMatrix a = std::ldexp(1.0, -squarings) * m;
  const ComplexMatrix ident = ComplexMatrix::identity(n);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;

  const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                                b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  const ComplexMatrix u = a * u_inner;
  const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                          b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  ComplexMatrix x = solve(v - u, v + u);
  for (int k = 0; k < squarings; ++k) x = x * x;
  return x;
}

}  // namespace qtransistor
