// Copyright 2026 The unitint Authors
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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace unitint {

using Complex = std::complex<double>;

namespace tolerance {
inline constexpr double kPredicate = 1e-10;
inline constexpr double kAlgebra = 1e-12;
}  // namespace tolerance

/// Dense complex matrix stored row-major. Small dimensions only (N <= 64).
class ComplexMatrix {
 public:
  /// Zero matrix of the given shape; both dimensions must be at least 1.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  /// Row-wise literal, e.g. {{1, 2}, {3, 4}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix scalar(Complex value) { return {1, 1, {value}}; }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;

  ComplexMatrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t row, std::size_t col, const ComplexMatrix& value);

  Complex trace() const;
  double frobenius_norm() const;
  /// Maximum absolute column sum.
  double norm1() const;

  bool is_unitary(double tol = tolerance::kPredicate) const;
  bool is_hermitian(double tol = tolerance::kPredicate) const;
  bool is_traceless(double tol = tolerance::kPredicate) const;

  /// ||M^dagger M - I||_F.
  double unitarity_residual() const;
  /// ||M - M^dagger||_F.
  double hermiticity_residual() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);
  ComplexMatrix& operator/=(Complex s) { return *this *= (1.0 / s); }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= Complex(s); }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex(s); }
  friend ComplexMatrix operator/(ComplexMatrix a, Complex s) { return a /= s; }
  friend ComplexMatrix operator/(ComplexMatrix a, double s) { return a /= Complex(s); }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

/// Frobenius norm of a - b; shapes must agree.
double distance(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix block_diagonal(const ComplexMatrix& upper, const ComplexMatrix& lower);
/// Reassemble a 2x2 block matrix [[a, b], [c, d]].
ComplexMatrix block_matrix(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                           const ComplexMatrix& d);
/// Inverse by Gauss-Jordan elimination with partial pivoting.
ComplexMatrix inverse(const ComplexMatrix& m);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
/// Throws ContractViolation if m is not square or not Hermitian within hermitian_tol.
EigenDecomposition hermitian_eigendecomposition(const ComplexMatrix& m,
                                                double hermitian_tol = tolerance::kPredicate);

struct SquareRoots {
  ComplexMatrix sqrt;
  ComplexMatrix inv_sqrt;
};

/// Principal square root and its inverse for a Hermitian positive-definite matrix.
/// Throws SingularityError naming the smallest eigenvalue when it is <= threshold.
SquareRoots sqrt_hpd(const ComplexMatrix& m, double threshold = 1e-12);

/// Matrix exponential by scaling and squaring with a Taylor core.
ComplexMatrix expm(const ComplexMatrix& m);

/// Pauli matrices and the raising/lowering combinations sigma_x +/- i sigma_y
/// (entries 0 and 2, so exp(z sigma_plus / 2) has z in the corner).
namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
ComplexMatrix plus();
ComplexMatrix minus();
/// sigma_k for k in {0, 1, 2}.
ComplexMatrix by_index(std::size_t k);
}  // namespace pauli

}  // namespace unitint
