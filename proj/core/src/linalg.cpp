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

#include "unitint/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "unitint/errors.hpp"

namespace unitint {

namespace {

inline Complex fast_mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

namespace {

void require(bool condition, const char* what) {
  if (!condition) throw ContractViolation(what);
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
        << b.cols();
    throw ContractViolation(msg.str());
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  require(rows >= 1 && cols >= 1, "ComplexMatrix: dimensions must be at least 1");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require(rows >= 1 && cols >= 1, "ComplexMatrix: dimensions must be at least 1");
  require(data_.size() == rows * cols, "ComplexMatrix: entry count must equal rows * cols");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  require(rows_ >= 1 && cols_ >= 1, "ComplexMatrix: dimensions must be at least 1");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    require(row.size() == cols_, "ComplexMatrix: ragged row literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out(*this);
  for (auto& v : out.data_) v = std::conj(v);
  return out;
}

ComplexMatrix ComplexMatrix::block(std::size_t row, std::size_t col, std::size_t rows,
                                   std::size_t cols) const {
  require(row + rows <= rows_ && col + cols <= cols_, "ComplexMatrix::block: out of range");
  ComplexMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = (*this)(row + r, col + c);
  return out;
}

void ComplexMatrix::set_block(std::size_t row, std::size_t col, const ComplexMatrix& value) {
  require(row + value.rows() <= rows_ && col + value.cols() <= cols_,
          "ComplexMatrix::set_block: out of range");
  for (std::size_t r = 0; r < value.rows(); ++r)
    for (std::size_t c = 0; c < value.cols(); ++c) (*this)(row + r, col + c) = value(r, c);
}

Complex ComplexMatrix::trace() const {
  require(is_square(), "trace: matrix must be square");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& v : data_) sum += std::norm(v);
  return std::sqrt(sum);
}

double ComplexMatrix::norm1() const {
  double best = 0.0;
  for (std::size_t c = 0; c < cols_; ++c) {
    double col = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) col += std::abs((*this)(r, c));
    best = std::max(best, col);
  }
  return best;
}

double ComplexMatrix::unitarity_residual() const {
  require(is_square(), "unitarity_residual: matrix must be square");
  return distance(adjoint() * (*this), identity(rows_));
}

double ComplexMatrix::hermiticity_residual() const {
  require(is_square(), "hermiticity_residual: matrix must be square");
  return distance(*this, adjoint());
}

bool ComplexMatrix::is_unitary(double tol) const {
  return is_square() && unitarity_residual() <= tol;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  return is_square() && hermiticity_residual() <= tol;
}

bool ComplexMatrix::is_traceless(double tol) const {
  return is_square() && std::abs(trace()) <= tol;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& v : data_) v = fast_mul(v, s);
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "operator*: inner dimensions differ (" << a.rows() << "x" << a.cols() << " * "
        << b.rows() << "x" << b.cols() << ")";
    throw ContractViolation(msg.str());
  }
  ComplexMatrix out(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Complex* row = &out(r, 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex(0.0)) continue;
      const Complex* brow = &b(k, 0);
      for (std::size_t c = 0; c < n; ++c) row[c] += fast_mul(ark, brow[c]);
    }
  }
  return out;
}

double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "distance");
  double sum = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) sum += std::norm(ea[i] - eb[i]);
  return std::sqrt(sum);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac)
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
  return out;
}

ComplexMatrix block_diagonal(const ComplexMatrix& upper, const ComplexMatrix& lower) {
  ComplexMatrix out(upper.rows() + lower.rows(), upper.cols() + lower.cols());
  out.set_block(0, 0, upper);
  out.set_block(upper.rows(), upper.cols(), lower);
  return out;
}

ComplexMatrix block_matrix(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                           const ComplexMatrix& d) {
  require(a.rows() == b.rows() && c.rows() == d.rows() && a.cols() == c.cols() &&
              b.cols() == d.cols(),
          "block_matrix: blocks are not conformable");
  ComplexMatrix out(a.rows() + c.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  out.set_block(a.rows(), 0, c);
  out.set_block(a.rows(), a.cols(), d);
  return out;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
  require(m.is_square(), "inverse: matrix must be square");
  const std::size_t n = m.rows();
  ComplexMatrix a(m);
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) == 0.0) throw SingularityError("inverse: singular matrix", 0.0);
    if (pivot != col)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    const Complex scale = 1.0 / a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) *= scale;
      inv(col, c) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col);
      if (f == Complex(0.0)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

EigenDecomposition hermitian_eigendecomposition(const ComplexMatrix& m, double hermitian_tol) {
  require(m.is_square(), "hermitian_eigendecomposition: matrix must be square");
  if (!m.is_hermitian(hermitian_tol))
    throw ContractViolation("hermitian_eigendecomposition: matrix is not Hermitian");

  const std::size_t n = m.rows();
  // Work on the exactly Hermitian part.
  ComplexMatrix a = (m + m.adjoint()) * 0.5;
  ComplexMatrix q = ComplexMatrix::identity(n);

  const double scale = std::max(a.frobenius_norm(), 1e-300);
  auto off_diagonal = [&] {
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) sum += std::norm(a(r, c));
    return std::sqrt(sum);
  };

  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal() > 1e-16 * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t k = p + 1; k < n; ++k) {
        const Complex apq = a(p, k);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        // Phase-align the pivot to a real value, then a real Jacobi rotation.
        const Complex phase = apq / mag;  // e^{i phi}
        const Complex phase_conj = std::conj(phase);
        const double app = a(p, p).real();
        const double aqq = a(k, k).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = diag(1, e^{-i phi}) * R, with R = [[c, s], [-s, c]] in the (p, k) plane.
        const Complex gpp = c;
        const Complex gpk = s;
        const Complex gkp = -s * phase_conj;
        const Complex gkk = c * phase_conj;
        // a <- a G
        for (std::size_t r = 0; r < n; ++r) {
          const Complex arp = a(r, p);
          const Complex ark = a(r, k);
          a(r, p) = arp * gpp + ark * gkp;
          a(r, k) = arp * gpk + ark * gkk;
        }
        // a <- G^dagger a
        for (std::size_t c2 = 0; c2 < n; ++c2) {
          const Complex apc = a(p, c2);
          const Complex akc = a(k, c2);
          a(p, c2) = std::conj(gpp) * apc + std::conj(gkp) * akc;
          a(k, c2) = std::conj(gpk) * apc + std::conj(gkk) * akc;
        }
        a(p, k) = 0.0;
        a(k, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(k, k) = a(k, k).real();
        // q <- q G
        for (std::size_t r = 0; r < n; ++r) {
          const Complex qrp = q(r, p);
          const Complex qrk = q(r, k);
          q(r, p) = qrp * gpp + qrk * gkp;
          q(r, k) = qrp * gpk + qrk * gkk;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, i) = q(r, order[i]);
  }
  return out;
}

SquareRoots sqrt_hpd(const ComplexMatrix& m, double threshold) {
  const auto eig = hermitian_eigendecomposition(m);
  if (eig.values.front() <= threshold) {
    std::ostringstream msg;
    msg << "sqrt_hpd: matrix is not positive definite (eigenvalue " << eig.values.front()
        << " <= " << threshold << ")";
    throw SingularityError(msg.str(), eig.values.front());
  }
  const std::size_t n = m.rows();
  std::vector<double> root(n);
  std::vector<double> inv_root(n);
  for (std::size_t i = 0; i < n; ++i) {
    root[i] = std::sqrt(eig.values[i]);
    inv_root[i] = 1.0 / root[i];
  }
  const auto& q = eig.vectors;
  const auto qh = q.adjoint();
  SquareRoots out{q * ComplexMatrix::diagonal(std::span<const double>(root)) * qh,
                  q * ComplexMatrix::diagonal(std::span<const double>(inv_root)) * qh};
  // Remove rounding asymmetry.
  out.sqrt = (out.sqrt + out.sqrt.adjoint()) * 0.5;
  out.inv_sqrt = (out.inv_sqrt + out.inv_sqrt.adjoint()) * 0.5;
  return out;
}

ComplexMatrix expm(const ComplexMatrix& m) {
  require(m.is_square(), "expm: matrix must be square");
  const std::size_t n = m.rows();
  int squarings = 0;
  double norm = m.norm1();
  while (norm >= 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  const ComplexMatrix a = m * std::ldexp(1.0, -squarings);

  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  constexpr int kMaxTerms = 40;
  for (int k = 1; k <= kMaxTerms; ++k) {
    term = term * a / static_cast<double>(k);
    result += term;
    if (term.norm1() <= 1e-18 * result.norm1()) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

namespace pauli {

ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix plus() { return {{0.0, 2.0}, {0.0, 0.0}}; }
ComplexMatrix minus() { return {{0.0, 0.0}, {2.0, 0.0}}; }

ComplexMatrix by_index(std::size_t k) {
  switch (k) {
    case 0: return x();
    case 1: return y();
    case 2: return z();
    default: throw ContractViolation("pauli::by_index: index must be 0, 1 or 2");
  }
}

}  // namespace pauli

}  // namespace unitint
