// SPDX-License-Identifier: Apache-2.0
//
// Small dense complex Hermitian matrices and their Cholesky factorization.
// Receiver orders are at most a few tens, so everything is dense and direct.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace hetnet {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t order);

  static HermitianMatrix scaled_identity(std::size_t order, double diag);

  std::size_t order() const noexcept { return order_; }

  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * order_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * order_ + c]; }

  /// this += scale * h h^H. Fills the lower triangle and mirrors it, so the
  /// result is exactly Hermitian.
  void add_outer(double scale, std::span<const cplx> h);

  /// x^H A x (real part; the imaginary part vanishes for Hermitian A).
  double quadratic_form(std::span<const cplx> x) const;

  CVector multiply(std::span<const cplx> x) const;

  /// max |A(r,c) - conj(A(c,r))| relative to max |A(r,c)|.
  double hermitian_defect() const;

 private:
  std::size_t order_ = 0;
  std::vector<cplx> entries_;
};

/// Thrown when a pivot is not strictly positive.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(std::size_t pivot, double value);
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// A = L L^H for positive-definite Hermitian A.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const HermitianMatrix& a);

  std::size_t order() const noexcept { return order_; }
  CVector solve(std::span<const cplx> b) const;

 private:
  std::size_t order_;
  std::vector<cplx> lower_;  // row-major, upper part unused
};

CVector hermitian_solve(const HermitianMatrix& a, std::span<const cplx> b);

/// a^H b
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double squared_norm(std::span<const cplx> a);

}  // namespace hetnet
