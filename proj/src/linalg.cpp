// SPDX-License-Identifier: Apache-2.0

#include "hetnet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hetnet {

HermitianMatrix::HermitianMatrix(std::size_t order) : order_(order), entries_(order * order) {}

HermitianMatrix HermitianMatrix::scaled_identity(std::size_t order, double diag) {
  HermitianMatrix m(order);
  for (std::size_t i = 0; i < order; ++i) m(i, i) = diag;
  return m;
}

void HermitianMatrix::add_outer(double scale, std::span<const cplx> h) {
  if (h.size() != order_) throw std::invalid_argument("HermitianMatrix::add_outer: length mismatch");
  for (std::size_t r = 0; r < order_; ++r) {
    const cplx hr = scale * h[r];
    for (std::size_t c = 0; c < r; ++c) {
      const cplx v = hr * std::conj(h[c]);
      (*this)(r, c) += v;
      (*this)(c, r) = std::conj((*this)(r, c));
    }
    (*this)(r, r) += scale * std::norm(h[r]);
  }
}

double HermitianMatrix::quadratic_form(std::span<const cplx> x) const {
  if (x.size() != order_) throw std::invalid_argument("HermitianMatrix::quadratic_form: length mismatch");
  cplx acc = 0.0;
  for (std::size_t r = 0; r < order_; ++r) {
    cplx row = 0.0;
    for (std::size_t c = 0; c < order_; ++c) row += (*this)(r, c) * x[c];
    acc += std::conj(x[r]) * row;
  }
  return acc.real();
}

CVector HermitianMatrix::multiply(std::span<const cplx> x) const {
  if (x.size() != order_) throw std::invalid_argument("HermitianMatrix::multiply: length mismatch");
  CVector y(order_);
  for (std::size_t r = 0; r < order_; ++r) {
    cplx row = 0.0;
    for (std::size_t c = 0; c < order_; ++c) row += (*this)(r, c) * x[c];
    y[r] = row;
  }
  return y;
}

double HermitianMatrix::hermitian_defect() const {
  double scale = 0.0;
  double defect = 0.0;
  for (std::size_t r = 0; r < order_; ++r) {
    for (std::size_t c = 0; c < order_; ++c) {
      scale = std::max(scale, std::abs((*this)(r, c)));
      defect = std::max(defect, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return scale > 0.0 ? defect / scale : defect;
}

SingularMatrixError::SingularMatrixError(std::size_t pivot, double value)
    : std::runtime_error("Cholesky factorization failed: non-positive pivot " + std::to_string(value) +
                         " at index " + std::to_string(pivot)),
      pivot_(pivot) {}

CholeskyFactor::CholeskyFactor(const HermitianMatrix& a) : order_(a.order()), lower_(a.order() * a.order()) {
  const std::size_t n = order_;
  auto L = [&](std::size_t r, std::size_t c) -> cplx& { return lower_[r * n + c]; };
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(L(j, k));
    if (!(d > 0.0) || !std::isfinite(d)) throw SingularMatrixError(j, d);
    const double ljj = std::sqrt(d);
    L(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * std::conj(L(j, k));
      L(i, j) = s / ljj;
    }
  }
}

CVector CholeskyFactor::solve(std::span<const cplx> b) const {
  const std::size_t n = order_;
  if (b.size() != n) throw std::invalid_argument("CholeskyFactor::solve: length mismatch");
  auto L = [&](std::size_t r, std::size_t c) { return lower_[r * n + c]; };
  CVector x(b.begin(), b.end());
  // L y = b
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * x[k];
    x[i] = s / L(i, i).real();
  }
  // L^H x = y
  for (std::size_t i = n; i-- > 0;) {
    cplx s = x[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= std::conj(L(k, i)) * x[k];
    x[i] = s / L(i, i).real();
  }
  return x;
}

CVector hermitian_solve(const HermitianMatrix& a, std::span<const cplx> b) { return CholeskyFactor(a).solve(b); }

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: length mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double squared_norm(std::span<const cplx> a) {
  double acc = 0.0;
  for (const auto& v : a) acc += std::norm(v);
  return acc;
}

}  // namespace hetnet
