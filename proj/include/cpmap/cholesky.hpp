/**
 * This code is part of cpmap.
 *
 * (C) Copyright cpmap contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * Any modifications or derivative works of this code must retain this
 * copyright notice, and modified files need to carry a notice indicating
 * that they have been altered from the originals.
 */

#ifndef CPMAP_CHOLESKY_HPP_
#define CPMAP_CHOLESKY_HPP_

#include <cmath>
#include <cstddef>
#include <utility>

#include "cpmap/complex_matrix.hpp"
#include "cpmap/errors.hpp"
#include "cpmap/hermitian_eigen.hpp"
#include "cpmap/linalg.hpp"

namespace cpmap {

//=========================================================================
// UpperTriangular
//
// Upper triangular factor C with real nonnegative diagonal, S = C^dag C.
// Zero diagonal entries are allowed so that rank-deficient positive
// matrices (pure-state Choi operators, damping channels) factor too.
//=========================================================================

class UpperTriangular {
 public:
  UpperTriangular() = default;

  explicit UpperTriangular(std::size_t dim) : matrix_(dim, dim) {}

  // Validates the triangular structure and the diagonal convention.
  static UpperTriangular from_matrix(const ComplexMatrix &m) {
    if (!m.is_square())
      throw DimensionMismatch("UpperTriangular: matrix is not square");
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (m(i, j) != Complex(0.0, 0.0))
          throw InvalidArgument("UpperTriangular: nonzero below diagonal");
      if (m(i, i).imag() != 0.0 || m(i, i).real() < 0.0)
        throw InvalidArgument(
            "UpperTriangular: diagonal must be real and nonnegative");
    }
    UpperTriangular c;
    c.matrix_ = m;
    return c;
  }

  std::size_t dim() const { return matrix_.rows(); }

  Complex &operator()(std::size_t i, std::size_t j) { return matrix_(i, j); }
  const Complex &operator()(std::size_t i, std::size_t j) const {
    return matrix_(i, j);
  }

  const ComplexMatrix &as_matrix() const { return matrix_; }

  // S = C^dag C.
  ComplexMatrix gram() const { return matrix_.adjoint() * matrix_; }

  // Sum of |C_ij|^2 == Tr[C^dag C].
  double squared_frobenius() const {
    const double f = matrix_.frobenius_norm();
    return f * f;
  }

 private:
  ComplexMatrix matrix_;
};

//=========================================================================
// cholesky
//
// Upper-triangular factorization S = C^dag C of a Hermitian positive
// semidefinite matrix.  A pivot at or below `pivot_tol` is treated as an
// exact rank deficiency: the diagonal entry and the remaining free entries
// of that row are set to zero instead of dividing by a vanishing pivot.
//=========================================================================

inline UpperTriangular cholesky(const ComplexMatrix &s,
                                double psd_tol = tol::kPsd,
                                double pivot_tol = tol::kPivot) {
  if (!s.is_square())
    throw DimensionMismatch("cholesky: matrix is not square");
  if (!s.is_hermitian(tol::kHermitian * std::max(1.0, s.max_abs())))
    throw NotHermitian("cholesky: matrix is not Hermitian");

  const std::size_t n = s.rows();
  const double scale = std::max(1.0, s.max_abs());
  UpperTriangular c(n);

  // Roundoff can push pivots of a semidefinite matrix slightly negative;
  // the spectrum decides whether that is clippable or a real violation.
  bool spectrum_checked = false;
  const auto require_psd = [&](const char *what) {
    if (!spectrum_checked) {
      spectrum_checked = true;
      if (min_eigenvalue(s) < -psd_tol * scale)
        throw NotPositiveSemidefinite(std::string("cholesky: ") + what);
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    double d = s(i, i).real();
    for (std::size_t k = 0; k < i; ++k) d -= std::norm(c(k, i));
    if (d < -psd_tol * scale) {
      require_psd("negative pivot");
      d = 0.0;
    }
    if (d <= pivot_tol * scale) {
      // Rank deficiency: the free entries of this row are zero.  For a
      // semidefinite matrix the eliminated residuals must vanish with the
      // pivot; a large residual means the matrix is indefinite.
      c(i, i) = Complex(0.0, 0.0);
      const double residual_tol = std::sqrt(pivot_tol) * scale;
      for (std::size_t j = i + 1; j < n; ++j) {
        Complex acc = s(i, j);
        for (std::size_t k = 0; k < i; ++k)
          acc -= std::conj(c(k, i)) * c(k, j);
        if (std::abs(acc) > residual_tol) require_psd("zero pivot residual");
      }
      continue;
    }
    const double diag = std::sqrt(d);
    c(i, i) = Complex(diag, 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      Complex acc = s(i, j);
      for (std::size_t k = 0; k < i; ++k)
        acc -= std::conj(c(k, i)) * c(k, j);
      c(i, j) = acc / diag;
    }
  }
  return c;
}

}  // namespace cpmap

#endif  // CPMAP_CHOLESKY_HPP_
