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

#ifndef CPMAP_HERMITIAN_EIGEN_HPP_
#define CPMAP_HERMITIAN_EIGEN_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cpmap/complex_matrix.hpp"
#include "cpmap/errors.hpp"
#include "cpmap/linalg.hpp"

namespace cpmap {

// Eigenvalues sorted descending; eigenvectors_columns holds the matching
// orthonormal eigenvectors as columns.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors_columns;

  ComplexVector eigenvector(std::size_t k) const {
    const std::size_t n = eigenvectors_columns.rows();
    ComplexVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = eigenvectors_columns(i, k);
    return v;
  }
};

//=========================================================================
// Cyclic Jacobi diagonalization for complex Hermitian matrices.
//
// Sized for the small dense operators this library works with (a few
// hundred rows at most); accuracy is at rounding level, which the spectral
// extraction of Kraus operators depends on.
//=========================================================================

inline EigenDecomposition hermitian_eigen(const ComplexMatrix &s,
                                          double hermitian_tol =
                                              tol::kHermitian) {
  if (!s.is_square())
    throw DimensionMismatch("hermitian_eigen: matrix is not square");
  if (!s.is_hermitian(hermitian_tol * std::max(1.0, s.max_abs())))
    throw NotHermitian("hermitian_eigen: matrix is not Hermitian");

  const std::size_t n = s.rows();
  ComplexMatrix a = s;
  // Symmetrize exactly so rounding in the input cannot bias the sweeps.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = Complex(a(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex m = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = m;
      a(j, i) = std::conj(m);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(1.0, a.max_abs());
  const double stop = 1e-15 * scale;
  const int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::abs(a(p, q));
    if (off <= stop) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= stop / (double(n) * double(n))) continue;

        // Unitary 2x2 rotation annihilating a(p,q).
        const Complex phase = apq / r;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;
        const Complex jpq = sn * phase;           // J(p,q)
        const Complex jqp = -sn * std::conj(phase);  // J(q,p)

        // a <- J^dag a J, applied as column then row updates.
        for (std::size_t i = 0; i < n; ++i) {
          const Complex aip = a(i, p);
          const Complex aiq = a(i, q);
          a(i, p) = aip * c + aiq * jqp;
          a(i, q) = aip * jpq + aiq * c;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const Complex apj = a(p, j);
          const Complex aqj = a(q, j);
          a(p, j) = c * apj + std::conj(jqp) * aqj;
          a(q, j) = std::conj(jpq) * apj + c * aqj;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const Complex vip = v(i, p);
          const Complex viq = v(i, q);
          v(i, p) = vip * c + viq * jqp;
          v(i, q) = vip * jpq + viq * c;
        }
        a(p, q) = Complex(0.0, 0.0);
        a(q, p) = Complex(0.0, 0.0);
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);
      }
    }
  }

  std::vector<double> lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = a(i, i).real();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return lambda[x] > lambda[y];
  });

  EigenDecomposition result;
  result.eigenvalues.resize(n);
  result.eigenvectors_columns = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    result.eigenvalues[k] = lambda[order[k]];
    for (std::size_t i = 0; i < n; ++i)
      result.eigenvectors_columns(i, k) = v(i, order[k]);
  }
  return result;
}

// Smallest eigenvalue, a convenience for positivity checks.
inline double min_eigenvalue(const ComplexMatrix &s) {
  const auto eig = hermitian_eigen(s);
  return eig.eigenvalues.back();
}

}  // namespace cpmap

#endif  // CPMAP_HERMITIAN_EIGEN_HPP_
