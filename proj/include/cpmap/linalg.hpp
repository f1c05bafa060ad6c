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

#ifndef CPMAP_LINALG_HPP_
#define CPMAP_LINALG_HPP_

#include <cstddef>

#include "cpmap/complex_matrix.hpp"
#include "cpmap/errors.hpp"

namespace cpmap {

// Default numerical tolerances used by the dense kernels.
namespace tol {
// Eigenvalues above -kPsd are treated as nonnegative (clipped to zero).
inline constexpr double kPsd = 1e-10;
// Cholesky pivots at or below kPivot are treated as exactly zero.
inline constexpr double kPivot = 1e-12;
// Maximum entrywise deviation from Hermiticity.
inline constexpr double kHermitian = 1e-12;
}  // namespace tol

//=========================================================================
// Tensor-product space helpers
//
// Bipartite operators act on a product space with the *output* (K) factor
// first and the *input* (H) factor second everywhere in this library.  A
// composite row index reads (i, k) -> i * dim_in + k with i on K and k on
// H, i.e. the lexicographically ordered product basis.
//=========================================================================

// Kronecker product, (A (x) B)[(i*rB + k), (j*cB + l)] = A[i,j] * B[k,l].
inline ComplexMatrix tensor_product(const ComplexMatrix &a,
                                    const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

enum class Subsystem { First, Second };

// Trace out one factor of an operator on K (x) H.  `dim_out` is the
// dimension of the first (K) factor, `dim_in` of the second (H) factor.
// Tracing preserves the total trace.
inline ComplexMatrix partial_trace(const ComplexMatrix &s,
                                   std::size_t dim_out, std::size_t dim_in,
                                   Subsystem which) {
  const std::size_t d = dim_out * dim_in;
  if (s.rows() != d || s.cols() != d)
    throw DimensionMismatch("partial_trace: operator is not (MN)x(MN)");
  if (which == Subsystem::First) {
    ComplexMatrix out(dim_in, dim_in);
    for (std::size_t n = 0; n < dim_in; ++n)
      for (std::size_t np = 0; np < dim_in; ++np) {
        Complex acc(0.0, 0.0);
        for (std::size_t m = 0; m < dim_out; ++m)
          acc += s(m * dim_in + n, m * dim_in + np);
        out(n, np) = acc;
      }
    return out;
  }
  ComplexMatrix out(dim_out, dim_out);
  for (std::size_t m = 0; m < dim_out; ++m)
    for (std::size_t mp = 0; mp < dim_out; ++mp) {
      Complex acc(0.0, 0.0);
      for (std::size_t n = 0; n < dim_in; ++n)
        acc += s(m * dim_in + n, mp * dim_in + n);
      out(m, mp) = acc;
    }
  return out;
}

// Partial transposition on the H (second) factor:
// S[(m,n),(m',n')] -> S[(m,n'),(m',n)].  An involution.
inline ComplexMatrix partial_transpose(const ComplexMatrix &s,
                                       std::size_t dim_out,
                                       std::size_t dim_in) {
  const std::size_t d = dim_out * dim_in;
  if (s.rows() != d || s.cols() != d)
    throw DimensionMismatch("partial_transpose: operator is not (MN)x(MN)");
  ComplexMatrix out(d, d);
  for (std::size_t m = 0; m < dim_out; ++m)
    for (std::size_t n = 0; n < dim_in; ++n)
      for (std::size_t mp = 0; mp < dim_out; ++mp)
        for (std::size_t np = 0; np < dim_in; ++np)
          out(m * dim_in + np, mp * dim_in + n) =
              s(m * dim_in + n, mp * dim_in + np);
  return out;
}

}  // namespace cpmap

#endif  // CPMAP_LINALG_HPP_
