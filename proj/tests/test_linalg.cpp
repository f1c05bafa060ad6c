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

#include <catch2/catch_amalgamated.hpp>

#include "cpmap/channels.hpp"
#include "cpmap/cholesky.hpp"
#include "cpmap/complex_matrix.hpp"
#include "cpmap/hermitian_eigen.hpp"
#include "cpmap/linalg.hpp"
#include "cpmap/rng.hpp"
#include "test_support.hpp"

using namespace cpmap;
using cpmap::test::damping_choi_reference;
using cpmap::test::entangled_projector_reference;
using cpmap::test::pauli_choi_reference;

namespace {

ComplexMatrix random_matrix(Rng &rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.gaussian_complex();
  return m;
}

ComplexMatrix random_psd(Rng &rng, std::size_t n) {
  const ComplexMatrix g = random_matrix(rng, n, n);
  ComplexMatrix s = g.adjoint() * g;
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = Complex(s(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex m = 0.5 * (s(i, j) + std::conj(s(j, i)));
      s(i, j) = m;
      s(j, i) = std::conj(m);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("tensor product on basic operators", "[linalg]") {
  const auto i2 = ComplexMatrix::identity(2);
  CHECK(tensor_product(i2, i2).max_abs_diff(ComplexMatrix::identity(4)) == 0.0);

  const ComplexMatrix zz = tensor_product(pauli_z(), pauli_z());
  ComplexMatrix expected(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 1) = -1.0;
  expected(2, 2) = -1.0;
  expected(3, 3) = 1.0;
  CHECK(zz.max_abs_diff(expected) == 0.0);

  // |0><0| (x) |1><1| lands on the |01> basis element.
  ComplexMatrix p0(2, 2), p1(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const ComplexMatrix prod = tensor_product(p0, p1);
  ComplexMatrix expected01(4, 4);
  expected01(1, 1) = 1.0;
  CHECK(prod.max_abs_diff(expected01) == 0.0);
}

TEST_CASE("tensor product multiplies Frobenius norms", "[linalg]") {
  Rng rng(81234);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_matrix(rng, 2 + trial % 3, 3);
    const auto b = random_matrix(rng, 3, 2 + trial % 2);
    CHECK_THAT(tensor_product(a, b).frobenius_norm(),
               Catch::Matchers::WithinRel(
                   a.frobenius_norm() * b.frobenius_norm(), 1e-12));
  }
}

TEST_CASE("partial trace on reference operators", "[linalg]") {
  const auto two_i2 =
      partial_trace(ComplexMatrix::identity(4), 2, 2, Subsystem::First);
  CHECK(two_i2.max_abs_diff(2.0 * ComplexMatrix::identity(2)) < 1e-15);

  // Tracing the output factor of a trace-preserving Choi matrix gives the
  // input identity.
  const auto sp = pauli_choi_reference(0.3, 0.2, 0.4, 0.1);
  CHECK(partial_trace(sp, 2, 2, Subsystem::First)
            .max_abs_diff(ComplexMatrix::identity(2)) < 1e-15);

  const auto psi = entangled_projector_reference();
  CHECK(partial_trace(psi, 2, 2, Subsystem::First)
            .max_abs_diff(ComplexMatrix::identity(2)) < 1e-15);
}

TEST_CASE("partial trace of a product factor", "[linalg]") {
  Rng rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_matrix(rng, 2, 2);
    const auto y = random_matrix(rng, 3, 3);
    const auto traced =
        partial_trace(tensor_product(x, y), 2, 3, Subsystem::Second);
    CHECK(traced.max_abs_diff(y.trace() * x) < 1e-12);
    // Total trace is preserved by construction.
    const auto traced_first =
        partial_trace(tensor_product(x, y), 2, 3, Subsystem::First);
    CHECK_THAT(traced_first.trace().real(),
               Catch::Matchers::WithinAbs(
                   (x.trace() * y.trace()).real(), 1e-12));
  }
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(5), 2, 2,
                                Subsystem::First),
                  DimensionMismatch);
}

TEST_CASE("partial transpose of reference operators", "[linalg]") {
  CHECK(partial_transpose(ComplexMatrix::identity(4), 2, 2)
            .max_abs_diff(ComplexMatrix::identity(4)) == 0.0);

  // |Psi><Psi| with Psi = sum |nn> partially transposes to SWAP.
  ComplexMatrix swap(4, 4);
  swap(0, 0) = 1.0;
  swap(1, 2) = 1.0;
  swap(2, 1) = 1.0;
  swap(3, 3) = 1.0;
  CHECK(partial_transpose(entangled_projector_reference(), 2, 2)
            .max_abs_diff(swap) == 0.0);
}

TEST_CASE("partial transpose matches the operator-basis expansion",
          "[linalg]") {
  // Brute-force oracle: S^Gamma = sum_i E(V_i) (x) V_i^dag over the matrix
  // unit basis, with E the Pauli channel applied directly.
  const double p[4] = {0.3, 0.2, 0.4, 0.1};
  const auto apply_channel = [&](const ComplexMatrix &rho) {
    ComplexMatrix out(2, 2);
    for (int i = 0; i < 4; ++i)
      out += p[i] * (pauli(i) * rho * pauli(i).adjoint());
    return out;
  };
  ComplexMatrix s_gamma(4, 4);
  for (std::size_t m = 0; m < 2; ++m)
    for (std::size_t n = 0; n < 2; ++n) {
      ComplexMatrix unit(2, 2);
      unit(m, n) = 1.0;
      s_gamma += tensor_product(apply_channel(unit), unit.adjoint());
    }
  const auto sp = pauli_choi_reference(p[0], p[1], p[2], p[3]);
  CHECK(partial_transpose(sp, 2, 2).max_abs_diff(s_gamma) < 1e-14);
}

TEST_CASE("partial transpose is an involution preserving structure",
          "[linalg]") {
  Rng rng(777);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_psd(rng, 6);  // 2 x 3 bipartite
    const auto pt = partial_transpose(s, 2, 3);
    CHECK(partial_transpose(pt, 2, 3).max_abs_diff(s) == 0.0);
    CHECK(pt.is_hermitian(1e-12 * pt.max_abs()));
    CHECK_THAT(pt.trace().real(),
               Catch::Matchers::WithinRel(s.trace().real(), 1e-13));
  }
}

TEST_CASE("cholesky on reference matrices", "[linalg]") {
  const auto c_id = cholesky(ComplexMatrix::identity(4));
  CHECK(c_id.as_matrix().max_abs_diff(ComplexMatrix::identity(4)) == 0.0);

  ComplexMatrix d41(2, 2);
  d41(0, 0) = 4.0;
  d41(1, 1) = 1.0;
  const auto c_d = cholesky(d41);
  CHECK(c_d(0, 0) == Complex(2.0, 0.0));
  CHECK(c_d(1, 1) == Complex(1.0, 0.0));
  CHECK(c_d(0, 1) == Complex(0.0, 0.0));
}

TEST_CASE("cholesky factors the singular damping Choi matrix", "[linalg]") {
  const auto sa = damping_choi_reference(0.5);
  const auto c = cholesky(sa);
  CHECK(frobenius_distance(c.gram(), sa) < 1e-10);
  // Rank 2: two vanishing diagonal entries.
  int zero_diag = 0;
  for (std::size_t i = 0; i < 4; ++i)
    if (c(i, i).real() == 0.0) ++zero_diag;
  CHECK(zero_diag == 2);
}

TEST_CASE("cholesky rejects indefinite and non-Hermitian input", "[linalg]") {
  ComplexMatrix neg(2, 2);
  neg(0, 0) = 1.0;
  neg(1, 1) = -1e-6;
  CHECK_THROWS_AS(cholesky(neg), NotPositiveSemidefinite);

  // Zero diagonal with off-diagonal weight: indefinite despite clean pivots.
  ComplexMatrix offdiag(2, 2);
  offdiag(0, 1) = 1.0;
  offdiag(1, 0) = 1.0;
  CHECK_THROWS_AS(cholesky(offdiag), NotPositiveSemidefinite);

  ComplexMatrix nonherm(2, 2);
  nonherm(0, 1) = 1.0;
  CHECK_THROWS_AS(cholesky(nonherm), NotHermitian);
}

TEST_CASE("cholesky round trips random PSD matrices", "[linalg]") {
  Rng rng(424242);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto s = random_psd(rng, n);
    const auto c = cholesky(s);
    CHECK(frobenius_distance(c.gram(), s) <= 1e-10 * s.frobenius_norm());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(c(i, i).imag() == 0.0);
      CHECK(c(i, i).real() >= 0.0);
      for (std::size_t j = 0; j < i; ++j)
        CHECK(c(i, j) == Complex(0.0, 0.0));
    }
  }
}

TEST_CASE("hermitian_eigen on reference operators", "[linalg]") {
  const auto eig_z = hermitian_eigen(pauli_z());
  CHECK(eig_z.eigenvalues[0] == Catch::Approx(1.0).margin(1e-14));
  CHECK(eig_z.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-14));
  CHECK(std::abs(eig_z.eigenvectors_columns(0, 0)) ==
        Catch::Approx(1.0).margin(1e-12));
  CHECK(std::abs(eig_z.eigenvectors_columns(1, 1)) ==
        Catch::Approx(1.0).margin(1e-12));

  // The Pauli Choi matrix splits into two 2x2 blocks with entries a +- b,
  // so the spectrum is {2 p_i}: here {0.8, 0.6, 0.4, 0.2}.
  const auto sp = pauli_choi_reference(0.3, 0.2, 0.4, 0.1);
  const auto eig_sp = hermitian_eigen(sp);
  const double expected[4] = {0.8, 0.6, 0.4, 0.2};
  for (int k = 0; k < 4; ++k)
    CHECK(eig_sp.eigenvalues[k] == Catch::Approx(expected[k]).margin(1e-12));

  const auto eig_psi = hermitian_eigen(entangled_projector_reference());
  CHECK(eig_psi.eigenvalues[0] == Catch::Approx(2.0).margin(1e-12));
  for (int k = 1; k < 4; ++k)
    CHECK(eig_psi.eigenvalues[k] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("hermitian_eigen reconstructs and orthonormalizes", "[linalg]") {
  Rng rng(999);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 7;
    auto s = random_psd(rng, n);
    // Mix in negative directions too.
    s -= Complex(double(trial % 3), 0.0) * ComplexMatrix::identity(n);
    const auto eig = hermitian_eigen(s);
    const auto &v = eig.eigenvectors_columns;
    CHECK((v.adjoint() * v).max_abs_diff(ComplexMatrix::identity(n)) < 1e-12);
    ComplexMatrix recon(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto vk = eig.eigenvector(k);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          recon(a, b) += eig.eigenvalues[k] * vk[a] * std::conj(vk[b]);
    }
    CHECK(frobenius_distance(recon, s) <= 1e-10 * s.frobenius_norm());
    // Descending order.
    for (std::size_t k = 1; k < n; ++k)
      CHECK(eig.eigenvalues[k - 1] >= eig.eigenvalues[k]);
  }
  CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}),
                  NotHermitian);
}

TEST_CASE("adjoint is an exact involution", "[linalg]") {
  Rng rng(31337);
  const auto a = random_matrix(rng, 3, 5);
  CHECK(a.adjoint().adjoint() == a);
}
