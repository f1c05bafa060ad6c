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

#ifndef CPMAP_CHANNELS_HPP_
#define CPMAP_CHANNELS_HPP_

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cpmap/cholesky.hpp"
#include "cpmap/complex_matrix.hpp"
#include "cpmap/errors.hpp"
#include "cpmap/hermitian_eigen.hpp"
#include "cpmap/linalg.hpp"
#include "cpmap/rng.hpp"

namespace cpmap {

//=========================================================================
// Qubit constants
//=========================================================================

inline const ComplexMatrix &pauli_i() {
  static const ComplexMatrix m = ComplexMatrix::identity(2);
  return m;
}
inline const ComplexMatrix &pauli_x() {
  static const ComplexMatrix m{{0.0, 1.0}, {1.0, 0.0}};
  return m;
}
inline const ComplexMatrix &pauli_y() {
  static const ComplexMatrix m{{0.0, Complex(0.0, -1.0)},
                               {Complex(0.0, 1.0), 0.0}};
  return m;
}
inline const ComplexMatrix &pauli_z() {
  static const ComplexMatrix m{{1.0, 0.0}, {0.0, -1.0}};
  return m;
}

inline const ComplexMatrix &pauli(std::size_t i) {
  switch (i) {
    case 0: return pauli_i();
    case 1: return pauli_x();
    case 2: return pauli_y();
    case 3: return pauli_z();
    default: throw InvalidArgument("pauli index out of range");
  }
}

// Unnormalized maximally entangled vector sum_n |n>|n> on C^N (x) C^N.
inline ComplexVector maximally_entangled_vector(std::size_t n) {
  ComplexVector psi(n * n, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) psi[k * n + k] = 1.0;
  return psi;
}

namespace detail {

// Row-major vectorization: vec(A)[m*N + n] = A[m,n].  This is exactly
// (A (x) I)|Psi> with the K-first index convention.
inline ComplexVector vec(const ComplexMatrix &a) {
  return a.entries();
}

inline ComplexMatrix unvec(const ComplexVector &v, std::size_t rows,
                           std::size_t cols) {
  if (v.size() != rows * cols)
    throw DimensionMismatch("unvec: length mismatch");
  return ComplexMatrix(rows, cols, v);
}

inline void add_outer(ComplexMatrix &s, const ComplexVector &v) {
  const std::size_t d = v.size();
  for (std::size_t a = 0; a < d; ++a) {
    if (v[a] == Complex(0.0, 0.0)) continue;
    for (std::size_t b = 0; b < d; ++b)
      s(a, b) += v[a] * std::conj(v[b]);
  }
}

}  // namespace detail

//=========================================================================
// KrausSet
//=========================================================================

// A completely positive map as a list of M x N operators A_k acting by
// rho -> sum_k A_k rho A_k^dag.  Trace preservation means
// sum_k A_k^dag A_k = I_N; it is checked by tp_deviation(), not enforced
// on construction.
class KrausSet {
 public:
  KrausSet(std::size_t dim_in, std::size_t dim_out,
           std::vector<ComplexMatrix> operators)
      : dim_in_(dim_in), dim_out_(dim_out), operators_(std::move(operators)) {
    if (dim_in_ == 0 || dim_out_ == 0)
      throw InvalidArgument("KrausSet: dimensions must be positive");
    if (operators_.empty())
      throw InvalidArgument("KrausSet: empty operator list");
    for (const auto &op : operators_)
      if (op.rows() != dim_out_ || op.cols() != dim_in_)
        throw DimensionMismatch("KrausSet: operator is not M x N");
  }

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix> &operators() const { return operators_; }

  // || sum_k A_k^dag A_k - I_N ||_F
  double tp_deviation() const {
    ComplexMatrix acc(dim_in_, dim_in_);
    for (const auto &op : operators_) acc += op.adjoint() * op;
    return frobenius_distance(acc, ComplexMatrix::identity(dim_in_));
  }

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<ComplexMatrix> operators_;
};

//=========================================================================
// ChoiMatrix
//=========================================================================

// The positive operator S on K (x) H isomorphic to the map, with the
// output factor first.  Hermiticity is enforced on construction; positivity
// and trace preservation are examined where operations need them, since the
// reconstructor works with estimates whose TP condition only holds
// approximately.
class ChoiMatrix {
 public:
  ChoiMatrix(std::size_t dim_in, std::size_t dim_out, ComplexMatrix s)
      : dim_in_(dim_in), dim_out_(dim_out), s_(std::move(s)) {
    if (s_.rows() != dim_in_ * dim_out_ || s_.cols() != dim_in_ * dim_out_)
      throw DimensionMismatch("ChoiMatrix: operator is not (NM)x(NM)");
    if (!s_.is_hermitian(tol::kHermitian * std::max(1.0, s_.max_abs())))
      throw NotHermitian("ChoiMatrix: operator is not Hermitian");
  }

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const ComplexMatrix &matrix() const { return s_; }

  double trace() const { return s_.trace().real(); }

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  ComplexMatrix s_;
};

//=========================================================================
// CanonicalForm
//=========================================================================

// Random-external-field style decomposition rho -> sum_n p_n U_n rho U_n^dag
// with nonnegative weights and operators orthonormal in the Hilbert-Schmidt
// inner product.
struct CanonicalForm {
  std::vector<double> weights;
  std::vector<ComplexMatrix> operators;
};

//=========================================================================
// Map application and representation conversion
//=========================================================================

inline ComplexMatrix kraus_apply(const KrausSet &k, const ComplexMatrix &rho) {
  if (rho.rows() != k.dim_in() || rho.cols() != k.dim_in())
    throw DimensionMismatch("kraus_apply: state dimension mismatch");
  ComplexMatrix out(k.dim_out(), k.dim_out());
  for (const auto &op : k.operators()) out += op * rho * op.adjoint();
  return out;
}

// S = sum_k vec(A_k) vec(A_k)^dag, i.e. (E (x) 1)|Psi><Psi|.
inline ChoiMatrix choi_from_kraus(const KrausSet &k) {
  const std::size_t d = k.dim_in() * k.dim_out();
  ComplexMatrix s(d, d);
  for (const auto &op : k.operators()) detail::add_outer(s, detail::vec(op));
  return ChoiMatrix(k.dim_in(), k.dim_out(), std::move(s));
}

// E(rho) = Tr_H[(1_K (x) rho^T) S].
inline ComplexMatrix choi_apply(const ChoiMatrix &c, const ComplexMatrix &rho) {
  if (rho.rows() != c.dim_in() || rho.cols() != c.dim_in())
    throw DimensionMismatch("choi_apply: state dimension mismatch");
  const ComplexMatrix lifted =
      tensor_product(ComplexMatrix::identity(c.dim_out()), rho.transpose());
  return partial_trace(lifted * c.matrix(), c.dim_out(), c.dim_in(),
                       Subsystem::Second);
}

// Same map through the partially transposed operator,
// E(rho) = Tr_H[(1_K (x) rho) S^Gamma].
inline ComplexMatrix choi_apply_transposed(const ChoiMatrix &c,
                                           const ComplexMatrix &rho) {
  if (rho.rows() != c.dim_in() || rho.cols() != c.dim_in())
    throw DimensionMismatch("choi_apply_transposed: state dimension mismatch");
  const ComplexMatrix s_gamma =
      partial_transpose(c.matrix(), c.dim_out(), c.dim_in());
  const ComplexMatrix lifted =
      tensor_product(ComplexMatrix::identity(c.dim_out()), rho);
  return partial_trace(lifted * s_gamma, c.dim_out(), c.dim_in(),
                       Subsystem::Second);
}

// Spectral Kraus extraction: A_k = sqrt(lambda_k) unvec(v_k) over the
// eigenpairs with lambda_k above the rank cutoff.
inline KrausSet kraus_from_choi(const ChoiMatrix &c,
                                double rank_tol = tol::kPivot,
                                double psd_tol = tol::kPsd) {
  const auto eig = hermitian_eigen(c.matrix());
  const double scale = std::max(1.0, c.matrix().max_abs());
  if (eig.eigenvalues.back() < -psd_tol * scale)
    throw NotPositiveSemidefinite("kraus_from_choi: negative eigenvalue");
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda <= rank_tol) continue;
    ComplexVector v = eig.eigenvector(k);
    const double w = std::sqrt(lambda);
    for (auto &x : v) x *= w;
    ops.push_back(detail::unvec(v, c.dim_out(), c.dim_in()));
  }
  if (ops.empty())
    ops.push_back(ComplexMatrix::zero(c.dim_out(), c.dim_in()));
  return KrausSet(c.dim_in(), c.dim_out(), std::move(ops));
}

// Diagonalizes S in an orthonormal operator basis.  With matrix units as
// the basis the coefficient matrix is S itself, so the weights are its
// eigenvalues and the operators the unvectorized eigenvectors.
inline CanonicalForm canonical_form(const ChoiMatrix &c,
                                    double psd_tol = tol::kPsd) {
  if (c.dim_in() != c.dim_out())
    throw NonSquareChannel("canonical_form: channel must be square");
  const auto eig = hermitian_eigen(c.matrix());
  const double scale = std::max(1.0, c.matrix().max_abs());
  if (eig.eigenvalues.back() < -psd_tol * scale)
    throw NotPositiveSemidefinite("canonical_form: negative eigenvalue");
  CanonicalForm form;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    form.weights.push_back(std::max(0.0, eig.eigenvalues[k]));
    form.operators.push_back(
        detail::unvec(eig.eigenvector(k), c.dim_out(), c.dim_in()));
  }
  return form;
}

//=========================================================================
// Property checks
//=========================================================================

struct TracePreservationCheck {
  bool preserved;
  double deviation;
};

// deviation = || Tr_K[S] - I_N ||_F
inline TracePreservationCheck is_trace_preserving(const ChoiMatrix &c,
                                                  double tolerance = 1e-10) {
  const ComplexMatrix reduced =
      partial_trace(c.matrix(), c.dim_out(), c.dim_in(), Subsystem::First);
  const double dev =
      frobenius_distance(reduced, ComplexMatrix::identity(c.dim_in()));
  return {dev <= tolerance, dev};
}

inline bool is_bistochastic(const KrausSet &k, double tolerance = 1e-10) {
  ComplexMatrix acc(k.dim_out(), k.dim_out());
  for (const auto &op : k.operators()) acc += op * op.adjoint();
  return frobenius_distance(acc, ComplexMatrix::identity(k.dim_out())) <=
         tolerance;
}

//=========================================================================
// Named channel builders
//=========================================================================

// rho -> sum_i p_i sigma_i rho sigma_i
inline KrausSet pauli_channel(double p0, double p1, double p2, double p3) {
  const double probs[4] = {p0, p1, p2, p3};
  double sum = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw InvalidProbabilities("pauli_channel: negative p_i");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InvalidProbabilities("pauli_channel: probabilities must sum to 1");
  std::vector<ComplexMatrix> ops;
  for (int i = 0; i < 4; ++i)
    ops.push_back(std::sqrt(std::max(0.0, probs[i])) * pauli(std::size_t(i)));
  return KrausSet(2, 2, std::move(ops));
}

// rho -> lambda rho + (1 - lambda)/2 * 1.  Complete positivity bounds
// lambda to [-1/3, 1].
inline KrausSet depolarizing(double lambda) {
  if (lambda < -1.0 / 3.0 - 1e-12 || lambda > 1.0 + 1e-12)
    throw InvalidArgument("depolarizing: lambda outside [-1/3, 1]");
  const double p0 = (1.0 + 3.0 * lambda) / 4.0;
  const double p = (1.0 - lambda) / 4.0;
  return pauli_channel(p0, p, p, p);
}

// Energy loss toward |0>: M1 = diag(1, sqrt(p)), M2 = sqrt(1-p)|0><1|.
inline KrausSet amplitude_damping(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12)
    throw InvalidArgument("amplitude_damping: p outside [0, 1]");
  p = std::min(1.0, std::max(0.0, p));
  ComplexMatrix m1{{1.0, 0.0}, {0.0, std::sqrt(p)}};
  ComplexMatrix m2{{0.0, std::sqrt(1.0 - p)}, {0.0, 0.0}};
  return KrausSet(2, 2, {std::move(m1), std::move(m2)});
}

//=========================================================================
// Random channel generation
//=========================================================================

inline ComplexMatrix random_gaussian_matrix(Rng &rng, std::size_t rows,
                                            std::size_t cols) {
  ComplexMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.gaussian_complex();
  return g;
}

// Hermitian inverse square root through the spectral decomposition.
inline ComplexMatrix inverse_sqrt(const ComplexMatrix &t) {
  const auto eig = hermitian_eigen(t);
  const std::size_t n = t.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda <= 0.0)
      throw NotPositiveSemidefinite("inverse_sqrt: nonpositive eigenvalue");
    const double w = 1.0 / std::sqrt(lambda);
    const auto v = eig.eigenvector(k);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        out(a, b) += w * v[a] * std::conj(v[b]);
  }
  return out;
}

// Draw Gaussian blocks G_k and whiten with (sum G_k^dag G_k)^(-1/2), which
// yields an exactly trace-preserving Kraus set.
inline KrausSet random_tp_kraus(Rng &rng, std::size_t num_ops,
                                std::size_t dim_in, std::size_t dim_out) {
  std::vector<ComplexMatrix> blocks;
  ComplexMatrix t(dim_in, dim_in);
  for (std::size_t k = 0; k < num_ops; ++k) {
    blocks.push_back(random_gaussian_matrix(rng, dim_out, dim_in));
    t += blocks.back().adjoint() * blocks.back();
  }
  const ComplexMatrix w = inverse_sqrt(t);
  std::vector<ComplexMatrix> ops;
  for (auto &g : blocks) ops.push_back(g * w);
  return KrausSet(dim_in, dim_out, std::move(ops));
}

// Haar-like random unitary via Gram-Schmidt on a Gaussian matrix.
inline ComplexMatrix random_unitary(Rng &rng, std::size_t n) {
  ComplexMatrix g = random_gaussian_matrix(rng, n, n);
  // Orthonormalize columns.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex proj(0.0, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        proj += std::conj(g(i, k)) * g(i, j);
      for (std::size_t i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
  }
  return g;
}

// Random density matrix G^dag G / Tr.
inline ComplexMatrix random_density_matrix(Rng &rng, std::size_t n) {
  const ComplexMatrix g = random_gaussian_matrix(rng, n, n);
  ComplexMatrix rho = g.adjoint() * g;
  const double tr = rho.trace().real();
  rho *= Complex(1.0 / tr, 0.0);
  // Exact Hermitian symmetrization.
  for (std::size_t i = 0; i < n; ++i) {
    rho(i, i) = Complex(rho(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex m = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
      rho(i, j) = m;
      rho(j, i) = std::conj(m);
    }
  }
  return rho;
}

//=========================================================================
// CLI channel spec grammar: name ':' comma-separated reals
//=========================================================================

struct NamedChannel {
  std::string label;
  KrausSet kraus;
};

inline NamedChannel parse_channel_spec(const std::string &spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      std::size_t next = rest.find(',', pos);
      if (next == std::string::npos) next = rest.size();
      const std::string tok = rest.substr(pos, next - pos);
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        args.push_back(v);
      } catch (const std::exception &) {
        throw InvalidArgument("channel spec: bad number '" + tok + "'");
      }
      pos = next + 1;
    }
  }
  if (name == "pauli") {
    if (args.size() != 4)
      throw InvalidArgument("channel spec: pauli needs p0,p1,p2,p3");
    return {spec, pauli_channel(args[0], args[1], args[2], args[3])};
  }
  if (name == "depol") {
    if (args.size() != 1)
      throw InvalidArgument("channel spec: depol needs lambda");
    return {spec, depolarizing(args[0])};
  }
  if (name == "adamp") {
    if (args.size() != 1)
      throw InvalidArgument("channel spec: adamp needs p");
    return {spec, amplitude_damping(args[0])};
  }
  throw InvalidArgument("unknown channel '" + name +
                        "'; available: pauli:p0,p1,p2,p3 depol:lambda adamp:p");
}

}  // namespace cpmap

#endif  // CPMAP_CHANNELS_HPP_
