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

#ifndef CPMAP_LIKELIHOOD_HPP_
#define CPMAP_LIKELIHOOD_HPP_

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "cpmap/cholesky.hpp"
#include "cpmap/complex_matrix.hpp"
#include "cpmap/errors.hpp"
#include "cpmap/experiment.hpp"
#include "cpmap/linalg.hpp"

namespace cpmap {

// Flat real parameterization of the Cholesky factor; length (NM)^2.
using ParamVector = std::vector<double>;

inline std::size_t param_count(std::size_t dim_in, std::size_t dim_out) {
  const std::size_t d = dim_in * dim_out;
  return d * d;
}

//=========================================================================
// Parameter vector <-> Cholesky factor
//
// The first NM entries map to the diagonal through absolute value; the
// remaining NM(NM-1) entries are the real/imaginary parts of the
// above-diagonal entries in row-major order.  Every parameter vector maps
// to a valid factor, so the optimizer explores completely positive
// operators only.
//=========================================================================

inline UpperTriangular params_to_cholesky(const ParamVector &v,
                                          std::size_t dim_in,
                                          std::size_t dim_out) {
  const std::size_t d = dim_in * dim_out;
  if (v.size() != d * d)
    throw InvalidArgument("params_to_cholesky: parameter length mismatch");
  UpperTriangular c(d);
  for (std::size_t i = 0; i < d; ++i) c(i, i) = std::abs(v[i]);
  std::size_t k = d;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      c(i, j) = Complex(v[k], v[k + 1]);
      k += 2;
    }
  return c;
}

inline ParamVector cholesky_to_params(const UpperTriangular &c) {
  const std::size_t d = c.dim();
  ParamVector v(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) v[i] = c(i, i).real();
  std::size_t k = d;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      v[k] = c(i, j).real();
      v[k + 1] = c(i, j).imag();
      k += 2;
    }
  return v;
}

//=========================================================================
// LikelihoodContext
//
// Preprocesses a record set for fast repeated evaluation.  Projective
// records factor as rank-1 probes x_l = phi_l (x) conj(psi_l), for which
// the outcome probability is the explicitly positive ||C x_l||^2.  General
// POVM effects go through the factored form F = A^dag A, rho^T = R^dag R
// with probability ||C (A^dag (x) R^dag)||_F^2.
//=========================================================================

class LikelihoodContext {
 public:
  // Projective qubit records.
  LikelihoodContext(const std::vector<MeasurementRecord> &records,
                    double probability_floor = 1e-12)
      : dim_in_(2), dim_out_(2), floor_(probability_floor) {
    check_floor();
    if (records.empty())
      throw InvalidArgument("LikelihoodContext: no records");
    const std::size_t d = dim_in_ * dim_out_;
    rank1_probes_.reserve(records.size() * d);
    for (const auto &rec : records) {
      const ComplexVector phi = projector_axis(rec.observed_effect());
      const auto &psi = rec.state.amplitudes();
      for (std::size_t m = 0; m < dim_out_; ++m)
        for (std::size_t n = 0; n < dim_in_; ++n)
          rank1_probes_.push_back(phi[m] * std::conj(psi[n]));
    }
  }

  // General (state, effect) pairs for arbitrary POVM elements.
  LikelihoodContext(std::size_t dim_in, std::size_t dim_out,
                    const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>
                        &state_effect_pairs,
                    double probability_floor = 1e-12)
      : dim_in_(dim_in), dim_out_(dim_out), floor_(probability_floor) {
    check_floor();
    if (state_effect_pairs.empty())
      throw InvalidArgument("LikelihoodContext: no records");
    for (const auto &[rho, effect] : state_effect_pairs) {
      const ComplexMatrix a = cholesky(effect).as_matrix();
      const ComplexMatrix r = cholesky(rho.transpose()).as_matrix();
      general_probes_.push_back(tensor_product(a.adjoint(), r.adjoint()));
    }
  }

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  std::size_t probe_dim() const { return dim_in_ * dim_out_; }
  double probability_floor() const { return floor_; }

  std::size_t record_count() const {
    return rank1_probes_.size() / probe_dim() + general_probes_.size();
  }

  // Rank-1 probe vectors, concatenated; for model-specific precomputation.
  const ComplexVector &rank1_probes() const { return rank1_probes_; }

  //-----------------------------------------------------------------------
  // Evaluation
  //-----------------------------------------------------------------------

  // Log-likelihood at a factor matrix C (not required to be triangular):
  // sum_l log max(floor, ||C x_l||^2).  Value depends on C only through
  // C^dag C.
  double log_likelihood_factor(const ComplexMatrix &c) const {
    const std::size_t d = probe_dim();
    if (c.rows() != d || c.cols() != d)
      throw DimensionMismatch("log_likelihood_factor: factor is not (NM)x(NM)");
    double total = 0.0;
    double chunk = 1.0;
    int in_chunk = 0;
    const Complex *cm = c.data();
    const std::size_t n_rank1 = rank1_probes_.size() / d;
    for (std::size_t l = 0; l < n_rank1; ++l) {
      const Complex *x = rank1_probes_.data() + l * d;
      double p = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        Complex acc(0.0, 0.0);
        const Complex *row = cm + i * d;
        for (std::size_t j = 0; j < d; ++j) acc += row[j] * x[j];
        p += std::norm(acc);
      }
      chunk *= p > floor_ ? p : floor_;
      if (++in_chunk == kChunk) {
        total += std::log(chunk);
        chunk = 1.0;
        in_chunk = 0;
      }
    }
    for (const auto &g : general_probes_) {
      const ComplexMatrix cg = c * g;
      const double f = cg.frobenius_norm();
      const double p = f * f;
      chunk *= p > floor_ ? p : floor_;
      if (++in_chunk == kChunk) {
        total += std::log(chunk);
        chunk = 1.0;
        in_chunk = 0;
      }
    }
    if (in_chunk > 0) total += std::log(chunk);
    return total;
  }

  // Same value as log_likelihood_factor, skipping the structural zeros of
  // the triangular factor; this is the optimizer's hot path.
  double log_likelihood_triangular(const UpperTriangular &c) const {
    const std::size_t d = probe_dim();
    if (c.dim() != d)
      throw DimensionMismatch("log_likelihood_triangular: dimension mismatch");
    double total = 0.0;
    double chunk = 1.0;
    int in_chunk = 0;
    const Complex *cm = c.as_matrix().data();
    const std::size_t n_rank1 = rank1_probes_.size() / d;
    for (std::size_t l = 0; l < n_rank1; ++l) {
      const Complex *x = rank1_probes_.data() + l * d;
      double p = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        Complex acc(0.0, 0.0);
        const Complex *row = cm + i * d;
        for (std::size_t j = i; j < d; ++j) acc += row[j] * x[j];
        p += std::norm(acc);
      }
      chunk *= p > floor_ ? p : floor_;
      if (++in_chunk == kChunk) {
        total += std::log(chunk);
        chunk = 1.0;
        in_chunk = 0;
      }
    }
    if (in_chunk > 0) total += std::log(chunk);
    if (!general_probes_.empty())
      total += general_probes_tail(c.as_matrix());
    return total;
  }

  // Log-likelihood of a Choi operator directly (no factorization), using
  // p = Tr[S (F (x) rho^T)].  Used by the reduced-model objectives.
  double log_likelihood_choi(const ComplexMatrix &s) const {
    const std::size_t d = probe_dim();
    if (s.rows() != d || s.cols() != d)
      throw DimensionMismatch("log_likelihood_choi: operator is not (NM)x(NM)");
    double total = 0.0;
    double chunk = 1.0;
    int in_chunk = 0;
    const std::size_t n_rank1 = rank1_probes_.size() / d;
    for (std::size_t l = 0; l < n_rank1; ++l) {
      const Complex *x = rank1_probes_.data() + l * d;
      // p = <x|S|x>
      double p = 0.0;
      for (std::size_t a = 0; a < d; ++a) {
        Complex acc(0.0, 0.0);
        for (std::size_t b = 0; b < d; ++b) acc += s(a, b) * x[b];
        p += (std::conj(x[a]) * acc).real();
      }
      chunk *= p > floor_ ? p : floor_;
      if (++in_chunk == kChunk) {
        total += std::log(chunk);
        chunk = 1.0;
        in_chunk = 0;
      }
    }
    for (const auto &g : general_probes_) {
      // p = Tr[S G G^dag] with G = A^dag (x) R^dag.
      const ComplexMatrix sg = s * g;
      double p = 0.0;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          p += (std::conj(g(a, b)) * sg(a, b)).real();
      chunk *= p > floor_ ? p : floor_;
      if (++in_chunk == kChunk) {
        total += std::log(chunk);
        chunk = 1.0;
        in_chunk = 0;
      }
    }
    if (in_chunk > 0) total += std::log(chunk);
    return total;
  }

 private:
  void check_floor() const {
    if (!(floor_ > 0.0) || floor_ > 1e-6)
      throw InvalidArgument("LikelihoodContext: floor must be in (0, 1e-6]");
  }

  double general_probes_tail(const ComplexMatrix &c) const {
    double total = 0.0;
    double chunk = 1.0;
    int in_chunk = 0;
    for (const auto &g : general_probes_) {
      const ComplexMatrix cg = c * g;
      const double f = cg.frobenius_norm();
      const double p = f * f;
      chunk *= p > floor_ ? p : floor_;
      if (++in_chunk == kChunk) {
        total += std::log(chunk);
        chunk = 1.0;
        in_chunk = 0;
      }
    }
    if (in_chunk > 0) total += std::log(chunk);
    return total;
  }

  // Axis of a rank-1 projector: the normalized dominant column.
  static ComplexVector projector_axis(const ComplexMatrix &f) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < f.cols(); ++j)
      if (f(j, j).real() > f(best, best).real()) best = j;
    const double nrm = std::sqrt(f(best, best).real());
    ComplexVector phi(f.rows());
    for (std::size_t i = 0; i < f.rows(); ++i) phi[i] = f(i, best) / nrm;
    return phi;
  }

  static constexpr int kChunk = 16;

  std::size_t dim_in_;
  std::size_t dim_out_;
  double floor_;
  ComplexVector rank1_probes_;
  std::vector<ComplexMatrix> general_probes_;
};

//=========================================================================
// Objective entry points
//=========================================================================

inline double log_likelihood(const ParamVector &v,
                             const LikelihoodContext &ctx) {
  return ctx.log_likelihood_triangular(
      params_to_cholesky(v, ctx.dim_in(), ctx.dim_out()));
}

// L(C) - (K/N) Tr[C^dag C]; the penalty encodes the trace-preservation
// multiplier, so the unconstrained maximum lands on Tr[S] = N.
inline double penalized_log_likelihood(const ParamVector &v,
                                       const LikelihoodContext &ctx) {
  double trace = 0.0;
  for (double x : v) trace += x * x;  // Tr[C^dag C] = sum of squared params
  const double weight =
      static_cast<double>(ctx.record_count()) / static_cast<double>(ctx.dim_in());
  return log_likelihood(v, ctx) - weight * trace;
}

}  // namespace cpmap

#endif  // CPMAP_LIKELIHOOD_HPP_
