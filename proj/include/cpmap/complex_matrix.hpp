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

#ifndef CPMAP_COMPLEX_MATRIX_HPP_
#define CPMAP_COMPLEX_MATRIX_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "cpmap/errors.hpp"

namespace cpmap {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

//=========================================================================
// ComplexMatrix
//
// Dense complex matrix with explicit dimensions, stored row-major.
// The workhorse type for states, POVM effects, Kraus operators and
// Choi matrices throughout the library.
//=========================================================================

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, ComplexVector entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw DimensionMismatch("entries length does not match rows*cols");
  }

  // Row-major nested initializer, e.g. {{1, 0}, {0, 1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    entries_.reserve(rows_ * cols_);
    for (const auto &row : init) {
      if (row.size() != cols_)
        throw DimensionMismatch("ragged initializer list");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex &operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const Complex &operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const ComplexVector &entries() const { return entries_; }
  Complex *data() { return entries_.data(); }
  const Complex *data() const { return entries_.data(); }

  //-----------------------------------------------------------------------
  // Arithmetic
  //-----------------------------------------------------------------------

  ComplexMatrix &operator+=(const ComplexMatrix &other) {
    check_same_shape(other, "operator+=");
    for (std::size_t k = 0; k < entries_.size(); ++k)
      entries_[k] += other.entries_[k];
    return *this;
  }

  ComplexMatrix &operator-=(const ComplexMatrix &other) {
    check_same_shape(other, "operator-=");
    for (std::size_t k = 0; k < entries_.size(); ++k)
      entries_[k] -= other.entries_[k];
    return *this;
  }

  ComplexMatrix &operator*=(const Complex &scale) {
    for (auto &e : entries_) e *= scale;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, const Complex &s) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(const Complex &s, ComplexMatrix a) {
    a *= s;
    return a;
  }

  friend ComplexMatrix operator*(const ComplexMatrix &a,
                                 const ComplexMatrix &b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch("matrix product: inner dimensions differ");
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  // Matrix-vector product.
  ComplexVector apply(const ComplexVector &x) const {
    if (x.size() != cols_)
      throw DimensionMismatch("matrix-vector product: size mismatch");
    ComplexVector y(rows_, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < rows_; ++i) {
      Complex acc(0.0, 0.0);
      const Complex *row = entries_.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * x[j];
      y[i] = acc;
    }
    return y;
  }

  //-----------------------------------------------------------------------
  // Structure
  //-----------------------------------------------------------------------

  ComplexMatrix transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix c(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
      c.entries_[k] = std::conj(entries_[k]);
    return c;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix a(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        a(j, i) = std::conj((*this)(i, j));
    return a;
  }

  Complex trace() const {
    if (!is_square()) throw DimensionMismatch("trace of non-square matrix");
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto &e : entries_) s += std::norm(e);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto &e : entries_) m = std::max(m, std::abs(e));
    return m;
  }

  // Largest entrywise |a_ij - b_ij|.
  double max_abs_diff(const ComplexMatrix &other) const {
    check_same_shape(other, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < entries_.size(); ++k)
      m = std::max(m, std::abs(entries_[k] - other.entries_[k]));
    return m;
  }

  bool is_hermitian(double tol = 1e-12) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol)
          return false;
    return true;
  }

  bool operator==(const ComplexMatrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           entries_ == other.entries_;
  }

 private:
  void check_same_shape(const ComplexMatrix &other, const char *what) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw DimensionMismatch(std::string(what) + ": shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  ComplexVector entries_;
};

inline double frobenius_distance(const ComplexMatrix &a,
                                 const ComplexMatrix &b) {
  return (a - b).frobenius_norm();
}

// Hilbert-Schmidt inner product Tr[A^dag B].
inline Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("hs_inner: shape mismatch");
  Complex s(0.0, 0.0);
  const auto &ae = a.entries();
  const auto &be = b.entries();
  for (std::size_t k = 0; k < ae.size(); ++k) s += std::conj(ae[k]) * be[k];
  return s;
}

inline double norm2(const ComplexVector &x) {
  double s = 0.0;
  for (const auto &v : x) s += std::norm(v);
  return s;
}

}  // namespace cpmap

#endif  // CPMAP_COMPLEX_MATRIX_HPP_
