// Copyright 2026 The coherence-lab Authors
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

#pragma once

// Dense complex linear algebra for the small dimensions (d <= 8, Choi/Gram
// matrices up to a few dozen rows) used throughout the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "coherence/error.hpp"

namespace coherence {

using complex_t = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, complex_t{0.0, 0.0}) {}

  // Row-major entries; throws NonFinite on NaN/inf and BadParams on size
  // mismatch.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex_t> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw Error(ErrorKind::BadParams, "entry count does not match shape");
    }
    for (const auto& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorKind::NonFinite, "matrix entry is not finite");
      }
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static ComplexMatrix diagonal(std::initializer_list<double> values) {
    std::vector<double> v(values);
    return diagonal(std::span<const double>(v));
  }

  // |a><b| for column vectors a, b.
  static ComplexMatrix outer(std::span<const complex_t> a,
                             std::span<const complex_t> b) {
    ComplexMatrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  complex_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const complex_t& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const complex_t> data() const noexcept { return data_; }
  std::span<complex_t> data() noexcept { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  complex_t trace() const {
    complex_t t{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  std::vector<complex_t> column(std::size_t j) const {
    std::vector<complex_t> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(complex_t s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, complex_t s) { return a *= s; }
  friend ComplexMatrix operator*(complex_t s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorKind::DimMismatch, "matrix product shape mismatch");
    }
    ComplexMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const complex_t aik = a(i, k);
        if (aik == complex_t{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend std::vector<complex_t> operator*(const ComplexMatrix& a,
                                          std::span<const complex_t> v) {
    if (a.cols_ != v.size()) {
      throw Error(ErrorKind::DimMismatch, "matrix-vector shape mismatch");
    }
    std::vector<complex_t> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  bool operator==(const ComplexMatrix&) const = default;

 private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw Error(ErrorKind::DimMismatch, "matrix shapes differ");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex_t> data_;
};

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).frobenius_norm();
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

inline double hermiticity_error(const ComplexMatrix& a) {
  return frobenius_distance(a, a.adjoint());
}

inline bool is_hermitian(const ComplexMatrix& a, double rel_tol = 1e-10) {
  return a.is_square() &&
         hermiticity_error(a) <= rel_tol * std::max(1.0, a.frobenius_norm());
}

struct HermitianEigen {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]

  ComplexMatrix reconstruct() const {
    const ComplexMatrix& v = eigenvectors;
    ComplexMatrix scaled = v;
    for (std::size_t i = 0; i < v.rows(); ++i)
      for (std::size_t k = 0; k < v.cols(); ++k) scaled(i, k) *= eigenvalues[k];
    return scaled * v.adjoint();
  }
};

namespace detail {

inline void require_square(const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::NonSquare, "matrix must be square");
}

inline double max_off_diagonal(const ComplexMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

}  // namespace detail

// Cyclic complex Jacobi. Each rotation is a diagonal phase that makes the
// (p, q) pivot real followed by a real Givens rotation that annihilates it.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& input) {
  detail::require_square(input);
  if (!is_hermitian(input)) {
    throw Error(ErrorKind::NonHermitian, "eigensolver requires a Hermitian matrix");
  }
  const std::size_t n = input.rows();
  // Work on the exactly Hermitian part.
  ComplexMatrix a = (input + input.adjoint()) * complex_t{0.5, 0.0};
  ComplexMatrix v = ComplexMatrix::identity(n);

  constexpr double kOffDiagonalTol = 1e-13;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (detail::max_off_diagonal(a) < kOffDiagonalTol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex_t apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const complex_t phase = apq / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2.0 * r);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Column transform G restricted to (p, q):
        //   G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const complex_t g_pp = c;
        const complex_t g_pq = s;
        const complex_t g_qp = -s * std::conj(phase);
        const complex_t g_qq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {  // a <- a G
          const complex_t akp = a(k, p);
          const complex_t akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // a <- G^dagger a
          const complex_t apk = a(p, k);
          const complex_t aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {  // v <- v G
          const complex_t vkp = v(k, p);
          const complex_t vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

// Eigenvalues in [-1e-9, 0) are clamped to zero; anything more negative is a
// hard error. Eigenvalues below 1e-14 * max(1, |a|_F) are rounding noise and
// are also treated as exact zeros, since sqrt would amplify them to ~1e-7.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  const HermitianEigen eig = hermitian_eigen(a);
  const double noise_floor = 1e-14 * std::max(1.0, a.frobenius_norm());
  HermitianEigen root = eig;
  for (double& lambda : root.eigenvalues) {
    if (lambda < -1e-9) {
      throw Error(ErrorKind::NotPSD, "matrix has a negative eigenvalue");
    }
    lambda = lambda <= noise_floor ? 0.0 : std::sqrt(lambda);
  }
  ComplexMatrix out = root.reconstruct();
  // Symmetrize away rounding asymmetry.
  return (out + out.adjoint()) * complex_t{0.5, 0.0};
}

inline bool is_unitary(const ComplexMatrix& u, double tol) {
  detail::require_square(u);
  return frobenius_distance(u.adjoint() * u, ComplexMatrix::identity(u.rows())) <= tol;
}

inline double vector_norm(std::span<const complex_t> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline complex_t inner_product(std::span<const complex_t> a, std::span<const complex_t> b) {
  complex_t s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace coherence
