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

// States over the fixed computational basis {|0>, ..., |d-1>}, which plays
// the role of the incoherent reference basis everywhere in the library.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "coherence/error.hpp"
#include "coherence/numerics.hpp"
#include "coherence/random.hpp"

namespace coherence {

inline constexpr double kIncoherenceTol = 1e-9;

class PureState {
 public:
  PureState() = default;
  explicit PureState(std::vector<complex_t> amplitudes) : amplitudes_(std::move(amplitudes)) {}

  static PureState basis(std::size_t dim, std::size_t index) {
    std::vector<complex_t> a(dim);
    a.at(index) = 1.0;
    return PureState(std::move(a));
  }

  // Equal superposition (1/sqrt(d)) sum_j |j>.
  static PureState uniform(std::size_t dim) {
    return PureState(std::vector<complex_t>(dim, complex_t{1.0 / std::sqrt(double(dim)), 0.0}));
  }

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const complex_t> amplitudes() const noexcept { return amplitudes_; }
  const complex_t& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm() const { return vector_norm(amplitudes_); }
  bool is_normalized(double tol = 1e-10) const {
    return std::abs(norm() * norm() - 1.0) <= tol;
  }

  PureState normalized() const {
    const double n = norm();
    if (n == 0.0) throw Error(ErrorKind::NotNormalized, "zero vector");
    std::vector<complex_t> a = amplitudes_;
    for (auto& z : a) z /= n;
    return PureState(std::move(a));
  }

  // |<i|psi>|^2 per basis label.
  std::vector<double> weights() const {
    std::vector<double> w(dim());
    for (std::size_t i = 0; i < dim(); ++i) w[i] = std::norm(amplitudes_[i]);
    return w;
  }

  // Equality up to a global phase.
  bool same_ray(const PureState& other, double tol = 1e-10) const {
    return dim() == other.dim() &&
           std::abs(inner_product(amplitudes_, other.amplitudes_)) >= 1.0 - tol;
  }

 private:
  std::vector<complex_t> amplitudes_;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;

  // Validating constructor: Hermitian and unit trace within 1e-10, spectrum
  // >= -1e-9. Throws InvalidState otherwise.
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
    if (!matrix_.is_square() || matrix_.rows() == 0) {
      throw Error(ErrorKind::InvalidState, "density matrix must be square and non-empty");
    }
    if (!is_hermitian(matrix_)) throw Error(ErrorKind::InvalidState, "not Hermitian");
    if (std::abs(matrix_.trace() - complex_t{1.0, 0.0}) > 1e-10) {
      throw Error(ErrorKind::InvalidState, "trace is not 1");
    }
    if (hermitian_eigen(matrix_).eigenvalues.front() < -1e-9) {
      throw Error(ErrorKind::InvalidState, "negative eigenvalue");
    }
  }

  // For results of operations that preserve validity by construction
  // (channel outputs, mixtures, projections). Skips the eigendecomposition.
  static DensityMatrix trusted(ComplexMatrix m) {
    DensityMatrix rho;
    rho.matrix_ = std::move(m);
    return rho;
  }

  static DensityMatrix maximally_mixed(std::size_t dim) {
    return trusted(ComplexMatrix::identity(dim) * complex_t{1.0 / double(dim), 0.0});
  }

  static DensityMatrix diagonal(std::span<const double> probs) {
    return DensityMatrix(ComplexMatrix::diagonal(probs));
  }
  static DensityMatrix diagonal(std::initializer_list<double> probs) {
    return DensityMatrix(ComplexMatrix::diagonal(probs));
  }

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const complex_t& operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }

  double purity() const {
    double s = 0.0;
    for (const auto& z : matrix_.data()) s += std::norm(z);  // tr(rho^2) for Hermitian rho
    return s;
  }

  std::vector<double> diagonal_entries() const {
    std::vector<double> d(dim());
    for (std::size_t i = 0; i < dim(); ++i) d[i] = matrix_(i, i).real();
    return d;
  }

  std::vector<double> spectrum() const { return hermitian_eigen(matrix_).eigenvalues; }

  // Entrywise l1 mass of the off-diagonal part.
  double off_diagonal_mass() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        if (i != j) s += std::abs(matrix_(i, j));
    return s;
  }

 private:
  ComplexMatrix matrix_;
};

inline DensityMatrix from_pure(const PureState& psi) {
  if (!psi.is_normalized()) throw Error(ErrorKind::NotNormalized, "state norm is not 1");
  return DensityMatrix::trusted(ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()));
}

// Projection onto the incoherent set: keep the diagonal.
inline DensityMatrix dephase(const DensityMatrix& rho) {
  ComplexMatrix m(rho.dim(), rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) m(i, i) = rho(i, i).real();
  return DensityMatrix::trusted(std::move(m));
}

inline bool is_incoherent(const DensityMatrix& rho, double tol = kIncoherenceTol) {
  return rho.off_diagonal_mass() <= tol;
}

// <phi|rho|phi>
inline double fidelity(const DensityMatrix& rho, const PureState& phi) {
  const auto rho_phi = rho.matrix() * phi.amplitudes();
  return inner_product(phi.amplitudes(), rho_phi).real();
}

inline DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double lambda) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimMismatch, "mixing states of different dim");
  return DensityMatrix::trusted(a.matrix() * complex_t{lambda, 0.0} +
                                b.matrix() * complex_t{1.0 - lambda, 0.0});
}

inline PureState random_pure(std::size_t dim, Rng& rng) {
  if (dim < 2) throw Error(ErrorKind::BadDim, "dimension must be at least 2");
  std::vector<complex_t> a(dim);
  for (auto& z : a) z = complex_gaussian(rng);
  return PureState(std::move(a)).normalized();
}

inline PureState random_pure(std::size_t dim, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_pure(dim, rng);
}

// G G^dagger / tr(G G^dagger) with G a dim x rank complex Gaussian matrix.
inline DensityMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng) {
  if (dim < 1) throw Error(ErrorKind::BadDim, "dimension must be positive");
  if (rank < 1 || rank > dim) throw Error(ErrorKind::BadRank, "rank must be in [1, dim]");
  ComplexMatrix g(dim, rank);
  for (auto& z : g.data()) z = complex_gaussian(rng);
  ComplexMatrix m = g * g.adjoint();
  const double tr = m.trace().real();
  m *= complex_t{1.0 / tr, 0.0};
  // Exact Hermiticity.
  m = (m + m.adjoint()) * complex_t{0.5, 0.0};
  return DensityMatrix::trusted(std::move(m));
}

inline DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_density(dim, rank, rng);
}

}  // namespace coherence
