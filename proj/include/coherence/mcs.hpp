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

// Maximally coherent states (1/sqrt(d)) sum_j e^{i theta_j} |j>, and the
// incoherent channels that turn |Psi_d> into any other state.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "coherence/channels.hpp"
#include "coherence/error.hpp"
#include "coherence/numerics.hpp"
#include "coherence/random.hpp"
#include "coherence/states.hpp"

namespace coherence {

// Phases with theta_0 fixed to 0, so each physical state has one descriptor.
class McsDescriptor {
 public:
  explicit McsDescriptor(std::vector<double> phases) : phases_(std::move(phases)) {
    if (phases_.size() < 2) throw Error(ErrorKind::BadDim, "dimension must be at least 2");
    const double gauge = phases_.front();
    for (auto& t : phases_) t = detail::wrap_phase(t - gauge);
    phases_.front() = 0.0;
  }

  std::size_t dim() const noexcept { return phases_.size(); }
  const std::vector<double>& phases() const noexcept { return phases_; }

  PureState state() const {
    const double a = 1.0 / std::sqrt(double(dim()));
    std::vector<complex_t> amp(dim());
    for (std::size_t j = 0; j < dim(); ++j) amp[j] = std::polar(a, phases_[j]);
    return PureState(std::move(amp));
  }

 private:
  std::vector<double> phases_;
};

// max(1 - purity, max_i |rho_ii - 1/d|); zero exactly on the MCS set.
inline double mcs_distance(const DensityMatrix& rho) {
  double dist = std::max(0.0, 1.0 - rho.purity());
  const double target = 1.0 / double(rho.dim());
  for (double p : rho.diagonal_entries()) dist = std::max(dist, std::abs(p - target));
  return dist;
}

// Purity is checked first; it rejects most non-members without touching the
// diagonal.
inline bool is_mcs(const DensityMatrix& rho, double tol) {
  if (rho.purity() < 1.0 - tol) return false;
  const double target = 1.0 / double(rho.dim());
  for (double p : rho.diagonal_entries())
    if (std::abs(p - target) > tol) return false;
  return true;
}

inline McsDescriptor random_mcs_descriptor(std::size_t dim, Rng& rng) {
  if (dim < 2) throw Error(ErrorKind::BadDim, "dimension must be at least 2");
  std::vector<double> th(dim, 0.0);
  for (std::size_t j = 1; j < dim; ++j) th[j] = uniform_phase(rng);
  return McsDescriptor(std::move(th));
}

inline PureState mcs_sample(std::size_t dim, Rng& rng) {
  return random_mcs_descriptor(dim, rng).state();
}

inline PureState mcs_sample(std::size_t dim, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return mcs_sample(dim, rng);
}

// K_n = sum_j c_j |j><(j + n) mod d| for n = 0..d-1, where c_j = <j|target>.
// Each K_n sends |Psi_d> to target / sqrt(d), and
// sum_n K_n^dagger K_n = sum_j |c_j|^2 I = I.
inline KrausChannel transform_mcs_to(const PureState& target) {
  if (!target.is_normalized()) throw Error(ErrorKind::NotNormalized, "target norm is not 1");
  const std::size_t d = target.dim();
  std::vector<ComplexMatrix> ks;
  ks.reserve(d);
  for (std::size_t n = 0; n < d; ++n) {
    ComplexMatrix k(d, d);
    for (std::size_t j = 0; j < d; ++j) k(j, (j + n) % d) = target[j];
    ks.push_back(std::move(k));
  }
  return KrausChannel(d, std::move(ks));
}

// Mixes the pure-state constructions over the spectral decomposition of the
// target: {sqrt(q_k) K_n^(k)}.
inline KrausChannel transform_mcs_to_mixed(const DensityMatrix& target) {
  const std::size_t d = target.dim();
  const HermitianEigen eig = hermitian_eigen(target.matrix());
  if (target.purity() >= 1.0 - 1e-10) {
    return transform_mcs_to(PureState(eig.eigenvectors.column(d - 1)).normalized());
  }
  double total = 0.0;
  for (double q : eig.eigenvalues)
    if (q > 0.0) total += q;
  std::vector<ComplexMatrix> ks;
  for (std::size_t k = 0; k < d; ++k) {
    const double q = eig.eigenvalues[k];
    if (q <= 0.0) continue;
    const KrausChannel part = transform_mcs_to(PureState(eig.eigenvectors.column(k)).normalized());
    for (const auto& op : part.kraus()) ks.push_back(op * complex_t{std::sqrt(q / total), 0.0});
  }
  return KrausChannel(d, std::move(ks));
}

}  // namespace coherence
