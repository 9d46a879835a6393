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

// Coherence measures. Entropic quantities are in bits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coherence/error.hpp"
#include "coherence/numerics.hpp"
#include "coherence/random.hpp"
#include "coherence/states.hpp"

namespace coherence {

// Shannon entropy in bits with 0 log 0 = 0 and a 1e-15 floor inside the log.
inline double shannon_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p <= 0.0) continue;
    h -= p * std::log2(std::max(p, 1e-15));
  }
  return h;
}

inline double von_neumann_bits(const DensityMatrix& rho) {
  const auto spectrum = rho.spectrum();
  return shannon_bits(spectrum);
}

/// Sum of the moduli of all off-diagonal entries.
inline double c_l1(const DensityMatrix& rho) { return rho.off_diagonal_mass(); }

/// S(dephase(rho)) - S(rho).
inline double c_rel_ent(const DensityMatrix& rho) {
  const auto diag = rho.diagonal_entries();
  return shannon_bits(diag) - von_neumann_bits(rho);
}

/// Zero on incoherent states, one everywhere else.
inline double c_trivial(const DensityMatrix& rho) { return is_incoherent(rho) ? 0.0 : 1.0; }

class DiagonalObservable {
 public:
  static constexpr double kMinGap = 1e-6;

  explicit DiagonalObservable(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i)
      for (std::size_t j = i + 1; j < values_.size(); ++j)
        if (std::abs(values_[i] - values_[j]) < kMinGap) {
          throw Error(ErrorKind::InvalidObservable, "observable values must be distinct");
        }
  }

  // k_i = i
  static DiagonalObservable ramp(std::size_t dim) {
    std::vector<double> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = double(i);
    return DiagonalObservable(std::move(v));
  }

  std::size_t dim() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  ComplexMatrix matrix() const { return ComplexMatrix::diagonal(values_); }

 private:
  std::vector<double> values_;
};

/// Wigner-Yanase skew information -1/2 tr([sqrt(rho), K]^2).
inline double c_skew(const DensityMatrix& rho, const DiagonalObservable& k) {
  if (rho.dim() != k.dim()) throw Error(ErrorKind::DimMismatch, "observable/state dim mismatch");
  const ComplexMatrix c = commutator(psd_sqrt(rho.matrix()), k.matrix());
  return -0.5 * (c * c).trace().real();
}

/// Pure-state closed form: 1/2 sum_{i != j} w_i w_j (k_i - k_j)^2.
inline double c_skew_pure(const PureState& psi, const DiagonalObservable& k) {
  if (psi.dim() != k.dim()) throw Error(ErrorKind::DimMismatch, "observable/state dim mismatch");
  const auto w = psi.weights();
  const auto& kv = k.values();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      const double dk = kv[i] - kv[j];
      s += w[i] * w[j] * dk * dk;
    }
  return s;
}

struct Ensemble {
  std::vector<double> weights;
  std::vector<PureState> states;

  DensityMatrix density() const {
    const std::size_t d = states.front().dim();
    ComplexMatrix m(d, d);
    for (std::size_t k = 0; k < states.size(); ++k) {
      m += ComplexMatrix::outer(states[k].amplitudes(), states[k].amplitudes()) *
           complex_t{weights[k], 0.0};
    }
    return DensityMatrix::trusted(std::move(m));
  }
};

struct OptimizerConfig {
  std::size_t restarts = 32;
  std::size_t max_iterations = 500;
  double step_tol = 1e-8;
  std::uint64_t seed = 0;
};

struct ConvexRoofResult {
  double value = 0.0;
  double eigen_average = 0.0;  // objective at the spectral decomposition
  Ensemble ensemble;
};

namespace detail {

// p H(|a|^2 / p) for a subnormalized amplitude row, p = |a|^2.
inline double row_entropy(std::span<const complex_t> a) {
  double p = 0.0;
  double s = 0.0;
  for (const auto& z : a) {
    const double x = std::norm(z);
    p += x;
    if (x > 0.0) s -= x * std::log2(std::max(x, 1e-300));
  }
  if (p <= 0.0) return 0.0;
  return s + p * std::log2(p);
}

// Rows of an m x d matrix, stored flat.
struct EnsembleRows {
  std::size_t m = 0;
  std::size_t d = 0;
  std::vector<complex_t> a;

  std::span<complex_t> row(std::size_t i) { return {a.data() + i * d, d}; }
  std::span<const complex_t> row(std::size_t i) const { return {a.data() + i * d, d}; }
};

// Orthonormal columns from Gaussian columns via modified Gram-Schmidt.
inline ComplexMatrix random_isometry(std::size_t m, std::size_t r, Rng& rng) {
  ComplexMatrix u(m, r);
  for (auto& z : u.data()) z = complex_gaussian(rng);
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t l = 0; l < k; ++l) {
      complex_t dot{0.0, 0.0};
      for (std::size_t i = 0; i < m; ++i) dot += std::conj(u(i, l)) * u(i, k);
      for (std::size_t i = 0; i < m; ++i) u(i, k) -= dot * u(i, l);
    }
    double n = 0.0;
    for (std::size_t i = 0; i < m; ++i) n += std::norm(u(i, k));
    n = std::sqrt(n);
    for (std::size_t i = 0; i < m; ++i) u(i, k) /= n;
  }
  return u;
}

// Pairwise Givens rotations on ensemble rows. Left-multiplying the rows by a
// unitary leaves sum_i |a_i><a_i| unchanged, so every iterate is an exact
// decomposition of the same state.
inline double refine_rows(EnsembleRows& rows, const OptimizerConfig& opt) {
  std::vector<double> g(rows.m);
  for (std::size_t i = 0; i < rows.m; ++i) g[i] = row_entropy(rows.row(i));
  std::vector<complex_t> ni(rows.d), nj(rows.d);
  double h = 0.5;
  for (std::size_t sweep = 0; sweep < opt.max_iterations && h >= opt.step_tol; ++sweep) {
    bool improved = false;
    for (std::size_t i = 0; i + 1 < rows.m; ++i) {
      for (std::size_t j = i + 1; j < rows.m; ++j) {
        for (int move = 0; move < 4; ++move) {
          const double angle = (move & 1) ? -h : h;
          const complex_t phase = (move & 2) ? complex_t{0.0, 1.0} : complex_t{1.0, 0.0};
          const double c = std::cos(angle);
          const double s = std::sin(angle);
          auto ri = rows.row(i);
          auto rj = rows.row(j);
          for (std::size_t k = 0; k < rows.d; ++k) {
            ni[k] = c * ri[k] - s * phase * rj[k];
            nj[k] = s * std::conj(phase) * ri[k] + c * rj[k];
          }
          const double gi = row_entropy(ni);
          const double gj = row_entropy(nj);
          if (gi + gj < g[i] + g[j] - 1e-15) {
            std::copy(ni.begin(), ni.end(), ri.begin());
            std::copy(nj.begin(), nj.end(), rj.begin());
            g[i] = gi;
            g[j] = gj;
            improved = true;
          }
        }
      }
    }
    if (!improved) h *= 0.5;
  }
  double total = 0.0;
  for (double x : g) total += x;
  return total;
}

}  // namespace detail

// Heuristic upper bound on min_{ensembles} sum_k q_k C_rel_ent(phi_k).
//
// Ensembles of rho are exactly { a_i = sum_k U_ik sqrt(q_k) phi_k } for
// m x r isometries U (r = rank). Restart 0 starts at the spectral
// decomposition, the others at Haar-random isometries; each is refined by
// pairwise rotations until the step falls below opt.step_tol. m = d^2.
inline ConvexRoofResult convex_roof_rel_ent(const DensityMatrix& rho, const OptimizerConfig& opt) {
  const std::size_t d = rho.dim();
  const HermitianEigen eig = hermitian_eigen(rho.matrix());
  std::vector<std::vector<complex_t>> spectral_rows;
  for (std::size_t k = 0; k < d; ++k) {
    const double q = eig.eigenvalues[k];
    if (q <= 1e-14) continue;
    std::vector<complex_t> row(d);
    for (std::size_t i = 0; i < d; ++i) row[i] = std::sqrt(q) * eig.eigenvectors(i, k);
    spectral_rows.push_back(std::move(row));
  }
  const std::size_t r = spectral_rows.size();
  const std::size_t m = std::max(r, d * d);

  detail::EnsembleRows start{m, d, std::vector<complex_t>(m * d)};
  for (std::size_t k = 0; k < r; ++k)
    std::copy(spectral_rows[k].begin(), spectral_rows[k].end(), start.row(k).begin());

  double eigen_average = 0.0;
  for (std::size_t k = 0; k < r; ++k) eigen_average += detail::row_entropy(start.row(k));

  Rng rng = make_rng(opt.seed, 0, 0x5eed);
  double best = std::numeric_limits<double>::infinity();
  detail::EnsembleRows best_rows;
  for (std::size_t restart = 0; restart < std::max<std::size_t>(opt.restarts, 1); ++restart) {
    detail::EnsembleRows rows{m, d, std::vector<complex_t>(m * d)};
    if (restart == 0) {
      rows = start;
    } else {
      const ComplexMatrix u = detail::random_isometry(m, r, rng);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < r; ++k)
          for (std::size_t j = 0; j < d; ++j) rows.row(i)[j] += u(i, k) * spectral_rows[k][j];
    }
    const double value = detail::refine_rows(rows, opt);
    if (value < best) {
      best = value;
      best_rows = std::move(rows);
    }
  }

  ConvexRoofResult result;
  result.value = std::max(0.0, best);
  result.eigen_average = eigen_average;
  for (std::size_t i = 0; i < best_rows.m; ++i) {
    const auto row = best_rows.row(i);
    const double p = vector_norm(row) * vector_norm(row);
    if (p <= 1e-300) continue;
    result.ensemble.weights.push_back(p);
    result.ensemble.states.push_back(PureState({row.begin(), row.end()}).normalized());
  }
  if (frobenius_distance(result.ensemble.density().matrix(), rho.matrix()) > 1e-9) {
    throw Error(ErrorKind::OptimizerFailed, "ensemble does not reproduce the state");
  }
  return result;
}

/// Intrinsic randomness: rel-ent on pure states, its convex roof otherwise.
inline double c_int_rand(const DensityMatrix& rho, const OptimizerConfig& opt = {}) {
  if (rho.purity() >= 1.0 - 1e-10) return c_rel_ent(rho);
  return convex_roof_rel_ent(rho, opt).value;
}

// Uniform evaluator. evaluate_pure is a closed-form shortcut that agrees with
// evaluate(from_pure(psi)).
struct Measure {
  std::string name;
  std::function<double(const DensityMatrix&)> evaluate;
  std::function<double(const PureState&)> evaluate_pure;

  double operator()(const DensityMatrix& rho) const { return evaluate(rho); }
  double operator()(const PureState& psi) const {
    return evaluate_pure ? evaluate_pure(psi) : evaluate(from_pure(psi));
  }
};

inline const std::vector<std::string>& measure_names() {
  static const std::vector<std::string> names{"l1", "rel_ent", "int_rand", "skew", "trivial"};
  return names;
}

// Skew uses K = diag(0, 1, ..., d-1) sized to its input unless an observable is
// given.
inline Measure make_measure(std::string_view name, const OptimizerConfig& opt = {},
                            std::optional<DiagonalObservable> skew_k = std::nullopt) {
  if (name == "l1") {
    return {"l1", c_l1, [](const PureState& psi) {
              double s = 0.0;
              for (const auto& z : psi.amplitudes()) s += std::abs(z);
              return s * s - 1.0;
            }};
  }
  if (name == "rel_ent") {
    return {"rel_ent", c_rel_ent, [](const PureState& psi) {
              const auto w = psi.weights();
              return shannon_bits(w);
            }};
  }
  if (name == "int_rand") {
    return {"int_rand", [opt](const DensityMatrix& rho) { return c_int_rand(rho, opt); },
            [](const PureState& psi) {
              const auto w = psi.weights();
              return shannon_bits(w);
            }};
  }
  if (name == "skew") {
    auto observable = [skew_k](std::size_t dim) {
      return skew_k ? *skew_k : DiagonalObservable::ramp(dim);
    };
    return {"skew",
            [observable](const DensityMatrix& rho) { return c_skew(rho, observable(rho.dim())); },
            [observable](const PureState& psi) {
              return c_skew_pure(psi, observable(psi.dim()));
            }};
  }
  if (name == "trivial") return {"trivial", c_trivial, nullptr};
  throw Error(ErrorKind::UnknownMeasure, "unknown measure '" + std::string(name) + "'");
}

}  // namespace coherence
