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

// CPTP maps in Kraus form, and the incoherent ones among them.
//
// A Kraus operator maps every incoherent state to an incoherent state iff it
// has at most one nonzero entry per column, i.e.
//
//   K_n = sum_j sqrt(p_n) K_nj e^{i gamma_nj} |lambda_nj><j|.
//
// The unitary members of this family are basis relabelings with phases,
//
//   U = sum_j e^{i theta_j} |alpha_j><j|,   alpha a permutation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "coherence/error.hpp"
#include "coherence/numerics.hpp"
#include "coherence/random.hpp"
#include "coherence/states.hpp"

namespace coherence {

inline constexpr double kCompletenessTol = 1e-10;
inline constexpr double kSelectiveProbabilityFloor = 1e-14;

class KrausChannel {
 public:
  KrausChannel() = default;

  KrausChannel(std::size_t dim, std::vector<ComplexMatrix> kraus)
      : dim_(dim), kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw Error(ErrorKind::BadParams, "channel needs a Kraus operator");
    for (const auto& k : kraus_) {
      if (k.rows() != dim_ || k.cols() != dim_) {
        throw Error(ErrorKind::DimMismatch, "Kraus operators must be dim x dim");
      }
    }
  }

  static KrausChannel identity(std::size_t dim) {
    return KrausChannel(dim, {ComplexMatrix::identity(dim)});
  }

  // Projective measurement in the incoherent basis.
  static KrausChannel basis_measurement(std::size_t dim) {
    std::vector<ComplexMatrix> ks;
    for (std::size_t i = 0; i < dim; ++i) {
      ComplexMatrix p(dim, dim);
      p(i, i) = 1.0;
      ks.push_back(std::move(p));
    }
    return KrausChannel(dim, std::move(ks));
  }

  static KrausChannel unitary(const ComplexMatrix& u) { return KrausChannel(u.rows(), {u}); }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return kraus_.size(); }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

  // || sum_n K_n^dagger K_n - I ||_F
  double completeness_error() const {
    ComplexMatrix s(dim_, dim_);
    for (const auto& k : kraus_) s += k.adjoint() * k;
    return frobenius_distance(s, ComplexMatrix::identity(dim_));
  }

  bool is_complete(double tol = kCompletenessTol) const { return completeness_error() <= tol; }

 private:
  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> kraus_;
};

struct IncoherentKrausTerm {
  double weight = 0.0;                   // p_n
  std::vector<std::size_t> column_map;   // lambda_n(j)
  std::vector<double> moduli;            // K_nj >= 0
  std::vector<double> phases;            // gamma_nj in [0, 2 pi)
};

struct IncoherentKrausForm {
  std::size_t dim = 0;
  std::vector<IncoherentKrausTerm> terms;

  KrausChannel reconstruct() const {
    std::vector<ComplexMatrix> ks;
    ks.reserve(terms.size());
    for (const auto& t : terms) {
      ComplexMatrix k(dim, dim);
      const double root_p = std::sqrt(t.weight);
      for (std::size_t j = 0; j < dim; ++j) {
        k(t.column_map[j], j) = root_p * t.moduli[j] * std::polar(1.0, t.phases[j]);
      }
      ks.push_back(std::move(k));
    }
    return KrausChannel(dim, std::move(ks));
  }
};

namespace detail {

inline void require_complete(const KrausChannel& ch) {
  if (!ch.is_complete()) {
    throw Error(ErrorKind::IncompleteChannel, "sum of K^dagger K differs from identity");
  }
}

inline void require_dims(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.dim() != rho.dim()) throw Error(ErrorKind::DimMismatch, "channel/state dim mismatch");
}

inline bool has_single_entry_columns(const ComplexMatrix& k, double tol) {
  for (std::size_t j = 0; j < k.cols(); ++j) {
    int count = 0;
    for (std::size_t i = 0; i < k.rows(); ++i)
      if (std::abs(k(i, j)) > tol) ++count;
    if (count > 1) return false;
  }
  return true;
}

inline double wrap_phase(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t = 0.0;
  return t;
}

}  // namespace detail

inline bool is_incoherent_channel(const KrausChannel& ch, double tol = 1e-10) {
  detail::require_complete(ch);
  return std::all_of(ch.kraus().begin(), ch.kraus().end(), [tol](const ComplexMatrix& k) {
    return detail::has_single_entry_columns(k, tol);
  });
}

// Extracts (p_n, lambda_n, K_nj, gamma_nj) with p_n = tr(K_n^dagger K_n) / d.
// A zero column gets lambda_nj = j and modulus 0.
inline IncoherentKrausForm canonical_form(const KrausChannel& ch, double tol = 1e-10) {
  if (!is_incoherent_channel(ch, tol)) {
    throw Error(ErrorKind::NotIncoherent, "a Kraus column has more than one nonzero entry");
  }
  const std::size_t d = ch.dim();
  IncoherentKrausForm form{d, {}};
  for (const auto& k : ch.kraus()) {
    IncoherentKrausTerm term;
    term.weight = (k.adjoint() * k).trace().real() / double(d);
    term.column_map.resize(d);
    term.moduli.assign(d, 0.0);
    term.phases.assign(d, 0.0);
    const double root_p = std::sqrt(term.weight);
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t best = j;
      double best_mod = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        if (std::abs(k(i, j)) > best_mod) {
          best_mod = std::abs(k(i, j));
          best = i;
        }
      }
      term.column_map[j] = best;
      if (best_mod > 0.0) {
        term.moduli[j] = best_mod / root_p;
        term.phases[j] = detail::wrap_phase(std::arg(k(best, j)));
      }
    }
    form.terms.push_back(std::move(term));
  }
  return form;
}

inline DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  detail::require_dims(ch, rho);
  ComplexMatrix out(rho.dim(), rho.dim());
  for (const auto& k : ch.kraus()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix::trusted(std::move(out));
}

struct SelectiveOutcome {
  double probability;
  DensityMatrix state;
};

// Outcomes with p_n <= 1e-14 are dropped.
inline std::vector<SelectiveOutcome> apply_selective(const KrausChannel& ch,
                                                     const DensityMatrix& rho) {
  detail::require_dims(ch, rho);
  std::vector<SelectiveOutcome> out;
  for (const auto& k : ch.kraus()) {
    ComplexMatrix m = k * rho.matrix() * k.adjoint();
    const double p = m.trace().real();
    if (p <= kSelectiveProbabilityFloor) continue;
    m *= complex_t{1.0 / p, 0.0};
    out.push_back({p, DensityMatrix::trusted(std::move(m))});
  }
  return out;
}

// Kraus set {A_m B_n}: apply(compose(a, b), rho) == apply(a, apply(b, rho)).
inline KrausChannel compose(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimMismatch, "composing channels of different dim");
  std::vector<ComplexMatrix> ks;
  ks.reserve(a.size() * b.size());
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) ks.push_back(ka * kb);
  return KrausChannel(a.dim(), std::move(ks));
}

// Gram matrix G_nm = tr(K_n^dagger K_m). It shares its nonzero spectrum with
// the Choi matrix, so its rank is the Choi rank.
inline ComplexMatrix kraus_gram(const KrausChannel& ch) {
  const std::size_t n = ch.size();
  ComplexMatrix g(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      complex_t s{0.0, 0.0};
      const auto da = ch.kraus()[a].data();
      const auto db = ch.kraus()[b].data();
      for (std::size_t k = 0; k < da.size(); ++k) s += std::conj(da[k]) * db[k];
      g(a, b) = s;
    }
  return g;
}

// Choi matrix sum_{ij} |i><j| (x) Phi(|i><j|), in (input, output) ordering.
inline ComplexMatrix choi_matrix(const KrausChannel& ch) {
  const std::size_t d = ch.dim();
  ComplexMatrix c(d * d, d * d);
  for (const auto& k : ch.kraus())
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t b = 0; b < d; ++b)
            c(i * d + a, j * d + b) += k(a, i) * std::conj(k(b, j));
  return c;
}

// True iff the channel is conjugation by a single unitary (second largest
// Choi eigenvalue <= tol * largest) and incoherent.
inline bool is_cpo(const KrausChannel& ch, double tol = 1e-9) {
  detail::require_complete(ch);
  const auto spectrum = hermitian_eigen(kraus_gram(ch)).eigenvalues;
  const double first = spectrum.back();
  const double second = spectrum.size() > 1 ? spectrum[spectrum.size() - 2] : 0.0;
  return second <= tol * first && is_incoherent_channel(ch, tol);
}

class IncoherentUnitary {
 public:
  IncoherentUnitary() = default;

  IncoherentUnitary(std::vector<std::size_t> perm, std::vector<double> phases)
      : perm_(std::move(perm)), phases_(std::move(phases)) {
    if (perm_.size() != phases_.size()) {
      throw Error(ErrorKind::InvalidPermutation, "one phase per basis label required");
    }
    std::vector<bool> seen(perm_.size(), false);
    for (auto a : perm_) {
      if (a >= perm_.size() || seen[a]) {
        throw Error(ErrorKind::InvalidPermutation, "relabeling is not a bijection");
      }
      seen[a] = true;
    }
    for (auto& t : phases_) t = detail::wrap_phase(t);
  }

  static IncoherentUnitary identity(std::size_t dim) {
    std::vector<std::size_t> p(dim);
    for (std::size_t j = 0; j < dim; ++j) p[j] = j;
    return {std::move(p), std::vector<double>(dim, 0.0)};
  }

  // |j> -> |(j + shift) mod d>
  static IncoherentUnitary cyclic_shift(std::size_t dim, std::size_t shift = 1) {
    std::vector<std::size_t> p(dim);
    for (std::size_t j = 0; j < dim; ++j) p[j] = (j + shift) % dim;
    return {std::move(p), std::vector<double>(dim, 0.0)};
  }

  static IncoherentUnitary random(std::size_t dim, Rng& rng) {
    auto p = random_permutation(rng, dim);
    std::vector<double> th(dim);
    for (auto& t : th) t = uniform_phase(rng);
    return {std::move(p), std::move(th)};
  }

  std::size_t dim() const noexcept { return perm_.size(); }
  const std::vector<std::size_t>& permutation() const noexcept { return perm_; }
  const std::vector<double>& phases() const noexcept { return phases_; }

  // U^dagger = sum_j e^{-i theta_j} |j><alpha_j|
  IncoherentUnitary inverse() const {
    std::vector<std::size_t> p(dim());
    std::vector<double> th(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      p[perm_[j]] = j;
      th[perm_[j]] = -phases_[j];
    }
    return {std::move(p), std::move(th)};
  }

  // (this * other): apply other first.
  IncoherentUnitary then_after(const IncoherentUnitary& other) const {
    if (dim() != other.dim()) throw Error(ErrorKind::DimMismatch, "unitary dims differ");
    std::vector<std::size_t> p(dim());
    std::vector<double> th(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      p[j] = perm_[other.perm_[j]];
      th[j] = other.phases_[j] + phases_[other.perm_[j]];
    }
    return {std::move(p), std::move(th)};
  }

  bool operator==(const IncoherentUnitary&) const = default;

 private:
  std::vector<std::size_t> perm_;
  std::vector<double> phases_;
};

inline ComplexMatrix realize_unitary(const IncoherentUnitary& u) {
  ComplexMatrix m(u.dim(), u.dim());
  for (std::size_t j = 0; j < u.dim(); ++j) m(u.permutation()[j], j) = std::polar(1.0, u.phases()[j]);
  return m;
}

inline KrausChannel as_channel(const IncoherentUnitary& u) {
  return KrausChannel::unitary(realize_unitary(u));
}

inline DensityMatrix apply(const IncoherentUnitary& u, const DensityMatrix& rho) {
  if (u.dim() != rho.dim()) throw Error(ErrorKind::DimMismatch, "unitary/state dim mismatch");
  const ComplexMatrix m = realize_unitary(u);
  return DensityMatrix::trusted(m * rho.matrix() * m.adjoint());
}

inline PureState apply(const IncoherentUnitary& u, const PureState& psi) {
  std::vector<complex_t> out(u.dim());
  for (std::size_t j = 0; j < u.dim(); ++j)
    out[u.permutation()[j]] = std::polar(1.0, u.phases()[j]) * psi[j];
  return PureState(std::move(out));
}

// Random incoherent channel. Per column j the squared moduli across the
// n_kraus base operators form a flat Dirichlet sample, so the diagonal of
// sum K^dagger K is exactly one. A base operator whose column map is not
// injective would leave off-diagonal terms in that sum; it is replaced by its
// d phase-twirled copies K diag(w^{m j}) / sqrt(d), which cancel them.
inline KrausChannel random_incoherent_channel(std::size_t dim, std::size_t n_kraus, Rng& rng) {
  if (dim < 1 || n_kraus < 1) throw Error(ErrorKind::BadParams, "need dim >= 1 and n_kraus >= 1");
  std::vector<std::vector<double>> col_weights(dim);
  for (auto& w : col_weights) w = dirichlet_flat(rng, n_kraus);

  std::vector<ComplexMatrix> ks;
  for (std::size_t n = 0; n < n_kraus; ++n) {
    ComplexMatrix k(dim, dim);
    std::vector<bool> hit(dim, false);
    bool injective = true;
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t row = uniform_index(rng, 0, dim - 1);
      const double phase = uniform_phase(rng);
      k(row, j) = std::polar(std::sqrt(col_weights[j][n]), phase);
      if (hit[row]) injective = false;
      hit[row] = true;
    }
    if (injective) {
      ks.push_back(std::move(k));
      continue;
    }
    const double norm = 1.0 / std::sqrt(double(dim));
    for (std::size_t m = 0; m < dim; ++m) {
      ComplexMatrix twirled = k;
      for (std::size_t j = 0; j < dim; ++j) {
        const complex_t w = std::polar(norm, 2.0 * std::numbers::pi * double(m * j) / double(dim));
        for (std::size_t i = 0; i < dim; ++i) twirled(i, j) *= w;
      }
      ks.push_back(std::move(twirled));
    }
  }
  return KrausChannel(dim, std::move(ks));
}

inline KrausChannel random_incoherent_channel(std::size_t dim, std::size_t n_kraus,
                                              std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_incoherent_channel(dim, n_kraus, rng);
}

}  // namespace coherence
