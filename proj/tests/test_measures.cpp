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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "coherence/channels.hpp"
#include "coherence/measures.hpp"
#include "oracles.hpp"

using namespace coherence;
using Catch::Matchers::WithinAbs;

namespace {

PureState from_weights(const std::vector<double>& w) {
  std::vector<complex_t> amp;
  for (double x : w) amp.emplace_back(std::sqrt(x), 0.0);
  return PureState(std::move(amp));
}

DensityMatrix psi_d(std::size_t d) { return from_pure(PureState::uniform(d)); }

}  // namespace

TEST_CASE("c_l1 examples", "[measures]") {
  for (std::size_t d = 2; d <= 6; ++d) CHECK_THAT(c_l1(psi_d(d)), WithinAbs(double(d - 1), 1e-12));
  CHECK(c_l1(DensityMatrix::diagonal({0.1, 0.2, 0.7})) == 0.0);
  const DensityMatrix rho(ComplexMatrix(2, 2, {0.5, 0.25, 0.25, 0.5}));
  CHECK_THAT(c_l1(rho), WithinAbs(0.5, 1e-15));
}

TEST_CASE("c_l1 agrees with the brute-force sum", "[measures]") {
  Rng rng = make_rng(40);
  for (std::size_t d = 2; d <= 6; ++d)
    for (int t = 0; t < 20; ++t) {
      const auto rho = random_density(d, 1 + t % d, rng);
      CHECK_THAT(c_l1(rho), WithinAbs(oracle::l1_brute(rho.matrix()), 1e-12));
    }
}

TEST_CASE("c_rel_ent examples", "[measures]") {
  CHECK_THAT(c_rel_ent(DensityMatrix::diagonal({0.3, 0.7})), WithinAbs(0.0, 1e-12));
  for (std::size_t d = 2; d <= 6; ++d)
    CHECK_THAT(c_rel_ent(psi_d(d)), WithinAbs(std::log2(double(d)), 1e-10));
  CHECK_THAT(c_rel_ent(psi_d(2)), WithinAbs(1.0, 1e-12));
}

TEST_CASE("c_rel_ent on qubits matches the closed-form spectrum", "[measures]") {
  Rng rng = make_rng(41);
  for (int t = 0; t < 200; ++t) {
    const auto rho = random_density(2, 2, rng);
    const auto [lo, hi] = oracle::eigenvalues_2x2(rho.matrix());
    const double expected = oracle::entropy_bits({rho(0, 0).real(), rho(1, 1).real()}) -
                            oracle::entropy_bits({std::max(lo, 0.0), hi});
    CHECK_THAT(c_rel_ent(rho), WithinAbs(expected, 1e-9));
  }
}

TEST_CASE("c_trivial examples", "[measures]") {
  CHECK(c_trivial(DensityMatrix::diagonal({1.0 / 3.0, 2.0 / 3.0})) == 0.0);
  CHECK(c_trivial(psi_d(2)) == 1.0);
  const DensityMatrix nudged(ComplexMatrix(2, 2, {0.5, 1e-3, 1e-3, 0.5}));
  CHECK(c_trivial(nudged) == 1.0);
}

TEST_CASE("c_trivial is not convex", "[measures]") {
  // An incoherent state mixed with a coherent one scores 1, above the
  // weighted average lambda * 0 + (1 - lambda) * 1.
  const auto a = DensityMatrix::diagonal({1.0, 0.0});
  const auto b = psi_d(2);
  const double lambda = 0.5;
  const double average = lambda * c_trivial(a) + (1.0 - lambda) * c_trivial(b);
  CHECK(c_trivial(mix(a, b, lambda)) > average);
}

TEST_CASE("c_skew examples", "[measures]") {
  const auto ramp3 = DiagonalObservable::ramp(3);
  CHECK_THAT(c_skew(DensityMatrix::diagonal({0.2, 0.3, 0.5}), ramp3), WithinAbs(0.0, 1e-15));

  const DiagonalObservable k2({0.3, -1.2});
  CHECK_THAT(c_skew(psi_d(2), k2), WithinAbs(1.5 * 1.5 / 4.0, 1e-12));

  const auto psi = from_weights({0.5, 1.0 / 3.0, 1.0 / 6.0});
  CHECK_THAT(c_skew(from_pure(psi), ramp3), WithinAbs(5.0 / 9.0, 1e-12));
  CHECK_THAT(c_skew_pure(psi, ramp3), WithinAbs(5.0 / 9.0, 1e-15));
}

TEST_CASE("c_skew_pure examples", "[measures]") {
  CHECK(c_skew_pure(PureState::basis(3, 0), DiagonalObservable::ramp(3)) == 0.0);
  CHECK_THAT(c_skew_pure(PureState::uniform(2), DiagonalObservable::ramp(2)), WithinAbs(0.25, 1e-15));
  CHECK_THAT(c_skew_pure(from_weights({1.0 / 6.0, 0.5, 1.0 / 3.0}), DiagonalObservable::ramp(3)),
             WithinAbs(17.0 / 36.0, 1e-15));
}

TEST_CASE("skew: commutator form, pure formula, and variance agree", "[measures][property]") {
  for (std::size_t d : {2, 3, 4}) {
    Rng rng = make_rng(42, d);
    const auto k = DiagonalObservable::ramp(d);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const auto psi = random_pure(d, rng);
      const double pure = c_skew_pure(psi, k);
      worst = std::max(worst, std::abs(c_skew(from_pure(psi), k) - pure));
      worst = std::max(worst, std::abs(oracle::skew_variance(psi.weights(), k.values()) - pure));
    }
    INFO("d = " << d);
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("DiagonalObservable requires distinct values", "[measures]") {
  CHECK_THROWS_MATCHES(DiagonalObservable({0.0, 1.0, 1.0 + 1e-8}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.kind() == ErrorKind::InvalidObservable; }));
  CHECK_NOTHROW(DiagonalObservable({0.0, 1e-5}));
}

TEST_CASE("c_int_rand examples", "[measures]") {
  for (std::size_t d = 2; d <= 4; ++d)
    CHECK(c_int_rand(psi_d(d)) == c_rel_ent(psi_d(d)));
  CHECK_THAT(c_int_rand(DensityMatrix::maximally_mixed(2)), WithinAbs(0.0, 1e-9));
  CHECK_THAT(c_int_rand(DensityMatrix::diagonal({0.2, 0.5, 0.3})), WithinAbs(0.0, 1e-9));
}

TEST_CASE("c_int_rand equals c_rel_ent on pure inputs", "[measures]") {
  Rng rng = make_rng(43);
  for (int t = 0; t < 50; ++t) {
    const auto rho = from_pure(random_pure(2 + t % 4, rng));
    CHECK(c_int_rand(rho) == c_rel_ent(rho));
  }
}

TEST_CASE("convex roof ensembles reproduce the state and bound the value", "[measures]") {
  OptimizerConfig opt;
  opt.restarts = 8;
  Rng rng = make_rng(44);
  for (std::size_t d : {2, 3}) {
    for (int t = 0; t < 3; ++t) {
      const auto rho = random_density(d, d, rng);
      const auto res = convex_roof_rel_ent(rho, opt);
      CHECK(res.value <= res.eigen_average + 1e-9);
      CHECK(res.value >= -1e-10);

      double total = 0.0;
      double recomputed = 0.0;
      for (std::size_t k = 0; k < res.ensemble.weights.size(); ++k) {
        total += res.ensemble.weights[k];
        recomputed += res.ensemble.weights[k] * shannon_bits(res.ensemble.states[k].weights());
      }
      CHECK_THAT(total, WithinAbs(1.0, 1e-10));
      CHECK_THAT(recomputed, WithinAbs(res.value, 1e-9));
      CHECK(frobenius_distance(res.ensemble.density().matrix(), rho.matrix()) <= 1e-9);
    }
  }
}

TEST_CASE("convex roof is reproducible per seed", "[measures]") {
  OptimizerConfig opt;
  opt.restarts = 4;
  opt.seed = 17;
  const auto rho = random_density(3, 2, std::uint64_t{5});
  CHECK(c_int_rand(rho, opt) == c_int_rand(rho, opt));
}

TEST_CASE("C1: measures vanish on dephased states", "[measures][property]") {
  Rng rng = make_rng(45);
  for (const char* name : {"l1", "rel_ent", "skew", "trivial"}) {
    const Measure m = make_measure(name);
    for (std::size_t d = 2; d <= 4; ++d)
      for (int t = 0; t < 50; ++t) {
        const auto rho = random_density(d, 1 + t % d, rng);
        CHECK(m(dephase(rho)) <= 1e-9);
        if (rho.off_diagonal_mass() > 1e-3) CHECK(m(rho) > 1e-6);
      }
  }
}

TEST_CASE("incoherent unitaries preserve l1, rel_ent, int_rand, trivial", "[measures][property]") {
  Rng rng = make_rng(46);
  for (const char* name : {"l1", "rel_ent", "int_rand", "trivial"}) {
    const Measure m = make_measure(name);
    for (std::size_t d = 2; d <= 4; ++d)
      for (int t = 0; t < 50; ++t) {
        const auto psi = random_pure(d, rng);
        const auto rho = std::string(name) == "int_rand" ? from_pure(psi) : random_density(d, 1 + t % d, rng);
        const auto u = IncoherentUnitary::random(d, rng);
        CHECK_THAT(m(apply(u, rho)), WithinAbs(m(rho), 1e-9));
      }
  }
}

TEST_CASE("value bounds", "[measures][property]") {
  Rng rng = make_rng(47);
  for (std::size_t d = 2; d <= 6; ++d)
    for (int t = 0; t < 50; ++t) {
      const auto rho = random_density(d, 1 + t % d, rng);
      CHECK(c_l1(rho) <= double(d - 1) + 1e-9);
      CHECK(c_rel_ent(rho) <= std::log2(double(d)) + 1e-9);
      CHECK(c_rel_ent(rho) >= -1e-10);
      CHECK(c_skew(rho, DiagonalObservable::ramp(d)) >= -1e-10);
    }
}

TEST_CASE("pure fast paths agree with the density-matrix paths", "[measures]") {
  Rng rng = make_rng(48);
  for (const auto& name : measure_names()) {
    const Measure m = make_measure(name);
    for (std::size_t d = 2; d <= 4; ++d) {
      const auto psi = random_pure(d, rng);
      CHECK_THAT(m(psi), WithinAbs(m(from_pure(psi)), 1e-9));
    }
  }
}

TEST_CASE("make_measure rejects unknown names", "[measures]") {
  CHECK_THROWS_MATCHES(make_measure("c_f"), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.kind() == ErrorKind::UnknownMeasure; }));
}
