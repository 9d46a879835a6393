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

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>

#include "coherence/coherence.hpp"

using namespace coherence;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

std::size_t jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

TrialConfig config(std::size_t dim, std::size_t trials, std::uint64_t seed) {
  TrialConfig cfg;
  cfg.dim = dim;
  cfg.n_trials = trials;
  cfg.seed = seed;
  cfg.tol = 1e-8;
  cfg.jobs = jobs();
  return cfg;
}

int failures = 0;

void criterion(int n, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0) {
    std::ostringstream b;
    b << "runtime " << secs << " s exceeds " << budget_s << " s";
    o.require(secs < budget_s, b.str());
  }
  if (!o.ok) ++failures;
  std::printf("[%s] AC%d %s (%.1f s) %s\n", o.ok ? "PASS" : "FAIL", n, title.c_str(), secs,
              o.detail.str().c_str());
  std::fflush(stdout);
}

std::string fmt(const char* label, double v) {
  std::ostringstream s;
  s.precision(17);
  s << label << "=" << v;
  return s.str();
}

}  // namespace

int main() {
  criterion(1, "l1 maximum is d-1 and is attained only on MCSs", 60.0, [](Outcome& o) {
    const Measure l1 = make_measure("l1");
    for (std::size_t d = 2; d <= 6; ++d) {
      const auto psi = from_pure(mcs_sample(d, std::uint64_t{d}));
      o.require(std::abs(c_l1(psi) - double(d - 1)) <= 1e-9, fmt("c_l1(mcs)", c_l1(psi)));
      const auto r = check_c5(l1, d, maximizer_config(d));
      o.require(r.passed(), "near-maximizer fails is_mcs at d=" + std::to_string(d));
      o.require(std::abs(*r.max_value - double(d - 1)) <= 1e-6, fmt("max", *r.max_value));
    }
    o.detail << "d=2..6 ";
  });

  criterion(2, "rel_ent maximum is log2 d on MCSs", 60.0, [](Outcome& o) {
    const Measure re = make_measure("rel_ent");
    for (std::size_t d : {2, 3}) {
      const auto r = check_c5(re, d, maximizer_config(d));
      o.require(r.passed(), "near-maximizer fails is_mcs at d=" + std::to_string(d));
      o.require(std::abs(*r.max_value - std::log2(double(d))) <= 1e-6, fmt("max", *r.max_value));
    }
  });

  criterion(3, "C2/C3/C4 fuzz: zero violations for l1, rel_ent, trivial", 300.0, [](Outcome& o) {
    std::size_t total = 0;
    for (const char* name : {"l1", "rel_ent", "trivial"}) {
      const Measure m = make_measure(name);
      for (std::size_t d : {2, 3, 4}) {
        const auto cfg = config(d, 2000, 100 + d);
        for (const auto& r : {check_c2(m, cfg), check_c3(m, cfg), check_c4(m, cfg)}) {
          total += r.trials;
          o.require(r.violations == 0, r.criterion + " " + name + " d=" + std::to_string(d));
        }
      }
    }
    o.detail << total << " trials ";
  });

  criterion(4, "LEMMA1: incoherent unitaries preserve valid measures", 0.0, [](Outcome& o) {
    for (const char* name : {"l1", "rel_ent", "trivial", "int_rand"}) {
      const Measure m = make_measure(name);
      for (std::size_t d : {2, 3, 4}) {
        const auto r = check_lemma1(m, config(d, 1000, 200 + d));
        o.require(r.violations == 0, std::string(name) + " d=" + std::to_string(d));
      }
    }
  });

  criterion(5, "skew information violates C2", 0.0, [](Outcome& o) {
    const auto w = skew_violation_witness(3);
    o.require(std::abs(w.value_before - 17.0 / 36.0) <= 1e-15, fmt("before", w.value_before));
    o.require(std::abs(w.value_after - 5.0 / 9.0) <= 1e-15, fmt("after", w.value_after));
    const Measure skew = make_measure("skew");
    const auto c2 = check_c2(skew, config(3, 100, 7));
    o.require(c2.violations >= 1, "no C2 violation in 100 trials");
    if (c2.witness) {
      const auto [b, a] = reevaluate(*c2.witness, skew);
      o.require(std::abs(b - c2.witness->value_before) <= 1e-12 &&
                    std::abs(a - c2.witness->value_after) <= 1e-12,
                "witness does not re-evaluate");
    }
    const auto l1d2 = check_lemma1(skew, config(2, 1000, 5));
    o.require(l1d2.violations == 0, "skew LEMMA1 violation at d=2");
    o.detail << "C2 violations=" << c2.violations << "/100 ";
  });

  criterion(6, "LEMMA2 fuzz: only CPOs on MCSs output MCSs", 0.0, [](Outcome& o) {
    for (std::size_t d : {2, 3, 4}) {
      const auto r = check_lemma2(config(d, 1000, 300 + d));
      o.require(r.violations == 0, "d=" + std::to_string(d));
    }
  });

  criterion(7, "constructive transformation from |Psi_d>", 0.0, [](Outcome& o) {
    for (std::size_t d : {2, 3, 4}) {
      Rng rng = make_rng(400 + d);
      const auto psi_d = from_pure(PureState::uniform(d));
      for (int t = 0; t < 100; ++t) {
        const auto target = random_pure(d, rng);
        const auto ch = transform_mcs_to(target);
        o.require(ch.completeness_error() <= 1e-12, fmt("completeness", ch.completeness_error()));
        o.require(is_incoherent_channel(ch), "pure-target channel is not incoherent");
        const auto out = apply(ch, psi_d);
        o.require(fidelity(out, target) >= 1.0 - 1e-10, fmt("fidelity", fidelity(out, target)));
        o.require(frobenius_distance(out.matrix(), from_pure(target).matrix()) <= 1e-9, "pure output");
      }
      for (int t = 0; t < 20; ++t) {
        const auto target = random_density(d, 1 + t % d, rng);
        const auto ch = transform_mcs_to_mixed(target);
        o.require(ch.completeness_error() <= 1e-12, fmt("completeness", ch.completeness_error()));
        o.require(is_incoherent_channel(ch), "mixed-target channel is not incoherent");
        const double dist = frobenius_distance(apply(ch, psi_d).matrix(), target.matrix());
        o.require(dist <= 1e-9, fmt("mixed output distance", dist));
      }
    }
  });

  criterion(8, "THEOREM3: no non-unitary channel masquerades as value-preserving", 0.0, [](Outcome& o) {
    for (std::size_t d : {2, 3}) {
      const auto r = check_theorem3(config(d, 500, 500 + d));
      o.require(r.violations == 0, "d=" + std::to_string(d));
    }
  });

  criterion(9, "C_trivial fails C5 with a coherent non-MCS maximizer", 0.0, [](Outcome& o) {
    const auto r = check_c5(make_measure("trivial"), 3, maximizer_config(9));
    o.require(!r.passed(), "C5 unexpectedly passed");
    o.require(r.witness.has_value(), "no witness");
    if (r.witness) {
      o.require(r.witness->value_before == 1.0, "witness value is not 1");
      o.require(!is_incoherent(r.witness->state), "witness is incoherent");
      o.require(!is_mcs(r.witness->state, 1e-3), "witness is an MCS");
    }
  });

  criterion(10, "intrinsic randomness branches and bounds", 0.0, [](Outcome& o) {
    Rng rng = make_rng(1000);
    for (int t = 0; t < 200; ++t) {
      const auto rho = from_pure(random_pure(2 + t % 5, rng));
      o.require(c_int_rand(rho) == c_rel_ent(rho), "pure branch differs from rel_ent");
    }
    for (std::size_t d : {2, 3}) {
      const double v = c_int_rand(DensityMatrix::maximally_mixed(d));
      o.require(v <= 1e-6, fmt("c_int_rand(I/d)", v));
    }
    for (std::size_t d : {2, 3}) {
      for (int t = 0; t < 10; ++t) {
        OptimizerConfig opt;
        opt.seed = std::uint64_t(t);
        const auto rho = random_density(d, 2 + t % (d - 1), rng);
        const auto res = convex_roof_rel_ent(rho, opt);
        o.require(res.value <= res.eigen_average + 1e-9, fmt("roof - eigen", res.value - res.eigen_average));
      }
    }
  });

  criterion(11, "numerics floor: eigen reconstruction and psd_sqrt", 0.0, [](Outcome& o) {
    double worst_eig = 0.0, worst_sqrt = 0.0;
    for (std::size_t d = 2; d <= 8; ++d) {
      Rng rng = make_rng(1100 + d);
      for (int t = 0; t < 500; ++t) {
        ComplexMatrix g(d, d);
        for (auto& z : g.data()) z = complex_gaussian(rng);
        const ComplexMatrix a = (g + g.adjoint()) * complex_t{0.5, 0.0};
        const auto e = hermitian_eigen(a);
        worst_eig = std::max(worst_eig, frobenius_distance(a, e.reconstruct()) / a.frobenius_norm());
        if (t < 100) {
          const auto rho = random_density(d, 1 + t % d, rng);
          const auto s = psd_sqrt(rho.matrix());
          worst_sqrt = std::max(worst_sqrt, frobenius_distance(s * s, rho.matrix()));
        }
      }
    }
    o.require(worst_eig <= 1e-10, fmt("eigen", worst_eig));
    o.require(worst_sqrt <= 1e-8, fmt("sqrt", worst_sqrt));
    o.detail << "eigen " << worst_eig << ", sqrt " << worst_sqrt << " ";
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
