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

#include "coherence/io.hpp"

using namespace coherence;
using io::json;

namespace {

auto kind_is(ErrorKind k) {
  return Catch::Matchers::Predicate<Error>([k](const Error& e) { return e.kind() == k; });
}

}  // namespace

TEST_CASE("states round-trip through JSON", "[io]") {
  const auto psi = random_pure(4, std::uint64_t{1});
  const auto back = io::state_from_json(json::parse(io::state_to_json(psi).dump()));
  REQUIRE(std::holds_alternative<PureState>(back));
  const auto& psi2 = std::get<PureState>(back);
  CHECK(std::equal(psi.amplitudes().begin(), psi.amplitudes().end(), psi2.amplitudes().begin()));

  const auto rho = random_density(3, 2, std::uint64_t{2});
  const auto rho2 = io::density_from_json(json::parse(io::state_to_json(rho).dump()));
  CHECK(rho2.matrix() == rho.matrix());
}

TEST_CASE("channels and unitaries round-trip through JSON", "[io]") {
  const auto ch = random_incoherent_channel(3, 2, std::uint64_t{3});
  const auto ch2 = io::channel_from_json(json::parse(io::channel_to_json(ch).dump()));
  REQUIRE(ch2.size() == ch.size());
  for (std::size_t n = 0; n < ch.size(); ++n) CHECK(ch2.kraus()[n] == ch.kraus()[n]);

  Rng rng = make_rng(4);
  const auto u = IncoherentUnitary::random(5, rng);
  CHECK(io::unitary_from_json(json::parse(io::unitary_to_json(u).dump())) == u);
}

TEST_CASE("reports round-trip through JSON", "[io][property]") {
  const Measure skew = make_measure("skew");
  TrialConfig cfg;
  cfg.dim = 3;
  cfg.n_trials = 100;
  cfg.seed = 7;
  std::vector<CriterionReport> reports{check_c2(skew, cfg), check_c3(skew, cfg), check_c4(skew, cfg),
                                       check_lemma1(skew, cfg), check_lemma2(cfg)};
  OptimizerConfig opt;
  opt.restarts = 4;
  reports.push_back(check_c5(make_measure("trivial"), 2, opt));

  bool saw_witness = false;
  for (const auto& r : reports) {
    const json j = io::report_to_json(r);
    for (const char* key :
         {"criterion", "measure", "dim", "trials", "violations", "worst_violation", "witness", "seed"})
      CHECK(j.contains(key));
    const auto back = io::report_from_json(json::parse(j.dump()));
    CHECK(io::report_to_json(back) == j);
    CHECK(back.witness.has_value() == (r.violations > 0));
    saw_witness = saw_witness || back.witness.has_value();
    if (back.witness) {
      const auto [before, after] = reevaluate(*back.witness, r.measure == "mcs" ? mcs_distance_measure()
                                                                                 : make_measure(r.measure));
      CHECK(std::abs(before - back.witness->value_before) <= 1e-12);
      CHECK(std::abs(after - back.witness->value_after) <= 1e-12);
    }
  }
  CHECK(saw_witness);
}

TEST_CASE("CSV header and rows", "[io]") {
  CHECK(io::kCsvHeader == "criterion,measure,dim,trials,violations,worst_violation,seed");
  CriterionReport r;
  r.criterion = "C2";
  r.measure = "l1";
  r.dim = 3;
  r.trials = 10;
  r.violations = 0;
  r.worst_violation = 0.5;
  r.seed = 9;
  const std::vector<CriterionReport> rs{r};
  CHECK(io::reports_to_csv(rs) ==
        "criterion,measure,dim,trials,violations,worst_violation,seed\nC2,l1,3,10,0,0.5,9\n");
}

TEST_CASE("format errors", "[io]") {
  CHECK_THROWS_MATCHES(io::state_from_json(json{{"dim", 2}, {"kind", "pure"}}), Error,
                       kind_is(ErrorKind::BadFormat));
  CHECK_THROWS_MATCHES(io::state_from_json(json{{"kind", "pure"}}), Error, kind_is(ErrorKind::BadFormat));
  CHECK_THROWS_MATCHES(
      io::state_from_json(json{{"dim", 2}, {"kind", "mixed"}, {"re", {1, 0}}, {"im", {0, 0}}}), Error,
      kind_is(ErrorKind::BadFormat));
  CHECK_THROWS_MATCHES(io::state_from_json(json{{"dim", 2}, {"kind", "pure"}, {"re", {1}}, {"im", {0}}}),
                       Error, kind_is(ErrorKind::BadFormat));
  CHECK_THROWS_MATCHES(io::channel_from_json(json{{"dim", 2}, {"kraus", json::array()}}), Error,
                       kind_is(ErrorKind::BadFormat));
  CHECK_THROWS_MATCHES(io::report_from_json(json{{"criterion", "C2"}}), Error,
                       kind_is(ErrorKind::BadFormat));
  CHECK_THROWS_MATCHES(io::density_from_json(json{{"dim", 2}, {"kind", "pure"}, {"re", {1, 1}}, {"im", {0, 0}}}),
                       Error, kind_is(ErrorKind::NotNormalized));
}
