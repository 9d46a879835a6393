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

// coherence_lab command line.
//
//   measure        evaluate a measure on a state file
//   check-channel  incoherence / CPO verdicts and the canonical Kraus form
//   verify         run criterion checks and emit reports
//   hunt           skew-information witness plus randomized C2/LEMMA1 search
//   mcs            MCS membership; --transform-to emits the |Psi_d> -> target
//                  channel
//
// Exit codes: 0 success, 1 violations found, 2 usage error, 3 I/O or format
// error. COHERENCE_LAB_SEED supplies the default --seed.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coherence/channels.hpp"
#include "coherence/error.hpp"
#include "coherence/harness.hpp"
#include "coherence/io.hpp"
#include "coherence/mcs.hpp"
#include "coherence/measures.hpp"

namespace coherence::cli {

enum ExitCode : int { kOk = 0, kViolations = 1, kUsage = 2, kIoError = 3 };

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline io::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return io::json::parse(in);
  } catch (const io::json::parse_error& e) {
    throw IoError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline std::uint64_t default_seed() {
  const char* env = std::getenv("COHERENCE_LAB_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("COHERENCE_LAB_SEED is not an unsigned integer: ") + env);
  }
}

inline Measure measure_by_name(const std::string& name, std::uint64_t seed) {
  OptimizerConfig opt;
  opt.seed = seed;
  try {
    return make_measure(name, opt);
  } catch (const Error&) {
    throw UsageError("unknown measure '" + name + "'");
  }
}

struct Output {
  std::string path;
  std::string format = "json";
};

inline void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.path);
  if (!f) throw IoError("cannot write '" + o.path + "'");
  f << text;
}

inline std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherence resource-theory toolkit", "coherence_lab"};
  app.require_subcommand(1);

  std::string state_path, channel_path, measure_name, criterion_name = "ALL", transform_path;
  std::size_t dim = 3, trials = 1000, jobs = 1;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  detail::Output output;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", output.path, "Write the report to PATH instead of stdout");
    sub->add_option("--format", output.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* measure_cmd = app.add_subcommand("measure", "Evaluate a coherence measure on a state");
  measure_cmd->add_option("--state", state_path, "State JSON file")->required();
  measure_cmd->add_option("--measure", measure_name, "l1 | rel_ent | int_rand | skew | trivial")
      ->required();
  measure_cmd->add_option("--seed", seed, "Optimizer seed for int_rand");
  add_output(measure_cmd);

  auto* channel_cmd = app.add_subcommand("check-channel", "Incoherence and CPO verdicts");
  channel_cmd->add_option("--channel", channel_path, "Channel JSON file")->required();
  channel_cmd->add_option("--tol", tol, "Entry/rank tolerance");
  add_output(channel_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Run criterion checks");
  verify_cmd->add_option("--measure", measure_name, "Measure name");
  verify_cmd->add_option("--criterion", criterion_name,
                         "C1 | C2 | C3 | C4 | C5 | LEMMA1 | LEMMA2 | THEOREM3 | ALL");
  verify_cmd->add_option("--dim", dim, "Dimension");
  verify_cmd->add_option("--trials", trials, "Trials (C5: restarts, default 64)");
  verify_cmd->add_option("--seed", seed, "Seed");
  verify_cmd->add_option("--tol", tol, "Violation tolerance");
  verify_cmd->add_option("--jobs", jobs, "Worker threads");
  add_output(verify_cmd);

  auto* hunt_cmd = app.add_subcommand("hunt", "Skew witness and randomized counterexample search");
  hunt_cmd->add_option("--measure", measure_name, "Measure to search (default skew)");
  hunt_cmd->add_option("--dim", dim, "Dimension");
  hunt_cmd->add_option("--trials", trials, "Trials per search");
  hunt_cmd->add_option("--seed", seed, "Seed");
  hunt_cmd->add_option("--tol", tol, "Violation tolerance");
  hunt_cmd->add_option("--jobs", jobs, "Worker threads");
  add_output(hunt_cmd);

  auto* mcs_cmd = app.add_subcommand("mcs", "MCS membership and |Psi_d> transformations");
  mcs_cmd->add_option("--state", state_path, "State JSON file to test");
  mcs_cmd->add_option("--transform-to", transform_path, "Target state JSON; emits the channel");
  mcs_cmd->add_option("--tol", tol, "Membership tolerance");
  add_output(mcs_cmd);

  std::vector<const char*> argv{"coherence_lab"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    seed = detail::default_seed();
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (measure_cmd->parsed()) {
      const Measure m = detail::measure_by_name(measure_name, seed);
      const DensityMatrix rho = io::density_from_json(detail::read_json_file(state_path));
      const double value = m(rho);
      std::string text;
      if (output.format == "csv") {
        text = "measure,dim,value\n" + m.name + "," + std::to_string(rho.dim()) + "," +
               io::json(value).dump() + "\n";
      } else {
        text = detail::dump({{"measure", m.name}, {"dim", rho.dim()}, {"value", value}});
      }
      detail::emit(output, text, out);
      return kOk;
    }

    if (channel_cmd->parsed()) {
      const KrausChannel ch = io::channel_from_json(detail::read_json_file(channel_path));
      io::json j{{"dim", ch.dim()},
                 {"kraus_count", ch.size()},
                 {"completeness_error", ch.completeness_error()}};
      const bool incoherent = is_incoherent_channel(ch, tol);
      j["incoherent"] = incoherent;
      j["cpo"] = is_cpo(ch, tol);
      j["canonical_form"] = incoherent ? io::canonical_form_to_json(canonical_form(ch, tol))
                                       : io::json(nullptr);
      detail::emit(output, detail::dump(j), out);
      return kOk;
    }

    if (verify_cmd->parsed()) {
      std::vector<Criterion> criteria;
      if (criterion_name == "ALL") {
        criteria = {Criterion::C1, Criterion::C2, Criterion::C3, Criterion::C4,
                    Criterion::C5, Criterion::Lemma1, Criterion::Lemma2, Criterion::Theorem3};
      } else if (auto c = parse_criterion(criterion_name)) {
        criteria = {*c};
      } else {
        throw detail::UsageError("unknown criterion '" + criterion_name + "'");
      }
      const bool needs_measure =
          std::any_of(criteria.begin(), criteria.end(), [](Criterion c) {
            return c != Criterion::Lemma2 && c != Criterion::Theorem3;
          });
      if (needs_measure && measure_name.empty()) {
        throw detail::UsageError("--measure is required for " + criterion_name);
      }
      const Measure m = needs_measure ? detail::measure_by_name(measure_name, seed) : Measure{};
      TrialConfig cfg;
      cfg.dim = dim;
      cfg.n_trials = trials;
      cfg.seed = seed;
      cfg.tol = tol;
      cfg.jobs = jobs;
      cfg.validate();
      OptimizerConfig opt = maximizer_config(seed);
      if (verify_cmd->count("--trials") > 0) opt.restarts = trials;

      std::vector<CriterionReport> reports;
      for (auto c : criteria) reports.push_back(run_criterion(c, m, cfg, opt));
      bool any = false;
      for (const auto& r : reports) any = any || !r.passed();

      std::string text;
      if (output.format == "csv") {
        text = io::reports_to_csv(reports);
      } else if (reports.size() == 1) {
        text = detail::dump(io::report_to_json(reports.front()));
      } else {
        io::json arr = io::json::array();
        for (const auto& r : reports) arr.push_back(io::report_to_json(r));
        text = detail::dump(arr);
      }
      detail::emit(output, text, out);
      return any ? kViolations : kOk;
    }

    if (hunt_cmd->parsed()) {
      const Measure m = detail::measure_by_name(measure_name.empty() ? "skew" : measure_name, seed);
      TrialConfig cfg;
      cfg.dim = dim;
      cfg.n_trials = trials;
      cfg.seed = seed;
      cfg.tol = tol;
      cfg.jobs = jobs;
      cfg.validate();
      std::optional<ViolationWitness> witness;
      if (m.name == "skew" && dim >= 3) witness = skew_violation_witness(dim);
      std::vector<CriterionReport> reports{check_c2(m, cfg), check_lemma1(m, cfg)};
      bool any = witness.has_value();
      for (const auto& r : reports) any = any || !r.passed();

      std::string text;
      if (output.format == "csv") {
        text = io::reports_to_csv(reports);
      } else {
        io::json j{{"measure", m.name}, {"dim", dim}, {"seed", seed}};
        j["witness"] = witness ? io::witness_to_json(*witness) : io::json(nullptr);
        io::json arr = io::json::array();
        for (const auto& r : reports) arr.push_back(io::report_to_json(r));
        j["searches"] = std::move(arr);
        text = detail::dump(j);
      }
      detail::emit(output, text, out);
      return any ? kViolations : kOk;
    }

    if (mcs_cmd->parsed()) {
      if (state_path.empty() && transform_path.empty()) {
        throw detail::UsageError("mcs needs --state or --transform-to");
      }
      if (!transform_path.empty()) {
        const DensityMatrix target = io::density_from_json(detail::read_json_file(transform_path));
        detail::emit(output, detail::dump(io::channel_to_json(transform_mcs_to_mixed(target))), out);
        return kOk;
      }
      const DensityMatrix rho = io::density_from_json(detail::read_json_file(state_path));
      io::json j{{"dim", rho.dim()},
                 {"is_mcs", is_mcs(rho, tol)},
                 {"purity", rho.purity()},
                 {"mcs_distance", mcs_distance(rho)}};
      detail::emit(output, detail::dump(j), out);
      return kOk;
    }
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const detail::IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::UnknownMeasure:
      case ErrorKind::BadParams:
      case ErrorKind::BadDim:
        return kUsage;
      default:
        return kIoError;
    }
  }
  return kUsage;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace coherence::cli
