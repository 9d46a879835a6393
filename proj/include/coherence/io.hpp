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

// JSON and CSV formats.
//
//   state:    {"dim": d, "kind": "pure"|"density", "re": [...], "im": [...]}
//   channel:  {"dim": d, "kraus": [{"re": [...], "im": [...]}, ...]}
//   unitary:  {"dim": d, "perm": [...], "phases": [...]}
//   report:   {"criterion", "measure", "dim", "trials", "violations",
//              "worst_violation", "witness", "seed"}
//
// Matrices are flattened row-major. A report carries "max_value" and
// "advisory" only when they are set.

#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "coherence/channels.hpp"
#include "coherence/error.hpp"
#include "coherence/harness.hpp"
#include "coherence/states.hpp"
#include "json.hpp"

namespace coherence::io {

using json = nlohmann::json;

using StateFile = std::variant<PureState, DensityMatrix>;

namespace detail {

inline void split_complex(std::span<const complex_t> v, json& out) {
  json re = json::array();
  json im = json::array();
  for (const auto& z : v) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  out["re"] = std::move(re);
  out["im"] = std::move(im);
}

inline std::vector<complex_t> join_complex(const json& j, std::size_t expected) {
  if (!j.contains("re") || !j.contains("im") || !j["re"].is_array() || !j["im"].is_array()) {
    throw Error(ErrorKind::BadFormat, "expected \"re\" and \"im\" arrays");
  }
  const auto& re = j["re"];
  const auto& im = j["im"];
  if (re.size() != expected || im.size() != expected) {
    throw Error(ErrorKind::BadFormat, "expected " + std::to_string(expected) + " entries");
  }
  std::vector<complex_t> out(expected);
  for (std::size_t k = 0; k < expected; ++k) {
    if (!re[k].is_number() || !im[k].is_number()) {
      throw Error(ErrorKind::BadFormat, "non-numeric matrix entry");
    }
    out[k] = {re[k].get<double>(), im[k].get<double>()};
  }
  return out;
}

inline std::size_t read_dim(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer() ||
      j["dim"].get<std::int64_t>() <= 0) {
    throw Error(ErrorKind::BadFormat, "expected a positive integer \"dim\"");
  }
  return j["dim"].get<std::size_t>();
}

}  // namespace detail

inline json matrix_to_json(const ComplexMatrix& m) {
  json j = json::object();
  detail::split_complex(m.data(), j);
  return j;
}

inline json state_to_json(const PureState& psi) {
  json j{{"dim", psi.dim()}, {"kind", "pure"}};
  detail::split_complex(psi.amplitudes(), j);
  return j;
}

inline json state_to_json(const DensityMatrix& rho) {
  json j{{"dim", rho.dim()}, {"kind", "density"}};
  detail::split_complex(rho.matrix().data(), j);
  return j;
}

inline StateFile state_from_json(const json& j) {
  const std::size_t d = detail::read_dim(j);
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw Error(ErrorKind::BadFormat, "expected \"kind\": \"pure\" | \"density\"");
  }
  const auto kind = j["kind"].get<std::string>();
  if (kind == "pure") return PureState(detail::join_complex(j, d));
  if (kind == "density") return DensityMatrix(ComplexMatrix(d, d, detail::join_complex(j, d * d)));
  throw Error(ErrorKind::BadFormat, "unknown state kind '" + kind + "'");
}

// Pure states become |psi><psi| (NotNormalized if the norm is off).
inline DensityMatrix density_from_json(const json& j) {
  const StateFile s = state_from_json(j);
  if (const auto* psi = std::get_if<PureState>(&s)) return from_pure(*psi);
  return std::get<DensityMatrix>(s);
}

inline json channel_to_json(const KrausChannel& ch) {
  json ks = json::array();
  for (const auto& k : ch.kraus()) ks.push_back(matrix_to_json(k));
  return {{"dim", ch.dim()}, {"kraus", std::move(ks)}};
}

inline KrausChannel channel_from_json(const json& j) {
  const std::size_t d = detail::read_dim(j);
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
    throw Error(ErrorKind::BadFormat, "expected a non-empty \"kraus\" array");
  }
  std::vector<ComplexMatrix> ks;
  for (const auto& k : j["kraus"]) ks.emplace_back(d, d, detail::join_complex(k, d * d));
  return KrausChannel(d, std::move(ks));
}

inline json unitary_to_json(const IncoherentUnitary& u) {
  return {{"dim", u.dim()}, {"perm", u.permutation()}, {"phases", u.phases()}};
}

inline IncoherentUnitary unitary_from_json(const json& j) {
  const std::size_t d = detail::read_dim(j);
  try {
    auto perm = j.at("perm").get<std::vector<std::size_t>>();
    auto phases = j.at("phases").get<std::vector<double>>();
    if (perm.size() != d) throw Error(ErrorKind::BadFormat, "perm length differs from dim");
    return IncoherentUnitary(std::move(perm), std::move(phases));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadFormat, e.what());
  }
}

inline json canonical_form_to_json(const IncoherentKrausForm& form) {
  json terms = json::array();
  for (const auto& t : form.terms) {
    terms.push_back({{"weight", t.weight},
                     {"column_map", t.column_map},
                     {"moduli", t.moduli},
                     {"phases", t.phases}});
  }
  return {{"dim", form.dim}, {"terms", std::move(terms)}};
}

inline json witness_to_json(const ViolationWitness& w) {
  json j{{"state", state_to_json(w.state)},
         {"selective", w.selective},
         {"value_before", w.value_before},
         {"value_after", w.value_after}};
  j["channel"] = nullptr;
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, KrausChannel>) {
          j["channel"] = channel_to_json(t);
        } else if constexpr (std::is_same_v<T, IncoherentUnitary>) {
          j["channel"] = unitary_to_json(t);
        } else if constexpr (std::is_same_v<T, Mixture>) {
          j["mixture"] = {{"partner", state_to_json(t.partner)}, {"weight", t.weight}};
        }
      },
      w.transform);
  return j;
}

inline ViolationWitness witness_from_json(const json& j) {
  try {
    ViolationWitness w;
    w.state = density_from_json(j.at("state"));
    w.selective = j.value("selective", false);
    w.value_before = j.at("value_before").get<double>();
    w.value_after = j.at("value_after").get<double>();
    if (j.contains("mixture")) {
      const auto& m = j["mixture"];
      w.transform = Mixture{density_from_json(m.at("partner")), m.at("weight").get<double>()};
    } else if (j.contains("channel") && !j["channel"].is_null()) {
      const auto& c = j["channel"];
      if (c.contains("perm")) {
        w.transform = unitary_from_json(c);
      } else {
        w.transform = channel_from_json(c);
      }
    }
    return w;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadFormat, e.what());
  }
}

inline json report_to_json(const CriterionReport& r) {
  json j{{"criterion", r.criterion},
         {"measure", r.measure},
         {"dim", r.dim},
         {"trials", r.trials},
         {"violations", r.violations},
         {"worst_violation", r.worst_violation},
         {"seed", r.seed}};
  j["witness"] = r.witness ? witness_to_json(*r.witness) : json(nullptr);
  if (r.max_value) j["max_value"] = *r.max_value;
  if (r.advisory) j["advisory"] = true;
  return j;
}

inline CriterionReport report_from_json(const json& j) {
  try {
    CriterionReport r;
    r.criterion = j.at("criterion").get<std::string>();
    r.measure = j.at("measure").get<std::string>();
    r.dim = j.at("dim").get<std::size_t>();
    r.trials = j.at("trials").get<std::size_t>();
    r.violations = j.at("violations").get<std::size_t>();
    r.worst_violation = j.at("worst_violation").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("witness") && !j["witness"].is_null()) r.witness = witness_from_json(j["witness"]);
    if (j.contains("max_value")) r.max_value = j["max_value"].get<double>();
    r.advisory = j.value("advisory", false);
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadFormat, e.what());
  }
}

inline constexpr std::string_view kCsvHeader =
    "criterion,measure,dim,trials,violations,worst_violation,seed";

inline std::string report_csv_row(const CriterionReport& r) {
  std::ostringstream os;
  os << r.criterion << ',' << r.measure << ',' << r.dim << ',' << r.trials << ',' << r.violations
     << ',' << json(r.worst_violation).dump() << ',' << r.seed;
  return os.str();
}

inline std::string reports_to_csv(std::span<const CriterionReport> reports) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : reports) out += report_csv_row(r) + '\n';
  return out;
}

}  // namespace coherence::io
