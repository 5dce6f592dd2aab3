// Copyright 2026 The qconc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qconc/reports.hpp"

namespace qconc {

nlohmann::json to_json(const IdentityCheck& check) {
  nlohmann::json j{{"identity", check.identity},
                   {"status", check.status()},
                   {"max_residual", check.max_residual},
                   {"trials", check.trials},
                   {"tolerance", check.tolerance}};
  if (check.chosen_direction) j["chosen_direction"] = *check.chosen_direction;
  if (!check.scalar_corrections.empty()) {
    nlohmann::json corr = nlohmann::json::object();
    for (const auto& [name, value] : check.scalar_corrections) {
      corr[name] = value;
    }
    j["scalar_corrections"] = corr;
  }
  if (!check.note.empty()) j["note"] = check.note;
  return j;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const IdentityCheck& c : report.checks) checks.push_back(to_json(c));
  nlohmann::json j{{"passed", report.passed()},
                   {"two_copy_form", to_string(report.two_copy.verdict)},
                   {"checks", checks}};
  if (report.four_copy.chosen) {
    j["shift_direction"] = to_string(*report.four_copy.chosen);
  }
  const MNCoefficients& f = report.decomposition.fitted;
  j["fitted_coefficients"] = {{"pairing", f.pairing}, {"n_scale", f.n_scale}};
  if (const IdentityCheck* bad = report.first_failure()) {
    j["first_failure"] = bad->identity;
  }
  return j;
}

nlohmann::json to_json(const EstimateReport& report) {
  nlohmann::json clamps = nlohmann::json::array();
  for (const ClampEvent& c : report.clamps) {
    clamps.push_back({{"what", c.what}, {"magnitude", c.magnitude}});
  }
  return {{"quantity", to_string(report.quantity)},
          {"mean", report.mean},
          {"std_error", report.std_error},
          {"ci95", {report.ci_low, report.ci_high}},
          {"shots_per_group", report.shots_per_group},
          {"scheme", to_string(report.scheme)},
          {"clamps", clamps},
          {"bootstrap_resamples", report.bootstrap_resamples},
          {"bootstrap_clamped", report.bootstrap_clamped},
          {"seed", report.seed},
          {"stream", report.stream},
          {"rng_algorithm", report.rng_algorithm}};
}

nlohmann::json to_json(const ShotRecord& record) {
  return {{"group", record.label},
          {"counts", record.counts},
          {"shots", record.shots},
          {"seed", record.seed},
          {"stream", record.stream}};
}

void write_shot_records_csv(const std::vector<ShotRecord>& records,
                            std::ostream& out) {
  out << "group,projector_index,count\n";
  for (const ShotRecord& r : records) {
    for (std::size_t k = 0; k < r.counts.size(); ++k) {
      out << r.label << ',' << k << ',' << r.counts[k] << '\n';
    }
  }
}

}  // namespace qconc
