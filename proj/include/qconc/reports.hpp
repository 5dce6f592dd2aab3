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


#ifndef QCONC_REPORTS_HPP
#define QCONC_REPORTS_HPP

#include <ostream>
#include <vector>

#include <json.hpp>

#include "qconc/measurement.hpp"
#include "qconc/verification.hpp"

namespace qconc {

nlohmann::json to_json(const IdentityCheck& check);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const EstimateReport& report);
nlohmann::json to_json(const ShotRecord& record);

/// One row per (group, projector_index, count). The rest outcome is written
/// with projector_index equal to the number of projectors.
void write_shot_records_csv(const std::vector<ShotRecord>& records,
                            std::ostream& out);

}  // namespace qconc

#endif  // QCONC_REPORTS_HPP
