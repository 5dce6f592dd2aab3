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

#ifndef QCONC_VERIFICATION_HPP
#define QCONC_VERIFICATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qconc/copy_observables.hpp"

namespace qconc {

inline constexpr double kRankThreshold = 1e-10;

struct IdentityCheck {
  std::string identity;
  bool passed = false;
  double max_residual = 0.0;
  int trials = 0;
  double tolerance = 0.0;
  std::optional<std::string> chosen_direction;
  std::vector<std::pair<std::string, double>> scalar_corrections;
  std::string note;

  /// "pass", "scalar_corrected" or "fail".
  std::string_view status() const;
};

struct VerificationReport {
  std::vector<IdentityCheck> checks;
  TwoCopyReport two_copy;
  FourCopyReport four_copy;
  DecompositionReport decomposition;

  bool passed() const;
  /// nullptr when every check passed.
  const IdentityCheck* first_failure() const;
};

/// Runs every operator identity and counting claim the estimators rely on.
/// Random-state checks draw from RandomSource(seed, k) with one stream id k
/// per check.
VerificationReport run_verification(int trials, std::uint64_t seed,
                                    double tol);

}  // namespace qconc

#endif  // QCONC_VERIFICATION_HPP
