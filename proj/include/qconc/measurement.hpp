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

#ifndef QCONC_MEASUREMENT_HPP
#define QCONC_MEASUREMENT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qconc/copy_observables.hpp"
#include "qconc/state_factory.hpp"

namespace qconc {

/// Outcome counts of one group. counts[k] belongs to projector k; the final
/// entry is the "rest" outcome (value 0) covering whatever the projectors
/// leave out.
struct ShotRecord {
  std::string label;
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

inline constexpr double kProbabilityDefectTol = 1e-8;

/// Born probabilities Tr(Pi_k rho_total) plus the rest outcome, clamped into
/// [0, 1] and renormalized. Throws when they miss 1 by more than
/// kProbabilityDefectTol.
std::vector<double> outcome_probabilities(const DenseOperator& rho_total,
                                          const ObservableGroup& group);

/// Multinomial sample of `shots` outcomes. Deterministic in `rng`.
ShotRecord measure_group(const DenseOperator& rho_total,
                         const ObservableGroup& group, std::uint64_t shots,
                         RandomSource rng);
ShotRecord measure_group(const DensityMatrix& rho_total,
                         const ObservableGroup& group, std::uint64_t shots,
                         RandomSource rng);

enum class Quantity { t1, t2, tau, concurrence, three_tangle };
std::string_view to_string(Quantity q);

struct ClampEvent {
  std::string what;
  double magnitude = 0.0;
};

struct EstimateReport {
  Quantity quantity = Quantity::t1;
  double mean = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t shots_per_group = 0;
  Scheme scheme = Scheme::local6;
  std::vector<ClampEvent> clamps;
  // Bootstrap resamples whose radicand was clamped.
  int bootstrap_clamped = 0;
  int bootstrap_resamples = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string rng_algorithm;
};

/// Point values of every estimated quantity from one set of group
/// frequencies (or exact probabilities).
struct DerivedValues {
  double t1 = 0.0;
  double t2 = 0.0;
  double tau = 0.0;
  double concurrence = 0.0;
  double three_tangle = 0.0;
  double tau_clamped_by = 0.0;
  double concurrence_clamped_by = 0.0;
};

struct SimulationOptions {
  Scheme scheme = Scheme::local6;
  std::uint64_t shots_per_group = 100000;
  // Per-group shot counts; when empty every group gets shots_per_group.
  std::vector<std::uint64_t> shot_allocation;
  int bootstrap_resamples = 1000;
  // How the two-copy expectation maps to Tr(rho rho~).
  TwoCopyForm two_copy_form = TwoCopyForm::linear;
  MNCoefficients coefficients = fitted_mn_coefficients();
};

struct SimulationResult {
  std::vector<ShotRecord> records;
  DerivedValues point;
  EstimateReport t1;
  EstimateReport t2;
  EstimateReport tau;
  EstimateReport concurrence;
  EstimateReport three_tangle;
};

/// Simulates the measurement groups of one scheme on i.i.d. copies of a
/// two-qubit state and turns the counts into estimates.
///
/// Each group is measured on fresh copies. Group g samples from
/// rng.split(0).split(g); bootstrap resample b draws from
/// rng.split(1).split(b).
class MeasurementSimulator {
 public:
  explicit MeasurementSimulator(SimulationOptions options);

  const SimulationOptions& options() const noexcept { return options_; }
  const std::vector<ObservableGroup>& groups() const noexcept {
    return groups_;
  }

  std::vector<std::vector<double>> probabilities(
      const DensityMatrix& rho) const;

  std::vector<ShotRecord> sample(const DensityMatrix& rho,
                                 const RandomSource& rng) const;

  /// Estimators evaluated on per-group outcome frequencies.
  DerivedValues derive(const std::vector<std::vector<double>>& freqs) const;

  /// Estimators with exact probabilities in place of frequencies.
  DerivedValues infinite_shot(const DensityMatrix& rho) const;

  SimulationResult estimate(const DensityMatrix& rho,
                            const RandomSource& rng) const;

 private:
  std::uint64_t shots_for(std::size_t group) const;

  SimulationOptions options_;
  std::vector<ObservableGroup> groups_;
};

struct MomentEstimates {
  EstimateReport t1;
  EstimateReport t2;
};

MomentEstimates estimate_moments(const DensityMatrix& rho, Scheme scheme,
                                 std::uint64_t shots_per_group,
                                 const RandomSource& rng);
EstimateReport estimate_concurrence(const DensityMatrix& rho, Scheme scheme,
                                    std::uint64_t shots_per_group,
                                    const RandomSource& rng);
EstimateReport estimate_three_tangle(const DensityMatrix& rho_ab,
                                     Scheme scheme,
                                     std::uint64_t shots_per_group,
                                     const RandomSource& rng);

}  // namespace qconc

#endif  // QCONC_MEASUREMENT_HPP
