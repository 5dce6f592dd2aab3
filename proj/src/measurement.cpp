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

#include "qconc/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qconc/entanglement.hpp"
#include "qconc/parallel.hpp"

namespace qconc {

namespace {

std::vector<std::uint64_t> sample_multinomial(const std::vector<double>& p,
                                              std::uint64_t n,
                                              std::mt19937_64& engine) {
  std::vector<std::uint64_t> counts(p.size(), 0);
  double remaining_mass = 1.0;
  std::uint64_t remaining = n;
  for (std::size_t k = 0; k + 1 < p.size() && remaining > 0; ++k) {
    const double q =
        remaining_mass > 0.0 ? std::clamp(p[k] / remaining_mass, 0.0, 1.0)
                             : 0.0;
    std::binomial_distribution<std::uint64_t> binom(remaining, q);
    counts[k] = binom(engine);
    remaining -= counts[k];
    remaining_mass -= p[k];
  }
  if (!p.empty()) counts.back() += remaining;
  return counts;
}

std::vector<double> frequencies(const std::vector<std::uint64_t>& counts) {
  const double total = static_cast<double>(
      std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  std::vector<double> f(counts.size(), 0.0);
  if (total > 0) {
    for (std::size_t k = 0; k < counts.size(); ++k) f[k] = counts[k] / total;
  }
  return f;
}

// Value of outcome k for the t2 (eigenvalue) and t1 estimators; the trailing
// rest outcome contributes 0 to both.
double eigen_value(const ObservableGroup& g, std::size_t k) {
  return k < g.eigenvalues.size() ? g.eigenvalues[k] : 0.0;
}

double t1_value(const ObservableGroup& g, std::size_t k) {
  return k < g.t1_values.size() ? g.t1_values[k] : 0.0;
}

double percentile(std::vector<double> sorted_values, double q) {
  if (sorted_values.empty()) return 0.0;
  std::sort(sorted_values.begin(), sorted_values.end());
  const double pos = q * static_cast<double>(sorted_values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted_values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted_values[lo] * (1.0 - frac) + sorted_values[hi] * frac;
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

std::vector<double> outcome_probabilities(const DenseOperator& rho_total,
                                          const ObservableGroup& group) {
  std::vector<double> p;
  p.reserve(group.projectors.size() + 1);
  double covered = 0.0;
  for (const DenseOperator& proj : group.projectors) {
    if (proj.size() != rho_total.size()) {
      throw Error("measure_group: group '" + group.label + "' acts on " +
                  std::to_string(proj.size()) + " dimensions, state has " +
                  std::to_string(rho_total.size()));
    }
    const double pk =
        trace_of_product(proj.matrix(), rho_total.matrix()).real();
    if (pk < -kProbabilityDefectTol || pk > 1.0 + kProbabilityDefectTol) {
      throw ValidationError("probability", pk,
                            "outcome probability outside [0, 1]");
    }
    p.push_back(std::clamp(pk, 0.0, 1.0));
    covered += p.back();
  }
  const double rest = 1.0 - covered;
  if (rest < -kProbabilityDefectTol) {
    throw ValidationError("probability defect", -rest,
                          "projector probabilities of group '" + group.label +
                              "' exceed 1");
  }
  p.push_back(std::max(rest, 0.0));
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= total;
  return p;
}

ShotRecord measure_group(const DenseOperator& rho_total,
                         const ObservableGroup& group, std::uint64_t shots,
                         RandomSource rng) {
  if (shots == 0) throw Error("measure_group: shots must be at least 1");
  const std::vector<double> p = outcome_probabilities(rho_total, group);
  ShotRecord record{group.label, sample_multinomial(p, shots, rng.engine()),
                    shots, rng.seed(), rng.stream()};
  return record;
}

ShotRecord measure_group(const DensityMatrix& rho_total,
                         const ObservableGroup& group, std::uint64_t shots,
                         RandomSource rng) {
  return measure_group(rho_total.op(), group, shots, std::move(rng));
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::t1: return "t1";
    case Quantity::t2: return "t2";
    case Quantity::tau: return "tau";
    case Quantity::concurrence: return "concurrence";
    case Quantity::three_tangle: return "three_tangle";
  }
  return "?";
}

MeasurementSimulator::MeasurementSimulator(SimulationOptions options)
    : options_(std::move(options)),
      groups_(enumerate_groups(options_.scheme, options_.coefficients)) {
  if (options_.two_copy_form != TwoCopyForm::linear &&
      options_.two_copy_form != TwoCopyForm::sqrt) {
    throw Error("simulator needs a resolved two-copy form (linear or sqrt)");
  }
  if (!options_.shot_allocation.empty() &&
      options_.shot_allocation.size() != groups_.size()) {
    throw Error("shot allocation has " +
                std::to_string(options_.shot_allocation.size()) +
                " entries for " + std::to_string(groups_.size()) + " groups");
  }
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (shots_for(g) == 0) throw Error("every group needs at least one shot");
  }
  if (options_.bootstrap_resamples < 0) {
    throw Error("bootstrap resamples must be non-negative");
  }
}

std::uint64_t MeasurementSimulator::shots_for(std::size_t group) const {
  return options_.shot_allocation.empty() ? options_.shots_per_group
                                          : options_.shot_allocation[group];
}

std::vector<std::vector<double>> MeasurementSimulator::probabilities(
    const DensityMatrix& rho) const {
  if (rho.dims() != Dims{2, 2}) {
    throw Error("simulator expects a two-qubit state");
  }
  const DenseOperator two = copies_of(rho, 2);
  const DenseOperator four = copies_of(rho, 4);
  std::vector<std::vector<double>> out;
  out.reserve(groups_.size());
  for (const ObservableGroup& g : groups_) {
    out.push_back(outcome_probabilities(g.n_copies == 2 ? two : four, g));
  }
  return out;
}

std::vector<ShotRecord> MeasurementSimulator::sample(
    const DensityMatrix& rho, const RandomSource& rng) const {
  const auto probs = probabilities(rho);
  const RandomSource sampling = rng.split(0);
  std::vector<ShotRecord> records(groups_.size());
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    RandomSource local = sampling.split(g);
    records[g] = ShotRecord{groups_[g].label,
                            sample_multinomial(probs[g], shots_for(g),
                                               local.engine()),
                            shots_for(g), local.seed(), local.stream()};
  }
  return records;
}

DerivedValues MeasurementSimulator::derive(
    const std::vector<std::vector<double>>& freqs) const {
  DerivedValues v;
  double overlap = 0.0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const ObservableGroup& group = groups_[g];
    double mean = 0.0;
    for (std::size_t k = 0; k < freqs[g].size(); ++k) {
      mean += eigen_value(group, k) * freqs[g][k];
      overlap += t1_value(group, k) * freqs[g][k];
    }
    v.t2 += group.weight * mean;
  }
  v.t1 = options_.two_copy_form == TwoCopyForm::linear
             ? overlap
             : std::sqrt(std::max(0.0, overlap));
  const ClampedRoot tau = clamped_sqrt(2.0 * (v.t1 * v.t1 - v.t2),
                                       std::nullopt);
  const ClampedRoot c = clamped_sqrt(v.t1 - tau.value, std::nullopt);
  v.tau = tau.value;
  v.tau_clamped_by = tau.clamped_by;
  v.concurrence = c.value;
  v.concurrence_clamped_by = c.clamped_by;
  v.three_tangle = 2.0 * tau.value;
  return v;
}

DerivedValues MeasurementSimulator::infinite_shot(
    const DensityMatrix& rho) const {
  return derive(probabilities(rho));
}

SimulationResult MeasurementSimulator::estimate(const DensityMatrix& rho,
                                                const RandomSource& rng) const {
  SimulationResult result;
  result.records = sample(rho, rng);

  std::vector<std::vector<double>> freqs;
  freqs.reserve(result.records.size());
  for (const ShotRecord& r : result.records) {
    freqs.push_back(frequencies(r.counts));
  }
  result.point = derive(freqs);

  // Multinomial variance of the linear estimators, with plug-in frequencies.
  double var_t2 = 0.0;
  double var_overlap = 0.0;
  double overlap = 0.0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const ObservableGroup& group = groups_[g];
    double m1 = 0.0, m2 = 0.0, o1 = 0.0, o2 = 0.0;
    for (std::size_t k = 0; k < freqs[g].size(); ++k) {
      const double e = eigen_value(group, k);
      const double t = t1_value(group, k);
      m1 += e * freqs[g][k];
      m2 += e * e * freqs[g][k];
      o1 += t * freqs[g][k];
      o2 += t * t * freqs[g][k];
    }
    const double n = static_cast<double>(shots_for(g));
    var_t2 += group.weight * group.weight * std::max(0.0, m2 - m1 * m1) / n;
    var_overlap += std::max(0.0, o2 - o1 * o1) / n;
    overlap += o1;
  }
  double var_t1 = var_overlap;
  if (options_.two_copy_form == TwoCopyForm::sqrt) {
    // delta method for sqrt(overlap)
    var_t1 = overlap > 0.0 ? var_overlap / (4.0 * overlap) : 0.0;
  }

  const int resamples = options_.bootstrap_resamples;
  std::vector<DerivedValues> boot(static_cast<std::size_t>(resamples));
  const RandomSource boot_rng = rng.split(1);
  parallel_for(boot.size(), [&](std::size_t b) {
    RandomSource local = boot_rng.split(b);
    std::vector<std::vector<double>> f(groups_.size());
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      f[g] = frequencies(
          sample_multinomial(freqs[g], shots_for(g), local.engine()));
    }
    boot[b] = derive(f);
  });

  auto make_report = [&](Quantity q, double point, double analytic_se,
                         double DerivedValues::*member,
                         double DerivedValues::*clamp_member,
                         const char* clamp_name) {
    EstimateReport r;
    r.quantity = q;
    r.mean = point;
    r.shots_per_group = options_.shots_per_group;
    r.scheme = options_.scheme;
    r.bootstrap_resamples = resamples;
    r.seed = rng.seed();
    r.stream = rng.stream();
    r.rng_algorithm = std::string(RandomSource::kAlgorithm);
    std::vector<double> values;
    values.reserve(boot.size());
    for (const DerivedValues& d : boot) {
      values.push_back(d.*member);
      if (clamp_member && d.*clamp_member > 0.0) ++r.bootstrap_clamped;
    }
    r.std_error = analytic_se >= 0.0 ? analytic_se : sample_sd(values);
    r.ci_low = values.empty() ? point : percentile(values, 0.025);
    r.ci_high = values.empty() ? point : percentile(values, 0.975);
    r.ci_low = std::min(r.ci_low, point);
    r.ci_high = std::max(r.ci_high, point);
    if (clamp_member && result.point.*clamp_member > 0.0) {
      r.clamps.push_back({clamp_name, result.point.*clamp_member});
    }
    return r;
  };

  result.t1 = make_report(Quantity::t1, result.point.t1, std::sqrt(var_t1),
                          &DerivedValues::t1, nullptr, "");
  result.t2 = make_report(Quantity::t2, result.point.t2, std::sqrt(var_t2),
                          &DerivedValues::t2, nullptr, "");
  result.tau = make_report(Quantity::tau, result.point.tau, -1.0,
                           &DerivedValues::tau,
                           &DerivedValues::tau_clamped_by, "tau radicand");
  result.concurrence = make_report(
      Quantity::concurrence, result.point.concurrence, -1.0,
      &DerivedValues::concurrence, &DerivedValues::concurrence_clamped_by,
      "concurrence radicand");
  // The tangle inherits tau's clamp.
  result.three_tangle = make_report(
      Quantity::three_tangle, result.point.three_tangle, -1.0,
      &DerivedValues::three_tangle, &DerivedValues::tau_clamped_by,
      "tau radicand");
  // A concurrence estimate also depends on tau's clamp.
  if (result.point.tau_clamped_by > 0.0) {
    result.concurrence.clamps.insert(
        result.concurrence.clamps.begin(),
        {"tau radicand", result.point.tau_clamped_by});
  }
  return result;
}

namespace {

SimulationResult run(const DensityMatrix& rho, Scheme scheme,
                     std::uint64_t shots_per_group, const RandomSource& rng) {
  if (shots_per_group < 100) {
    throw Error("estimation needs at least 100 shots per group");
  }
  SimulationOptions options;
  options.scheme = scheme;
  options.shots_per_group = shots_per_group;
  return MeasurementSimulator(std::move(options)).estimate(rho, rng);
}

}  // namespace

MomentEstimates estimate_moments(const DensityMatrix& rho, Scheme scheme,
                                 std::uint64_t shots_per_group,
                                 const RandomSource& rng) {
  SimulationResult r = run(rho, scheme, shots_per_group, rng);
  return {std::move(r.t1), std::move(r.t2)};
}

EstimateReport estimate_concurrence(const DensityMatrix& rho, Scheme scheme,
                                    std::uint64_t shots_per_group,
                                    const RandomSource& rng) {
  return run(rho, scheme, shots_per_group, rng).concurrence;
}

EstimateReport estimate_three_tangle(const DensityMatrix& rho_ab,
                                     Scheme scheme,
                                     std::uint64_t shots_per_group,
                                     const RandomSource& rng) {
  return run(rho_ab, scheme, shots_per_group, rng).three_tangle;
}

}  // namespace qconc
