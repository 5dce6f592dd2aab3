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


#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "helpers.hpp"
#include "qconc/entanglement.hpp"
#include "qconc/measurement.hpp"
#include "qconc/parallel.hpp"

using namespace qconc;

namespace {

DensityMatrix singlet_rho() {
  return DensityMatrix::from_pure(singlet_state());
}

DensityMatrix reduced(CanonicalState s) {
  return reduce_to_pair(canonical_state(s));
}

bool within(const EstimateReport& r, double truth, double sigmas) {
  return std::abs(r.mean - truth) <= std::max(sigmas * r.std_error, 1e-12);
}

SimulationOptions options(Scheme scheme, std::uint64_t shots,
                          int resamples = 1000) {
  SimulationOptions o;
  o.scheme = scheme;
  o.shots_per_group = shots;
  o.bootstrap_resamples = resamples;
  return o;
}

}  // namespace

TEST_SUITE("measurement") {

TEST_CASE("singlet on the two-copy projector splits a quarter to the rest") {
  const ObservableGroup b = enumerate_groups(Scheme::global).front();
  const DenseOperator rho2 = copies_of(singlet_rho(), 2);
  const std::vector<double> p = outcome_probabilities(rho2, b);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(p[1] == doctest::Approx(0.75).epsilon(1e-13));
  const ShotRecord r = measure_group(rho2, b, 100000, RandomSource(1));
  CHECK(r.counts.size() == 2);
  CHECK(r.counts[0] + r.counts[1] == 100000);
  CHECK(std::abs(static_cast<double>(r.counts[0]) - 25000.0) < 5 * 137.0);
}

TEST_CASE("product state never fires the two-copy projector") {
  const ObservableGroup b = enumerate_groups(Scheme::global).front();
  const DenseOperator rho2 = copies_of(
      DensityMatrix::from_pure(canonical_state(CanonicalState::product00)), 2);
  const ShotRecord r = measure_group(rho2, b, 5000, RandomSource(2));
  CHECK(r.counts[0] == 0);
  CHECK(r.counts[1] == 5000);
}

TEST_CASE("shot records are deterministic in the random source") {
  const ObservableGroup g = enumerate_groups(Scheme::local6)[2];
  RandomSource pick(3);
  const DenseOperator rho4 = copies_of(random_rank2_state(pick).rho, 4);
  const ShotRecord a = measure_group(rho4, g, 10000, RandomSource(9, 4));
  const ShotRecord b = measure_group(rho4, g, 10000, RandomSource(9, 4));
  const ShotRecord c = measure_group(rho4, g, 10000, RandomSource(9, 5));
  CHECK(a.counts == b.counts);
  CHECK(a.counts != c.counts);
  CHECK(a.seed == 9);
  CHECK(a.stream == 4);
}

TEST_CASE("measure_group rejects zero shots and wrong sizes") {
  const ObservableGroup b = enumerate_groups(Scheme::global).front();
  const DenseOperator rho2 = copies_of(singlet_rho(), 2);
  CHECK_THROWS_AS(measure_group(rho2, b, 0, RandomSource(1)), Error);
  CHECK_THROWS_AS(measure_group(singlet_rho(), b, 10, RandomSource(1)), Error);
}

TEST_CASE("infinite-shot substitution reproduces exact values") {
  RandomSource rng(10);
  for (Scheme scheme : {Scheme::local6, Scheme::global}) {
    const MeasurementSimulator sim(options(scheme, 1000, 0));
    std::vector<DensityMatrix> states{singlet_rho(),
                                      reduced(CanonicalState::ghz),
                                      reduced(CanonicalState::w)};
    for (int i = 0; i < 10; ++i) states.push_back(random_rank2_state(rng).rho);
    for (const DensityMatrix& rho : states) {
      const MomentPair m = trace_moments(rho);
      const DerivedValues d = sim.infinite_shot(rho);
      CHECK(std::abs(d.t1 - m.t1) < 1e-12);
      CHECK(std::abs(d.t2 - m.t2) < 1e-12);
      CHECK(std::abs(d.three_tangle - three_tangle_from_reduced(rho)) < 1e-6);
    }
  }
}

TEST_CASE("infinite-shot tangle away from the clamp") {
  RandomSource rng(11);
  const MeasurementSimulator sim(options(Scheme::local6, 1000, 0));
  for (int i = 0; i < 10; ++i) {
    const DensityMatrix rho = random_rank2_state(rng).rho;
    CHECK(std::abs(sim.infinite_shot(rho).three_tangle -
                   three_tangle_from_reduced(rho)) < 1e-12);
  }
}

TEST_CASE("moment estimates on the singlet") {
  for (Scheme scheme : {Scheme::local6, Scheme::global}) {
    const MomentEstimates e =
        estimate_moments(singlet_rho(), scheme, 1000000, RandomSource(7));
    CHECK(within(e.t1, 1.0, 5.0));
    CHECK(within(e.t2, 1.0, 5.0));
    CHECK(e.t1.shots_per_group == 1000000);
    CHECK(e.t1.bootstrap_resamples == 1000);
    CHECK(e.t1.rng_algorithm == RandomSource::kAlgorithm);
  }
}

TEST_CASE("moment estimates on the GHZ reduction") {
  for (Scheme scheme : {Scheme::local6, Scheme::global}) {
    const MomentEstimates e = estimate_moments(reduced(CanonicalState::ghz),
                                               scheme, 1000000, RandomSource(8));
    CHECK(within(e.t1, 0.5, 5.0));
    CHECK(within(e.t2, 0.125, 5.0));
    CHECK(e.t1.std_error > 0.0);
    CHECK(e.t2.std_error > 0.0);
  }
}

TEST_CASE("concurrence estimates") {
  const EstimateReport singlet = estimate_concurrence(
      singlet_rho(), Scheme::local6, 1000000, RandomSource(7));
  CHECK(within(singlet, 1.0, 5.0));
  CHECK(singlet.ci_low <= singlet.mean);
  CHECK(singlet.mean <= singlet.ci_high);

  const EstimateReport ghz = estimate_concurrence(
      reduced(CanonicalState::ghz), Scheme::local6, 1000000, RandomSource(7));
  CHECK(ghz.mean < 0.05);
  CHECK(ghz.mean >= 0.0);
  CHECK(ghz.bootstrap_clamped > 0);
  CHECK_FALSE(ghz.clamps.empty());
}

TEST_CASE("three-tangle estimates") {
  const EstimateReport ghz = estimate_three_tangle(
      reduced(CanonicalState::ghz), Scheme::local6, 1000000, RandomSource(12));
  CHECK(within(ghz, 1.0, 5.0));
  const EstimateReport w = estimate_three_tangle(
      reduced(CanonicalState::w), Scheme::local6, 1000000, RandomSource(12));
  CHECK(w.mean >= 0.0);
  CHECK(w.mean <= 5.0 * w.std_error + 1e-12);
}

TEST_CASE("estimators need at least 100 shots") {
  CHECK_THROWS_AS(
      estimate_concurrence(singlet_rho(), Scheme::local6, 99, RandomSource(1)),
      Error);
}

TEST_CASE("estimates are bit-identical for a fixed seed and stream") {
  RandomSource pick(13);
  const DensityMatrix rho = random_rank2_state(pick).rho;
  const MeasurementSimulator sim(options(Scheme::local6, 20000));
  const SimulationResult a = sim.estimate(rho, RandomSource(5, 2));
  const SimulationResult b = sim.estimate(rho, RandomSource(5, 2));
  for (std::size_t g = 0; g < a.records.size(); ++g) {
    CHECK(a.records[g].counts == b.records[g].counts);
  }
  CHECK(a.concurrence.mean == b.concurrence.mean);
  CHECK(a.concurrence.ci_low == b.concurrence.ci_low);
  CHECK(a.concurrence.ci_high == b.concurrence.ci_high);
  CHECK(a.concurrence.std_error == b.concurrence.std_error);
}

TEST_CASE("bootstrap does not depend on the thread count") {
  RandomSource pick(14);
  const DensityMatrix rho = random_rank2_state(pick).rho;
  const MeasurementSimulator sim(options(Scheme::global, 20000));
  const char* old = std::getenv("QCONC_THREADS");
  const std::string saved = old ? old : "";
  setenv("QCONC_THREADS", "1", 1);
  const SimulationResult one = sim.estimate(rho, RandomSource(6));
  setenv("QCONC_THREADS", "4", 1);
  CHECK(worker_count() == 4);
  const SimulationResult four = sim.estimate(rho, RandomSource(6));
  if (old) {
    setenv("QCONC_THREADS", saved.c_str(), 1);
  } else {
    unsetenv("QCONC_THREADS");
  }
  CHECK(one.tau.ci_low == four.tau.ci_low);
  CHECK(one.tau.ci_high == four.tau.ci_high);
  CHECK(one.tau.std_error == four.tau.std_error);
}

TEST_CASE("groups sample from independent streams") {
  const MeasurementSimulator sim(options(Scheme::local6, 1000, 0));
  const std::vector<ShotRecord> r = sim.sample(singlet_rho(), RandomSource(3));
  REQUIRE(r.size() == 6);
  for (std::size_t g = 1; g < r.size(); ++g) {
    CHECK(r[g].stream != r[0].stream);
  }
  const RandomSource expected = RandomSource(3).split(0).split(2);
  CHECK(r[2].stream == expected.stream());
}

TEST_CASE("custom shot allocation") {
  SimulationOptions o = options(Scheme::global, 1000, 0);
  o.shot_allocation = {500, 2000};
  const MeasurementSimulator sim(o);
  const std::vector<ShotRecord> r = sim.sample(singlet_rho(), RandomSource(1));
  CHECK(r[0].shots == 500);
  CHECK(r[1].shots == 2000);
  o.shot_allocation = {500};
  CHECK_THROWS_AS(MeasurementSimulator{o}, Error);
}

TEST_CASE("t2 estimator is unbiased") {
  RandomSource pick(15);
  const DensityMatrix rho = random_rank2_state(pick).rho;
  const double t2 = trace_moments(rho).t2;
  for (Scheme scheme : {Scheme::local6, Scheme::global}) {
    const MeasurementSimulator sim(options(scheme, 10000, 0));
    const int runs = 200;
    std::vector<double> est(runs);
    for (int i = 0; i < runs; ++i) {
      const auto records = sim.sample(rho, RandomSource(100, i));
      std::vector<std::vector<double>> freqs;
      for (const ShotRecord& r : records) {
        std::vector<double> f;
        for (auto c : r.counts) f.push_back(static_cast<double>(c) / r.shots);
        freqs.push_back(f);
      }
      est[i] = sim.derive(freqs).t2;
    }
    const double mean = std::accumulate(est.begin(), est.end(), 0.0) / runs;
    double ss = 0.0;
    for (double x : est) ss += (x - mean) * (x - mean);
    const double sem = std::sqrt(ss / (runs - 1)) / std::sqrt(double(runs));
    CHECK(std::abs(mean - t2) < 4.0 * sem);
  }
}

TEST_CASE("global and local6 agree on t2") {
  std::vector<DensityMatrix> states{singlet_rho()};
  RandomSource pick(16);
  for (int i = 0; i < 10; ++i) states.push_back(random_rank2_state(pick).rho);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const MomentEstimates g =
        estimate_moments(states[i], Scheme::global, 100000, RandomSource(20, i));
    const MomentEstimates l =
        estimate_moments(states[i], Scheme::local6, 100000, RandomSource(21, i));
    const double joint = std::hypot(g.t2.std_error, l.t2.std_error);
    CHECK(std::abs(g.t2.mean - l.t2.mean) <= std::max(5.0 * joint, 1e-12));
  }
}

}  // TEST_SUITE
