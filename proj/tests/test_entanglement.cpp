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

#include "helpers.hpp"
#include "qconc/entanglement.hpp"
#include "qconc/state_factory.hpp"

using namespace qconc;

namespace {

DensityMatrix pure_rho(CanonicalState s) {
  return DensityMatrix::from_pure(canonical_state(s));
}

DensityMatrix reduced(CanonicalState s) {
  return reduce_to_pair(canonical_state(s));
}

// A fixed three-qubit state with generic entanglement. Expected values below
// come from tests/oracle/frozen_values.py.
PureState explicit_state() {
  Vector v(8);
  v << 1.0, Complex(0, 2), 0.0, -1.0, 0.5, 0.0, 3.0, Complex(1, 1);
  return PureState::normalized({2, 2, 2}, v);
}

DensityMatrix werner(double p) {
  const DenseOperator op =
      p * pure_rho(CanonicalState::bell_psiminus).op() +
      ((1.0 - p) / 4.0) * DenseOperator::identity({2, 2});
  return DensityMatrix(op);
}

}  // namespace

TEST_SUITE("entanglement") {

TEST_CASE("Wootters concurrence of basic states") {
  CHECK(wootters_concurrence(pure_rho(CanonicalState::bell_psiminus)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(wootters_concurrence(pure_rho(CanonicalState::product00)) ==
        doctest::Approx(0.0));
}

TEST_CASE("Wootters concurrence of the Werner state") {
  CHECK(wootters_concurrence(werner(0.5)) ==
        doctest::Approx(0.25).epsilon(1e-12));
  for (double p : {0.2, 1.0 / 3.0, 0.6, 0.9}) {
    CHECK(std::abs(wootters_concurrence(werner(p)) -
                   std::max(0.0, (3.0 * p - 1.0) / 2.0)) < 1e-12);
  }
  const RealVector l = spin_flip_singular_values(werner(0.5));
  CHECK(l[0] == doctest::Approx(0.625).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) {
    CHECK(l[i] == doctest::Approx(0.125).epsilon(1e-12));
  }
}

TEST_CASE("trace moments of basic states") {
  const MomentPair singlet =
      trace_moments(pure_rho(CanonicalState::bell_psiminus));
  CHECK(singlet.t1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(singlet.t2 == doctest::Approx(1.0).epsilon(1e-14));

  const MomentPair ghz = trace_moments(reduced(CanonicalState::ghz));
  CHECK(ghz.t1 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ghz.t2 == doctest::Approx(0.125).epsilon(1e-14));

  const MomentPair product = trace_moments(pure_rho(CanonicalState::product00));
  CHECK(product.t1 == 0.0);
  CHECK(product.t2 == 0.0);
}

TEST_CASE("tau and concurrence from moments") {
  CHECK(tau_from_moments({1.0, 1.0}).value == 0.0);
  CHECK(tau_from_moments({0.5, 0.125}).value == doctest::Approx(0.5));
  CHECK(tau_from_moments({0.0, 0.0}).value == 0.0);
  CHECK(concurrence_from_moments({1.0, 1.0}).value == 1.0);
  CHECK(concurrence_from_moments({0.5, 0.125}).value == 0.0);
  CHECK(concurrence_from_moments({0.0, 0.0}).value == 0.0);
}

TEST_CASE("moments that are not rank 2 are rejected") {
  try {
    tau_from_moments({0.25, 0.25});
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.invariant() == "rank-2 moments");
  }
}

TEST_CASE("small negative radicands are clamped and reported") {
  const ClampedRoot r = clamped_sqrt(-1e-12, kClampTol);
  CHECK(r.value == 0.0);
  CHECK(r.clamped_by == doctest::Approx(1e-12));
  CHECK(clamped_sqrt(4.0, kClampTol).value == 2.0);
  CHECK(clamped_sqrt(4.0, kClampTol).clamped_by == 0.0);
  CHECK_THROWS_AS(clamped_sqrt(-1e-6, kClampTol), ValidationError);
  CHECK(clamped_sqrt(-1e-6, std::nullopt).clamped_by == doctest::Approx(1e-6));
}

TEST_CASE("hyperdeterminant tangle of canonical states") {
  CHECK(three_tangle_hyperdet(canonical_state(CanonicalState::ghz)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(three_tangle_hyperdet(canonical_state(CanonicalState::w))) <
        1e-15);
  RandomSource rng(3);
  for (int i = 0; i < 10; ++i) {
    const PureState a = haar_random_pure(1, rng);
    const PureState b = haar_random_pure(1, rng);
    const PureState c = haar_random_pure(1, rng);
    CHECK(std::abs(three_tangle_hyperdet(kron(kron(a, b), c))) < 1e-14);
  }
  CHECK_THROWS_AS(three_tangle_hyperdet(canonical_state(CanonicalState::product00)),
                  Error);
}

TEST_CASE("tangle from reduced states") {
  CHECK(three_tangle_from_reduced(reduced(CanonicalState::ghz)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(three_tangle_from_reduced(reduced(CanonicalState::w))) <
        1e-10);
  CHECK(three_tangle_from_reduced(pure_rho(CanonicalState::product00)) == 0.0);
}

TEST_CASE("W reduction") {
  const DensityMatrix rho = reduced(CanonicalState::w);
  const MomentPair m = trace_moments(rho);
  CHECK(m.t1 == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
  CHECK(m.t2 == doctest::Approx(16.0 / 81.0).epsilon(1e-14));
  CHECK(wootters_concurrence(rho) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(concurrence_from_moments(m).value ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("frozen values for a fixed generic state") {
  const PureState psi = explicit_state();
  const DensityMatrix rho = reduce_to_pair(psi);
  const MomentPair m = trace_moments(rho);
  CHECK(m.t1 == doctest::Approx(0.5729888678848982).epsilon(1e-13));
  CHECK(m.t2 == doctest::Approx(0.3164223634752734).epsilon(1e-13));
  CHECK(tau_from_moments(m).value ==
        doctest::Approx(0.15423280613892715).epsilon(1e-12));
  CHECK(wootters_concurrence(rho) ==
        doctest::Approx(0.6471136389738443).epsilon(1e-12));
  CHECK(concurrence_from_moments(m).value ==
        doctest::Approx(0.6471136389738444).epsilon(1e-12));
  CHECK(three_tangle_hyperdet(psi) ==
        doctest::Approx(0.3084656122778546).epsilon(1e-12));
}

TEST_CASE("Wootters route rejects non-two-qubit input") {
  const DensityMatrix one(0.5 * DenseOperator::identity({2}));
  CHECK_THROWS_AS(wootters_concurrence(one), Error);
  CHECK_THROWS_AS(trace_moments(one), Error);
}

}  // TEST_SUITE
