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

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "qconc/entanglement.hpp"
#include "qconc/state_factory.hpp"

using namespace qconc;
using qconc::testing::distance;

namespace {

Matrix local_unitary(int qubits, RandomSource& rng) {
  Matrix u = qconc::testing::random_unitary(2, rng);
  for (int q = 1; q < qubits; ++q) {
    const Matrix v = qconc::testing::random_unitary(2, rng);
    u = kron(DenseOperator({static_cast<int>(u.rows())}, u),
             DenseOperator({2}, v))
            .matrix();
  }
  return u;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("moment concurrence matches the Wootters oracle on 1000 states") {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    RandomSource rng(2024, i);
    const DensityMatrix rho = random_rank2_state(rng).rho;
    const double c = concurrence_from_moments(trace_moments(rho)).value;
    worst = std::max(worst, std::abs(c - wootters_concurrence(rho)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("reduced tangle matches the hyperdeterminant on 500 states") {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    RandomSource rng(77, i);
    const PureState psi = haar_random_pure(3, rng);
    const DensityMatrix rho = reduce_to_pair(psi);
    worst = std::max(worst, std::abs(three_tangle_from_reduced(rho) -
                                     three_tangle_hyperdet(psi)));
    const MomentPair m = trace_moments(rho);
    CHECK(m.t1 - tau_from_moments(m).value >= -1e-10);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("random rank-2 states are valid and have rank at most 2") {
  RandomSource rng(5);
  for (int i = 0; i < 500; ++i) {
    const Rank2Sample s = random_rank2_state(rng);
    CHECK_NOTHROW(DensityMatrix(s.rho.op()));
    const RealVector ev = hermitian_eig(s.rho.op()).values;
    CHECK((ev.array() > 1e-10).count() <= 2);
  }
}

TEST_CASE("spin flip is an involution and keeps the spectrum") {
  RandomSource rng(6);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho = i % 2 ? random_rank2_state(rng).rho
                                    : qconc::testing::random_density({2, 2}, rng);
    const DensityMatrix once(spin_flip(rho));
    CHECK(distance(spin_flip(once), rho.op()) < 1e-12);
    const RealVector a = hermitian_eig(rho.op()).values;
    const RealVector b = hermitian_eig(once.op()).values;
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("entanglement measures are local-unitary invariant") {
  RandomSource rng(7);
  for (int i = 0; i < 100; ++i) {
    const PureState psi = haar_random_pure(3, rng);
    const Matrix u = local_unitary(3, rng);
    const PureState moved({2, 2, 2}, u * psi.amplitudes());
    CHECK(std::abs(three_tangle_hyperdet(moved) - three_tangle_hyperdet(psi)) <
          1e-9);

    const DensityMatrix rho = i % 2 ? reduce_to_pair(psi)
                                    : qconc::testing::random_density({2, 2}, rng);
    const Matrix v = local_unitary(2, rng);
    const Matrix m = v * rho.matrix() * v.adjoint();
    const DensityMatrix rotated(
        DenseOperator({2, 2}, 0.5 * (m + m.adjoint())));
    CHECK(std::abs(wootters_concurrence(rotated) - wootters_concurrence(rho)) <
          1e-9);
  }
}

TEST_CASE("subsystem permutations keep the spectrum") {
  RandomSource rng(8);
  std::vector<int> perm{0, 1, 2, 3};
  for (int i = 0; i < 24; ++i) {
    const DenseOperator op = qconc::testing::random_hermitian({2, 2, 2, 2}, rng);
    const RealVector a = hermitian_eig(op).values;
    const RealVector b = hermitian_eig(permute_subsystems(op, perm)).values;
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
    std::next_permutation(perm.begin(), perm.end());
  }
}

TEST_CASE("partial traces agree with the full trace") {
  RandomSource rng(9);
  for (int i = 0; i < 50; ++i) {
    const DenseOperator op = qconc::testing::random_hermitian({2, 2, 2, 2}, rng);
    for (int k = 0; k < 4; ++k) {
      const int keep[] = {k};
      CHECK(std::abs(partial_trace(op, keep).trace() - op.trace()) < 1e-12);
    }
  }
}

TEST_CASE("Wootters concurrence stays within [0, 1] and is zero on products") {
  RandomSource rng(10);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho = qconc::testing::random_density({2, 2}, rng);
    const double c = wootters_concurrence(rho);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0 + 1e-12);
    const DensityMatrix a = qconc::testing::random_density({2}, rng);
    const DensityMatrix b = qconc::testing::random_density({2}, rng);
    CHECK(wootters_concurrence(DensityMatrix(kron(a.op(), b.op()))) < 1e-9);
  }
}

}  // TEST_SUITE
