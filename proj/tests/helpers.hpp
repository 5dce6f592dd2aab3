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


#ifndef QCONC_TESTS_HELPERS_HPP
#define QCONC_TESTS_HELPERS_HPP

#include <cmath>

#include "qconc/state_factory.hpp"
#include "qconc/tensor_core.hpp"

namespace qconc::testing {

inline double frobenius(const Matrix& m) { return m.norm(); }

inline double distance(const DenseOperator& a, const DenseOperator& b) {
  return (a.matrix() - b.matrix()).norm();
}

inline Matrix random_complex(Eigen::Index n, RandomSource& rng) {
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = Complex(rng.standard_normal(), rng.standard_normal());
    }
  }
  return m;
}

inline DenseOperator random_hermitian(Dims dims, RandomSource& rng) {
  const auto n = static_cast<Eigen::Index>(total_dimension(dims));
  const Matrix g = random_complex(n, rng);
  return DenseOperator(std::move(dims), 0.5 * (g + g.adjoint()));
}

/// Full-rank density matrix G G^dagger / Tr.
inline DensityMatrix random_density(Dims dims, RandomSource& rng) {
  const auto n = static_cast<Eigen::Index>(total_dimension(dims));
  const Matrix g = random_complex(n, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(DenseOperator(std::move(dims), rho));
}

/// Haar-ish single-qubit unitary from the QR of a Gaussian matrix.
inline Matrix random_unitary(Eigen::Index n, RandomSource& rng) {
  const Matrix g = random_complex(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(n, n);
}

inline PureState basis_state(Dims dims, Eigen::Index index) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(total_dimension(dims)));
  v[index] = 1.0;
  return PureState(std::move(dims), v);
}

}  // namespace qconc::testing

#endif  // QCONC_TESTS_HELPERS_HPP
