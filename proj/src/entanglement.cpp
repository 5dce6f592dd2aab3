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

#include "qconc/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace qconc {

namespace {

void require_two_qubits(const DensityMatrix& rho, const char* who) {
  if (rho.dims() != Dims{2, 2}) {
    throw Error(std::string(who) + ": expected a two-qubit density matrix");
  }
}

// Traces of products are real for these Hermitian pairs; the imaginary part
// is roundoff.
double real_trace(Complex z, const char* what) {
  if (std::abs(z.imag()) > 1e-12) {
    throw Error(std::string(what) + ": trace has imaginary part " +
                std::to_string(z.imag()));
  }
  return z.real();
}

}  // namespace

ClampedRoot clamped_sqrt(double x, std::optional<double> tolerance) {
  if (x >= 0.0) return {std::sqrt(x), 0.0};
  if (tolerance && x < -*tolerance) {
    throw ValidationError("radicand", -x, "square root of a negative value");
  }
  return {0.0, -x};
}

RealVector spin_flip_singular_values(const DensityMatrix& rho) {
  require_two_qubits(rho, "wootters_concurrence");
  // The l_i are the singular values of sqrt(rho) sqrt(rho~), i.e. the square
  // roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho). Taking singular
  // values directly keeps the zero ones at roundoff level instead of the
  // square root of it.
  const Spectrum s = hermitian_eig(rho.op());
  RealVector roots = s.values;
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    roots[i] = roots[i] > kSupportTol ? std::sqrt(roots[i]) : 0.0;
  }
  const Matrix root = s.vectors * roots.asDiagonal() * s.vectors.adjoint();
  const Matrix yy = kron(pauli_y(), pauli_y()).matrix();
  const Matrix flipped_root = yy * root.conjugate() * yy;
  const Eigen::JacobiSVD<Matrix> svd(root * flipped_root);
  return svd.singularValues();
}

double wootters_concurrence(const DensityMatrix& rho) {
  const RealVector l = spin_flip_singular_values(rho);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

MomentPair trace_moments(const DensityMatrix& rho) {
  require_two_qubits(rho, "trace_moments");
  const Matrix product = rho.matrix() * spin_flip(rho).matrix();
  return {real_trace(product.trace(), "Tr(rho rho~)"),
          real_trace(trace_of_product(product, product),
                     "Tr[(rho rho~)^2]")};
}

ClampedRoot tau_from_moments(const MomentPair& m) {
  const double gap = m.t1 * m.t1 - m.t2;
  if (gap < -kClampTol) {
    throw ValidationError("rank-2 moments", -gap,
                          "t1^2 - t2 is negative; input is not rank 2");
  }
  const ClampedRoot r = clamped_sqrt(2.0 * gap, std::nullopt);
  return r;
}

ClampedRoot concurrence_from_moments(const MomentPair& m) {
  const ClampedRoot tau = tau_from_moments(m);
  ClampedRoot c = clamped_sqrt(m.t1 - tau.value, kClampTol);
  return c;
}

double three_tangle_hyperdet(const PureState& psi) {
  if (psi.dims() != Dims{2, 2, 2}) {
    throw Error("three_tangle_hyperdet: expected a three-qubit state");
  }
  auto a = [&psi](int i, int j, int k) { return psi[4 * i + 2 * j + k]; };
  const Complex d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) +
                     a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                     a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) +
                     a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
  const Complex d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) +
                     a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                     a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) +
                     a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                     a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) +
                     a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
  const Complex d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) +
                     a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

double three_tangle_from_reduced(const DensityMatrix& rho_ab) {
  return 2.0 * tau_from_moments(trace_moments(rho_ab)).value;
}

}  // namespace qconc
