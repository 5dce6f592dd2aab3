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

#ifndef QCONC_ENTANGLEMENT_HPP
#define QCONC_ENTANGLEMENT_HPP

#include <optional>

#include "qconc/state_factory.hpp"
#include "qconc/tensor_core.hpp"

namespace qconc {

inline constexpr double kClampTol = 1e-10;

/// Eigenvalues of rho below this are roundoff on a lower-rank state and are
/// dropped from sqrt(rho) in the Wootters route.
inline constexpr double kSupportTol = 1e-12;

/// Tr(rho rho~) and Tr[(rho rho~)^2] of a two-qubit state.
struct MomentPair {
  double t1 = 0.0;
  double t2 = 0.0;
};

/// A square root whose radicand may have been raised to zero.
/// `clamped_by` is the magnitude that was discarded (0 when none).
struct ClampedRoot {
  double value = 0.0;
  double clamped_by = 0.0;
};

/// sqrt(max(0, x)). With a tolerance, radicands below -tolerance throw
/// ValidationError("radicand"); without one any negative radicand is clamped.
ClampedRoot clamped_sqrt(double x, std::optional<double> tolerance);

/// General two-qubit concurrence max(0, l1 - l2 - l3 - l4), with l_i the
/// descending square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho).
double wootters_concurrence(const DensityMatrix& rho);

/// The square roots l_i used by wootters_concurrence, descending.
RealVector spin_flip_singular_values(const DensityMatrix& rho);

MomentPair trace_moments(const DensityMatrix& rho);

/// tau = sqrt(2 (t1^2 - t2)). Requires t1^2 - t2 >= -kClampTol.
ClampedRoot tau_from_moments(const MomentPair& m);

/// C = sqrt(max(0, t1 - tau)).
ClampedRoot concurrence_from_moments(const MomentPair& m);

/// 3-tangle of a three-qubit pure state, 4 |d1 - 2 d2 + 4 d3|, from the
/// Cayley hyperdeterminant of the amplitude tensor.
double three_tangle_hyperdet(const PureState& psi);

/// 3-tangle of any purification of a rank-2 two-qubit state, computed as
/// twice tau_from_moments.
double three_tangle_from_reduced(const DensityMatrix& rho_ab);

}  // namespace qconc

#endif  // QCONC_ENTANGLEMENT_HPP
