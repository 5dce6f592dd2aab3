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

// Observables on several copies of a two-qubit state rho_AB whose expectation
// values are Tr(rho rho~) (two copies) and Tr[(rho rho~)^2] (four copies).
//
// Layouts. Copy c of rho_AB contributes qubits A_c and B_c. Copy-major order
// is A1 B1 A2 B2 ..., which is what kron(rho, rho, ...) produces. Party-major
// order is A1 A2 ... B1 B2 ..., where operators that act on one party's
// copies are written. Every operator returned here is copy-major unless its
// name says otherwise.

#ifndef QCONC_COPY_OBSERVABLES_HPP
#define QCONC_COPY_OBSERVABLES_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qconc/state_factory.hpp"
#include "qconc/tensor_core.hpp"

namespace qconc {

enum class CopyOrder { copy_major, party_major };

struct CopyLayout {
  int n_copies = 2;
  CopyOrder order = CopyOrder::copy_major;
};

/// Subsystem permutation taking a party-major operator to copy-major, in the
/// convention of permute_subsystems.
std::vector<int> party_to_copy_major(int n_copies);
std::vector<int> copy_to_party_major(int n_copies);

DenseOperator to_copy_major(const DenseOperator& party_major, int n_copies);
DenseOperator to_party_major(const DenseOperator& copy_major, int n_copies);
DenseOperator convert_layout(const DenseOperator& op, CopyLayout from,
                             CopyOrder to);

/// rho^{x n}, copy-major.
DenseOperator copies_of(const DensityMatrix& rho, int n_copies);

/// Re Tr(rho_total * obs).
double expectation(const DenseOperator& rho_total, const DenseOperator& obs);

PureState singlet_state();
/// |psi-><psi-| on two qubits.
DenseOperator singlet_projector();

/// The three ways to split four qubits (i1 i2 i3 i4) into two pairs.
enum class Pairing { p12_34, p13_24, p14_23 };
inline constexpr std::array<Pairing, 3> kPairings{
    Pairing::p12_34, Pairing::p13_24, Pairing::p14_23};

/// |psi->_{ab} |psi->_{cd} on four qubits.
PureState pairing_state(Pairing p);
/// Projector onto pairing_state(p).
DenseOperator pairing_projector(Pairing p);
/// Singlet projector on qubits (a, b) of four, identity elsewhere.
DenseOperator pair_singlet_test(int a, int b);

/// || |12|34> - |13|24> + |14|23> ||, zero up to roundoff.
double singlet_pairing_relation_residual();

/// 4 P-^{A1A2} x P-^{B1B2} on two copies (16x16).
DenseOperator build_B();

/// Tr[(rho x rho) B].
double two_copy_overlap(const DensityMatrix& rho);

enum class TwoCopyForm { linear, sqrt, neither, ambiguous };
std::string_view to_string(TwoCopyForm f);

/// Decides whether Tr(rho rho~) equals Tr[(rho x rho) B] or its square root.
struct TwoCopyReport {
  TwoCopyForm verdict = TwoCopyForm::neither;
  double max_residual_linear = 0.0;
  double max_residual_sqrt = 0.0;
  int trials = 0;
  double tolerance = 0.0;
  // Maximally mixed state, where the two candidates differ (0.25 vs 0.5).
  double mixed_t1 = 0.0;
  double mixed_overlap = 0.0;
  bool mixed_discriminates = false;
};

TwoCopyReport resolve_two_copy_form(int trials, RandomSource& rng, double tol);

enum class ShiftDirection { forward, backward };
std::string_view to_string(ShiftDirection d);

/// Cyclic shift of four copy slots (256x256, qubit dims). Forward moves the
/// content of slot k+1 into slot k: |x1 x2 x3 x4> -> |x2 x3 x4 x1>.
DenseOperator build_cyclic_swap(ShiftDirection d);

/// Normalization of the four-copy observable: four singlet overlaps of
/// magnitude 2 each, the four-copy analogue of the 4 in B.
inline constexpr double kFourCopyScale = 16.0;

/// kFourCopyScale * ((P x P) S + S^dagger (P x P)) / 2 with
/// P = P-^{A1A2} x P-^{B1B2} and S = build_cyclic_swap(d).
DenseOperator build_A(ShiftDirection d);

/// kFourCopyScale * (P x P) S without the Hermitian symmetrization.
DenseOperator build_A_unsymmetrized(ShiftDirection d);

struct FourCopyReport {
  std::optional<ShiftDirection> chosen;
  double max_residual_forward = 0.0;
  double max_residual_backward = 0.0;
  // max |Tr[rho^4 A] - Tr[rho^4 A_unsymmetrized]|.
  double symmetrization_gap = 0.0;
  int trials = 0;
  double tolerance = 0.0;
};

/// Checks Tr[rho^{x4} A] = Tr[(rho rho~)^2] for both shift directions on
/// random rank-2 states plus the singlet and the GHZ reduction, and picks the
/// first direction that holds within tol.
FourCopyReport verify_four_copy(int trials, RandomSource& rng, double tol);

/// Coefficients of M = sum_p pairing[p] P_p and N = n_scale (|Psi><Psi| -
/// |Psibar><Psibar|), where P_p runs over p12_34, p13_24, p14_23.
struct MNCoefficients {
  std::array<double, 3> pairing{};
  double n_scale = 0.0;

  /// sqrt(2)/2 (1, -1, -1) and sqrt(3).
  static MNCoefficients nominal();
};

/// Coefficients fitted term by term against build_A (computed once).
const MNCoefficients& fitted_mn_coefficients();

/// Phase-decorated two-excitation Dicke state on four qubits.
PureState dicke_phase_state();
/// Its computational-basis complex conjugate.
PureState dicke_phase_state_conjugate();

/// Per-party observables on four qubits (16x16).
DenseOperator build_M(const MNCoefficients& c = MNCoefficients::nominal());
DenseOperator build_N(const MNCoefficients& c = MNCoefficients::nominal());

/// 1/2 (M x M - N x N), party-major (A1..A4 B1..B4).
DenseOperator mn_combination(const MNCoefficients& c);

struct DecompositionReport {
  double nominal_residual = 0.0;
  // Best real (a, b) in a/2 MxM - b/2 NxN with nominal M, N.
  std::array<double, 2> two_scalar_fit{};
  double two_scalar_residual = 0.0;
  // Term-by-term fit and its multipliers relative to the nominal constants.
  MNCoefficients fitted;
  std::array<double, 3> pairing_multipliers{};
  double n_multiplier = 0.0;
  // Off-rank-1 part of the fitted pairing block (0 when c c^T fits exactly).
  double factorization_residual = 0.0;
  double fitted_residual = 0.0;
  // max over trials of |Tr[rho^4 A] - Tr[rho^4 1/2(MxM - NxN)]|.
  double expectation_residual_nominal = 0.0;
  double expectation_residual_fitted = 0.0;
  double singlet_expectation_fitted = 0.0;
  int trials = 0;
  double tolerance = 0.0;
  bool exact = false;   // nominal constants already match
  bool passed = false;  // exact, or fitted match within tolerance
};

DecompositionReport verify_mn_decomposition(double tol, int trials,
                                            RandomSource& rng);

/// Two-group form of M x M, valid in expectation on copy-symmetric states:
/// (sum_p c_p^2) D + (sum_{p != q} c_p c_q) O with
/// D = P_{12|34} x P_{12|34} and O = P_{12|34} x P_{13|24}. Party-major.
DenseOperator build_MM_reduced(
    const MNCoefficients& c = MNCoefficients::nominal());

enum class Scheme { global, local6 };
std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view name);

/// One jointly measured observable: a complete or partial set of orthogonal
/// projectors on the copies it consumes. Anything the projectors do not cover
/// is a "rest" outcome with value 0.
struct ObservableGroup {
  std::string label;
  int n_copies = 4;
  DenseOperator observable;  // copy-major
  std::vector<double> eigenvalues;
  std::vector<DenseOperator> projectors;  // copy-major
  double weight = 0.0;                    // coefficient in the t2 estimator
  std::vector<double> t1_values;          // per projector; empty if unused
  bool local = false;
};

/// Groups whose weighted expectations reproduce t2 and, through t1_values,
/// t1:
///   t2 = sum_g weight_g sum_k eigenvalue_gk p_gk
///   t1 = sum_g sum_k t1_value_gk p_gk
/// global: B and A measured through their own spectral projectors.
/// local6: two pair-singlet groups plus four Dicke-projector products, each a
/// product of an A-party and a B-party projective measurement.
std::vector<ObservableGroup> enumerate_groups(
    Scheme scheme, const MNCoefficients& c = fitted_mn_coefficients());

/// Projectors for the nonzero eigenvalues of a Hermitian operator, grouping
/// eigenvalues closer than `degeneracy_tol`.
struct SpectralProjectors {
  std::vector<double> values;
  std::vector<DenseOperator> projectors;
};

SpectralProjectors spectral_projectors(const DenseOperator& op,
                                       double zero_tol = 1e-10,
                                       double degeneracy_tol = 1e-8);

/// Singular values of the realignment of `op` across the cut after the first
/// `dim_a` basis states (i.e. its operator-Schmidt coefficients), descending.
RealVector operator_schmidt_coefficients(const DenseOperator& op,
                                         Eigen::Index dim_a);

}  // namespace qconc

#endif  // QCONC_COPY_OBSERVABLES_HPP
