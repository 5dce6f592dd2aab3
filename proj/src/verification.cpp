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

#include "qconc/verification.hpp"

#include <algorithm>
#include <cmath>

#include "qconc/entanglement.hpp"
#include "qconc/measurement.hpp"
#include "qconc/parallel.hpp"

namespace qconc {

namespace {

constexpr int kReconstructionStates = 50;

// Stream ids, one per random check.
enum Stream : std::uint64_t {
  kTwoCopyStream = 1,
  kFourCopyStream,
  kDecompositionStream,
  kReductionStream,
  kMarginalStream,
  kLocalReconstructionStream,
  kGlobalReconstructionStream,
};

IdentityCheck make(std::string identity, double residual, int trials,
                   double tol) {
  IdentityCheck c;
  c.identity = std::move(identity);
  c.max_residual = residual;
  c.trials = trials;
  c.tolerance = tol;
  c.passed = residual < tol;
  return c;
}

IdentityCheck rank_check(std::string identity, const DenseOperator& op) {
  const RealVector ev = hermitian_eig(op).values.cwiseAbs();
  std::vector<double> mags(ev.data(), ev.data() + ev.size());
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const int rank = numerical_rank(op, kRankThreshold);
  IdentityCheck c = make(std::move(identity), mags.size() > 2 ? mags[2] : 0.0,
                         0, kRankThreshold);
  c.passed = rank == 2;
  c.note = "rank " + std::to_string(rank);
  return c;
}

// Max over states of |f(rho)| for `n` random rank-2 states on one stream.
template <typename F>
double max_over_states(int n, std::uint64_t seed, std::uint64_t stream, F f) {
  const RandomSource base(seed, stream);
  std::vector<double> out(static_cast<std::size_t>(n));
  parallel_for(out.size(), [&](std::size_t i) {
    RandomSource local = base.split(i);
    out[i] = f(random_rank2_state(local).rho);
  });
  return out.empty() ? 0.0 : *std::max_element(out.begin(), out.end());
}

double reconstruction_residual(const MeasurementSimulator& sim,
                               std::uint64_t seed, std::uint64_t stream) {
  return max_over_states(kReconstructionStates, seed, stream,
                         [&sim](const DensityMatrix& rho) {
                           const MomentPair m = trace_moments(rho);
                           const DerivedValues d = sim.infinite_shot(rho);
                           return std::max(std::abs(d.t1 - m.t1),
                                           std::abs(d.t2 - m.t2));
                         });
}

double hermiticity_frobenius(const DenseOperator& op) {
  return (op.matrix() - op.matrix().adjoint()).norm();
}

double projector_defect(const ObservableGroup& g) {
  double worst = 0.0;
  for (std::size_t i = 0; i < g.projectors.size(); ++i) {
    const Matrix& pi = g.projectors[i].matrix();
    worst = std::max(worst, (pi * pi - pi).cwiseAbs().maxCoeff());
    for (std::size_t j = i + 1; j < g.projectors.size(); ++j) {
      worst = std::max(
          worst, (pi * g.projectors[j].matrix()).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace

std::string_view IdentityCheck::status() const {
  if (!passed) return "fail";
  return scalar_corrections.empty() ? "pass" : "scalar_corrected";
}

bool VerificationReport::passed() const { return first_failure() == nullptr; }

const IdentityCheck* VerificationReport::first_failure() const {
  for (const IdentityCheck& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

VerificationReport run_verification(int trials, std::uint64_t seed,
                                    double tol) {
  if (trials < 50) throw Error("verification needs at least 50 trials");
  VerificationReport report;
  auto& checks = report.checks;

  // Two copies.
  {
    RandomSource rng(seed, kTwoCopyStream);
    report.two_copy = resolve_two_copy_form(std::max(trials, 100), rng, tol);
    const TwoCopyReport& r = report.two_copy;
    const double residual =
        r.verdict == TwoCopyForm::sqrt
            ? r.max_residual_sqrt
            : (r.verdict == TwoCopyForm::linear
                   ? r.max_residual_linear
                   : std::min(r.max_residual_linear, r.max_residual_sqrt));
    IdentityCheck c = make("two_copy_form", residual, r.trials, tol);
    c.passed = (r.verdict == TwoCopyForm::linear ||
                r.verdict == TwoCopyForm::sqrt) &&
               r.mixed_discriminates;
    c.note = "verdict " + std::string(to_string(r.verdict)) +
             "; linear residual " + std::to_string(r.max_residual_linear) +
             ", sqrt residual " + std::to_string(r.max_residual_sqrt) +
             "; maximally mixed t1 " + std::to_string(r.mixed_t1) +
             " vs overlap " + std::to_string(r.mixed_overlap);
    checks.push_back(std::move(c));
  }

  // Four copies.
  {
    RandomSource rng(seed, kFourCopyStream);
    report.four_copy = verify_four_copy(trials, rng, tol);
    const FourCopyReport& r = report.four_copy;
    const double residual =
        r.chosen == ShiftDirection::backward
            ? r.max_residual_backward
            : (r.chosen ? r.max_residual_forward
                        : std::min(r.max_residual_forward,
                                   r.max_residual_backward));
    IdentityCheck c = make("four_copy_identity", residual, r.trials + 2, tol);
    c.passed = r.chosen.has_value();
    if (r.chosen) c.chosen_direction = std::string(to_string(*r.chosen));
    c.note = "forward residual " + std::to_string(r.max_residual_forward) +
             ", backward residual " + std::to_string(r.max_residual_backward);
    checks.push_back(std::move(c));
    checks.push_back(make("four_copy_symmetrization_redundant",
                          r.symmetrization_gap, r.trials + 2, tol));
  }

  {
    const DenseOperator s = build_cyclic_swap(ShiftDirection::forward);
    const Matrix& m = s.matrix();
    const Matrix id = Matrix::Identity(m.rows(), m.cols());
    double defect = (m * m * m * m - id).cwiseAbs().maxCoeff();
    defect = std::max(defect, (m * m.adjoint() - id).cwiseAbs().maxCoeff());
    defect = std::max(
        defect,
        (build_cyclic_swap(ShiftDirection::backward).matrix() - m.adjoint())
            .cwiseAbs()
            .maxCoeff());
    const Eigen::MatrixXd re = m.real();
    defect = std::max(defect, (re.rowwise().sum().array() - 1.0).abs().maxCoeff());
    defect = std::max(defect, (re.colwise().sum().array() - 1.0).abs().maxCoeff());
    IdentityCheck c = make("cyclic_swap_permutation", defect, 0, tol);
    c.passed = defect == 0.0;
    checks.push_back(std::move(c));
  }

  // Local decomposition of the four-copy observable.
  {
    RandomSource rng(seed, kDecompositionStream);
    report.decomposition = verify_mn_decomposition(tol, trials, rng);
    const DecompositionReport& r = report.decomposition;
    IdentityCheck op = make("mn_decomposition_operator",
                            r.exact ? r.nominal_residual : r.fitted_residual,
                            0, tol);
    if (!r.exact) {
      op.scalar_corrections = {
          {"pairing_12_34", r.pairing_multipliers[0]},
          {"pairing_13_24", r.pairing_multipliers[1]},
          {"pairing_14_23", r.pairing_multipliers[2]},
          {"n_scale", r.n_multiplier}};
    }
    op.note = "nominal residual " + std::to_string(r.nominal_residual) +
              "; best two-scalar fit (" + std::to_string(r.two_scalar_fit[0]) +
              ", " + std::to_string(r.two_scalar_fit[1]) + ") residual " +
              std::to_string(r.two_scalar_residual) +
              "; pairing block rank-1 defect " +
              std::to_string(r.factorization_residual);
    checks.push_back(std::move(op));

    IdentityCheck ex = make("mn_decomposition_expectation",
                            r.expectation_residual_fitted, r.trials, tol);
    ex.note = "nominal constants give " +
              std::to_string(r.expectation_residual_nominal);
    checks.push_back(std::move(ex));
    checks.push_back(make("mn_singlet_expectation",
                          std::abs(r.singlet_expectation_fitted - 1.0), 1,
                          tol));
  }

  const MNCoefficients nominal = MNCoefficients::nominal();
  const MNCoefficients& fitted = fitted_mn_coefficients();
  checks.push_back(rank_check("rank_M_nominal", build_M(nominal)));
  checks.push_back(rank_check("rank_M_fitted", build_M(fitted)));
  checks.push_back(rank_check("rank_N_nominal", build_N(nominal)));
  checks.push_back(rank_check("rank_N_fitted", build_N(fitted)));
  checks.push_back(make("singlet_pairing_relation",
                        singlet_pairing_relation_residual(), 0, tol));
  checks.push_back(make(
      "dicke_conjugate_orthogonal",
      std::abs(dicke_phase_state_conjugate().amplitudes().dot(
          dicke_phase_state().amplitudes())),
      0, tol));
  {
    const std::size_t count =
        2 * spectral_projectors(build_M(fitted)).projectors.size() +
        2 * spectral_projectors(build_N(fitted)).projectors.size();
    IdentityCheck c = make("local_product_projector_count",
                           std::abs(static_cast<double>(count) - 8.0), 0, 0.5);
    const auto a_rank = spectral_projectors(build_A(ShiftDirection::forward))
                            .projectors.size();
    c.note = std::to_string(count) +
             " product projectors from M x M and N x N; A itself has " +
             std::to_string(a_rank) + " nonzero eigenspaces";
    checks.push_back(std::move(c));
  }

  // Two-group reduction of M x M.
  {
    const DenseOperator mm_nominal =
        to_copy_major(kron(build_M(nominal), build_M(nominal)), 4);
    const DenseOperator red_nominal =
        to_copy_major(build_MM_reduced(nominal), 4);
    const DenseOperator mm_fitted =
        to_copy_major(kron(build_M(fitted), build_M(fitted)), 4);
    const DenseOperator red_fitted = to_copy_major(build_MM_reduced(fitted), 4);
    const double res_nominal = max_over_states(
        trials, seed, kReductionStream, [&](const DensityMatrix& rho) {
          const DenseOperator r4 = copies_of(rho, 4);
          return std::abs(expectation(r4, mm_nominal) -
                          expectation(r4, red_nominal));
        });
    const double res_fitted = max_over_states(
        trials, seed, kReductionStream, [&](const DensityMatrix& rho) {
          const DenseOperator r4 = copies_of(rho, 4);
          return std::abs(expectation(r4, mm_fitted) -
                          expectation(r4, red_fitted));
        });
    IdentityCheck a =
        make("mm_reduction_expectation_nominal", res_nominal, trials, tol);
    a.note = "operator-level distance " +
             std::to_string((mm_nominal.matrix() - red_nominal.matrix()).norm());
    checks.push_back(std::move(a));
    checks.push_back(
        make("mm_reduction_expectation_fitted", res_fitted, trials, tol));
  }

  const MeasurementSimulator local(SimulationOptions{
      Scheme::local6, 100000, {}, 0, TwoCopyForm::linear, fitted});
  const MeasurementSimulator global(SimulationOptions{
      Scheme::global, 100000, {}, 0, TwoCopyForm::linear, fitted});

  {
    const ObservableGroup& g1 = local.groups().front();
    const DenseOperator b = build_B();
    const double residual = max_over_states(
        trials, seed, kMarginalStream, [&](const DensityMatrix& rho) {
          const DenseOperator r4 = copies_of(rho, 4);
          const auto p = outcome_probabilities(r4, g1);
          double marginal = 0.0;
          for (std::size_t k = 0; k < g1.t1_values.size(); ++k) {
            marginal += g1.t1_values[k] * p[k];
          }
          return std::abs(marginal - expectation(copies_of(rho, 2), b));
        });
    checks.push_back(make("group1_marginal_matches_B", residual, trials, tol));
  }

  {
    IdentityCheck c = make("local6_group_count",
                           std::abs(static_cast<double>(local.groups().size()) -
                                    6.0),
                           0, 0.5);
    checks.push_back(std::move(c));
    checks.push_back(make(
        "local6_reconstruction",
        reconstruction_residual(local, seed, kLocalReconstructionStream),
        kReconstructionStates, tol));
    checks.push_back(make(
        "global_reconstruction",
        reconstruction_residual(global, seed, kGlobalReconstructionStream),
        kReconstructionStates, tol));
  }

  {
    double worst = 0.0;
    for (const ObservableGroup& g : local.groups()) {
      const RealVector s =
          operator_schmidt_coefficients(to_party_major(g.observable, 4), 16);
      worst = std::max(worst, s.size() > 1 ? s[1] / s[0] : 0.0);
      for (const DenseOperator& proj : g.projectors) {
        const RealVector sp =
            operator_schmidt_coefficients(to_party_major(proj, 4), 16);
        worst = std::max(worst, sp.size() > 1 ? sp[1] / sp[0] : 0.0);
      }
    }
    IdentityCheck c = make("local6_factorization", worst, 0, tol);
    c.note = "largest relative second operator-Schmidt coefficient across A|B";
    checks.push_back(std::move(c));
  }

  {
    double worst = 0.0;
    for (const ObservableGroup& g : local.groups()) {
      worst = std::max(worst, projector_defect(g));
    }
    for (const ObservableGroup& g : global.groups()) {
      worst = std::max(worst, projector_defect(g));
    }
    checks.push_back(make("group_projectors_orthogonal", worst, 0, tol));
  }

  {
    double worst = 0.0;
    for (const DenseOperator& op :
         {build_B(), build_A(ShiftDirection::forward),
          build_A(ShiftDirection::backward), build_M(nominal), build_M(fitted),
          build_N(nominal), build_N(fitted), build_MM_reduced(nominal),
          build_MM_reduced(fitted)}) {
      worst = std::max(worst, hermiticity_frobenius(op));
    }
    for (const ObservableGroup& g : local.groups()) {
      worst = std::max(worst, hermiticity_frobenius(g.observable));
    }
    checks.push_back(make("observables_hermitian", worst, 0,
                          std::min(tol, 1e-12)));
  }

  return report;
}

}  // namespace qconc
