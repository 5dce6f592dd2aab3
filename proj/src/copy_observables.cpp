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

#include "qconc/copy_observables.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "qconc/entanglement.hpp"
#include "qconc/parallel.hpp"

namespace qconc {

namespace {

const Dims kFourQubits{2, 2, 2, 2};

Dims qubit_dims(int n) { return Dims(static_cast<std::size_t>(n), 2); }

// Qubit pairs (a, b), (c, d) of a pairing, in i1..i4 numbering from 0.
std::array<int, 4> pairing_qubits(Pairing p) {
  switch (p) {
    case Pairing::p12_34: return {0, 1, 2, 3};
    case Pairing::p13_24: return {0, 2, 1, 3};
    case Pairing::p14_23: return {0, 3, 1, 2};
  }
  return {0, 1, 2, 3};
}

// Moves qubits laid out as (order[0], order[1], ...) back to natural order.
std::vector<int> to_natural_order(const std::array<int, 4>& order) {
  std::vector<int> perm(4);
  for (int k = 0; k < 4; ++k) {
    perm[k] = static_cast<int>(std::find(order.begin(), order.end(), k) -
                               order.begin());
  }
  return perm;
}

double frobenius(const Matrix& m) { return m.norm(); }

struct TermFit {
  MNCoefficients coefficients;
  double factorization_residual = 0.0;
};

// Least squares of A_pm on {P_p x P_q} (9 terms) and N0 x N0, where
// N0 = |Psi><Psi| - |Psibar><Psibar|. The pairing block equals c c^T / 2 and
// the N0 x N0 coefficient equals -n^2 / 2.
TermFit fit_terms(const DenseOperator& a_party_major) {
  std::vector<Matrix> terms;
  for (Pairing p : kPairings) {
    for (Pairing q : kPairings) {
      terms.push_back(
          kron(pairing_projector(p), pairing_projector(q)).matrix());
    }
  }
  const MNCoefficients unit{{0.0, 0.0, 0.0}, 1.0};
  const DenseOperator n0 = build_N(unit);
  terms.push_back(kron(n0, n0).matrix());

  const Eigen::Index rows = a_party_major.size() * a_party_major.size();
  Matrix design(rows, static_cast<Eigen::Index>(terms.size()));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    design.col(static_cast<Eigen::Index>(t)) =
        Eigen::Map<const Vector>(terms[t].data(), rows);
  }
  const Vector target =
      Eigen::Map<const Vector>(a_party_major.matrix().data(), rows);
  const Vector g = design.colPivHouseholderQr().solve(target);

  Eigen::Matrix3d cc;
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) cc(p, q) = 2.0 * g[3 * p + q].real();
  }
  TermFit fit;
  const double c0 = std::sqrt(std::max(0.0, cc(0, 0)));
  fit.coefficients.pairing[0] = c0;
  for (int q = 1; q < 3; ++q) {
    fit.coefficients.pairing[q] = c0 > 0.0 ? cc(0, q) / c0 : 0.0;
  }
  const Eigen::Vector3d c(fit.coefficients.pairing[0],
                          fit.coefficients.pairing[1],
                          fit.coefficients.pairing[2]);
  fit.factorization_residual = (cc - c * c.transpose()).norm();
  fit.coefficients.n_scale = std::sqrt(std::max(0.0, -2.0 * g[9].real()));
  return fit;
}

const DenseOperator& cached_A_forward() {
  static const DenseOperator a = build_A(ShiftDirection::forward);
  return a;
}

}  // namespace

std::vector<int> party_to_copy_major(int n_copies) {
  std::vector<int> perm;
  perm.reserve(2 * static_cast<std::size_t>(n_copies));
  for (int c = 0; c < n_copies; ++c) {
    perm.push_back(c);             // A_c
    perm.push_back(n_copies + c);  // B_c
  }
  return perm;
}

std::vector<int> copy_to_party_major(int n_copies) {
  return inverse_permutation(party_to_copy_major(n_copies));
}

DenseOperator to_copy_major(const DenseOperator& party_major, int n_copies) {
  return permute_subsystems(party_major, party_to_copy_major(n_copies));
}

DenseOperator to_party_major(const DenseOperator& copy_major, int n_copies) {
  return permute_subsystems(copy_major, copy_to_party_major(n_copies));
}

DenseOperator convert_layout(const DenseOperator& op, CopyLayout from,
                             CopyOrder to) {
  if (from.order == to) return op;
  return to == CopyOrder::copy_major ? to_copy_major(op, from.n_copies)
                                     : to_party_major(op, from.n_copies);
}

DenseOperator copies_of(const DensityMatrix& rho, int n_copies) {
  if (n_copies < 1) throw Error("copies_of: need at least one copy");
  DenseOperator out = rho.op();
  for (int c = 1; c < n_copies; ++c) out = kron(out, rho.op());
  return out;
}

double expectation(const DenseOperator& rho_total, const DenseOperator& obs) {
  if (rho_total.size() != obs.size()) {
    throw Error("expectation: state and observable sizes differ");
  }
  return trace_of_product(rho_total.matrix(), obs.matrix()).real();
}

PureState singlet_state() {
  return canonical_state(CanonicalState::bell_psiminus);
}

DenseOperator singlet_projector() { return singlet_state().projector(); }

PureState pairing_state(Pairing p) {
  const PureState two = kron(singlet_state(), singlet_state());
  const auto perm = to_natural_order(pairing_qubits(p));
  const DenseOperator pi = permutation_unitary(kFourQubits, perm);
  return PureState::normalized(kFourQubits, pi.matrix() * two.amplitudes());
}

DenseOperator pairing_projector(Pairing p) {
  return pairing_state(p).projector();
}

DenseOperator pair_singlet_test(int a, int b) {
  if (a == b || a < 0 || b < 0 || a > 3 || b > 3) {
    throw Error("pair_singlet_test: need two distinct qubits of four");
  }
  std::array<int, 4> order{a, b, 0, 0};
  int next = 2;
  for (int k = 0; k < 4; ++k) {
    if (k != a && k != b) order[next++] = k;
  }
  const DenseOperator laid_out =
      kron(singlet_projector(), DenseOperator::identity({2, 2}));
  return permute_subsystems(laid_out, to_natural_order(order));
}

double singlet_pairing_relation_residual() {
  const Vector v = pairing_state(Pairing::p12_34).amplitudes() -
                   pairing_state(Pairing::p13_24).amplitudes() +
                   pairing_state(Pairing::p14_23).amplitudes();
  return v.norm();
}

DenseOperator build_B() {
  const DenseOperator party_major =
      4.0 * kron(singlet_projector(), singlet_projector());
  return to_copy_major(party_major, 2);
}

double two_copy_overlap(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) {
    throw Error("two_copy_overlap: expected a two-qubit state");
  }
  return expectation(copies_of(rho, 2), build_B());
}

std::string_view to_string(TwoCopyForm f) {
  switch (f) {
    case TwoCopyForm::linear: return "linear";
    case TwoCopyForm::sqrt: return "sqrt";
    case TwoCopyForm::neither: return "neither";
    case TwoCopyForm::ambiguous: return "ambiguous";
  }
  return "?";
}

TwoCopyReport resolve_two_copy_form(int trials, RandomSource& rng,
                                    double tol) {
  if (trials < 100) {
    throw Error("resolve_two_copy_form: need at least 100 trials");
  }
  TwoCopyReport report;
  report.trials = trials;
  report.tolerance = tol;

  const DenseOperator b = build_B();
  auto residuals = [&b](const DensityMatrix& rho) {
    const double t1 = trace_moments(rho).t1;
    const double overlap = expectation(copies_of(rho, 2), b);
    return std::pair{std::abs(t1 - overlap),
                     std::abs(t1 - std::sqrt(std::max(0.0, overlap)))};
  };

  std::vector<std::pair<double, double>> per_trial(trials);
  parallel_for(per_trial.size(), [&](std::size_t i) {
    RandomSource local = rng.split(i);
    per_trial[i] = residuals(random_rank2_state(local).rho);
  });

  const DensityMatrix mixed(
      DenseOperator({2, 2}, Matrix::Identity(4, 4) / 4.0));
  report.mixed_t1 = trace_moments(mixed).t1;
  report.mixed_overlap = two_copy_overlap(mixed);
  per_trial.push_back(residuals(mixed));
  report.mixed_discriminates =
      std::abs(report.mixed_overlap - std::sqrt(report.mixed_overlap)) > tol;

  for (const auto& [lin, sq] : per_trial) {
    report.max_residual_linear = std::max(report.max_residual_linear, lin);
    report.max_residual_sqrt = std::max(report.max_residual_sqrt, sq);
  }
  const bool lin_ok = report.max_residual_linear < tol;
  const bool sqrt_ok = report.max_residual_sqrt < tol;
  if (lin_ok && sqrt_ok) {
    report.verdict = TwoCopyForm::ambiguous;
  } else if (lin_ok) {
    report.verdict = TwoCopyForm::linear;
  } else if (sqrt_ok) {
    report.verdict = TwoCopyForm::sqrt;
  } else {
    report.verdict = TwoCopyForm::neither;
  }
  return report;
}

std::string_view to_string(ShiftDirection d) {
  return d == ShiftDirection::forward ? "forward" : "backward";
}

DenseOperator build_cyclic_swap(ShiftDirection d) {
  // Slot k holds qubits (2k, 2k+1). New slot k takes old slot k+1 (forward).
  std::vector<int> perm(8);
  for (int slot = 0; slot < 4; ++slot) {
    const int src = d == ShiftDirection::forward ? (slot + 1) % 4
                                                 : (slot + 3) % 4;
    perm[2 * slot] = 2 * src;
    perm[2 * slot + 1] = 2 * src + 1;
  }
  return permutation_unitary(qubit_dims(8), perm);
}

DenseOperator build_A_unsymmetrized(ShiftDirection d) {
  const DenseOperator p = build_B();  // 4 P
  const DenseOperator pp = (1.0 / 16.0) * kron(p, p);
  return kFourCopyScale * (pp * build_cyclic_swap(d));
}

DenseOperator build_A(ShiftDirection d) {
  const DenseOperator x = build_A_unsymmetrized(d);
  return 0.5 * (x + x.adjoint());
}

FourCopyReport verify_four_copy(int trials, RandomSource& rng, double tol) {
  if (trials < 50) throw Error("verify_four_copy: need at least 50 trials");
  FourCopyReport report;
  report.trials = trials;
  report.tolerance = tol;

  const DenseOperator a_fwd = build_A(ShiftDirection::forward);
  const DenseOperator a_bwd = build_A(ShiftDirection::backward);
  const DenseOperator a_raw = build_A_unsymmetrized(ShiftDirection::forward);

  std::vector<DensityMatrix> fixed{
      DensityMatrix::from_pure(singlet_state()),
      reduce_to_pair(canonical_state(CanonicalState::ghz))};

  struct Row {
    double fwd, bwd, gap;
  };
  auto check = [&](const DensityMatrix& rho) {
    const double t2 = trace_moments(rho).t2;
    const DenseOperator r4 = copies_of(rho, 4);
    const double ef = expectation(r4, a_fwd);
    const double eraw =
        trace_of_product(r4.matrix(), a_raw.matrix()).real();
    return Row{std::abs(ef - t2), std::abs(expectation(r4, a_bwd) - t2),
               std::abs(ef - eraw)};
  };

  std::vector<Row> rows(static_cast<std::size_t>(trials));
  parallel_for(rows.size(), [&](std::size_t i) {
    RandomSource local = rng.split(i);
    rows[i] = check(random_rank2_state(local).rho);
  });
  for (const auto& rho : fixed) rows.push_back(check(rho));

  for (const Row& r : rows) {
    report.max_residual_forward = std::max(report.max_residual_forward, r.fwd);
    report.max_residual_backward =
        std::max(report.max_residual_backward, r.bwd);
    report.symmetrization_gap = std::max(report.symmetrization_gap, r.gap);
  }
  if (report.max_residual_forward < tol) {
    report.chosen = ShiftDirection::forward;
  } else if (report.max_residual_backward < tol) {
    report.chosen = ShiftDirection::backward;
  }
  return report;
}

MNCoefficients MNCoefficients::nominal() {
  const double h = std::numbers::sqrt2 / 2.0;
  return {{h, -h, -h}, std::numbers::sqrt3};
}

const MNCoefficients& fitted_mn_coefficients() {
  static const MNCoefficients fitted =
      fit_terms(to_party_major(cached_A_forward(), 4)).coefficients;
  return fitted;
}

PureState dicke_phase_state() {
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  Vector v = Vector::Zero(16);
  v[0b0011] = 1.0;
  v[0b0101] = w;
  v[0b0110] = std::conj(w);
  v[0b1001] = std::conj(w);
  v[0b1010] = w;
  v[0b1100] = 1.0;
  return PureState(kFourQubits, v / std::sqrt(6.0));
}

PureState dicke_phase_state_conjugate() {
  return PureState(kFourQubits, dicke_phase_state().amplitudes().conjugate());
}

DenseOperator build_M(const MNCoefficients& c) {
  DenseOperator m = DenseOperator::zero(kFourQubits);
  for (std::size_t p = 0; p < kPairings.size(); ++p) {
    m += c.pairing[p] * pairing_projector(kPairings[p]);
  }
  return m;
}

DenseOperator build_N(const MNCoefficients& c) {
  return c.n_scale * (dicke_phase_state().projector() -
                      dicke_phase_state_conjugate().projector());
}

DenseOperator mn_combination(const MNCoefficients& c) {
  const DenseOperator m = build_M(c);
  const DenseOperator n = build_N(c);
  return 0.5 * (kron(m, m) - kron(n, n));
}

DecompositionReport verify_mn_decomposition(double tol, int trials,
                                            RandomSource& rng) {
  DecompositionReport report;
  report.trials = trials;
  report.tolerance = tol;

  const DenseOperator& a_copy = cached_A_forward();
  const DenseOperator a_party = to_party_major(a_copy, 4);
  const MNCoefficients nominal = MNCoefficients::nominal();
  const DenseOperator nominal_comb = mn_combination(nominal);
  report.nominal_residual = frobenius(a_party.matrix() - nominal_comb.matrix());

  {
    const DenseOperator m = build_M(nominal);
    const DenseOperator n = build_N(nominal);
    const Eigen::Index rows = a_party.size() * a_party.size();
    Matrix design(rows, 2);
    const Matrix mm = 0.5 * kron(m, m).matrix();
    const Matrix nn = -0.5 * kron(n, n).matrix();
    design.col(0) = Eigen::Map<const Vector>(mm.data(), rows);
    design.col(1) = Eigen::Map<const Vector>(nn.data(), rows);
    const Vector target =
        Eigen::Map<const Vector>(a_party.matrix().data(), rows);
    const Vector ab = design.colPivHouseholderQr().solve(target);
    report.two_scalar_fit = {ab[0].real(), ab[1].real()};
    report.two_scalar_residual = (design * ab - target).norm();
  }

  const TermFit fit = fit_terms(a_party);
  report.fitted = fit.coefficients;
  report.factorization_residual = fit.factorization_residual;
  for (int p = 0; p < 3; ++p) {
    report.pairing_multipliers[p] = fit.coefficients.pairing[p] /
                                    nominal.pairing[p];
  }
  report.n_multiplier = fit.coefficients.n_scale / nominal.n_scale;
  const DenseOperator fitted_comb = mn_combination(fit.coefficients);
  report.fitted_residual = frobenius(a_party.matrix() - fitted_comb.matrix());

  const DenseOperator nominal_copy = to_copy_major(nominal_comb, 4);
  const DenseOperator fitted_copy = to_copy_major(fitted_comb, 4);
  std::vector<std::pair<double, double>> residuals(
      static_cast<std::size_t>(std::max(trials, 0)));
  parallel_for(residuals.size(), [&](std::size_t i) {
    RandomSource local = rng.split(i);
    const DenseOperator r4 = copies_of(random_rank2_state(local).rho, 4);
    const double ea = expectation(r4, a_copy);
    residuals[i] = {std::abs(ea - expectation(r4, nominal_copy)),
                    std::abs(ea - expectation(r4, fitted_copy))};
  });
  for (const auto& [pr, fi] : residuals) {
    report.expectation_residual_nominal =
        std::max(report.expectation_residual_nominal, pr);
    report.expectation_residual_fitted =
        std::max(report.expectation_residual_fitted, fi);
  }
  report.singlet_expectation_fitted = expectation(
      copies_of(DensityMatrix::from_pure(singlet_state()), 4), fitted_copy);

  report.exact = report.nominal_residual < tol;
  report.passed = report.exact ||
                  (report.fitted_residual < tol &&
                   report.expectation_residual_fitted < tol);
  return report;
}

DenseOperator build_MM_reduced(const MNCoefficients& c) {
  double diagonal = 0.0;
  double off_diagonal = 0.0;
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) {
      (p == q ? diagonal : off_diagonal) += c.pairing[p] * c.pairing[q];
    }
  }
  const DenseOperator p12 = pairing_projector(Pairing::p12_34);
  const DenseOperator p13 = pairing_projector(Pairing::p13_24);
  return diagonal * kron(p12, p12) + off_diagonal * kron(p12, p13);
}

std::string_view to_string(Scheme s) {
  return s == Scheme::global ? "global" : "local6";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "global") return Scheme::global;
  if (name == "local6") return Scheme::local6;
  throw Error("unknown scheme '" + std::string(name) + "'");
}

SpectralProjectors spectral_projectors(const DenseOperator& op,
                                       double zero_tol,
                                       double degeneracy_tol) {
  const Spectrum s = hermitian_eig(op);
  SpectralProjectors out;
  Eigen::Index k = 0;
  const Eigen::Index n = s.values.size();
  while (k < n) {
    Eigen::Index end = k + 1;
    while (end < n && std::abs(s.values[end] - s.values[k]) < degeneracy_tol) {
      ++end;
    }
    const double value = s.values.segment(k, end - k).mean();
    if (std::abs(value) > zero_tol) {
      const Matrix v = s.vectors.middleCols(k, end - k);
      out.values.push_back(value);
      out.projectors.emplace_back(op.dims(), v * v.adjoint());
    }
    k = end;
  }
  return out;
}

RealVector operator_schmidt_coefficients(const DenseOperator& op,
                                         Eigen::Index dim_a) {
  const Eigen::Index d = op.size();
  if (dim_a <= 0 || d % dim_a != 0) {
    throw Error("operator_schmidt_coefficients: cut does not divide the space");
  }
  const Eigen::Index dim_b = d / dim_a;
  Matrix realigned(dim_a * dim_a, dim_b * dim_b);
  const Matrix& m = op.matrix();
  for (Eigen::Index ia = 0; ia < dim_a; ++ia) {
    for (Eigen::Index ja = 0; ja < dim_a; ++ja) {
      for (Eigen::Index ib = 0; ib < dim_b; ++ib) {
        for (Eigen::Index jb = 0; jb < dim_b; ++jb) {
          realigned(ia * dim_a + ja, ib * dim_b + jb) =
              m(ia * dim_b + ib, ja * dim_b + jb);
        }
      }
    }
  }
  Eigen::JacobiSVD<Matrix> svd(realigned);
  return svd.singularValues();
}

namespace {

// Outcome projectors of a local measurement on one party's four qubits.
using SideMeasurement = std::vector<DenseOperator>;

// Singlet tests on two disjoint pairs. Outcome index = 2*(!s1) + (!s2), so
// 0 = both singlet, 1 = first only, 2 = second only, 3 = neither.
SideMeasurement pair_tests(int a, int b, int c, int d) {
  const DenseOperator id = DenseOperator::identity(kFourQubits);
  const DenseOperator t1 = pair_singlet_test(a, b);
  const DenseOperator t2 = pair_singlet_test(c, d);
  return {t1 * t2, t1 * (id - t2), (id - t1) * t2, (id - t1) * (id - t2)};
}

SideMeasurement binary_test(const PureState& psi) {
  const DenseOperator pr = psi.projector();
  return {pr, DenseOperator::identity(kFourQubits) - pr};
}

ObservableGroup local_group(
    std::string label, const SideMeasurement& a_side,
    const SideMeasurement& b_side, double weight,
    const std::function<double(std::size_t, std::size_t)>& value,
    const std::function<double(std::size_t, std::size_t)>* t1_value) {
  ObservableGroup g{std::move(label), 4, DenseOperator::zero(qubit_dims(8)),
                    {}, {}, weight, {}, true};
  for (std::size_t a = 0; a < a_side.size(); ++a) {
    for (std::size_t b = 0; b < b_side.size(); ++b) {
      DenseOperator proj = to_copy_major(kron(a_side[a], b_side[b]), 4);
      const double v = value(a, b);
      if (v != 0.0) g.observable += v * proj;
      g.eigenvalues.push_back(v);
      if (t1_value) g.t1_values.push_back((*t1_value)(a, b));
      g.projectors.push_back(std::move(proj));
    }
  }
  return g;
}

ObservableGroup spectral_group(std::string label, const DenseOperator& obs,
                               int n_copies, double weight, bool feeds_t1) {
  SpectralProjectors sp = spectral_projectors(obs);
  ObservableGroup g{std::move(label), n_copies, obs, sp.values,
                    std::move(sp.projectors), weight, {}, false};
  if (feeds_t1) g.t1_values = g.eigenvalues;
  return g;
}

}  // namespace

std::vector<ObservableGroup> enumerate_groups(Scheme scheme,
                                              const MNCoefficients& c) {
  std::vector<ObservableGroup> groups;
  if (scheme == Scheme::global) {
    groups.push_back(spectral_group("B", build_B(), 2, 0.0, true));
    groups.push_back(spectral_group("A", cached_A_forward(), 4, 1.0, false));
    return groups;
  }

  double diagonal = 0.0;
  double off_diagonal = 0.0;
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) {
      (p == q ? diagonal : off_diagonal) += c.pairing[p] * c.pairing[q];
    }
  }
  const auto both_first = [](std::size_t a, std::size_t b) {
    return a == 0 && b == 0 ? 1.0 : 0.0;
  };
  // Pair (1,2) singlet on both parties, whatever copies 3,4 gave.
  const std::function<double(std::size_t, std::size_t)> pair12_marginal =
      [](std::size_t a, std::size_t b) {
        return a <= 1 && b <= 1 ? 4.0 : 0.0;
      };

  const SideMeasurement pairs_12_34 = pair_tests(0, 1, 2, 3);
  const SideMeasurement pairs_13_24 = pair_tests(0, 2, 1, 3);
  groups.push_back(local_group("pairs12|34 x pairs12|34", pairs_12_34,
                               pairs_12_34, 0.5 * diagonal, both_first,
                               &pair12_marginal));
  groups.push_back(local_group("pairs12|34 x pairs13|24", pairs_12_34,
                               pairs_13_24, 0.5 * off_diagonal, both_first,
                               nullptr));

  const SideMeasurement psi = binary_test(dicke_phase_state());
  const SideMeasurement psibar = binary_test(dicke_phase_state_conjugate());
  const double n2 = c.n_scale * c.n_scale;
  groups.push_back(
      local_group("Psi x Psi", psi, psi, -0.5 * n2, both_first, nullptr));
  groups.push_back(
      local_group("Psi x Psibar", psi, psibar, 0.5 * n2, both_first, nullptr));
  groups.push_back(
      local_group("Psibar x Psi", psibar, psi, 0.5 * n2, both_first, nullptr));
  groups.push_back(local_group("Psibar x Psibar", psibar, psibar, -0.5 * n2,
                               both_first, nullptr));
  return groups;
}

}  // namespace qconc
