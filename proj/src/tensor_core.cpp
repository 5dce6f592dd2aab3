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

#include "qconc/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qconc {

ValidationError::ValidationError(std::string invariant, double violation,
                                 const std::string& detail)
    : Error(detail + " [invariant: " + invariant +
            ", violation: " + std::to_string(violation) + "]"),
      invariant_(std::move(invariant)),
      violation_(violation) {}

std::size_t total_dimension(const Dims& dims) {
  std::size_t d = 1;
  for (int k : dims) {
    if (k < 2) throw Error("subsystem dimension must be at least 2");
    d *= static_cast<std::size_t>(k);
  }
  return d;
}

namespace {

// Row-major strides: stride of the last subsystem is 1.
std::vector<std::size_t> strides_of(const Dims& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) {
    s[k - 1] = s[k] * static_cast<std::size_t>(dims[k]);
  }
  return s;
}

void require_same_dims(const DenseOperator& a, const DenseOperator& b,
                       const char* what) {
  if (a.dims() != b.dims()) {
    throw Error(std::string(what) + ": subsystem dimensions differ");
  }
}

void check_permutation(std::span<const int> perm, std::size_t n) {
  if (perm.size() != n) {
    throw Error("permutation length " + std::to_string(perm.size()) +
                " does not match " + std::to_string(n) + " subsystems");
  }
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p]) {
      throw Error("not a permutation of the subsystem indices");
    }
    seen[p] = true;
  }
}

// For each output basis index, the input basis index it is read from.
std::vector<Eigen::Index> permuted_index_map(const Dims& dims,
                                             std::span<const int> perm) {
  const std::size_t n = dims.size();
  Dims out_dims(n);
  for (std::size_t k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
  const auto in_strides = strides_of(dims);
  const std::size_t total = total_dimension(dims);

  std::vector<Eigen::Index> map(total);
  std::vector<int> digits(n, 0);
  for (std::size_t out = 0; out < total; ++out) {
    std::size_t in = 0;
    for (std::size_t k = 0; k < n; ++k) in += digits[k] * in_strides[perm[k]];
    map[out] = static_cast<Eigen::Index>(in);
    for (std::size_t k = n; k-- > 0;) {
      if (++digits[k] < out_dims[k]) break;
      digits[k] = 0;
    }
  }
  return map;
}

}  // namespace

DenseOperator::DenseOperator(Dims dims, Matrix entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  if (dims_.empty()) throw Error("operator needs at least one subsystem");
  const auto d = static_cast<Eigen::Index>(total_dimension(dims_));
  if (entries_.rows() != d || entries_.cols() != d) {
    std::ostringstream os;
    os << "matrix is " << entries_.rows() << "x" << entries_.cols()
       << " but dims imply side " << d;
    throw Error(os.str());
  }
}

DenseOperator DenseOperator::identity(Dims dims) {
  const auto d = static_cast<Eigen::Index>(total_dimension(dims));
  return {std::move(dims), Matrix::Identity(d, d)};
}

DenseOperator DenseOperator::zero(Dims dims) {
  const auto d = static_cast<Eigen::Index>(total_dimension(dims));
  return {std::move(dims), Matrix::Zero(d, d)};
}

DenseOperator DenseOperator::adjoint() const {
  return {dims_, entries_.adjoint()};
}

DenseOperator DenseOperator::conjugate() const {
  return {dims_, entries_.conjugate()};
}

DenseOperator& DenseOperator::operator+=(const DenseOperator& other) {
  require_same_dims(*this, other, "operator +");
  entries_ += other.entries_;
  return *this;
}

DenseOperator& DenseOperator::operator-=(const DenseOperator& other) {
  require_same_dims(*this, other, "operator -");
  entries_ -= other.entries_;
  return *this;
}

DenseOperator& DenseOperator::operator*=(Complex s) {
  entries_ *= s;
  return *this;
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  require_same_dims(a, b, "operator *");
  return {a.dims(), a.matrix() * b.matrix()};
}

PureState::PureState(Dims dims, Vector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  const auto d = static_cast<Eigen::Index>(total_dimension(dims_));
  if (amplitudes_.size() != d) {
    throw Error("amplitude vector length " +
                std::to_string(amplitudes_.size()) +
                " does not match dims product " + std::to_string(d));
  }
  const double defect = std::abs(amplitudes_.norm() - 1.0);
  if (defect > kNormTol) {
    throw ValidationError("norm", defect, "pure state is not normalized");
  }
}

PureState PureState::normalized(Dims dims, Vector amplitudes) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw Error("cannot normalize the zero vector");
  amplitudes /= n;
  return {std::move(dims), std::move(amplitudes)};
}

DenseOperator PureState::projector() const {
  return {dims_, amplitudes_ * amplitudes_.adjoint()};
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return {std::move(dims), std::move(out)};
}

PureState kron(const PureState& a, const PureState& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  const Vector& x = a.amplitudes();
  const Vector& y = b.amplitudes();
  Vector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out.segment(i * y.size(), y.size()) = x[i] * y;
  }
  return PureState::normalized(std::move(dims), std::move(out));
}

DenseOperator partial_trace(const DenseOperator& op,
                            std::span<const int> keep) {
  const std::size_t n = op.subsystems();
  if (keep.empty()) throw Error("partial_trace: keep set is empty");
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || static_cast<std::size_t>(k) >= n) {
      throw Error("partial_trace: subsystem index " + std::to_string(k) +
                  " out of range");
    }
    if (kept[k]) throw Error("partial_trace: duplicate subsystem index");
    kept[k] = true;
  }

  // Reorder as (kept..., traced...) so the trace becomes a block sum.
  std::vector<int> order;
  Dims kept_dims;
  for (std::size_t k = 0; k < n; ++k) {
    if (kept[k]) {
      order.push_back(static_cast<int>(k));
      kept_dims.push_back(op.dims()[k]);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!kept[k]) order.push_back(static_cast<int>(k));
  }
  const DenseOperator grouped = permute_subsystems(op, order);
  const auto dk = static_cast<Eigen::Index>(total_dimension(kept_dims));
  const Eigen::Index dt = grouped.size() / dk;

  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = grouped.matrix();
  for (Eigen::Index t = 0; t < dt; ++t) {
    for (Eigen::Index r = 0; r < dk; ++r) {
      for (Eigen::Index c = 0; c < dk; ++c) {
        out(r, c) += m(r * dt + t, c * dt + t);
      }
    }
  }
  return {std::move(kept_dims), std::move(out)};
}

DenseOperator permute_subsystems(const DenseOperator& op,
                                 std::span<const int> perm) {
  check_permutation(perm, op.subsystems());
  const auto map = permuted_index_map(op.dims(), perm);
  Dims out_dims(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) out_dims[k] = op.dims()[perm[k]];

  const Matrix& m = op.matrix();
  const auto d = static_cast<Eigen::Index>(map.size());
  Matrix out(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) out(i, j) = m(map[i], map[j]);
  }
  return {std::move(out_dims), std::move(out)};
}

DenseOperator permutation_unitary(const Dims& dims, std::span<const int> perm) {
  check_permutation(perm, dims.size());
  const auto map = permuted_index_map(dims, perm);
  Dims out_dims(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) out_dims[k] = dims[perm[k]];
  const auto d = static_cast<Eigen::Index>(map.size());
  Matrix pi = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) pi(i, map[i]) = 1.0;
  // Labeled by the output (row) space; equals the input space when all dims
  // agree, which is the only case the copy layouts use.
  return {std::move(out_dims), std::move(pi)};
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
  check_permutation(perm, perm.size());
  std::vector<int> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    inv[perm[k]] = static_cast<int>(k);
  }
  return inv;
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum hermitian_eig(const DenseOperator& op) {
  const double defect = hermiticity_defect(op.matrix());
  if (defect > kHermitianTol) {
    throw ValidationError("hermitian", defect,
                          "hermitian_eig: operator is not Hermitian");
  }
  // Symmetrize so roundoff asymmetry below tolerance does not bias the solver.
  const Matrix h = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eig: eigensolver did not converge");
  }
  // Eigen sorts ascending.
  Spectrum s;
  s.values = solver.eigenvalues().reverse();
  s.vectors = solver.eigenvectors().rowwise().reverse();
  return s;
}

DenseOperator mat_sqrt_psd(const DenseOperator& op) {
  const Spectrum s = hermitian_eig(op);
  const double lowest = s.values.minCoeff();
  if (lowest < -kPsdTol) {
    throw ValidationError("positive-semidefinite", -lowest,
                          "mat_sqrt_psd: negative eigenvalue");
  }
  const RealVector roots = s.values.cwiseMax(0.0).cwiseSqrt();
  Matrix out = s.vectors * roots.cast<Complex>().asDiagonal() *
               s.vectors.adjoint();
  return {op.dims(), std::move(out)};
}

Complex trace_of_product(const Matrix& a, const Matrix& b) {
  // Tr(ab) = sum_ij a_ij b_ji
  return a.cwiseProduct(b.transpose()).sum();
}

int numerical_rank(const DenseOperator& op, double threshold) {
  Eigen::JacobiSVD<Matrix> svd(op.matrix());
  const RealVector& sv = svd.singularValues();
  return static_cast<int>((sv.array() > threshold).count());
}

}  // namespace qconc
