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

#ifndef QCONC_TENSOR_CORE_HPP
#define QCONC_TENSOR_CORE_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qconc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Subsystem dimensions, leftmost entry is the most significant digit of a
/// basis index.
using Dims = std::vector<int>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value failed one of its invariants. Carries the name of the invariant and
/// the measured size of the violation so callers can report both.
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, double violation,
                  const std::string& detail);

  const std::string& invariant() const noexcept { return invariant_; }
  double violation() const noexcept { return violation_; }

 private:
  std::string invariant_;
  double violation_;
};

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

std::size_t total_dimension(const Dims& dims);

/// Complex square matrix over a tensor-product space.
class DenseOperator {
 public:
  DenseOperator(Dims dims, Matrix entries);

  static DenseOperator identity(Dims dims);
  static DenseOperator zero(Dims dims);

  const Dims& dims() const noexcept { return dims_; }
  const Matrix& matrix() const noexcept { return entries_; }
  Eigen::Index size() const noexcept { return entries_.rows(); }
  std::size_t subsystems() const noexcept { return dims_.size(); }

  Complex trace() const { return entries_.trace(); }
  DenseOperator adjoint() const;
  DenseOperator conjugate() const;

  DenseOperator& operator+=(const DenseOperator& other);
  DenseOperator& operator-=(const DenseOperator& other);
  DenseOperator& operator*=(Complex s);

  friend DenseOperator operator+(DenseOperator a, const DenseOperator& b) {
    return a += b;
  }
  friend DenseOperator operator-(DenseOperator a, const DenseOperator& b) {
    return a -= b;
  }
  friend DenseOperator operator*(Complex s, DenseOperator a) { return a *= s; }
  friend DenseOperator operator*(double s, DenseOperator a) {
    return a *= Complex(s, 0.0);
  }
  /// Operator product; both sides must share the same dims.
  friend DenseOperator operator*(const DenseOperator& a,
                                 const DenseOperator& b);

 private:
  Dims dims_;
  Matrix entries_;
};

/// Normalized state vector over a tensor-product space.
class PureState {
 public:
  /// Rejects vectors whose norm differs from 1 by more than kNormTol.
  PureState(Dims dims, Vector amplitudes);

  /// Normalizes first; rejects the zero vector.
  static PureState normalized(Dims dims, Vector amplitudes);

  const Dims& dims() const noexcept { return dims_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

  DenseOperator projector() const;

 private:
  Dims dims_;
  Vector amplitudes_;
};

DenseOperator kron(const DenseOperator& a, const DenseOperator& b);
PureState kron(const PureState& a, const PureState& b);

/// Traces out every subsystem not listed in `keep`. Kept subsystems retain
/// their original relative order.
DenseOperator partial_trace(const DenseOperator& op, std::span<const int> keep);

/// Relabels subsystems: subsystem k of the result is subsystem perm[k] of the
/// input. Equivalent to Pi op Pi^dagger for the relabeling unitary Pi.
DenseOperator permute_subsystems(const DenseOperator& op,
                                 std::span<const int> perm);

/// The unitary Pi used by permute_subsystems, as an explicit 0/1 matrix.
DenseOperator permutation_unitary(const Dims& dims, std::span<const int> perm);

std::vector<int> inverse_permutation(std::span<const int> perm);

/// max |op - op^dagger| over entries.
double hermiticity_defect(const Matrix& m);

struct Spectrum {
  RealVector values;  // descending
  Matrix vectors;     // orthonormal columns, matching `values`
};

Spectrum hermitian_eig(const DenseOperator& op);

/// Principal square root of a Hermitian PSD operator. Eigenvalues in
/// [-kPsdTol, 0) are clamped to zero.
DenseOperator mat_sqrt_psd(const DenseOperator& op);

/// Tr(a b) without forming the product.
Complex trace_of_product(const Matrix& a, const Matrix& b);

/// Number of eigenvalues with magnitude above `threshold`.
int numerical_rank(const DenseOperator& op, double threshold);

}  // namespace qconc

#endif  // QCONC_TENSOR_CORE_HPP
