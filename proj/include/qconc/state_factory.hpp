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

#ifndef QCONC_STATE_FACTORY_HPP
#define QCONC_STATE_FACTORY_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <variant>

#include "qconc/tensor_core.hpp"

namespace qconc {

/// Seeded, splittable random stream.
///
/// Two sources built from the same (seed, stream) produce identical draws.
/// Distinct stream ids seed the engine through different seed_seq inputs and
/// are treated as independent. Copying a source copies its engine state.
class RandomSource {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+seed_seq";

  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::mt19937_64& engine() noexcept { return engine_; }

  /// A fresh source with the same seed and a stream id derived from this
  /// stream and `child`. Does not advance this source.
  RandomSource split(std::uint64_t child) const;

  double standard_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

/// Hermitian, positive-semidefinite, unit-trace operator over qubits.
class DensityMatrix {
 public:
  explicit DensityMatrix(DenseOperator op);

  static DensityMatrix from_pure(const PureState& psi);

  const DenseOperator& op() const noexcept { return op_; }
  const Matrix& matrix() const noexcept { return op_.matrix(); }
  const Dims& dims() const noexcept { return op_.dims(); }
  int qubits() const noexcept { return static_cast<int>(op_.dims().size()); }

 private:
  DenseOperator op_;
};

/// Throws ValidationError("qubit-dims") unless every subsystem is a qubit.
void require_qubits(const Dims& dims);

/// Independent standard complex Gaussian amplitudes, normalized.
PureState haar_random_pure(int n_qubits, RandomSource& rng);

struct Rank2Sample {
  DensityMatrix rho;  // qubits A, B
  PureState parent;   // qubits A, B, C
};

/// Two-qubit state of rank at most 2, obtained by tracing qubit C out of a
/// Haar-random three-qubit pure state.
Rank2Sample random_rank2_state(RandomSource& rng);

/// rho_AB of a three-qubit pure state.
DensityMatrix reduce_to_pair(const PureState& three_qubit);

enum class CanonicalState { bell_psiminus, bell_phiplus, product00, ghz, w };

PureState canonical_state(CanonicalState name);
CanonicalState parse_canonical_state(std::string_view name);
std::string_view to_string(CanonicalState name);

DenseOperator pauli_y();

/// (sigma_y x sigma_y) rho^* (sigma_y x sigma_y), conjugation in the
/// computational basis.
DenseOperator spin_flip(const DensityMatrix& rho);

using AnyState = std::variant<PureState, DensityMatrix>;

/// JSON: {"kind": "pure"|"density", "dims": [...], "data": [[re, im], ...]}
/// with every real written using 17 significant digits.
std::string state_to_json(const AnyState& state);
AnyState state_from_json(std::string_view text);

void save_state(const AnyState& state, const std::filesystem::path& path);
AnyState load_state(const std::filesystem::path& path);

}  // namespace qconc

#endif  // QCONC_STATE_FACTORY_HPP
