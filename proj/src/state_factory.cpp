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

#include "qconc/state_factory.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qconc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

std::string format_real(double x) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", x);
  return buf.data();
}

std::string format_dims(const Dims& dims) {
  std::string s = "[";
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (k) s += ", ";
    s += std::to_string(dims[k]);
  }
  return s + "]";
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

RandomSource RandomSource::split(std::uint64_t child) const {
  return RandomSource(seed_, splitmix64(stream_ ^ splitmix64(child + 1)));
}

double RandomSource::standard_normal() {
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(engine_);
}

void require_qubits(const Dims& dims) {
  for (int d : dims) {
    if (d != 2) {
      throw ValidationError("qubit-dims", static_cast<double>(d),
                            "subsystem of dimension " + std::to_string(d) +
                                " where a qubit is required");
    }
  }
}

DensityMatrix::DensityMatrix(DenseOperator op) : op_(std::move(op)) {
  require_qubits(op_.dims());
  const double asym = hermiticity_defect(op_.matrix());
  if (asym > kHermitianTol) {
    throw ValidationError("hermitian", asym,
                          "density matrix is not Hermitian");
  }
  const double trace_defect = std::abs(op_.trace() - Complex(1.0, 0.0));
  if (trace_defect > kHermitianTol) {
    throw ValidationError("trace", trace_defect,
                          "density matrix trace differs from 1");
  }
  const double lowest = hermitian_eig(op_).values.minCoeff();
  if (lowest < -kPsdTol) {
    throw ValidationError("positive-semidefinite", -lowest,
                          "density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector());
}

PureState haar_random_pure(int n_qubits, RandomSource& rng) {
  if (n_qubits < 1 || n_qubits > 10) {
    throw Error("haar_random_pure: n_qubits must be in [1, 10], got " +
                std::to_string(n_qubits));
  }
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double re = rng.standard_normal();
    const double im = rng.standard_normal();
    v[i] = Complex(re, im);
  }
  return PureState::normalized(Dims(static_cast<std::size_t>(n_qubits), 2),
                               std::move(v));
}

DensityMatrix reduce_to_pair(const PureState& three_qubit) {
  if (three_qubit.dims() != Dims{2, 2, 2}) {
    throw Error("reduce_to_pair: expected a three-qubit state");
  }
  const std::array<int, 2> keep{0, 1};
  DenseOperator r = partial_trace(three_qubit.projector(), keep);
  // Remove roundoff asymmetry before validation.
  return DensityMatrix(
      DenseOperator(r.dims(), 0.5 * (r.matrix() + r.matrix().adjoint())));
}

Rank2Sample random_rank2_state(RandomSource& rng) {
  PureState parent = haar_random_pure(3, rng);
  DensityMatrix rho = reduce_to_pair(parent);
  return {std::move(rho), std::move(parent)};
}

PureState canonical_state(CanonicalState name) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (name) {
    case CanonicalState::bell_psiminus: {
      Vector v = Vector::Zero(4);
      v[1] = h;
      v[2] = -h;
      return PureState::normalized({2, 2}, v);
    }
    case CanonicalState::bell_phiplus: {
      Vector v = Vector::Zero(4);
      v[0] = h;
      v[3] = h;
      return PureState::normalized({2, 2}, v);
    }
    case CanonicalState::product00: {
      Vector v = Vector::Zero(4);
      v[0] = 1.0;
      return PureState({2, 2}, v);
    }
    case CanonicalState::ghz: {
      Vector v = Vector::Zero(8);
      v[0] = h;
      v[7] = h;
      return PureState::normalized({2, 2, 2}, v);
    }
    case CanonicalState::w: {
      const double t = 1.0 / std::sqrt(3.0);
      Vector v = Vector::Zero(8);
      v[1] = t;  // |001>
      v[2] = t;  // |010>
      v[4] = t;  // |100>
      return PureState::normalized({2, 2, 2}, v);
    }
  }
  throw Error("unknown canonical state");
}

CanonicalState parse_canonical_state(std::string_view name) {
  for (auto s : {CanonicalState::bell_psiminus, CanonicalState::bell_phiplus,
                 CanonicalState::product00, CanonicalState::ghz,
                 CanonicalState::w}) {
    if (to_string(s) == name) return s;
  }
  throw Error("unknown canonical state '" + std::string(name) + "'");
}

std::string_view to_string(CanonicalState name) {
  switch (name) {
    case CanonicalState::bell_psiminus: return "bell_psiminus";
    case CanonicalState::bell_phiplus: return "bell_phiplus";
    case CanonicalState::product00: return "product00";
    case CanonicalState::ghz: return "ghz";
    case CanonicalState::w: return "w";
  }
  return "?";
}

DenseOperator pauli_y() {
  Matrix y(2, 2);
  y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return {{2}, y};
}

DenseOperator spin_flip(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) {
    throw Error("spin_flip: expected a two-qubit density matrix, got dims " +
                format_dims(rho.dims()));
  }
  const DenseOperator yy = kron(pauli_y(), pauli_y());
  return {rho.dims(), yy.matrix() * rho.matrix().conjugate() * yy.matrix()};
}

std::string state_to_json(const AnyState& state) {
  std::ostringstream os;
  auto write_entries = [&os](auto&& entries, Eigen::Index n) {
    os << "[";
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i) os << ", ";
      const Complex z = entries(i);
      os << "[" << format_real(z.real()) << ", " << format_real(z.imag())
         << "]";
    }
    os << "]";
  };
  if (const auto* psi = std::get_if<PureState>(&state)) {
    os << "{\"kind\": \"pure\", \"dims\": " << format_dims(psi->dims())
       << ", \"data\": ";
    const Vector& a = psi->amplitudes();
    write_entries([&a](Eigen::Index i) { return a[i]; }, a.size());
  } else {
    const auto& rho = std::get<DensityMatrix>(state);
    os << "{\"kind\": \"density\", \"dims\": " << format_dims(rho.dims())
       << ", \"data\": ";
    const Matrix& m = rho.matrix();
    const Eigen::Index d = m.rows();
    write_entries([&m, d](Eigen::Index i) { return m(i / d, i % d); }, d * d);
  }
  os << "}\n";
  return os.str();
}

AnyState state_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed state file: ") + e.what());
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const Dims dims = j.at("dims").get<Dims>();
    if (dims.empty()) throw Error("malformed state file: empty dims");
    require_qubits(dims);
    const auto& data = j.at("data");
    if (!data.is_array()) throw Error("malformed state file: data not a list");
    auto entry = [&data](std::size_t i) {
      const auto& pair = data.at(i);
      if (!pair.is_array() || pair.size() != 2) {
        throw Error("malformed state file: entry " + std::to_string(i) +
                    " is not [re, im]");
      }
      return Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
    };
    const std::size_t d = total_dimension(dims);
    if (kind == "pure") {
      if (data.size() != d) {
        throw Error("malformed state file: expected " + std::to_string(d) +
                    " amplitudes");
      }
      Vector v(static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < d; ++i) v[static_cast<Eigen::Index>(i)] = entry(i);
      return PureState(dims, std::move(v));
    }
    if (kind == "density") {
      if (data.size() != d * d) {
        throw Error("malformed state file: expected " + std::to_string(d * d) +
                    " matrix entries");
      }
      const auto n = static_cast<Eigen::Index>(d);
      Matrix m(n, n);
      for (std::size_t i = 0; i < d * d; ++i) {
        m(static_cast<Eigen::Index>(i / d), static_cast<Eigen::Index>(i % d)) =
            entry(i);
      }
      return DensityMatrix(DenseOperator(dims, std::move(m)));
    }
    throw Error("malformed state file: unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed state file: ") + e.what());
  }
}

void save_state(const AnyState& state, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << state_to_json(state);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

AnyState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open state file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

}  // namespace qconc
