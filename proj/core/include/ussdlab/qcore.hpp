// Copyright 2026 The ussdlab Authors
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

/**
 * @file
 * Dense state-vector and density-matrix primitives for registers of one to
 * three labeled qubits.
 *
 * Amplitude indices follow a fixed convention: the leftmost label of a
 * register is the most significant bit. For the register (S, C, A) the
 * amplitude of |s c a> sits at index 4*s + 2*c + a.
 */

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ussdlab/tolerances.hpp"

namespace ussdlab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Qubit2 = Eigen::Vector2cd;
using Matrix2 = Eigen::Matrix2cd;

inline constexpr std::size_t kMaxQubits = 3;

/// Qubit roles. S, C and A appear in discrimination, S, B and C in teleportation.
enum class Qubit : std::uint8_t { S, C, A, B };

char label(Qubit q);

/// Ordered list of distinct qubit labels; the order fixes tensor-factor order.
class Register {
  public:
    Register(std::initializer_list<Qubit> labels);
    explicit Register(std::vector<Qubit> labels);

    std::size_t size() const { return labels_.size(); }
    std::size_t dim() const { return std::size_t{1} << labels_.size(); }
    Qubit operator[](std::size_t i) const { return labels_[i]; }
    const std::vector<Qubit>& labels() const { return labels_; }

    std::optional<std::size_t> index_of(Qubit q) const;
    /// Position of `q`; throws UnknownQubit when absent.
    std::size_t position(Qubit q) const;
    bool contains(Qubit q) const { return index_of(q).has_value(); }
    /// Bit weight of `q` inside an amplitude index.
    std::size_t bit(Qubit q) const { return std::size_t{1} << (size() - 1 - position(q)); }

    std::string to_string() const;

    friend bool operator==(const Register&, const Register&) = default;

  private:
    std::vector<Qubit> labels_;
};

Register concat(const Register& a, const Register& b);

class DensityMatrix;

/// Normalized amplitude vector over a register.
class PureState {
  public:
    /// Validates the squared norm against `tol.normalization`.
    PureState(Register reg, CVector amplitudes, const Tolerances& tol = kDefaultTolerances);

    /// Rescales `amplitudes` to unit norm; throws InvalidState for a zero vector.
    static PureState normalized(Register reg, CVector amplitudes);
    static PureState basis(Register reg, std::size_t index);
    /// Single-qubit state cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>.
    static PureState bloch(Qubit q, double theta, double phi);

    const Register& reg() const { return reg_; }
    const CVector& amplitudes() const { return amps_; }
    Complex amplitude(std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
    std::size_t dim() const { return reg_.dim(); }

    DensityMatrix density() const;

  private:
    Register reg_;
    CVector amps_;
};

/// Hermitian, positive semidefinite, unit-trace matrix over a register.
class DensityMatrix {
  public:
    DensityMatrix(Register reg, CMatrix matrix, const Tolerances& tol = kDefaultTolerances);

    const Register& reg() const { return reg_; }
    const CMatrix& matrix() const { return m_; }
    std::size_t dim() const { return reg_.dim(); }

    /// Eigenvalues in ascending order.
    Eigen::VectorXd eigenvalues() const;
    double purity() const;

  private:
    Register reg_;
    CMatrix m_;
};

/// Unitary operator acting on the qubits of its register.
class Unitary {
  public:
    Unitary(Register reg, CMatrix matrix, const Tolerances& tol = kDefaultTolerances);

    static Unitary identity(Register reg);

    const Register& reg() const { return reg_; }
    const CMatrix& matrix() const { return m_; }
    std::size_t dim() const { return reg_.dim(); }

    Unitary adjoint() const;

  private:
    Register reg_;
    CMatrix m_;
};

namespace gates {
Matrix2 identity();
Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();
Matrix2 hadamard();
/// Control is the more significant qubit of the pair.
Eigen::Matrix4cd cnot();
}  // namespace gates

Unitary single_qubit(Qubit q, const Matrix2& m);

/// Kronecker product of dense matrices (first factor most significant).
CMatrix kron(const CMatrix& a, const CMatrix& b);

PureState tensor(const PureState& a, const PureState& b);
Unitary tensor(const Unitary& a, const Unitary& b);

/// Reorders the tensor factors of `psi` to `order`, a permutation of its register.
PureState permute(const PureState& psi, const Register& order);

/// Reduced state on `keep`; the result lists the kept labels in their original order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Qubit> keep);
DensityMatrix partial_trace(const PureState& psi, std::span<const Qubit> keep);
DensityMatrix partial_trace(const PureState& psi, std::initializer_list<Qubit> keep);

/// Applies `u` to `targets` (in that factor order), identity elsewhere.
PureState apply(const Unitary& u, const PureState& psi, std::span<const Qubit> targets);
PureState apply(const Unitary& u, const PureState& psi, std::initializer_list<Qubit> targets);
/// Applies `u` to the qubits named by its own register.
PureState apply(const Unitary& u, const PureState& psi);

Complex inner(const PureState& a, const PureState& b);
/// |<a|b>|^2 for states over the same register.
double fidelity(const PureState& a, const PureState& b);

struct MeasurementOutcome {
    int outcome = 0;
    double probability = 0.0;
    /// Absent when the outcome has zero probability.
    std::optional<PureState> post_state;
};

/// von Neumann measurement of `target` in an orthonormal single-qubit basis.
std::vector<MeasurementOutcome> projective_measure(const PureState& psi, Qubit target,
                                                   const std::array<Qubit2, 2>& basis,
                                                   const Tolerances& tol = kDefaultTolerances);
std::vector<MeasurementOutcome> projective_measure(const PureState& psi, Qubit target);

/// Conditional state of the remaining qubits after projecting `target` onto
/// `basis_state`, together with its probability. Returns nullopt for a
/// zero-probability branch or when `target` is the only qubit.
struct Reduction {
    double probability;
    PureState state;
};
std::optional<Reduction> project_out(const PureState& psi, Qubit target, const Qubit2& basis_state);

struct UnitaryConstraint {
    CVector input;
    CVector output;
};

/// Builds a unitary on `reg` that maps every constraint input to its output.
/// Inputs and outputs must share a Gram matrix; unconstrained directions are
/// completed by modified Gram-Schmidt over canonical basis vectors in index order.
Unitary complete_unitary(const Register& reg, std::span<const UnitaryConstraint> constraints,
                         const Tolerances& tol = kDefaultTolerances);

}  // namespace ussdlab
