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

#include "ussdlab/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ussdlab/errors.hpp"

namespace ussdlab {

namespace {

void validate_labels(const std::vector<Qubit>& labels) {
    if (labels.empty() || labels.size() > kMaxQubits) {
        throw ShapeError("register must hold 1 to 3 qubits, got " + std::to_string(labels.size()));
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            if (labels[i] == labels[j]) {
                throw RegisterClash(std::string("qubit ") + label(labels[i]) + " appears twice");
            }
        }
    }
}

std::vector<std::size_t> positions(const Register& reg, std::span<const Qubit> targets) {
    std::vector<std::size_t> out;
    out.reserve(targets.size());
    for (Qubit q : targets) {
        const std::size_t p = reg.position(q);
        if (std::find(out.begin(), out.end(), p) != out.end()) {
            throw RegisterClash(std::string("qubit ") + label(q) + " targeted twice");
        }
        out.push_back(p);
    }
    return out;
}

// Gathers the bits of `index` at `pos` (register positions) into a compact
// sub-index whose first entry is the most significant bit.
std::size_t gather_bits(std::size_t index, std::size_t n, const std::vector<std::size_t>& pos) {
    std::size_t sub = 0;
    for (std::size_t p : pos) {
        sub = (sub << 1) | ((index >> (n - 1 - p)) & 1u);
    }
    return sub;
}

std::size_t scatter_bits(std::size_t base, std::size_t sub, std::size_t n,
                         const std::vector<std::size_t>& pos) {
    std::size_t out = base;
    const std::size_t m = pos.size();
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t bit = (sub >> (m - 1 - k)) & 1u;
        const std::size_t weight = std::size_t{1} << (n - 1 - pos[k]);
        out = bit ? (out | weight) : (out & ~weight);
    }
    return out;
}

double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

char label(Qubit q) {
    switch (q) {
        case Qubit::S: return 'S';
        case Qubit::C: return 'C';
        case Qubit::A: return 'A';
        case Qubit::B: return 'B';
    }
    return '?';
}

Register::Register(std::initializer_list<Qubit> labels) : labels_(labels) {
    validate_labels(labels_);
}

Register::Register(std::vector<Qubit> labels) : labels_(std::move(labels)) {
    validate_labels(labels_);
}

std::optional<std::size_t> Register::index_of(Qubit q) const {
    const auto it = std::find(labels_.begin(), labels_.end(), q);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t Register::position(Qubit q) const {
    const auto idx = index_of(q);
    if (!idx) {
        throw UnknownQubit(std::string("qubit ") + label(q) + " not in register (" + to_string() + ")");
    }
    return *idx;
}

std::string Register::to_string() const {
    std::string out;
    for (Qubit q : labels_) {
        if (!out.empty()) out += ',';
        out += label(q);
    }
    return out;
}

Register concat(const Register& a, const Register& b) {
    std::vector<Qubit> labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    for (Qubit q : b.labels()) {
        if (a.contains(q)) {
            throw RegisterClash(std::string("qubit ") + label(q) + " present in both registers");
        }
    }
    return Register(std::move(labels));
}

// ---------------------------------------------------------------------------

PureState::PureState(Register reg, CVector amplitudes, const Tolerances& tol)
    : reg_(std::move(reg)), amps_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amps_.size()) != reg_.dim()) {
        throw ShapeError("amplitude vector of length " + std::to_string(amps_.size()) +
                         " does not match register " + reg_.to_string());
    }
    const double n2 = amps_.squaredNorm();
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > tol.normalization) {
        throw InvalidState("state is not normalized (squared norm " + std::to_string(n2) + ")");
    }
}

PureState PureState::normalized(Register reg, CVector amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw InvalidState("cannot normalize a zero or non-finite vector");
    }
    return PureState(std::move(reg), amplitudes / n);
}

PureState PureState::basis(Register reg, std::size_t index) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(reg.dim()));
    if (index >= reg.dim()) throw ShapeError("basis index out of range");
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(reg), std::move(v));
}

PureState PureState::bloch(Qubit q, double theta, double phi) {
    CVector v(2);
    v << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
    return PureState::normalized(Register{q}, std::move(v));
}

DensityMatrix PureState::density() const {
    CMatrix m = amps_ * amps_.adjoint();
    return DensityMatrix(reg_, std::move(m));
}

DensityMatrix::DensityMatrix(Register reg, CMatrix matrix, const Tolerances& tol)
    : reg_(std::move(reg)), m_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(reg_.dim());
    if (m_.rows() != d || m_.cols() != d) {
        throw ShapeError("density matrix dimension does not match register " + reg_.to_string());
    }
    if (max_abs(m_ - m_.adjoint()) > tol.hermiticity) {
        throw InvalidState("density matrix is not Hermitian");
    }
    m_ = (0.5 * (m_ + m_.adjoint())).eval();
    if (std::abs(m_.trace().real() - 1.0) > tol.normalization) {
        throw InvalidState("density matrix trace differs from 1");
    }
    if (eigenvalues()(0) < -tol.positivity) {
        throw InvalidState("density matrix has a negative eigenvalue");
    }
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double DensityMatrix::purity() const {
    return (m_ * m_).trace().real();
}

Unitary::Unitary(Register reg, CMatrix matrix, const Tolerances& tol)
    : reg_(std::move(reg)), m_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(reg_.dim());
    if (m_.rows() != d || m_.cols() != d) {
        throw ShapeError("operator dimension does not match register " + reg_.to_string());
    }
    if (max_abs(m_.adjoint() * m_ - CMatrix::Identity(d, d)) > tol.unitarity) {
        throw NotIsometric("matrix is not unitary");
    }
}

Unitary Unitary::identity(Register reg) {
    const auto d = static_cast<Eigen::Index>(reg.dim());
    return Unitary(std::move(reg), CMatrix::Identity(d, d));
}

Unitary Unitary::adjoint() const {
    return Unitary(reg_, m_.adjoint());
}

// ---------------------------------------------------------------------------

namespace gates {

Matrix2 identity() { return Matrix2::Identity(); }

Matrix2 pauli_x() {
    Matrix2 m;
    m << 0, 1, 1, 0;
    return m;
}

Matrix2 pauli_y() {
    Matrix2 m;
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix2 pauli_z() {
    Matrix2 m;
    m << 1, 0, 0, -1;
    return m;
}

Matrix2 hadamard() {
    Matrix2 m;
    const double h = 1.0 / std::sqrt(2.0);
    m << h, h, h, -h;
    return m;
}

Eigen::Matrix4cd cnot() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

}  // namespace gates

Unitary single_qubit(Qubit q, const Matrix2& m) {
    return Unitary(Register{q}, CMatrix(m));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

PureState tensor(const PureState& a, const PureState& b) {
    Register reg = concat(a.reg(), b.reg());
    CVector v = kron(a.amplitudes(), b.amplitudes());
    return PureState(std::move(reg), std::move(v));
}

Unitary tensor(const Unitary& a, const Unitary& b) {
    Register reg = concat(a.reg(), b.reg());
    return Unitary(std::move(reg), kron(a.matrix(), b.matrix()));
}

PureState permute(const PureState& psi, const Register& order) {
    const Register& from = psi.reg();
    if (order.size() != from.size()) {
        throw ShapeError("permutation target " + order.to_string() + " does not match " + from.to_string());
    }
    std::vector<std::size_t> pos = positions(from, order.labels());
    const std::size_t n = from.size();
    CVector out(psi.amplitudes().size());
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        out(static_cast<Eigen::Index>(gather_bits(i, n, pos))) = psi.amplitude(i);
    }
    return PureState(order, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Qubit> keep) {
    const Register& reg = rho.reg();
    if (keep.empty()) throw PartitionError("partial trace must keep at least one qubit");
    std::vector<std::size_t> keep_pos = positions(reg, keep);
    std::sort(keep_pos.begin(), keep_pos.end());
    std::vector<std::size_t> traced_pos;
    for (std::size_t p = 0; p < reg.size(); ++p) {
        if (std::find(keep_pos.begin(), keep_pos.end(), p) == keep_pos.end()) traced_pos.push_back(p);
    }
    std::vector<Qubit> kept_labels;
    for (std::size_t p : keep_pos) kept_labels.push_back(reg[p]);

    const std::size_t n = reg.size();
    const auto dk = static_cast<Eigen::Index>(std::size_t{1} << keep_pos.size());
    CMatrix out = CMatrix::Zero(dk, dk);
    const CMatrix& m = rho.matrix();
    for (std::size_t i = 0; i < reg.dim(); ++i) {
        const std::size_t ti = gather_bits(i, n, traced_pos);
        const auto ki = static_cast<Eigen::Index>(gather_bits(i, n, keep_pos));
        for (std::size_t j = 0; j < reg.dim(); ++j) {
            if (gather_bits(j, n, traced_pos) != ti) continue;
            out(ki, static_cast<Eigen::Index>(gather_bits(j, n, keep_pos))) +=
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return DensityMatrix(Register(std::move(kept_labels)), std::move(out));
}

DensityMatrix partial_trace(const PureState& psi, std::span<const Qubit> keep) {
    return partial_trace(psi.density(), keep);
}

DensityMatrix partial_trace(const PureState& psi, std::initializer_list<Qubit> keep) {
    return partial_trace(psi, std::span<const Qubit>(keep.begin(), keep.size()));
}

PureState apply(const Unitary& u, const PureState& psi, std::span<const Qubit> targets) {
    const std::size_t m = targets.size();
    if (u.dim() != (std::size_t{1} << m)) {
        throw ShapeError("operator of dimension " + std::to_string(u.dim()) + " applied to " +
                         std::to_string(m) + " target qubit(s)");
    }
    std::vector<std::size_t> pos = positions(psi.reg(), targets);
    const std::size_t n = psi.reg().size();
    const CMatrix& mat = u.matrix();
    CVector out = CVector::Zero(psi.amplitudes().size());
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const std::size_t row = gather_bits(i, n, pos);
        Complex acc = 0.0;
        for (std::size_t col = 0; col < u.dim(); ++col) {
            acc += mat(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) *
                   psi.amplitude(scatter_bits(i, col, n, pos));
        }
        out(static_cast<Eigen::Index>(i)) = acc;
    }
    return PureState(psi.reg(), std::move(out));
}

PureState apply(const Unitary& u, const PureState& psi, std::initializer_list<Qubit> targets) {
    return apply(u, psi, std::span<const Qubit>(targets.begin(), targets.size()));
}

PureState apply(const Unitary& u, const PureState& psi) {
    return apply(u, psi, std::span<const Qubit>(u.reg().labels()));
}

Complex inner(const PureState& a, const PureState& b) {
    if (!(a.reg() == b.reg())) {
        throw ShapeError("inner product of states over " + a.reg().to_string() + " and " +
                         b.reg().to_string());
    }
    return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const PureState& a, const PureState& b) {
    return std::norm(inner(a, b));
}

std::optional<Reduction> project_out(const PureState& psi, Qubit target, const Qubit2& basis_state) {
    const Register& reg = psi.reg();
    if (reg.size() < 2) return std::nullopt;
    const std::size_t p = reg.position(target);
    std::vector<Qubit> rest_labels;
    std::vector<std::size_t> rest_pos;
    for (std::size_t k = 0; k < reg.size(); ++k) {
        if (k != p) {
            rest_labels.push_back(reg[k]);
            rest_pos.push_back(k);
        }
    }
    const std::size_t n = reg.size();
    CVector out = CVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << rest_pos.size()));
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const std::size_t t = (i >> (n - 1 - p)) & 1u;
        out(static_cast<Eigen::Index>(gather_bits(i, n, rest_pos))) +=
            std::conj(basis_state(static_cast<Eigen::Index>(t))) * psi.amplitude(i);
    }
    const double prob = out.squaredNorm();
    if (prob < 1e-24) return std::nullopt;
    return Reduction{prob, PureState(Register(std::move(rest_labels)), out / std::sqrt(prob))};
}

std::vector<MeasurementOutcome> projective_measure(const PureState& psi, Qubit target,
                                                   const std::array<Qubit2, 2>& basis,
                                                   const Tolerances& tol) {
    const double e00 = std::abs(basis[0].squaredNorm() - 1.0);
    const double e11 = std::abs(basis[1].squaredNorm() - 1.0);
    const double e01 = std::abs(basis[0].dot(basis[1]));
    if (std::max({e00, e11, e01}) > tol.basis) {
        throw BasisError("measurement basis is not orthonormal");
    }
    const Register& reg = psi.reg();
    const std::size_t weight = reg.bit(target);
    std::vector<MeasurementOutcome> out;
    for (int k = 0; k < 2; ++k) {
        const Qubit2& b = basis[static_cast<std::size_t>(k)];
        const Matrix2 proj = b * b.adjoint();
        CVector v = CVector::Zero(psi.amplitudes().size());
        for (std::size_t i = 0; i < psi.dim(); ++i) {
            const std::size_t t = (i & weight) ? 1 : 0;
            const std::size_t base = i & ~weight;
            v(static_cast<Eigen::Index>(i)) =
                proj(static_cast<Eigen::Index>(t), 0) * psi.amplitude(base) +
                proj(static_cast<Eigen::Index>(t), 1) * psi.amplitude(base | weight);
        }
        MeasurementOutcome mo;
        mo.outcome = k;
        mo.probability = v.squaredNorm();
        if (mo.probability > 1e-24) {
            mo.post_state = PureState(reg, v / std::sqrt(mo.probability));
        }
        out.push_back(std::move(mo));
    }
    return out;
}

std::vector<MeasurementOutcome> projective_measure(const PureState& psi, Qubit target) {
    return projective_measure(psi, target, {Qubit2(1, 0), Qubit2(0, 1)});
}

Unitary complete_unitary(const Register& reg, std::span<const UnitaryConstraint> constraints,
                         const Tolerances& tol) {
    const auto d = static_cast<Eigen::Index>(reg.dim());
    for (const auto& c : constraints) {
        if (c.input.size() != d || c.output.size() != d) {
            throw ShapeError("constraint vectors must have dimension " + std::to_string(d));
        }
    }
    const std::size_t k = constraints.size();
    double gram_error = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const Complex gin = constraints[i].input.dot(constraints[j].input);
            const Complex gout = constraints[i].output.dot(constraints[j].output);
            gram_error = std::max(gram_error, std::abs(gin - gout));
        }
    }
    if (gram_error > tol.isometry) {
        throw NotIsometric("constraint Gram matrices differ by " + std::to_string(gram_error));
    }

    // Orthonormalize the inputs, carrying the same linear combinations along
    // on the output side so that out_basis[m] is the image of in_basis[m].
    std::vector<CVector> in_basis;
    std::vector<CVector> out_basis;
    for (const auto& c : constraints) {
        CVector r = c.input;
        CVector s = c.output;
        for (std::size_t m = 0; m < in_basis.size(); ++m) {
            const Complex proj = in_basis[m].dot(r);
            r -= proj * in_basis[m];
            s -= proj * out_basis[m];
        }
        const double norm = r.norm();
        if (norm < tol.gram_schmidt_skip) continue;
        in_basis.push_back(r / norm);
        out_basis.push_back(s / norm);
    }

    auto complete = [&](std::vector<CVector>& basis) {
        for (Eigen::Index e = 0; e < d && static_cast<Eigen::Index>(basis.size()) < d; ++e) {
            CVector r = CVector::Unit(d, e);
            for (const CVector& b : basis) r -= b.dot(r) * b;
            // second pass keeps the completion orthogonal to working precision
            for (const CVector& b : basis) r -= b.dot(r) * b;
            const double norm = r.norm();
            if (norm < tol.gram_schmidt_skip) continue;
            basis.push_back(r / norm);
        }
    };
    complete(in_basis);
    complete(out_basis);
    if (static_cast<Eigen::Index>(in_basis.size()) != d ||
        static_cast<Eigen::Index>(out_basis.size()) != d) {
        throw NumericalError("unitary completion did not span the full space");
    }

    CMatrix u = CMatrix::Zero(d, d);
    for (Eigen::Index m = 0; m < d; ++m) {
        u += out_basis[static_cast<std::size_t>(m)] * in_basis[static_cast<std::size_t>(m)].adjoint();
    }
    Unitary result(reg, std::move(u), tol);
    for (const auto& c : constraints) {
        if ((result.matrix() * c.input - c.output).cwiseAbs().maxCoeff() > tol.isometry) {
            throw NotIsometric("completed unitary misses a constraint");
        }
    }
    return result;
}

}  // namespace ussdlab
