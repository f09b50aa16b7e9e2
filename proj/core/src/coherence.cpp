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

#include "ussdlab/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "ussdlab/errors.hpp"

namespace ussdlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduced 2x2 state of qubit `q`, read directly from the amplitudes.
Matrix2 single_site(const PureState& psi, Qubit q) {
    std::size_t bit = psi.reg().bit(q);
    Matrix2 rho = Matrix2::Zero();
    const CVector& a = psi.amplitudes();
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        if (i & bit) {
            continue;
        }
        Complex a0 = a(static_cast<Eigen::Index>(i));
        Complex a1 = a(static_cast<Eigen::Index>(i | bit));
        rho(0, 0) += std::norm(a0);
        rho(1, 1) += std::norm(a1);
        rho(0, 1) += a0 * std::conj(a1);
    }
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

Qubit single_side(const PureState& psi, std::span<const Qubit> part) {
    const Register& reg = psi.reg();
    std::vector<bool> in(reg.size(), false);
    for (Qubit q : part) {
        std::size_t p = reg.position(q);
        if (in[p]) {
            throw PartitionError(std::string("qubit ") + label(q) + " listed twice");
        }
        in[p] = true;
    }
    std::size_t count = static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
    if (count == 0 || count == reg.size()) {
        throw PartitionError("partition must be a nonempty proper subset of " + reg.to_string());
    }
    bool want = count == 1;
    if (!want && reg.size() - count != 1) {
        throw PartitionError("one side of the partition must be a single qubit");
    }
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (in[i] == want) {
            return reg[i];
        }
    }
    throw PartitionError("partition not found");
}

double det_single(const PureState& psi, std::span<const Qubit> part) {
    Matrix2 rho = single_site(psi, single_side(psi, part));
    double det = rho(0, 0).real() * rho(1, 1).real() - std::norm(rho(0, 1));
    return std::max(0.0, det);
}

double golden_minimize(const std::function<double(double)>& f, double lo, double hi, double* fmin) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - r * (hi - lo);
    double x2 = lo + r * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > 1e-11) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    double x = f1 <= f2 ? x1 : x2;
    *fmin = std::min(f1, f2);
    return x;
}

double wrap_positive(double g) {
    double w = std::fmod(g, kTwoPi);
    if (w < 0.0) {
        w += kTwoPi;
    }
    return w >= kTwoPi ? 0.0 : w;
}

}  // namespace

double wootters_concurrence(const DensityMatrix& rho, const Tolerances& tol) {
    if (rho.reg().size() != 2) {
        throw ShapeError("Wootters concurrence needs a two-qubit state, got " + rho.reg().to_string());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(Eigen::Matrix4cd(rho.matrix()));
    const Eigen::Vector4d& ev = es.eigenvalues();
    double floor = tol.rank_cutoff * std::max(1.0, ev.cwiseAbs().maxCoeff());

    // rho = W W^H; the spin-flip spectrum is the singular spectrum of W^T (sy x sy) W.
    Eigen::MatrixXcd w(4, 0);
    for (int i = 0; i < 4; ++i) {
        if (ev(i) > floor) {
            w.conservativeResize(4, w.cols() + 1);
            w.col(w.cols() - 1) = es.eigenvectors().col(i) * std::sqrt(ev(i));
        }
    }
    if (w.cols() == 0) {
        return 0.0;
    }
    Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    Eigen::MatrixXcd tau = w.transpose() * flip * w;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(tau);
    const Eigen::VectorXd& s = svd.singularValues();
    double c = s(0);
    for (Eigen::Index i = 1; i < s.size(); ++i) {
        c -= s(i);
    }
    return std::max(0.0, c);
}

double amplitude_concurrence(const Eigen::Vector4cd& psi) {
    return 2.0 * std::abs(psi(0) * psi(3) - psi(1) * psi(2));
}

double pure_concurrence(const PureState& psi, std::span<const Qubit> part) {
    return 2.0 * std::sqrt(det_single(psi, part));
}

double pure_concurrence(const PureState& psi, std::initializer_list<Qubit> part) {
    return pure_concurrence(psi, std::span<const Qubit>(part.begin(), part.size()));
}

double tangle(const PureState& psi, std::span<const Qubit> part) { return 4.0 * det_single(psi, part); }

double tangle(const PureState& psi, std::initializer_list<Qubit> part) {
    return tangle(psi, std::span<const Qubit>(part.begin(), part.size()));
}

double pair_tangle(const PureState& psi, Qubit x, Qubit y) {
    if (psi.reg().size() == 2) {
        if (!psi.reg().contains(x) || !psi.reg().contains(y) || x == y) {
            throw PartitionError("pair must name both qubits of the register");
        }
        double c = amplitude_concurrence(Eigen::Vector4cd(psi.amplitudes()));
        return c * c;
    }
    double c = wootters_concurrence(partial_trace(psi, {x, y}));
    return c * c;
}

double three_tangle(const PureState& psi) {
    if (psi.reg().size() != 3) {
        throw ShapeError("three-tangle needs a three-qubit state, got " + psi.reg().to_string());
    }
    auto a = [&](int i, int j, int k) { return psi.amplitude(static_cast<std::size_t>(4 * i + 2 * j + k)); };
    Complex d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) + a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                 a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) + a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
    Complex d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                 a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                 a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    Complex d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

double ckw_residual(const PureState& psi, Qubit pivot) {
    if (psi.reg().size() != 3) {
        throw ShapeError("CKW residual needs a three-qubit state, got " + psi.reg().to_string());
    }
    psi.reg().position(pivot);
    double r = tangle(psi, {pivot});
    for (Qubit q : psi.reg().labels()) {
        if (q != pivot) {
            r -= pair_tangle(psi, pivot, q);
        }
    }
    return r;
}

double CoherenceLedger::decomposition_spread() const {
    double t1 = s_c + a_sc;
    double t2 = c_a + s_ca;
    double t3 = a_s + c_as;
    return std::max({t1, t2, t3}) - std::min({t1, t2, t3});
}

double CoherenceLedger::pivot_spread() const {
    double gs = s_ca - s_c - a_s;
    double gc = c_as - c_a - s_c;
    double ga = a_sc - a_s - c_a;
    return std::max({gs, gc, ga}) - std::min({gs, gc, ga});
}

CoherenceLedger ledger(const PureState& psi) {
    const Register& reg = psi.reg();
    if (reg.size() != 3 || !reg.contains(Qubit::S) || !reg.contains(Qubit::C) || !reg.contains(Qubit::A)) {
        throw ShapeError("ledger needs a state over S, C and A, got " + reg.to_string());
    }
    CoherenceLedger l;
    l.s_ca = tangle(psi, {Qubit::S});
    l.c_as = tangle(psi, {Qubit::C});
    l.a_sc = tangle(psi, {Qubit::A});
    l.s_c = pair_tangle(psi, Qubit::S, Qubit::C);
    l.c_a = pair_tangle(psi, Qubit::C, Qubit::A);
    l.a_s = pair_tangle(psi, Qubit::S, Qubit::A);
    l.total = l.s_c + l.a_sc;
    l.genuine = l.total - (l.s_c + l.c_a + l.a_s);
    return l;
}

ClosedFormCoherences closed_form_coherences(const UssdInstance& inst, const UssdStrategy& strat) {
    validate_strategy(inst, strat);
    double bac = inst.bar_alpha_c();
    double pre = 4.0 * inst.r_plus * inst.r_minus * bac * bac;
    double a2 = std::norm(inst.alpha);
    double ap2 = std::norm(strat.alpha_plus);
    double am2 = std::norm(strat.alpha_minus);
    double bar_p = complement_amplitude(std::abs(strat.alpha_plus));
    double bar_m = complement_amplitude(std::abs(strat.alpha_minus));
    Complex g = bar_p * strat.alpha_minus * std::sin(strat.beta) * std::exp(Complex(0.0, strat.delta)) +
                bar_m * strat.alpha_plus * std::cos(strat.beta);

    ClosedFormCoherences out;
    out.total = pre * (1.0 - a2);
    out.a_sc = pre * (ap2 + am2 - 2.0 * a2);
    out.genuine = pre * std::norm(g);
    return out;
}

CoherenceBand coherence_band(double p_plus, double abs_alpha, double abs_alpha_c, int points) {
    if (points < 8) {
        throw RangeError("coherence_band needs at least 8 scan points");
    }
    if (abs_alpha < 0.0 || abs_alpha_c < 0.0) {
        throw RangeError("magnitudes must be nonnegative");
    }
    auto eval = [&](double gamma) {
        UssdInstance inst = make_instance(p_plus, std::polar(abs_alpha, gamma), Complex(abs_alpha_c, 0.0));
        ClosedFormCoherences c = closed_form_coherences(inst, separable_strategy(inst));
        return c.genuine / c.total;
    };
    {
        UssdInstance inst = make_instance(p_plus, Complex(abs_alpha, 0.0), Complex(abs_alpha_c, 0.0));
        ClosedFormCoherences c = closed_form_coherences(inst, optimal_strategy(inst));
        if (!(c.total > 0.0)) {
            throw RangeError("the ratio is undefined when C_I vanishes");
        }
    }

    const double step = kTwoPi / points;
    std::vector<double> f(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        f[static_cast<std::size_t>(i)] = eval(i * step);
    }
    CoherenceBand band;
    {
        UssdInstance inst = make_instance(p_plus, Complex(abs_alpha, 0.0), Complex(abs_alpha_c, 0.0));
        ClosedFormCoherences c = closed_form_coherences(inst, optimal_strategy(inst));
        band.a_sc_ratio = c.a_sc / c.total;
    }
    auto [lo_it, hi_it] = std::minmax_element(f.begin(), f.end());
    if (*hi_it - *lo_it < 1e-13) {
        band.flat = true;
        band.min_ratio = *lo_it;
        band.max_ratio = *hi_it;
        return band;
    }

    struct Extremum {
        double gamma;
        double value;
    };
    std::vector<Extremum> minima;
    std::vector<Extremum> maxima;
    auto at = [&](int i) { return f[static_cast<std::size_t>((i % points + points) % points)]; };
    for (int i = 0; i < points; ++i) {
        double c = at(i);
        double l = at(i - 1);
        double r = at(i + 1);
        double centre = i * step;
        if (c <= l && c < r) {
            double v = 0.0;
            double g = golden_minimize(eval, centre - step, centre + step, &v);
            minima.push_back({wrap_positive(g), v});
        }
        if (c >= l && c > r) {
            double v = 0.0;
            double g = golden_minimize([&](double x) { return -eval(x); }, centre - step, centre + step, &v);
            maxima.push_back({wrap_positive(g), -v});
        }
    }

    auto collect = [](const std::vector<Extremum>& ext, bool lowest, double* best, std::vector<double>* args) {
        double b = ext.front().value;
        for (const auto& e : ext) {
            b = lowest ? std::min(b, e.value) : std::max(b, e.value);
        }
        *best = b;
        for (const auto& e : ext) {
            if (std::abs(e.value - b) <= 1e-10 * std::max(1.0, std::abs(b))) {
                bool dup = std::any_of(args->begin(), args->end(), [&](double g) {
                    double d = std::abs(g - e.gamma);
                    return std::min(d, kTwoPi - d) < 1e-6;
                });
                if (!dup) {
                    args->push_back(e.gamma);
                }
            }
        }
        std::sort(args->begin(), args->end());
    };
    collect(minima, true, &band.min_ratio, &band.argmin);
    collect(maxima, false, &band.max_ratio, &band.argmax);
    return band;
}

}  // namespace ussdlab
