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

#include "ussdlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ussdlab/coherence.hpp"
#include "ussdlab/errors.hpp"

namespace ussdlab::oracle {
namespace {

constexpr double kPi = std::numbers::pi;

double linspace(const GridAxis& ax, int i) {
    return ax.lower + (ax.upper - ax.lower) * i / (ax.points - 1);
}

template <class F>
double golden(F&& f, double lo, double hi, double tol, double* fmin) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - r * (hi - lo);
    double x2 = lo + r * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
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
    *fmin = std::min(f1, f2);
    return f1 <= f2 ? x1 : x2;
}

}  // namespace

void GridSpec::validate() const {
    if (axes.empty()) {
        throw RangeError("grid needs at least one axis");
    }
    for (const auto& ax : axes) {
        if (ax.points < 2) {
            throw RangeError("grid axes need at least two points");
        }
        if (!(ax.lower < ax.upper)) {
            throw RangeError("grid bounds must be ordered");
        }
    }
    if (refinement_depth < 0) {
        throw RangeError("refinement depth must be nonnegative");
    }
}

GridSpec default_success_grid(const UssdInstance& inst) {
    GridSpec g;
    g.axes.push_back({inst.abs_alpha(), 1.0, 10000});
    g.refinement_depth = 2;
    return g;
}

SuccessOptimum grid_optimize_success(const UssdInstance& inst, const GridSpec& grid) {
    const double a = inst.abs_alpha();
    GridAxis ax = grid.axes.empty() ? GridAxis{a, 1.0, 2} : grid.axes.front();
    ax.lower = std::max(ax.lower, a);
    ax.upper = std::min(ax.upper, 1.0);
    if (ax.lower == ax.upper) {
        ax.lower = a;
        ax.upper = 1.0;
    }
    GridSpec clipped = grid;
    if (clipped.axes.empty()) {
        clipped.axes.push_back(ax);
    }
    clipped.axes.front() = ax;
    if (a < 1.0) {
        clipped.validate();
    }

    auto eq5 = [&](double ap) {
        double am2 = ap == 0.0 ? 0.0 : (a * a) / (ap * ap);
        return inst.r_plus * (1.0 - ap * ap) + inst.r_minus * (1.0 - am2);
    };

    SuccessOptimum best{ax.lower, eq5(ax.lower)};
    for (int round = 0; round <= clipped.refinement_depth; ++round) {
        int round_i = 0;
        double round_p = eq5(linspace(ax, 0));
        for (int i = 1; i < ax.points; ++i) {
            double p = eq5(linspace(ax, i));
            if (p > round_p) {
                round_i = i;
                round_p = p;
            }
        }
        if (round_p > best.probability) {
            best = {linspace(ax, round_i), round_p};
        }
        double lo = linspace(ax, std::max(0, round_i - 1));
        double hi = linspace(ax, std::min(ax.points - 1, round_i + 1));
        if (!(lo < hi)) {
            break;
        }
        ax.lower = lo;
        ax.upper = hi;
    }
    return best;
}

SuccessOptimum grid_optimize_success(const UssdInstance& inst) {
    return grid_optimize_success(inst, default_success_grid(inst));
}

DensityMatrix assemble_rho_sa(const UssdInstance& inst, const UssdStrategy& strat) {
    const Complex eta0 = std::cos(strat.beta);
    const Complex eta1 = std::sin(strat.beta) * std::exp(Complex(0.0, strat.delta));
    auto complement = [](Complex z) {
        double c = 1.0 - std::norm(z);
        return c <= 1e-15 ? 0.0 : std::sqrt(c);
    };
    const double bp = complement(strat.alpha_plus);
    const double bm = complement(strat.alpha_minus);
    Eigen::Vector4cd zp(bp, strat.alpha_plus * eta0, 0.0, strat.alpha_plus * eta1);
    Eigen::Vector4cd zm(0.0, strat.alpha_minus * eta0, bm, strat.alpha_minus * eta1);
    const double cross = std::sqrt(inst.r_plus * inst.r_minus);
    Eigen::Matrix4cd m = inst.r_plus * zp * zp.adjoint() + inst.r_minus * zm * zm.adjoint() +
                         cross * inst.alpha_c * zp * zm.adjoint() + cross * std::conj(inst.alpha_c) * zm * zp.adjoint();
    return DensityMatrix(Register{Qubit::S, Qubit::A}, m);
}

GridSpec default_eta_grid() {
    GridSpec g;
    g.axes.push_back({0.0, kPi / 2, 31});
    g.axes.push_back({0.0, 2.0 * kPi, 61});
    g.refinement_depth = 200;
    return g;
}

ConcurrenceMinimum grid_min_concurrence(const UssdInstance& inst, const UssdStrategy& base, const GridSpec& grid) {
    grid.validate();
    if (grid.axes.size() != 2) {
        throw RangeError("the eta grid needs a beta axis and a delta axis");
    }
    const GridAxis& bax = grid.axes[0];
    const GridAxis& dax = grid.axes[1];
    auto conc = [&](double beta, double delta) {
        return wootters_concurrence(assemble_rho_sa(inst, base.with_eta(beta, delta)));
    };
    auto wrap = [](double d) {
        double w = std::fmod(d, 2.0 * kPi);
        return w < 0.0 ? w + 2.0 * kPi : w;
    };

    ConcurrenceMinimum best{linspace(bax, 0), wrap(linspace(dax, 0)), 0.0};
    best.concurrence = conc(best.beta, best.delta);
    for (int i = 0; i < bax.points; ++i) {
        for (int j = 0; j < dax.points; ++j) {
            double b = linspace(bax, i);
            double d = wrap(linspace(dax, j));
            double c = conc(b, d);
            if (c < best.concurrence) {
                best = {b, d, c};
            }
        }
    }

    double hb = (bax.upper - bax.lower) / (bax.points - 1);
    double hd = (dax.upper - dax.lower) / (dax.points - 1);
    for (int round = 0; round < grid.refinement_depth && best.concurrence > 1e-15; ++round) {
        double v = 0.0;
        double lo = std::max(0.0, best.beta - hb);
        double hi = std::min(kPi / 2, best.beta + hb);
        double nb = golden([&](double b) { return conc(b, best.delta); }, lo, hi, std::max(1e-13, hb * 1e-3), &v);
        if (v < best.concurrence) {
            hb = std::max(3.0 * std::abs(nb - best.beta), 1e-10);
            best.beta = nb;
            best.concurrence = v;
        } else {
            hb = std::max(hb * 0.5, 1e-10);
        }
        double nd = golden([&](double d) { return conc(best.beta, d); }, best.delta - hd, best.delta + hd,
                           std::max(1e-13, hd * 1e-3), &v);
        if (v < best.concurrence) {
            hd = std::max(3.0 * std::abs(nd - best.delta), 1e-10);
            best.delta = wrap(nd);
            best.concurrence = v;
        } else {
            hd = std::max(hd * 0.5, 1e-10);
        }
        if (hb <= 1e-10 && hd <= 1e-10) {
            break;
        }
    }
    return best;
}

ConcurrenceMinimum grid_min_concurrence(const UssdInstance& inst, const UssdStrategy& base) {
    return grid_min_concurrence(inst, base, default_eta_grid());
}

double DecompositionResidual::max() const { return std::max({matrix, norm_plus, norm_minus, cross}); }

DecompositionResidual decomposition_check(const DensityMatrix& rho_sa, const SeparabilityParams& params) {
    if (!(rho_sa.reg() == Register{Qubit::S, Qubit::A})) {
        throw ShapeError("decomposition_check expects rho over (S, A), got " + rho_sa.reg().to_string());
    }
    if (!params.decomposition) {
        throw RangeError("separability parameters carry no mixture decomposition");
    }
    const auto& d = *params.decomposition;
    const Complex i(0.0, 1.0);
    Eigen::Vector4cd z1 = d.q1_plus * params.zeta_plus + d.q1_minus * std::exp(i * d.gamma1) * params.zeta_minus;
    Eigen::Vector4cd z2 = d.q2_plus * params.zeta_plus + d.q2_minus * std::exp(i * d.gamma2) * params.zeta_minus;
    Eigen::Matrix4cd mix = z1 * z1.adjoint() + z2 * z2.adjoint();

    DecompositionResidual r;
    r.matrix = (Eigen::Matrix4cd(rho_sa.matrix()) - mix).cwiseAbs().maxCoeff();
    r.norm_plus = std::abs(d.q1_plus * d.q1_plus + d.q2_plus * d.q2_plus - params.r_plus);
    r.norm_minus = std::abs(d.q1_minus * d.q1_minus + d.q2_minus * d.q2_minus - params.r_minus);
    r.cross = std::abs(d.q1_plus * d.q1_minus * std::exp(i * d.gamma1) + d.q2_plus * d.q2_minus * std::exp(i * d.gamma2) -
                       std::sqrt(params.r_plus * params.r_minus) * std::conj(params.alpha_c));
    return r;
}

std::vector<ConvergenceRow> quadrature_refine(const std::function<double(double)>& f,
                                              const std::vector<int>& node_counts, double a, double b) {
    std::vector<ConvergenceRow> rows;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int n : node_counts) {
        if (n < 2) {
            throw RangeError("Clenshaw-Curtis needs at least two nodes");
        }
        const int big_n = n - 1;
        double sum = 0.0;
        for (int j = 0; j <= big_n; ++j) {
            double theta = kPi * j / big_n;
            double w = 1.0;
            for (int k = 1; k <= big_n / 2; ++k) {
                double bk = (2 * k == big_n) ? 1.0 : 2.0;
                w -= bk / (4.0 * k * k - 1.0) * std::cos(2.0 * k * theta);
            }
            w *= (j == 0 || j == big_n ? 1.0 : 2.0) / big_n;
            double x = mid + half * std::cos(theta);
            double fx = f(x);
            if (!std::isfinite(fx)) {
                throw NumericalError("integrand is not finite at x = " + std::to_string(x));
            }
            sum += w * fx;
        }
        ConvergenceRow row;
        row.nodes = n;
        row.value = half * sum;
        row.delta = rows.empty() ? 0.0 : std::abs(row.value - rows.back().value);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ussdlab::oracle
