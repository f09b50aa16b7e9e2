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

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "ussdlab/errors.hpp"
#include "ussdlab/parallel.hpp"
#include "ussdlab/quadrature.hpp"

namespace ussdlab {
namespace {

using testing::Gen;
using testing::kPi;

double integrate(const QuadratureRule& r, double (*f)(double)) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        s += r.weights[i] * f(r.nodes[i]);
    }
    return s;
}

TEST(GaussLegendreTest, WeightsAndSymmetry) {
    for (int n : {1, 2, 5, 64, 128}) {
        QuadratureRule r = gauss_legendre(n, -1.0, 1.0);
        ASSERT_EQ(r.nodes.size(), static_cast<std::size_t>(n));
        EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 2.0, 1e-13);
        for (int i = 0; i < n; ++i) {
            EXPECT_NEAR(r.nodes[static_cast<std::size_t>(i)], -r.nodes[static_cast<std::size_t>(n - 1 - i)], 1e-14);
            EXPECT_GT(r.weights[static_cast<std::size_t>(i)], 0.0);
        }
    }
    EXPECT_THROW(gauss_legendre(0, 0.0, 1.0), RangeError);
}

TEST(GaussLegendreTest, KnownTwoPointRule) {
    QuadratureRule r = gauss_legendre(2, -1.0, 1.0);
    EXPECT_NEAR(std::abs(r.nodes[0]), 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(r.weights[0], 1.0, 1e-15);
}

TEST(GaussLegendreProperty, ExactForPolynomialsOfDegree2nMinus1) {
    Gen gen(601);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + gen.index(12);
        int degree = 2 * n - 1;
        double a = gen.uniform(-2.0, 0.0), b = gen.uniform(0.5, 2.0);
        std::vector<double> c(static_cast<std::size_t>(degree + 1));
        for (double& x : c) x = gen.normal();
        double exact = 0.0;
        for (int k = 0; k <= degree; ++k) {
            exact += c[static_cast<std::size_t>(k)] * (std::pow(b, k + 1) - std::pow(a, k + 1)) / (k + 1);
        }
        QuadratureRule r = gauss_legendre(n, a, b);
        double approx = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            double p = 0.0;
            for (int k = degree; k >= 0; --k) p = p * r.nodes[i] + c[static_cast<std::size_t>(k)];
            approx += r.weights[i] * p;
        }
        ASSERT_NEAR(approx, exact, 1e-11 * std::max(1.0, std::abs(exact))) << "n " << n;
    }
}

TEST(GaussLegendreTest, SmoothIntegrandOnHalfPeriod) {
    QuadratureRule r = gauss_legendre(64, 0.0, kPi);
    EXPECT_NEAR(integrate(r, [](double x) { return std::sin(x) * std::sin(x) * std::sin(x); }), 4.0 / 3.0, 1e-14);
}

TEST(ParallelMapTest, KeepsOrder) {
    std::vector<int> out = parallel_map(1000, [](std::size_t i) { return static_cast<int>(i * i % 97); });
    ASSERT_EQ(out.size(), 1000u);
    for (std::size_t i = 0; i < out.size(); ++i) {
        ASSERT_EQ(out[i], static_cast<int>(i * i % 97));
    }
    EXPECT_TRUE(parallel_map(0, [](std::size_t) { return 1; }).empty());
}

TEST(ParallelMapTest, PropagatesExceptions) {
    auto boom = [](std::size_t i) {
        if (i == 17) throw RangeError("boom");
        return i;
    };
    EXPECT_THROW(parallel_map(100, boom), RangeError);
}

TEST(ParallelMapTest, ThreadCapFromEnvironment) {
    ::setenv("USSD_LAB_THREADS", "3", 1);
    EXPECT_EQ(worker_count(), 3u);
    ::setenv("USSD_LAB_THREADS", "2", 1);
    std::vector<double> capped = parallel_map(64, [](std::size_t i) { return std::sqrt(double(i)); });
    ::setenv("USSD_LAB_THREADS", "1", 1);
    std::vector<double> serial = parallel_map(64, [](std::size_t i) { return std::sqrt(double(i)); });
    EXPECT_EQ(capped, serial);
    ::unsetenv("USSD_LAB_THREADS");
    EXPECT_GE(worker_count(), 1u);
}

}  // namespace
}  // namespace ussdlab
