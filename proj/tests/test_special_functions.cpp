// SPDX-License-Identifier: Apache-2.0
//
// iacsi: interference alignment performance analysis under quantized CSI
// Copyright (C) 2026 The iacsi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <iacsi/special_functions.hpp>

#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace iacsi::special;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> v;
    for (int i = 0; i < n; ++i)
        v.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return v;
}

} // namespace

TEST_CASE("Euler constant")
{
    CHECK_THAT(euler_gamma, WithinAbs(0.57721566490, 5e-12));
}

TEST_CASE("E1 reference values")
{
    CHECK_THAT(exp_integral_e1(1.0), WithinRel(0.21938393439552027368, 1e-13));
    CHECK_THAT(exp_integral_e1(10.0), WithinRel(4.15696892968532427740e-6, 1e-12));
    CHECK_THAT(exp_integral_e1_scaled(1.0), WithinRel(0.59634736232319407434, 1e-13));
    // Three-term asymptotic series 1/x - 1/x^2 + 2/x^3 at x = 1e6.
    CHECK_THAT(exp_integral_e1_scaled(1.0e6), WithinRel(9.99999000001999994e-7, 1e-12));
    CHECK_THAT(exp_integral_e1_scaled(1.0e8), WithinRel(1.0e-8 - 1.0e-16, 1e-12));
}

TEST_CASE("E1 domain errors")
{
    CHECK_THROWS_AS(exp_integral_e1(0.0), std::domain_error);
    CHECK_THROWS_AS(exp_integral_e1(-1.0), std::domain_error);
    CHECK_THROWS_AS(exp_integral_e1_scaled(0.0), std::domain_error);
    CHECK_THROWS_AS(upper_incomplete_gamma_int(-1, 0.0), std::domain_error);
    CHECK_THROWS_AS(upper_incomplete_gamma_int(2, 1.0), std::domain_error);
    CHECK_THROWS_AS(digamma_int(0), std::domain_error);
}

TEST_CASE("E1 relative accuracy against boost expint on [1e-8, 700]")
{
    for (double x : log_grid(1e-8, 700.0, 400))
        CHECK_THAT(exp_integral_e1(x), WithinRel(boost::math::expint(1, x), 1e-12));
}

TEST_CASE("E1 against quadrature of its defining integral")
{
    for (double x : {0.01, 0.5, 1.0, 3.0, 25.0})
    {
        boost::math::quadrature::exp_sinh<double> integrator;
        const double q = integrator.integrate([](double t) { return std::exp(-t) / t; }, x,
                                              std::numeric_limits<double>::infinity());
        CHECK_THAT(exp_integral_e1(x), WithinRel(q, 1e-10));
    }
}

TEST_CASE("scaled E1 agrees with the product form on [1e-6, 100]")
{
    for (double x : log_grid(1e-6, 100.0, 300))
    {
        const double s = exp_integral_e1_scaled(x);
        CHECK(std::abs(s - std::exp(x) * exp_integral_e1(x)) / s <= 1e-10);
    }
}

TEST_CASE("scaled E1 decreases monotonically")
{
    double prev = exp_integral_e1_scaled(1e-8);
    for (double x : log_grid(1e-8, 1e8, 500))
    {
        const double s = exp_integral_e1_scaled(x);
        CHECK(s <= prev);
        prev = s;
    }
}

TEST_CASE("E1 bounds")
{
    for (double x : log_grid(1e-8, 700.0, 300))
    {
        const double e1 = exp_integral_e1(x);
        const double lower = 0.5 * std::exp(-x) * std::log1p(2.0 / x);
        const double upper = std::exp(-x) * std::log1p(1.0 / x);
        CHECK(lower <= e1 * (1 + 1e-14));
        CHECK(e1 <= upper * (1 + 1e-14));
    }
}

TEST_CASE("upper incomplete gamma, integer order")
{
    CHECK_THAT(upper_incomplete_gamma_int(0, 1.0), WithinRel(0.21938393439552027368, 1e-13));
    CHECK_THAT(upper_incomplete_gamma_int(-1, 1.0), WithinRel(0.14849550677592204792, 1e-12));
    CHECK_THAT(upper_incomplete_gamma_int(1, 2.0), WithinRel(std::exp(-2.0), 1e-15));
    CHECK_THAT(upper_incomplete_gamma_int(-2, 0.5), WithinRel(0.88641745710071382948, 1e-12));
    CHECK_THAT(upper_incomplete_gamma_int(-3, 20.0), WithinRel(1.08054274903865635673e-14, 1e-11));
}

TEST_CASE("incomplete gamma recurrence on [0.01, 50]")
{
    for (int a : {0, -1, -2, -3})
        for (double x : log_grid(0.01, 50.0, 120))
        {
            const double lhs = upper_incomplete_gamma_int(a + 1, x);
            const double rhs = a * upper_incomplete_gamma_int(a, x) + std::pow(x, a) * std::exp(-x);
            CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(lhs));
        }
}

TEST_CASE("gamma Stieltjes kernel")
{
    CHECK_THAT(gamma_stieltjes(3, 0.5), WithinRel(0.1826819145302331543, 1e-12));
    CHECK_THAT(gamma_stieltjes(4, 7.0), WithinRel(0.65578805333412199289, 1e-12));
    CHECK_THAT(gamma_stieltjes(1, 1.0), WithinRel(0.59634736232319407434, 1e-13));
    // Continuity across the regime switch at z = 1.
    for (int t = 1; t <= 6; ++t)
        CHECK_THAT(gamma_stieltjes(t, 1.0 - 1e-12), WithinRel(gamma_stieltjes(t, 1.0), 1e-10));
    // Equals z^t e^z Gamma(1 - t, z).
    for (int t = 1; t <= 4; ++t)
        for (double z : {0.05, 0.7, 2.0, 9.0})
            CHECK_THAT(gamma_stieltjes(t, z),
                       WithinRel(std::pow(z, t) * std::exp(z) * upper_incomplete_gamma_int(1 - t, z), 1e-9));
}

TEST_CASE("digamma at integers")
{
    CHECK_THAT(digamma_int(1), WithinAbs(-0.5772156649, 1e-10));
    CHECK_THAT(digamma_int(2), WithinAbs(1.0 - euler_gamma, 1e-15));
    CHECK_THAT(digamma_int(5), WithinRel(1.50611766843180047273, 1e-14));
    CHECK_THAT(digamma_int(5), WithinAbs(-euler_gamma + 25.0 / 12.0, 1e-15));
    for (int n = 1; n < 200; ++n)
        CHECK_THAT(digamma_int(n + 1) - digamma_int(n), WithinAbs(1.0 / n, 4 * std::numeric_limits<double>::epsilon() * std::abs(digamma_int(n + 1)) + 1e-16));
}

TEST_CASE("Erlang cdf against boost gamma_p")
{
    for (int t = 1; t <= 8; ++t)
        for (double y : log_grid(1e-3, 80.0, 60))
            CHECK_THAT(regularized_lower_gamma_int(t, y), WithinAbs(boost::math::gamma_p(t, y), 1e-14));
    CHECK(regularized_lower_gamma_int(3, 0.0) == 0.0);
}
