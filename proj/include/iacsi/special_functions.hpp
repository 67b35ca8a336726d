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

#ifndef IACSI_SPECIAL_FUNCTIONS_HPP
#define IACSI_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

// Scalar special functions used by the closed-form metrics.
//
// Every function is pure. Integer-order incomplete gamma functions are all that
// the Erlang-mixture expressions require, so no general real-order code lives here.

namespace iacsi::special
{

// Euler-Mascheroni constant C.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

namespace detail
{
inline constexpr double tiny = 1.0e-300;
inline constexpr double eps = 1.0e-16;
inline constexpr int max_iter = 10000;

inline void require_positive(double x, const char *fn)
{
    if (!(x > 0.0))
        throw std::domain_error(std::string(fn) + ": argument must be > 0, got " + std::to_string(x));
}

// Modified Lentz evaluation of the Legendre continued fraction
//   Gamma(a, x) = e^{-x} x^a * cf(a, x),
// valid for any real a; converges quickly once x >= 1.
inline double upper_gamma_cf(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= max_iter; ++i)
    {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps)
            return h;
    }
    throw std::runtime_error("upper_gamma_cf: continued fraction failed to converge");
}

// E1(x) for 0 < x < 1 by its power series.
inline double e1_series(double x)
{
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k <= max_iter; ++k)
    {
        term *= -x / static_cast<double>(k);
        const double contrib = -term / static_cast<double>(k);
        sum += contrib;
        if (std::abs(contrib) < eps * std::abs(sum))
            break;
    }
    return -euler_gamma - std::log(x) + sum;
}

// Below this point the series is used, above it the continued fraction.
inline constexpr double e1_switch = 1.0;
} // namespace detail

// E1(x) = int_x^inf e^{-t}/t dt. Underflows to zero for x beyond ~745.
inline double exp_integral_e1(double x)
{
    detail::require_positive(x, "exp_integral_e1");
    if (x < detail::e1_switch)
        return detail::e1_series(x);
    return std::exp(-x) * detail::upper_gamma_cf(0.0, x);
}

// e^x E1(x), finite for all x > 0.
inline double exp_integral_e1_scaled(double x)
{
    detail::require_positive(x, "exp_integral_e1_scaled");
    if (x < detail::e1_switch)
        return std::exp(x) * detail::e1_series(x);
    return detail::upper_gamma_cf(0.0, x);
}

/// e^x Gamma(a, x) for integer a <= 1 and x > 0.
///
/// For x < 1 the value is built from E1 by the downward recurrence
/// Gamma(a, x) = (Gamma(a+1, x) - x^a e^{-x}) / a, which is well conditioned there.
/// For x >= 1 the recurrence loses about log10(x/|a|) digits per step, so the
/// continued fraction is used instead.
inline double upper_incomplete_gamma_int_scaled(int a, double x)
{
    if (a > 1)
        throw std::domain_error("upper_incomplete_gamma_int: order must be <= 1, got " + std::to_string(a));
    detail::require_positive(x, "upper_incomplete_gamma_int");
    if (a == 1)
        return 1.0;
    if (x >= detail::e1_switch)
        return std::pow(x, a) * detail::upper_gamma_cf(static_cast<double>(a), x);
    double g = exp_integral_e1_scaled(x); // order 0
    for (int order = -1; order >= a; --order)
        g = (g - std::pow(x, order)) / static_cast<double>(order);
    return g;
}

// Gamma(a, x) for integer a <= 1 and x > 0.
inline double upper_incomplete_gamma_int(int a, double x)
{
    if (a == 1)
    {
        detail::require_positive(x, "upper_incomplete_gamma_int");
        return std::exp(-x);
    }
    if (a == 0)
        return exp_integral_e1(x);
    return std::exp(-x) * upper_incomplete_gamma_int_scaled(a, x);
}

/// E[z / (X + z)] for X ~ Gamma(t, 1), equal to z^t e^z Gamma(1 - t, z).
///
/// This is the kernel of the Laplace-Stieltjes averages in the SER and ergodic-rate
/// expressions. The value lies in (0, 1) and tends to 1 - t/z for large z.
inline double gamma_stieltjes(int t, double z)
{
    if (t < 1)
        throw std::domain_error("gamma_stieltjes: shape must be >= 1, got " + std::to_string(t));
    detail::require_positive(z, "gamma_stieltjes");
    if (z >= detail::e1_switch)
        return z * detail::upper_gamma_cf(static_cast<double>(1 - t), z);
    // Upward in t: S_{n+1} = z (1 - S_n) / n, contracting for z < 1.
    double s = z * exp_integral_e1_scaled(z);
    for (int n = 1; n < t; ++n)
        s = z * (1.0 - s) / static_cast<double>(n);
    return s;
}

// psi(n) = -C + sum_{m=1}^{n-1} 1/m.
inline double digamma_int(int n)
{
    if (n < 1)
        throw std::domain_error("digamma_int: argument must be >= 1, got " + std::to_string(n));
    double h = 0.0;
    for (int m = 1; m < n; ++m)
        h += 1.0 / static_cast<double>(m);
    return h - euler_gamma;
}

inline double log_factorial(int n)
{
    if (n < 0)
        throw std::domain_error("log_factorial: negative argument");
    double s = 0.0;
    for (int m = 2; m <= n; ++m)
        s += std::log(static_cast<double>(m));
    return s;
}

// Regularized lower incomplete gamma P(t, y) for integer shape t >= 1 (Erlang cdf).
inline double regularized_lower_gamma_int(int t, double y)
{
    if (t < 1)
        throw std::domain_error("regularized_lower_gamma_int: shape must be >= 1");
    if (!(y > 0.0))
        return 0.0;
    if (t == 1)
        return -std::expm1(-y);
    if (y < static_cast<double>(t))
    {
        // e^{-y} sum_{n >= t} y^n / n!, no cancellation below the mode.
        double term = std::exp(static_cast<double>(t) * std::log(y) - y - log_factorial(t));
        double sum = term;
        for (int n = t + 1; n < t + detail::max_iter; ++n)
        {
            term *= y / static_cast<double>(n);
            sum += term;
            if (term < detail::eps * sum)
                break;
        }
        return sum;
    }
    // 1 - e^{-y} sum_{n < t} y^n / n!
    double term = std::exp(-y);
    double sum = term;
    for (int n = 1; n < t; ++n)
    {
        term *= y / static_cast<double>(n);
        sum += term;
    }
    return 1.0 - sum;
}

} // namespace iacsi::special

#endif
