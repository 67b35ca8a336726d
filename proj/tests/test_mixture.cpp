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

#include <iacsi/mixture.hpp>

#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace iacsi;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

double gamma_pdf(double x, int shape, double scale)
{
    if (x < 0.0)
        return 0.0;
    if (x == 0.0)
        return shape == 1 ? 1.0 / scale : 0.0;
    return std::exp((shape - 1) * std::log(x / scale) - x / scale - std::lgamma(shape)) / scale;
}

double gk(const std::function<double(double)> &f, double lo, double hi)
{
    if (hi <= lo)
        return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-10);
}

// Density of a sum of independent gamma variables by direct numerical convolution.
double convolution_pdf(const SourceSpec &spec, double x)
{
    const std::size_t K = spec.count();
    if (K == 1)
        return gamma_pdf(x, spec.shapes[0], spec.scales[0]);
    auto pair = [&](std::size_t a, std::size_t b, double y) {
        return gk([&](double u) { return gamma_pdf(u, spec.shapes[a], spec.scales[a]) *
                                         gamma_pdf(y - u, spec.shapes[b], spec.scales[b]); },
                  0.0, y);
    };
    if (K == 2)
        return pair(0, 1, x);
    return gk([&](double y) { return pair(0, 1, y) * gamma_pdf(x - y, spec.shapes[2], spec.scales[2]); }, 0.0, x);
}

SourceSpec random_spec(std::mt19937_64 &gen, int K, int max_shape, double decades)
{
    std::uniform_int_distribution<int> shape(1, max_shape);
    std::uniform_real_distribution<double> expo(-decades, 0.0);
    SourceSpec s;
    for (int q = 0; q < K; ++q)
    {
        s.shapes.push_back(shape(gen));
        s.scales.push_back(std::pow(10.0, expo(gen)));
    }
    // The density is scale-covariant; pinning the widest source at 1 keeps values O(1).
    const double top = *std::max_element(s.scales.begin(), s.scales.end());
    for (double &v : s.scales)
        v /= top;
    return s;
}

double pdf_integral(const ErlangMixture &m, double upper)
{
    double lo = 0.0;
    double total = 0.0;
    double smallest = upper;
    for (const auto &c : m.components())
        smallest = std::min(smallest, c.scale);
    for (double hi = smallest; lo < upper; hi *= 4.0)
    {
        hi = std::min(hi, upper);
        total += gk([&](double x) { return mixture_pdf(m, x); }, lo, hi);
        lo = hi;
    }
    return total;
}

} // namespace

TEST_CASE("two exponentials give the hypoexponential density")
{
    const SourceSpec spec{{1, 1}, {1.0, 0.5}};
    const ErlangMixture m = build_mixture(spec);
    CHECK_THAT(mixture_pdf(m, 0.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(mixture_pdf(m, 1.0), WithinRel(0.46508831586965925940, 1e-14));
    CHECK_THAT(mixture_cdf(m, 1.0), WithinRel(0.39957640089372804870, 1e-14));
    CHECK(mixture_cdf(m, 0.0) == 0.0);
    CHECK_THAT(mixture_cdf(m, 200.0), WithinAbs(1.0, 1e-9));
    for (double x = 0.0; x < 10.0; x += 0.37)
        CHECK_THAT(mixture_pdf(m, x), WithinAbs(2.0 * (std::exp(-x) - std::exp(-2.0 * x)), 1e-14));
}

TEST_CASE("two-source weights reduce to the partial fraction")
{
    const SourceSpec spec{{1, 1}, {3.0, 0.7}};
    CHECK_THAT(xi_weight(spec, 0, 1), WithinRel(3.0 / (3.0 - 0.7), 1e-15));
    CHECK_THAT(xi_weight(spec, 1, 1), WithinRel(0.7 / (0.7 - 3.0), 1e-15));
}

TEST_CASE("three-source single-shape weights are the hypoexponential coefficients")
{
    const std::vector<double> th{2.0, 0.5, 0.11};
    const SourceSpec spec{{1, 1, 1}, th};
    for (std::size_t i = 0; i < 3; ++i)
    {
        double expected = 1.0;
        for (std::size_t l = 0; l < 3; ++l)
            if (l != i)
                expected *= th[i] / (th[i] - th[l]);
        CHECK_THAT(xi_weight(spec, i, 1), WithinRel(expected, 1e-13));
    }
}

TEST_CASE("weight preconditions")
{
    CHECK_THROWS_AS(xi_weight(SourceSpec{{1, 2}, {1.0, 1.0}}, 0, 1), DuplicateScaleError);
    CHECK_THROWS_AS(xi_weight(SourceSpec{{2}, {1.0}}, 0, 1), ConfigError);
    CHECK_THROWS_AS(xi_weight(SourceSpec{{2, 1}, {1.0, 2.0}}, 0, 3), ConfigError);
    CHECK_THROWS_AS(build_mixture(SourceSpec{{1, 1}, {1.0, -1.0}}), ConfigError);
}

TEST_CASE("frozen convolution values")
{
    const ErlangMixture m = build_mixture(SourceSpec{{2, 1}, {1.0, 3.0}});
    CHECK_THAT(mixture_pdf(m, 1.0), WithinRel(0.077549181466039035825, 1e-13));
    CHECK_THAT(mixture_pdf(m, 4.0), WithinRel(0.14732984664277608175, 1e-13));
}

TEST_CASE("close scales match the convolution oracle")
{
    const double th = 0.8;
    const SourceSpec spec{{2, 1}, {th, th * (1.0 + 1e-3)}};
    const ErlangMixture m = build_mixture(spec);
    for (double x = 0.05; x < 12.0; x += 0.4)
        CHECK_THAT(mixture_pdf(m, x), WithinAbs(convolution_pdf(spec, x), 1e-6));
}

TEST_CASE("single and empty specs")
{
    const ErlangMixture one = build_mixture(SourceSpec{{3, 0}, {2.0, 5.0}});
    REQUIRE(one.components().size() == 1);
    CHECK(one.components()[0].shape == 3);
    CHECK(one.components()[0].weight == 1.0);

    const ErlangMixture none = build_mixture(SourceSpec{});
    CHECK(none.empty());
    CHECK(mixture_cdf(none, 0.0) == 1.0);
    CHECK(mixture_cdf(none, 3.0) == 1.0);
    CHECK(none.laplace(2.0) == 1.0);
    CHECK(none.mean() == 0.0);
}

TEST_CASE("equal scales merge and near-equal scales are spread")
{
    const SourceSpec merged = normalize_sources(SourceSpec{{1, 2}, {2.0, 2.0 * (1 + 1e-12)}});
    REQUIRE(merged.count() == 1);
    CHECK(merged.shapes[0] == 3);

    const SourceSpec spread = normalize_sources(SourceSpec{{1, 1}, {1.0, 1.0 + 1e-8}});
    REQUIRE(spread.count() == 2);
    CHECK(spread.scales[1] / spread.scales[0] - 1.0 > 1.9e-6);

    // A perturbed pair stays within a relative scale error of 1e-6 of the exact law.
    const ErlangMixture m = build_mixture(SourceSpec{{1, 1}, {1.0, 1.0 + 1e-8}});
    CHECK_THAT(m.weight_sum(), WithinAbs(1.0, 1e-9));
    for (double x : {0.3, 1.0, 2.5, 6.0})
        CHECK_THAT(mixture_pdf(m, x), WithinAbs(x * std::exp(-x), 2e-5));
}

TEST_CASE("hypoexponential formula equals the mixture for unit shapes")
{
    const std::vector<double> rates{1.0, 2.5, 0.3, 7.0};
    CHECK_THAT(hypoexp_pdf(std::vector<double>{1.0}, 0.0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(hypoexp_pdf(std::vector<double>{1.0, 2.0}, 1.0), WithinRel(0.46508831586965925940, 1e-14));
    CHECK_THROWS_AS(hypoexp_pdf(std::vector<double>{1.0, 1.0}, 1.0), DuplicateScaleError);
    SourceSpec spec;
    for (double r : rates)
    {
        spec.shapes.push_back(1);
        spec.scales.push_back(1.0 / r);
    }
    const ErlangMixture m = build_mixture(spec);
    for (int n = 0; n < 100; ++n)
    {
        const double x = 0.1 * n;
        CHECK_THAT(mixture_pdf(m, x), WithinAbs(hypoexp_pdf(rates, x), 1e-10));
    }
}

TEST_CASE("weights sum to one and the density normalizes for random specs")
{
    std::mt19937_64 gen(20240611);
    for (int K : {2, 3, 4})
        for (int rep = 0; rep < 30; ++rep)
        {
            const SourceSpec spec = random_spec(gen, K, 3, 4.0);
            const ErlangMixture m = build_mixture(spec);
            INFO("K = " << K << " rep = " << rep);
            CHECK_THAT(m.weight_sum(), WithinAbs(1.0, 1e-9));
            const double mean = m.mean();
            CHECK_THAT(pdf_integral(m, 200.0 * mean), WithinAbs(1.0, 1e-6));
            double lowest = 0.0;
            for (int n = 0; n < 1000; ++n)
                lowest = std::min(lowest, mixture_pdf(m, 50.0 * mean * n / 999.0));
            CHECK(lowest >= -1e-9);
            CHECK_THAT(mixture_cdf(m, 1e4 * mean), WithinAbs(1.0, 1e-9));
        }
}

TEST_CASE("mixture density matches brute-force convolution for random specs")
{
    std::mt19937_64 gen(77);
    for (int K : {2, 3})
        for (int rep = 0; rep < 4; ++rep)
        {
            const SourceSpec spec = random_spec(gen, K, 2, 1.0);
            const ErlangMixture m = build_mixture(spec);
            const double mean = m.mean();
            for (int n = 1; n <= 12; ++n)
            {
                const double x = 10.0 * mean * n / 12.0;
                CHECK_THAT(mixture_pdf(m, x), WithinAbs(convolution_pdf(spec, x), 1e-6));
            }
        }
}

TEST_CASE("mean equals the sum of source means under both conventions")
{
    const SourceSpec spec{{2, 3, 1}, {0.4, 1.7, 0.05}};
    CHECK_THAT(build_mixture(spec, ScaleConvention::per_stream_scale).mean(),
               WithinRel(2 * 0.4 + 3 * 1.7 + 0.05, 1e-9));
    CHECK_THAT(build_mixture(spec, ScaleConvention::per_source_mean).mean(), WithinRel(0.4 + 1.7 + 0.05, 1e-9));
}

TEST_CASE("clustered scales fall back to extended precision")
{
    const SourceSpec spec{{2, 2, 2}, {1.0, 1.01, 1.02}};
    const ErlangMixture m = build_mixture(spec);
    // Weights reach 1e10 here, so the achievable sum error is set by their rounding to double.
    double largest = 0.0;
    for (const auto &c : m.components())
        largest = std::max(largest, std::abs(c.weight));
    CHECK(largest > 1e9);
    CHECK(m.weight_sum_error() <= 8.0 * std::numeric_limits<double>::epsilon() * largest);
    const SourceSpec norm = normalize_sources(spec);
    CHECK_THAT(m.components()[0].weight, WithinRel(xi_weight_extended(norm, 0, 1), 1e-15));
    for (double x : {2.0, 5.0, 9.0})
        CHECK_THAT(mixture_pdf(m, x), WithinAbs(convolution_pdf(spec, x), 1e-7));
}

TEST_CASE("double-double arithmetic")
{
    const DoubleDouble third = DoubleDouble(1.0) / DoubleDouble(3.0);
    const DoubleDouble back = third * DoubleDouble(3.0) - DoubleDouble(1.0);
    CHECK(std::abs(back.hi + back.lo) < 1e-30);
    const DoubleDouble big = DoubleDouble(1e16) + DoubleDouble(1.0) - DoubleDouble(1e16);
    CHECK(to_double(big) == 1.0);
}

TEST_CASE("direct sampling agrees with the mixture cdf (Kolmogorov-Smirnov)")
{
    const SourceSpec spec{{2, 1, 3}, {0.6, 2.0, 0.15}};
    const ErlangMixture m = build_mixture(spec);
    std::mt19937_64 gen(99);
    const std::size_t n = 1000000;
    std::vector<double> draws(n);
    for (double &x : draws)
    {
        x = 0.0;
        for (std::size_t q = 0; q < spec.count(); ++q)
            x += std::gamma_distribution<double>(spec.shapes[q], spec.scales[q])(gen);
    }
    std::sort(draws.begin(), draws.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double F = mixture_cdf(m, draws[i]);
        d = std::max({d, F - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - F});
    }
    CHECK(d < 1.62762 / std::sqrt(static_cast<double>(n)));
}
