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

#ifndef IACSI_MIXTURE_HPP
#define IACSI_MIXTURE_HPP

#include "double_double.hpp"
#include "error.hpp"
#include "numeric.hpp"
#include "special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

// Erlang mixtures: the exact law of a sum of independent gamma variables with
// integer shapes and distinct scales, written as a signed-weight sum of Erlang
// densities. The residual interference and the signal-plus-interference power
// are both of this form.

namespace iacsi
{

struct GammaComponent
{
    int shape = 1;      // t >= 1
    double scale = 1.0; // > 0
    double weight = 0.0;
};

// Independent gamma sources: source q contributes Gamma(shapes[q], scale).
// How `scales` maps to the gamma scale parameter is set by ScaleConvention.
struct SourceSpec
{
    std::vector<int> shapes;
    std::vector<double> scales;

    std::size_t count() const { return shapes.size(); }
};

/// Two readings of the per-source scale in the interference law.
///
/// per_stream_scale: source q is Gamma(shape_q, scale_q), i.e. each of the shape_q
/// stream terms has mean scale_q. This is what the quantization-cell model yields
/// and is the default (selected by the Monte Carlo calibration test).
///
/// per_source_mean: source q is Gamma(shape_q, scale_q / shape_q), so the whole
/// source has mean scale_q.
enum class ScaleConvention
{
    per_stream_scale,
    per_source_mean
};

inline constexpr ScaleConvention default_scale_convention = ScaleConvention::per_stream_scale;

// Relative scale gap below which two sources are merged into one (summed shape).
inline constexpr double merge_relative_gap = 1.0e-9;
// Relative gap below which distinct scales are pushed apart by +-perturb_factor.
inline constexpr double perturb_relative_gap = 1.0e-6;
inline constexpr double perturb_factor = 1.0e-6;
// |sum of weights - 1| above which the weights are recomputed in double-double.
inline constexpr double weight_sum_tolerance = 1.0e-10;

class ErlangMixture
{
  public:
    // An empty mixture is the point mass at zero (no residual interference).
    ErlangMixture() = default;
    explicit ErlangMixture(std::vector<GammaComponent> components, double weight_sum_error = 0.0)
        : components_(std::move(components)), weight_sum_error_(weight_sum_error)
    {
    }

    const std::vector<GammaComponent> &components() const { return components_; }
    bool empty() const { return components_.empty(); }
    double weight_sum_error() const { return weight_sum_error_; }

    double weight_sum() const
    {
        CompensatedSum<> s;
        for (const auto &c : components_)
            s += c.weight;
        return s.value();
    }

    // Sum of w * f(shape, scale); every closed-form metric is such an average.
    template <typename F>
    double expect(F &&f) const
    {
        CompensatedSum<> s;
        for (const auto &c : components_)
            s += c.weight * f(c.shape, c.scale);
        return s.value();
    }

    double mean() const
    {
        return expect([](int t, double theta) { return static_cast<double>(t) * theta; });
    }

    // E[exp(-s X)].
    double laplace(double s) const
    {
        if (empty())
            return 1.0;
        return expect([s](int t, double theta) { return std::pow(1.0 + theta * s, -t); });
    }

  private:
    std::vector<GammaComponent> components_;
    double weight_sum_error_ = 0.0;
};

namespace mixture_detail
{

inline double binomial(int n, int k)
{
    double r = 1.0;
    for (int j = 1; j <= k; ++j)
        r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
    return r;
}

template <typename Real>
struct Accumulator
{
    void add(Real x) { sum += x; }
    Real value() const { return sum; }
    Real sum{0.0};
};

template <>
struct Accumulator<double>
{
    void add(double x) { sum += x; }
    double value() const { return sum.value(); }
    CompensatedSum<> sum;
};

template <typename Real>
Real ipow(Real base, int n)
{
    Real r(1.0);
    for (int k = 0; k < n; ++k)
        r *= base;
    return r;
}

/// Weight of the (i, t) Erlang component.
///
/// The other sources o_1 .. o_{K-1} are visited in index order; the nested
/// indices eta_i >= l_1 >= ... >= l_{K-2} >= t split the excess eta_i - t into
/// n_1 = eta_i - l_1, n_m = l_{m-1} - l_m, n_{K-1} = l_{K-2} - t, and each path
/// contributes prod_o C(eta_o + n_o - 1, n_o) (theta_o/(theta_o - theta_i))^{n_o}.
/// The powers of scales and of (1/theta_i - 1/theta_o) are regrouped into the
/// dimensionless ratios theta_i/(theta_o - theta_i) so no product of raw scales
/// is formed.
template <typename Real>
Real xi_weight_impl(const SourceSpec &spec, std::size_t i, int t)
{
    const std::size_t K = spec.count();
    const int eta_i = spec.shapes[i];
    int total_shape = 0;
    for (int s : spec.shapes)
        total_shape += s;

    std::vector<std::size_t> others;
    others.reserve(K - 1);
    for (std::size_t q = 0; q < K; ++q)
        if (q != i)
            others.push_back(q);

    std::vector<Real> p(others.size());
    Real prefactor(((total_shape - eta_i) % 2 == 0) ? 1.0 : -1.0);
    for (std::size_t m = 0; m < others.size(); ++m)
    {
        const std::size_t o = others[m];
        const Real gap = Real(spec.scales[o]) - Real(spec.scales[i]);
        p[m] = Real(spec.scales[o]) / gap;
        prefactor *= ipow(Real(spec.scales[i]) / gap, spec.shapes[o]);
    }

    // Cache of p_m^n * C(eta_o + n - 1, n) for n in [0, eta_i - t].
    const int excess = eta_i - t;
    std::vector<std::vector<Real>> factor(others.size(), std::vector<Real>(static_cast<std::size_t>(excess) + 1));
    for (std::size_t m = 0; m < others.size(); ++m)
    {
        const int eta_o = spec.shapes[others[m]];
        Real pw(1.0);
        for (int n = 0; n <= excess; ++n)
        {
            factor[m][static_cast<std::size_t>(n)] = pw * Real(binomial(eta_o + n - 1, n));
            pw *= p[m];
        }
    }

    Accumulator<Real> acc;
    const std::size_t last = others.size() - 1;
    // m indexes the other source being assigned; remaining = l_{m-1} - t.
    auto recurse = [&](auto &self, std::size_t m, int l_prev, Real partial) -> void {
        if (m == last)
        {
            acc.add(partial * factor[m][static_cast<std::size_t>(l_prev - t)]);
            return;
        }
        for (int l = t; l <= l_prev; ++l)
            self(self, m + 1, l, partial * factor[m][static_cast<std::size_t>(l_prev - l)]);
    };
    recurse(recurse, 0, eta_i, Real(1.0));
    return prefactor * acc.value();
}

inline void validate_spec(const SourceSpec &spec)
{
    if (spec.shapes.size() != spec.scales.size())
        throw ConfigError("SourceSpec: shapes and scales differ in length");
    for (std::size_t q = 0; q < spec.count(); ++q)
    {
        if (spec.shapes[q] < 0)
            throw ConfigError("SourceSpec: negative shape");
        if (!(spec.scales[q] > 0.0) || !std::isfinite(spec.scales[q]))
            throw ConfigError("SourceSpec: scales must be positive and finite");
    }
}

} // namespace mixture_detail

/// Component weight Xi(i, t) for a spec whose `scales` are gamma scale parameters.
/// Requires at least two sources with pairwise-distinct scales and 1 <= t <= shape_i.
inline double xi_weight(const SourceSpec &spec, std::size_t i, int t)
{
    mixture_detail::validate_spec(spec);
    if (spec.count() < 2)
        throw ConfigError("xi_weight: at least two sources required (a single source is one Erlang with weight 1)");
    if (i >= spec.count() || t < 1 || t > spec.shapes[i])
        throw ConfigError("xi_weight: component index out of range");
    for (std::size_t a = 0; a < spec.count(); ++a)
        for (std::size_t b = a + 1; b < spec.count(); ++b)
            if (spec.scales[a] == spec.scales[b])
                throw DuplicateScaleError("xi_weight: sources " + std::to_string(a) + " and " + std::to_string(b) +
                                          " share a scale; merge them first");
    return mixture_detail::xi_weight_impl<double>(spec, i, t);
}

inline double xi_weight_extended(const SourceSpec &spec, std::size_t i, int t)
{
    return to_double(mixture_detail::xi_weight_impl<DoubleDouble>(spec, i, t));
}

/// Drops zero-shape sources, merges sources whose scales agree to merge_relative_gap
/// and spreads near-equal scales apart so the weight denominators stay bounded.
/// The spreading changes the distribution by a relative scale error of at most
/// perturb_factor.
inline SourceSpec normalize_sources(const SourceSpec &in)
{
    mixture_detail::validate_spec(in);
    std::vector<std::pair<double, int>> src;
    for (std::size_t q = 0; q < in.count(); ++q)
        if (in.shapes[q] > 0)
            src.emplace_back(in.scales[q], in.shapes[q]);
    std::stable_sort(src.begin(), src.end(), [](auto &a, auto &b) { return a.first < b.first; });

    std::vector<std::pair<double, int>> merged;
    for (const auto &s : src)
    {
        if (!merged.empty())
        {
            auto &prev = merged.back();
            if (std::abs(s.first - prev.first) <= merge_relative_gap * std::max(s.first, prev.first))
            {
                prev.second += s.second;
                continue;
            }
        }
        merged.push_back(s);
    }
    for (std::size_t q = 1; q < merged.size(); ++q)
    {
        double &lo = merged[q - 1].first;
        double &hi = merged[q].first;
        if ((hi - lo) < perturb_relative_gap * hi)
        {
            lo *= 1.0 - perturb_factor;
            hi *= 1.0 + perturb_factor;
        }
    }

    SourceSpec out;
    for (const auto &[scale, shape] : merged)
    {
        out.shapes.push_back(shape);
        out.scales.push_back(scale);
    }
    return out;
}

// Converts source scales to gamma scale parameters according to the convention.
inline SourceSpec apply_convention(const SourceSpec &spec, ScaleConvention convention)
{
    SourceSpec out = spec;
    if (convention == ScaleConvention::per_source_mean)
        for (std::size_t q = 0; q < out.count(); ++q)
            if (out.shapes[q] > 0)
                out.scales[q] /= static_cast<double>(out.shapes[q]);
    return out;
}

/// Builds the Erlang mixture of the sum of the spec's sources.
///
/// An empty spec (every source perfect or zero-shape) returns the empty mixture,
/// i.e. the point mass at zero.
inline ErlangMixture build_mixture(const SourceSpec &spec, ScaleConvention convention = default_scale_convention)
{
    const SourceSpec norm = normalize_sources(apply_convention(spec, convention));
    if (norm.count() == 0)
        return ErlangMixture{};
    if (norm.count() == 1)
        return ErlangMixture({GammaComponent{norm.shapes[0], norm.scales[0], 1.0}});

    auto assemble = [&](auto weight_fn) {
        std::vector<GammaComponent> comps;
        for (std::size_t i = 0; i < norm.count(); ++i)
            for (int t = 1; t <= norm.shapes[i]; ++t)
                comps.push_back({t, norm.scales[i], weight_fn(i, t)});
        return comps;
    };

    auto comps = assemble([&](std::size_t i, int t) { return mixture_detail::xi_weight_impl<double>(norm, i, t); });
    ErlangMixture m(comps);
    double err = std::abs(m.weight_sum() - 1.0);
    if (err > weight_sum_tolerance)
    {
        comps = assemble([&](std::size_t i, int t) { return xi_weight_extended(norm, i, t); });
        m = ErlangMixture(comps);
        err = std::abs(m.weight_sum() - 1.0);
    }
    return ErlangMixture(std::move(comps), err);
}

// Erlang density v(x, t, theta) = x^{t-1} e^{-x/theta} / (theta^t Gamma(t)).
inline double erlang_pdf(double x, int t, double theta)
{
    if (x < 0.0)
        return 0.0;
    if (x == 0.0)
        return t == 1 ? 1.0 / theta : 0.0;
    const double y = x / theta;
    return std::exp(static_cast<double>(t - 1) * std::log(y) - y - special::log_factorial(t - 1)) / theta;
}

inline double mixture_pdf(const ErlangMixture &m, double x)
{
    return m.expect([x](int t, double theta) { return erlang_pdf(x, t, theta); });
}

inline double mixture_cdf(const ErlangMixture &m, double x)
{
    if (m.empty())
        return x >= 0.0 ? 1.0 : 0.0;
    if (x <= 0.0)
        return 0.0;
    return m.expect([x](int t, double theta) { return special::regularized_lower_gamma_int(t, x / theta); });
}

/// Hypoexponential density of a sum of independent exponentials with the given
/// distinct rates: prod(lambda) * sum_i exp(-lambda_i x) / prod_{l != i}(lambda_l - lambda_i).
inline double hypoexp_pdf(std::span<const double> rates, double x)
{
    if (rates.empty())
        throw ConfigError("hypoexp_pdf: at least one rate required");
    for (std::size_t a = 0; a < rates.size(); ++a)
    {
        if (!(rates[a] > 0.0))
            throw ConfigError("hypoexp_pdf: rates must be positive");
        for (std::size_t b = a + 1; b < rates.size(); ++b)
            if (rates[a] == rates[b])
                throw DuplicateScaleError("hypoexp_pdf: duplicate rate");
    }
    if (x < 0.0)
        return 0.0;
    CompensatedSum<> s;
    for (std::size_t i = 0; i < rates.size(); ++i)
    {
        double coeff = 1.0;
        for (std::size_t l = 0; l < rates.size(); ++l)
        {
            coeff *= rates[l];
            if (l != i)
                coeff /= rates[l] - rates[i];
        }
        s += coeff * std::exp(-rates[i] * x);
    }
    return s.value();
}

} // namespace iacsi

#endif
