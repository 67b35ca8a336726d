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

#ifndef IACSI_ANALYSIS_HPP
#define IACSI_ANALYSIS_HPP

#include "error.hpp"
#include "mixture.hpp"
#include "numeric.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"
#include "system.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <vector>

// Closed-form outage, ergodic rate and SER of IA under quantized CSI, their
// perfect-CSI baselines, losses, and SNR-free floors and ceilings.
//
// SINR model for stream j of pair k: gamma = S / (1 + I) with S ~ kappa_kk Exp(1)
// and I the residual interference, an independent sum of gamma sources (one per
// transmitter with imperfect CSI). All metrics are stream-index-free.

namespace iacsi
{

struct AnalysisOptions
{
    ScaleConvention convention = default_scale_convention;
    QuadratureTolerance quadrature{};
};

namespace analysis_detail
{

inline void check_inputs(const SystemConfig &sys, const FeedbackConfig &fb, int k)
{
    require_feasible(sys);
    fb.validate(sys);
    if (k < 0 || k >= sys.K)
        throw ConfigError("pair index out of range");
}

inline void check_pair(const SystemConfig &sys, int k)
{
    sys.validate();
    if (k < 0 || k >= sys.K)
        throw ConfigError("pair index out of range");
}

inline bool all_perfect(const FeedbackConfig &fb, int k)
{
    for (int i = 0; i < fb.K; ++i)
        if (!fb.perfect(k, i))
            return false;
    return true;
}

inline void require_single_stream(const SystemConfig &sys)
{
    for (int dk : sys.d)
        if (dk != 1)
            throw ConfigError("single-stream expression requires d_k = 1 for every pair");
}

// Rates 1/scale of the imperfect interferers of pair k (single-stream case).
inline std::vector<double> interferer_rates(const SystemConfig &sys, const FeedbackConfig &fb, int k)
{
    std::vector<double> rates;
    for (int i = 0; i < sys.K; ++i)
        if (i != k && !fb.perfect(k, i))
            rates.push_back(1.0 / fb.scale(sys, k, i));
    return rates;
}

// Partial-fraction coefficients c_i = prod_{l != i} lambda_l / (lambda_l - lambda_i),
// so the hypoexponential density is sum_i c_i lambda_i e^{-lambda_i x}.
inline std::vector<double> hypoexp_coefficients(const std::vector<double> &rates)
{
    std::vector<double> c(rates.size(), 1.0);
    for (std::size_t i = 0; i < rates.size(); ++i)
        for (std::size_t l = 0; l < rates.size(); ++l)
            if (l != i)
            {
                if (rates[l] == rates[i])
                    throw DuplicateScaleError("single-stream expression: two interferers share a rate");
                c[i] *= rates[l] / (rates[l] - rates[i]);
            }
    return c;
}

inline double ln2() { return std::numbers::ln2; }

} // namespace analysis_detail

/// Residual-interference sources seen by pair k: transmitter i contributes shape d_i
/// (d_k - 1 for the pair's own inter-stream terms) with scale kappa_{k,i} rho_{k,i},
/// or alpha_{k,i} rho_{k,i} / d_i when xi_scales is set. Perfect links are omitted.
inline SourceSpec interference_spec(const SystemConfig &sys, const FeedbackConfig &fb, int k, bool xi_scales = false)
{
    SourceSpec spec;
    for (int i = 0; i < sys.K; ++i)
    {
        if (fb.perfect(k, i))
            continue;
        const int shape = i == k ? sys.streams(k) - 1 : sys.streams(i);
        if (shape == 0)
            continue;
        spec.shapes.push_back(shape);
        spec.scales.push_back(xi_scales ? fb.xi(sys, k, i) : fb.scale(sys, k, i));
    }
    return spec;
}

// Interference sources plus the desired signal (shape 1, scale kappa_kk or alpha_kk / d_k).
inline SourceSpec signal_plus_interference_spec(const SystemConfig &sys, const FeedbackConfig &fb, int k,
                                                bool xi_scales = false)
{
    SourceSpec spec = interference_spec(sys, fb, k, xi_scales);
    spec.shapes.push_back(1);
    spec.scales.push_back(xi_scales ? xi_signal(sys, k) : sys.kappa(k, k));
    return spec;
}

inline ErlangMixture interference_mixture(const SystemConfig &sys, const FeedbackConfig &fb, int k,
                                          const AnalysisOptions &opt = {})
{
    return build_mixture(interference_spec(sys, fb, k), opt.convention);
}

// ---------------------------------------------------------------------------
// Z(t, theta) = E[ln(1 + X)], X ~ Gamma(t, theta)

/// Finite-sum form in mu = 1/theta:
/// sum_{n=1}^{t} [(-1)^{n-1} mu^{n-1} e^mu E1(mu) + sum_{nu=1}^{n-1} (nu-1)! (-mu)^{n-nu-1}] / (n-1)!.
/// Alternating in mu, so it is only used for mu < 1.
inline double z_term_finite_sum(int t, double theta)
{
    if (t < 1 || !(theta > 0.0))
        throw std::domain_error("z_term: requires t >= 1 and theta > 0");
    const double mu = 1.0 / theta;
    const double e = special::exp_integral_e1_scaled(mu);
    CompensatedSum<> total;
    for (int n = 1; n <= t; ++n)
    {
        const double inv_fact = std::exp(-special::log_factorial(n - 1));
        const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
        total += inv_fact * sign * std::pow(mu, n - 1) * e;
        for (int nu = 1; nu < n; ++nu)
        {
            const double p = n - nu - 1;
            const double s = (n - nu - 1) % 2 == 0 ? 1.0 : -1.0;
            total += inv_fact * std::exp(special::log_factorial(nu - 1)) * s * std::pow(mu, p);
        }
    }
    return total.value();
}

/// Z(t, theta) = theta sum_{n=1}^{t} S_n(1/theta) with S_n(z) = E[z / (Y + z)], Y ~ Gamma(n, 1).
/// Every term is positive, so this is stable for all theta.
inline double z_term_stieltjes(int t, double theta)
{
    if (t < 1 || !(theta > 0.0))
        throw std::domain_error("z_term: requires t >= 1 and theta > 0");
    const double z = 1.0 / theta;
    CompensatedSum<> total;
    for (int n = 1; n <= t; ++n)
        total += special::gamma_stieltjes(n, z);
    return theta * total.value();
}

inline double z_term(int t, double theta)
{
    return 1.0 / theta < 1.0 ? z_term_finite_sum(t, theta) : z_term_stieltjes(t, theta);
}

// ---------------------------------------------------------------------------
// Outage

inline double outage_perfect(const SystemConfig &sys, int k, double gamma_th)
{
    analysis_detail::check_pair(sys, k);
    if (!(gamma_th >= 0.0))
        throw ConfigError("gamma_th must be >= 0");
    return -std::expm1(-gamma_th / sys.kappa(k, k));
}

/// P(gamma <= gamma_th) = 1 - e^{-gamma_th / kappa_kk} E[e^{-gamma_th I / kappa_kk}].
inline double outage_probability(const SystemConfig &sys, const FeedbackConfig &fb, int k, double gamma_th,
                                 const AnalysisOptions &opt = {})
{
    analysis_detail::check_inputs(sys, fb, k);
    if (!(gamma_th >= 0.0))
        throw ConfigError("gamma_th must be >= 0");
    const ErlangMixture m = interference_mixture(sys, fb, k, opt);
    if (m.empty())
        return outage_perfect(sys, k, gamma_th);
    const double s = gamma_th / sys.kappa(k, k);
    return 1.0 - std::exp(-s) * m.laplace(s);
}

/// Single-stream form: 1 - e^{-s} sum_i c_i lambda_i / (lambda_i + s), s = gamma_th / kappa_kk.
inline double outage_single_stream(const SystemConfig &sys, const FeedbackConfig &fb, int k, double gamma_th)
{
    analysis_detail::check_inputs(sys, fb, k);
    analysis_detail::require_single_stream(sys);
    if (!(gamma_th >= 0.0))
        throw ConfigError("gamma_th must be >= 0");
    const auto rates = analysis_detail::interferer_rates(sys, fb, k);
    if (rates.empty())
        return outage_perfect(sys, k, gamma_th);
    const auto c = analysis_detail::hypoexp_coefficients(rates);
    const double s = gamma_th / sys.kappa(k, k);
    CompensatedSum<> lt;
    for (std::size_t i = 0; i < rates.size(); ++i)
        lt += c[i] * rates[i] / (rates[i] + s);
    return 1.0 - std::exp(-s) * lt.value();
}

/// SNR-free outage limit: 1 - E[exp(-gamma_th I_xi / xi_L)], I_xi the interference
/// with scales alpha rho / d and xi_L = alpha_kk / d_k.
inline double outage_floor(const SystemConfig &sys, const FeedbackConfig &fb, int k, double gamma_th,
                           const AnalysisOptions &opt = {})
{
    analysis_detail::check_inputs(sys, fb, k);
    if (!(gamma_th >= 0.0))
        throw ConfigError("gamma_th must be >= 0");
    const ErlangMixture m = build_mixture(interference_spec(sys, fb, k, true), opt.convention);
    if (m.empty())
        return 0.0;
    return 1.0 - m.laplace(gamma_th / xi_signal(sys, k));
}

inline double outage_loss(const SystemConfig &sys, const FeedbackConfig &fb, int k, double gamma_th,
                          const AnalysisOptions &opt = {})
{
    return outage_probability(sys, fb, k, gamma_th, opt) - outage_perfect(sys, k, gamma_th);
}

// ---------------------------------------------------------------------------
// Ergodic rate (bits/s/Hz)

inline double ergodic_rate_perfect(const SystemConfig &sys, int k)
{
    analysis_detail::check_pair(sys, k);
    return special::exp_integral_e1_scaled(1.0 / sys.kappa(k, k)) / analysis_detail::ln2();
}

/// E[log2(1 + S/(1 + I))] = (E[ln(1 + S + I)] - E[ln(1 + I)]) / ln 2, each expectation
/// a weighted sum of Z-terms over the corresponding Erlang mixture.
inline double ergodic_rate(const SystemConfig &sys, const FeedbackConfig &fb, int k, const AnalysisOptions &opt = {})
{
    analysis_detail::check_inputs(sys, fb, k);
    if (analysis_detail::all_perfect(fb, k))
        return ergodic_rate_perfect(sys, k);
    const ErlangMixture total = build_mixture(signal_plus_interference_spec(sys, fb, k), opt.convention);
    const ErlangMixture interference = interference_mixture(sys, fb, k, opt);
    const double w1 = total.expect(z_term);
    const double w2 = interference.expect(z_term);
    return (w1 - w2) / analysis_detail::ln2();
}

/// Single-stream form with hypoexponential coefficients and e^lambda E1(lambda) terms.
inline double ergodic_rate_single_stream(const SystemConfig &sys, const FeedbackConfig &fb, int k)
{
    analysis_detail::check_inputs(sys, fb, k);
    analysis_detail::require_single_stream(sys);
    auto rates = analysis_detail::interferer_rates(sys, fb, k);
    if (rates.empty())
        return ergodic_rate_perfect(sys, k);
    auto weighted = [](const std::vector<double> &r) {
        const auto c = analysis_detail::hypoexp_coefficients(r);
        CompensatedSum<> s;
        for (std::size_t i = 0; i < r.size(); ++i)
            s += c[i] * special::exp_integral_e1_scaled(r[i]);
        return s.value();
    };
    const double w2 = weighted(rates);
    rates.push_back(1.0 / sys.kappa(k, k));
    const double w1 = weighted(rates);
    return (w1 - w2) / analysis_detail::ln2();
}

/// SNR-free rate limit: (E[ln(S_xi + I_xi)] - E[ln I_xi]) / ln 2 with
/// E[ln X] = psi(t) + ln theta for X ~ Gamma(t, theta).
inline double rate_ceiling(const SystemConfig &sys, const FeedbackConfig &fb, int k, const AnalysisOptions &opt = {})
{
    analysis_detail::check_inputs(sys, fb, k);
    const ErlangMixture interference = build_mixture(interference_spec(sys, fb, k, true), opt.convention);
    if (interference.empty())
        throw ConfigError("rate_ceiling: no residual interference, the rate grows without bound");
    const ErlangMixture total = build_mixture(signal_plus_interference_spec(sys, fb, k, true), opt.convention);
    auto log_moment = [](int t, double theta) { return special::digamma_int(t) + std::log(theta); };
    return (total.expect(log_moment) - interference.expect(log_moment)) / analysis_detail::ln2();
}

inline double rate_loss(const SystemConfig &sys, const FeedbackConfig &fb, int k, const AnalysisOptions &opt = {})
{
    return ergodic_rate_perfect(sys, k) - ergodic_rate(sys, fb, k, opt);
}

/// High-SNR, large-B rate with uniform B on the links of pair k:
/// B/(N-1) + [ln xi_L - C - sum w (psi(t) + ln(theta_xi / rho))] / ln 2.
/// The mixture weights depend only on scale ratios, which are B-free.
inline double rate_high_largeB(const SystemConfig &sys, const FeedbackConfig &fb, int k,
                               const AnalysisOptions &opt = {})
{
    analysis_detail::check_inputs(sys, fb, k);
    const double B = fb.row_uniform_bits(k);
    if (std::isnan(B) || std::isinf(B))
        throw ConfigError("rate_high_largeB: requires the same finite B on every link of the pair");
    const FeedbackConfig zero_bits = FeedbackConfig::uniform(sys.K, 0.0);
    const ErlangMixture interference = build_mixture(interference_spec(sys, zero_bits, k, true), opt.convention);
    if (interference.empty())
        throw ConfigError("rate_high_largeB: no residual interference");
    const double e_log_i =
        interference.expect([](int t, double theta) { return special::digamma_int(t) + std::log(theta); });
    return B / static_cast<double>(sys.dims() - 1) +
           (std::log(xi_signal(sys, k)) - special::euler_gamma - e_log_i) / analysis_detail::ln2();
}

// High-SNR perfect-CSI rate (ln(Upsilon xi_L) - C)/ln 2 minus rate_high_largeB.
inline double rate_loss_high_largeB(const SystemConfig &sys, const FeedbackConfig &fb, int k,
                                    const AnalysisOptions &opt = {})
{
    const double perfect_high = (std::log(sys.snr() * xi_signal(sys, k)) - special::euler_gamma) / analysis_detail::ln2();
    return perfect_high - rate_high_largeB(sys, fb, k, opt);
}

// ---------------------------------------------------------------------------
// Symbol error rate

/// sum over segments of a * int M(g / sin^2 phi) dphi, M the SINR moment generating
/// function E[exp(-s gamma)].
template <typename Mgf>
double ser_from_mgf(const Modulation &mod, Mgf &&mgf, const QuadratureTolerance &tol = {})
{
    mod.validate();
    const double g = mod.g();
    CompensatedSum<> total;
    for (const SerSegment &seg : mod.segments())
    {
        auto integrand = [&](double phi) {
            const double sn = std::sin(phi);
            if (sn == 0.0)
                return 0.0;
            return mgf(g / (sn * sn));
        };
        total += seg.a * integrate(integrand, seg.lo, seg.hi, tol);
    }
    return total.value();
}

inline double ser_perfect(const SystemConfig &sys, int k, const Modulation &mod, const AnalysisOptions &opt = {})
{
    analysis_detail::check_pair(sys, k);
    const double kappa = sys.kappa(k, k);
    return ser_from_mgf(mod, [kappa](double s) { return 1.0 / (1.0 + s * kappa); }, opt.quadrature);
}

/// E[exp(-s S/(1+I))] = E[(1 + I)/(c + I)], c = 1 + s kappa_kk. For I ~ Gamma(t, theta)
/// this is 1 - S_t(c/theta) + S_t(c/theta)/c with S_t(z) = z^t e^z Gamma(1-t, z).
inline double ser_average(const SystemConfig &sys, const FeedbackConfig &fb, int k, const Modulation &mod,
                          const AnalysisOptions &opt = {})
{
    analysis_detail::check_inputs(sys, fb, k);
    const ErlangMixture m = interference_mixture(sys, fb, k, opt);
    if (m.empty())
        return ser_perfect(sys, k, mod, opt);
    const double kappa = sys.kappa(k, k);
    auto mgf = [&](double s) {
        const double c = 1.0 + s * kappa;
        return m.expect([c](int t, double theta) {
            const double st = special::gamma_stieltjes(t, c / theta);
            return (1.0 - st) + st / c;
        });
    };
    return ser_from_mgf(mod, mgf, opt.quadrature);
}

// Single-stream form: hypoexponential coefficients with Gamma(0, z) = E1(z) terms.
inline double ser_single_stream(const SystemConfig &sys, const FeedbackConfig &fb, int k, const Modulation &mod,
                                const AnalysisOptions &opt = {})
{
    analysis_detail::check_inputs(sys, fb, k);
    analysis_detail::require_single_stream(sys);
    const auto rates = analysis_detail::interferer_rates(sys, fb, k);
    if (rates.empty())
        return ser_perfect(sys, k, mod, opt);
    const auto coeff = analysis_detail::hypoexp_coefficients(rates);
    const double kappa = sys.kappa(k, k);
    auto mgf = [&](double s) {
        const double c = 1.0 + s * kappa;
        CompensatedSum<> acc;
        for (std::size_t i = 0; i < rates.size(); ++i)
        {
            const double z = c * rates[i];
            acc += coeff[i] * (1.0 - (s * kappa / c) * z * special::upper_incomplete_gamma_int_scaled(0, z));
        }
        return acc.value();
    };
    return ser_from_mgf(mod, mgf, opt.quadrature);
}

inline double ser_loss(const SystemConfig &sys, const FeedbackConfig &fb, int k, const Modulation &mod,
                       const AnalysisOptions &opt = {})
{
    return ser_average(sys, fb, k, mod, opt) - ser_perfect(sys, k, mod, opt);
}

inline double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

/// Conditional SER at a fixed SINR gamma. PAM and QAM use the Q-function forms of the
/// angle integrals; PSK uses fixed Gauss-Legendre rules split at pi/2.
inline double conditional_ser(const Modulation &mod, double gamma)
{
    const double M = mod.order;
    const double g = mod.g();
    switch (mod.family)
    {
    case ModulationFamily::pam:
        return 2.0 * (M - 1.0) / M * gaussian_q(std::sqrt(2.0 * g * gamma));
    case ModulationFamily::qam: {
        const double q = 1.0 - 1.0 / std::sqrt(M);
        const double Q = gaussian_q(std::sqrt(2.0 * g * gamma));
        return 4.0 * q * Q - 4.0 * q * q * Q * Q;
    }
    case ModulationFamily::psk: {
        // The [0, pi/2] part of the angle integral is Q(sqrt(2 g gamma)); the rest is smooth.
        auto f = [g, gamma](double phi) {
            const double sn = std::sin(phi);
            return std::exp(-g * gamma / (sn * sn));
        };
        using rule = boost::math::quadrature::gauss<double, 30>;
        const double hi = (M - 1.0) * std::numbers::pi / M;
        return gaussian_q(std::sqrt(2.0 * g * gamma)) + rule::integrate(f, std::numbers::pi / 2.0, hi) / std::numbers::pi;
    }
    }
    return 0.0;
}

} // namespace iacsi

#endif
