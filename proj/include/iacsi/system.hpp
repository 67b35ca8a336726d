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

#ifndef IACSI_SYSTEM_HPP
#define IACSI_SYSTEM_HPP

#include "error.hpp"
#include "numeric.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace iacsi
{

// K-pair MIMO interference channel. Indices k, i are 0-based throughout the library.
struct SystemConfig
{
    int K = 3;
    int nt = 4;
    int nr = 2;
    std::vector<int> d{1, 1, 1};
    std::vector<double> alpha; // K x K row-major, alpha[k * K + i]: transmitter i to receiver k
    double P = 1.0;
    double sigma2 = 1.0;

    double alpha_at(int k, int i) const { return alpha[static_cast<std::size_t>(k * K + i)]; }
    int streams(int k) const { return d[static_cast<std::size_t>(k)]; }
    // Upsilon = P / sigma^2.
    double snr() const { return P / sigma2; }
    // kappa_{k,i} = P alpha_{k,i} / (d_i sigma^2).
    double kappa(int k, int i) const { return P * alpha_at(k, i) / (static_cast<double>(streams(i)) * sigma2); }
    // Dimension N = Nt Nr of a vectorized channel.
    int dims() const { return nt * nr; }

    void validate() const
    {
        if (K < 2)
            throw ConfigError("K must be >= 2");
        if (nt < 1 || nr < 1)
            throw ConfigError("antenna counts must be >= 1");
        if (dims() < 2)
            throw ConfigError("Nt * Nr must be >= 2 for quantized feedback");
        if (d.size() != static_cast<std::size_t>(K))
            throw ConfigError("d must have K entries");
        for (int dk : d)
            if (dk < 1)
                throw ConfigError("stream counts must be >= 1");
        if (alpha.size() != static_cast<std::size_t>(K * K))
            throw ConfigError("alpha must have K*K entries");
        for (double a : alpha)
            if (!(a > 0.0) || !std::isfinite(a))
                throw ConfigError("alpha entries must be positive and finite");
        if (!(P > 0.0) || !(sigma2 > 0.0) || !std::isfinite(P) || !std::isfinite(sigma2))
            throw ConfigError("P and sigma2 must be positive and finite");
    }

    SystemConfig with_snr_db(double snr_db) const
    {
        SystemConfig s = *this;
        s.P = db_to_linear(snr_db) * sigma2;
        return s;
    }
};

// Three-pair reference scenario: Nt = 4, Nr = 2, single stream, sigma^2 = 1.
inline SystemConfig reference_system(double snr_db = 10.0)
{
    SystemConfig s;
    s.K = 3;
    s.nt = 4;
    s.nr = 2;
    s.d = {1, 1, 1};
    s.alpha = {1.000, 0.050, 0.005, 0.055, 1.000, 0.045, 0.004, 0.060, 1.000};
    s.sigma2 = 1.0;
    s.P = db_to_linear(snr_db);
    return s;
}

inline constexpr double perfect_csi = std::numeric_limits<double>::infinity();

// Feedback bits per link; an infinite entry marks perfect CSI on that link.
struct FeedbackConfig
{
    int K = 0;
    std::vector<double> bits; // K x K row-major

    static FeedbackConfig uniform(int K, double B)
    {
        return FeedbackConfig{K, std::vector<double>(static_cast<std::size_t>(K * K), B)};
    }

    double bits_at(int k, int i) const { return bits[static_cast<std::size_t>(k * K + i)]; }
    bool perfect(int k, int i) const { return std::isinf(bits_at(k, i)); }

    // Uniform value of row k, or NaN if the row is not uniform.
    double row_uniform_bits(int k) const
    {
        const double b = bits_at(k, 0);
        for (int i = 1; i < K; ++i)
            if (bits_at(k, i) != b)
                return std::numeric_limits<double>::quiet_NaN();
        return b;
    }

    // rho_{k,i} = 2^{-B/(N-1)}; zero for perfect links.
    double rho(const SystemConfig &sys, int k, int i) const
    {
        if (perfect(k, i))
            return 0.0;
        return std::exp2(-bits_at(k, i) / static_cast<double>(sys.dims() - 1));
    }
    // Effective interference scale kappa_{k,i} rho_{k,i}.
    double scale(const SystemConfig &sys, int k, int i) const { return sys.kappa(k, i) * rho(sys, k, i); }
    // SNR-free scale alpha_{k,i} rho_{k,i} / d_i.
    double xi(const SystemConfig &sys, int k, int i) const
    {
        return sys.alpha_at(k, i) * rho(sys, k, i) / static_cast<double>(sys.streams(i));
    }

    void validate(const SystemConfig &sys) const
    {
        if (K != sys.K || bits.size() != static_cast<std::size_t>(K * K))
            throw ConfigError("feedback bits must be a K x K matrix matching the system");
        for (double b : bits)
        {
            if (std::isinf(b) && b > 0.0)
                continue;
            if (!(b >= 0.0) || b != std::floor(b))
                throw ConfigError("feedback bits must be nonnegative integers or inf");
        }
    }
};

// Per-link scale of the SNR-free high-SNR expressions, alpha_{k,k} / d_k.
inline double xi_signal(const SystemConfig &sys, int k) { return sys.alpha_at(k, k) / static_cast<double>(sys.streams(k)); }

struct Feasibility
{
    bool feasible = false;
    std::string message;
};

/// Heuristic IA feasibility test. Symmetric streams: Nt + Nr >= (K + 1) d.
/// Otherwise the proper-system count: sum_k d_k (Nt + Nr - 2 d_k) >= sum_{k != i} d_k d_i.
/// A true result does not guarantee that the iterative solver converges.
inline Feasibility feasibility_check(const SystemConfig &sys)
{
    for (int k = 0; k < sys.K; ++k)
        if (sys.streams(k) > std::min(sys.nt, sys.nr))
            return {false, "pair " + std::to_string(k + 1) + " requests more streams than min(Nt, Nr)"};
    bool symmetric = true;
    for (int k = 1; k < sys.K; ++k)
        symmetric = symmetric && sys.streams(k) == sys.streams(0);
    if (symmetric)
    {
        const int lhs = sys.nt + sys.nr;
        const int rhs = (sys.K + 1) * sys.streams(0);
        if (lhs >= rhs)
            return {true, "Nt + Nr = " + std::to_string(lhs) + " >= (K + 1) d = " + std::to_string(rhs)};
        return {false, "Nt + Nr = " + std::to_string(lhs) + " < (K + 1) d = " + std::to_string(rhs)};
    }
    long variables = 0;
    long constraints = 0;
    for (int k = 0; k < sys.K; ++k)
    {
        variables += static_cast<long>(sys.streams(k)) * (sys.nt + sys.nr - 2 * sys.streams(k));
        for (int i = 0; i < sys.K; ++i)
            if (i != k)
                constraints += static_cast<long>(sys.streams(k)) * sys.streams(i);
    }
    if (variables >= constraints)
        return {true, "proper count: " + std::to_string(variables) + " variables >= " + std::to_string(constraints) +
                          " constraints"};
    return {false, "proper count: " + std::to_string(variables) + " variables < " + std::to_string(constraints) +
                       " constraints"};
}

inline void require_feasible(const SystemConfig &sys)
{
    sys.validate();
    const Feasibility f = feasibility_check(sys);
    if (!f.feasible)
        throw InfeasibleError("IA infeasible: " + f.message);
}

enum class ModulationFamily
{
    psk,
    pam,
    qam
};

// One piece a * int_lo^hi M(g / sin^2 phi) dphi of the conditional-SER integral.
struct SerSegment
{
    double lo;
    double hi;
    double a;
};

struct Modulation
{
    ModulationFamily family = ModulationFamily::psk;
    int order = 8;

    bool operator==(const Modulation &) const = default;

    void validate() const
    {
        if (order < 2)
            throw ConfigError("modulation order must be >= 2");
        if (family == ModulationFamily::qam && (order & (order - 1)) != 0)
            throw ConfigError("QAM order must be a power of two");
    }

    double g() const
    {
        const double M = order;
        switch (family)
        {
        case ModulationFamily::psk: {
            const double s = std::sin(std::numbers::pi / M);
            return s * s;
        }
        case ModulationFamily::pam:
            return 3.0 / (M * M - 1.0);
        case ModulationFamily::qam:
            return 3.0 / (2.0 * (M - 1.0));
        }
        return 0.0;
    }

    std::vector<SerSegment> segments() const
    {
        const double M = order;
        const double pi = std::numbers::pi;
        switch (family)
        {
        case ModulationFamily::psk:
            return {{0.0, (M - 1.0) * pi / M, 1.0 / pi}};
        case ModulationFamily::pam:
            return {{0.0, pi / 2.0, 2.0 * (M - 1.0) / (pi * M)}};
        case ModulationFamily::qam: {
            const double A = 4.0 / pi * (1.0 - 1.0 / std::sqrt(M));
            return {{0.0, pi / 4.0, A / std::sqrt(M)}, {pi / 4.0, pi / 2.0, A}};
        }
        }
        return {};
    }

    std::string name() const
    {
        const char *f = family == ModulationFamily::psk ? "PSK" : family == ModulationFamily::pam ? "PAM" : "QAM";
        return std::to_string(order) + f;
    }
};

inline ModulationFamily parse_family(const std::string &s)
{
    if (s == "PSK" || s == "psk")
        return ModulationFamily::psk;
    if (s == "PAM" || s == "pam")
        return ModulationFamily::pam;
    if (s == "QAM" || s == "qam")
        return ModulationFamily::qam;
    throw ConfigError("unknown modulation family '" + s + "'");
}

inline std::string family_name(ModulationFamily f)
{
    return f == ModulationFamily::psk ? "PSK" : f == ModulationFamily::pam ? "PAM" : "QAM";
}

} // namespace iacsi

#endif
