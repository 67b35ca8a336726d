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

#ifndef IACSI_CHANNEL_HPP
#define IACSI_CHANNEL_HPP

#include "error.hpp"
#include "rng.hpp"
#include "system.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace iacsi
{

using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;

// Small-scale fading of every link; path loss enters through kappa, not here.
struct ChannelRealization
{
    int K = 0;
    std::vector<cmat> H; // H[k * K + i]: Nr x Nt, transmitter i to receiver k

    const cmat &at(int k, int i) const { return H[static_cast<std::size_t>(k * K + i)]; }
    cmat &at(int k, int i) { return H[static_cast<std::size_t>(k * K + i)]; }
};

inline cmat complex_gaussian(Rng &rng, Eigen::Index rows, Eigen::Index cols)
{
    cmat m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            m(r, c) = rng.complex_normal();
    return m;
}

inline ChannelRealization sample_channels(const SystemConfig &sys, Rng &rng)
{
    ChannelRealization ch;
    ch.K = sys.K;
    ch.H.reserve(static_cast<std::size_t>(sys.K * sys.K));
    for (int n = 0; n < sys.K * sys.K; ++n)
        ch.H.push_back(complex_gaussian(rng, sys.nr, sys.nt));
    return ch;
}

// Column-stacking vec(H), so v^H H w = (conj(w) kron v)^H vec(H).
inline cvec vectorize(const cmat &H) { return Eigen::Map<const cvec>(H.data(), H.size()); }

inline cmat unvectorize(const cvec &h, Eigen::Index rows, Eigen::Index cols)
{
    return Eigen::Map<const cmat>(h.data(), rows, cols);
}

enum class QuantizationMode
{
    error_model,
    rvq
};

inline QuantizationMode parse_quantization_mode(const std::string &s)
{
    if (s == "error-model")
        return QuantizationMode::error_model;
    if (s == "rvq")
        return QuantizationMode::rvq;
    throw ConfigError("unknown quantization mode '" + s + "'");
}

inline std::string quantization_mode_name(QuantizationMode m)
{
    return m == QuantizationMode::error_model ? "error-model" : "rvq";
}

struct QuantizedCSI
{
    cvec hhat;          // unit-norm quantized direction
    double rho = 0.0;   // 1 - |<h~, hhat>|^2
    QuantizationMode mode = QuantizationMode::error_model;
};

inline constexpr int rvq_max_bits = 24;

// Unit vector drawn uniformly from the orthogonal complement of the unit vector u.
inline cvec uniform_orthogonal_direction(const cvec &u, Rng &rng)
{
    for (;;)
    {
        cvec z = complex_gaussian(rng, u.size(), 1);
        z -= u * u.dot(z);
        const double n = z.norm();
        if (n > 1.0e-12)
            return z / n;
    }
}

/// Quantization-cell model: rho = delta U^{1/(N-1)} with delta = 2^{-B/(N-1)}, so
/// rho ||h||^2 ~ Gamma(N-1, delta); the error direction is uniform in the complement
/// of h~ and hhat = sqrt(1 - rho) h~ + sqrt(rho) u. B = inf gives hhat = h~.
inline QuantizedCSI error_model_quantize(const cvec &h, double B, Rng &rng)
{
    const double norm = h.norm();
    if (!(norm > 0.0))
        throw ConfigError("cannot quantize a zero channel");
    const cvec dir = h / norm;
    if (std::isinf(B))
        return {dir, 0.0, QuantizationMode::error_model};
    const double n1 = static_cast<double>(h.size() - 1);
    const double delta = std::exp2(-B / n1);
    const double rho = delta * std::pow(rng.uniform_open(), 1.0 / n1);
    const cvec u = uniform_orthogonal_direction(dir, rng);
    cvec hhat = std::sqrt(1.0 - rho) * dir + std::sqrt(rho) * u;
    hhat.normalize();
    return {hhat, rho, QuantizationMode::error_model};
}

/// Random vector quantization with a fresh codebook of 2^B isotropic unit codewords.
inline QuantizedCSI rvq_quantize(const cvec &h, int B, Rng &rng)
{
    if (B < 0 || B > rvq_max_bits)
        throw ConfigError("RVQ codebook budget exceeded: B must lie in [0, " + std::to_string(rvq_max_bits) + "]");
    const double norm = h.norm();
    if (!(norm > 0.0))
        throw ConfigError("cannot quantize a zero channel");
    const cvec dir = h / norm;
    const std::size_t size = std::size_t{1} << B;
    cvec best;
    double best_corr = -1.0;
    cvec c(h.size());
    for (std::size_t n = 0; n < size; ++n)
    {
        for (Eigen::Index r = 0; r < c.size(); ++r)
            c(r) = rng.complex_normal();
        c.normalize();
        const double corr = std::norm(dir.dot(c));
        if (corr > best_corr)
        {
            best_corr = corr;
            best = c;
        }
    }
    return {best, std::max(0.0, 1.0 - best_corr), QuantizationMode::rvq};
}

} // namespace iacsi

#endif
