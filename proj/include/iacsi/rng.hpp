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

#ifndef IACSI_RNG_HPP
#define IACSI_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>

namespace iacsi
{

// SplitMix64: small-state generator whose output depends only on the seed, so a
// (seed, trial) key fully determines a trial's random stream.
class SplitMix64
{
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

// Stream key for trial `index` under `seed`.
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index)
{
    SplitMix64 a(seed);
    const std::uint64_t s = a();
    SplitMix64 b(s ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
    return b();
}

class Rng
{
  public:
    explicit Rng(std::uint64_t key) : engine_(key) {}
    Rng(std::uint64_t seed, std::uint64_t index) : engine_(stream_key(seed, index)) {}

    double uniform() { return unif_(engine_); }
    // Uniform on (0, 1], safe under logs and fractional powers.
    double uniform_open() { return 1.0 - unif_(engine_); }
    double normal() { return norm_(engine_); }
    // Circularly symmetric CN(0, 1).
    std::complex<double> complex_normal()
    {
        constexpr double s = 0.70710678118654752440;
        const double re = norm_(engine_);
        const double im = norm_(engine_);
        return {s * re, s * im};
    }
    double gamma(double shape, double scale) { return std::gamma_distribution<double>(shape, scale)(engine_); }
    double exponential(double mean) { return -mean * std::log(uniform_open()); }

    SplitMix64 &engine() { return engine_; }

  private:
    SplitMix64 engine_;
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
    std::normal_distribution<double> norm_{0.0, 1.0};
};

} // namespace iacsi

#endif
