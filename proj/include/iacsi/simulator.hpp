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

#ifndef IACSI_SIMULATOR_HPP
#define IACSI_SIMULATOR_HPP

#include "analysis.hpp"
#include "channel.hpp"
#include "error.hpp"
#include "ia_solver.hpp"
#include "numeric.hpp"
#include "rng.hpp"
#include "system.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

// Monte Carlo link-level simulation: sample channels, quantize the fed-back
// directions, run IA on the quantized channels, measure SINR on the true channels.

namespace iacsi
{

struct MetricEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};

inline MetricEstimate to_estimate(const RunningStats &s) { return {s.mean(), s.stderr_of_mean(), s.count()}; }

struct SimulationOptions
{
    QuantizationMode mode = QuantizationMode::error_model;
    std::uint64_t seed = 1;
    std::size_t trials = 100000;
    unsigned threads = 0; // 0: hardware concurrency
    std::size_t block = 2048;
    SolverOptions solver{};
};

/// Power gains of one trial for stream j of pair k, independent of transmit power:
/// gamma = kappa_kk * signal / (1 + sum_i kappa_ki * interference[i]).
struct LinkSample
{
    double signal = 0.0;
    std::vector<double> interference; // per transmitter; entry k holds the inter-stream terms
    bool converged = true;

    double sinr(const SystemConfig &sys, int k) const
    {
        double denom = 1.0;
        for (int i = 0; i < sys.K; ++i)
            denom += sys.kappa(k, i) * interference[static_cast<std::size_t>(i)];
        return sys.kappa(k, k) * signal / denom;
    }

    double total_interference(const SystemConfig &sys, int k) const
    {
        double s = 0.0;
        for (int i = 0; i < sys.K; ++i)
            s += sys.kappa(k, i) * interference[static_cast<std::size_t>(i)];
        return s;
    }
};

inline std::vector<cmat> quantize_channels(const SystemConfig &sys, const FeedbackConfig &fb,
                                           const ChannelRealization &ch, QuantizationMode mode, Rng &rng)
{
    std::vector<cmat> Hhat;
    Hhat.reserve(ch.H.size());
    for (int k = 0; k < sys.K; ++k)
        for (int i = 0; i < sys.K; ++i)
        {
            const cvec h = vectorize(ch.at(k, i));
            const double B = fb.bits_at(k, i);
            QuantizedCSI q;
            if (mode == QuantizationMode::rvq && !std::isinf(B))
                q = rvq_quantize(h, static_cast<int>(B), rng);
            else
                q = error_model_quantize(h, B, rng);
            Hhat.push_back(unvectorize(q.hhat, sys.nr, sys.nt));
        }
    return Hhat;
}

/// Gains on the true channels for stream j of pair k.
inline LinkSample measure_link(const SystemConfig &sys, const ChannelRealization &ch, const IASolution &sol, int k,
                               int j)
{
    LinkSample s;
    s.interference.assign(static_cast<std::size_t>(sys.K), 0.0);
    const auto v = sol.V[static_cast<std::size_t>(k)].col(j);
    for (int i = 0; i < sys.K; ++i)
    {
        const Eigen::RowVectorXcd row = v.adjoint() * ch.at(k, i);
        const cmat &W = sol.W[static_cast<std::size_t>(i)];
        for (Eigen::Index l = 0; l < W.cols(); ++l)
        {
            const double g = std::norm((row * W.col(l)).value());
            if (i == k && l == j)
                s.signal = g;
            else
                s.interference[static_cast<std::size_t>(i)] += g;
        }
    }
    s.converged = sol.converged;
    return s;
}

// One complete trial keyed by (seed, trial).
inline LinkSample simulate_trial(const SystemConfig &sys, const FeedbackConfig &fb, int k, int j, std::uint64_t trial,
                                 const SimulationOptions &opt)
{
    Rng rng(opt.seed, trial);
    const ChannelRealization ch = sample_channels(sys, rng);
    const std::vector<cmat> Hhat = quantize_channels(sys, fb, ch, opt.mode, rng);
    const IASolution sol = ia_solve(Hhat, sys.K, sys.d, rng, opt.solver);
    return measure_link(sys, ch, sol, k, j);
}

inline void check_simulation_inputs(const SystemConfig &sys, const FeedbackConfig &fb, int k, int j)
{
    require_feasible(sys);
    fb.validate(sys);
    if (k < 0 || k >= sys.K)
        throw ConfigError("pair index out of range");
    if (j < 0 || j >= sys.streams(k))
        throw ConfigError("stream index out of range");
}

/// Runs fn(block_index, first_trial, end_trial) over fixed trial blocks on `threads`
/// workers. Block boundaries depend only on trials and block size.
template <typename Fn>
void for_each_block(std::size_t trials, std::size_t block, unsigned threads, Fn &&fn)
{
    const std::size_t blocks = (trials + block - 1) / block;
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(blocks, 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;)
        {
            const std::size_t b = next.fetch_add(1);
            if (b >= blocks)
                return;
            fn(b, b * block, std::min(trials, (b + 1) * block));
        }
    };
    if (threads <= 1)
    {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();
}

// Raw per-trial gains, in trial order.
inline std::vector<LinkSample> collect_samples(const SystemConfig &sys, const FeedbackConfig &fb, int k, int j,
                                               const SimulationOptions &opt)
{
    check_simulation_inputs(sys, fb, k, j);
    std::vector<LinkSample> out(opt.trials);
    for_each_block(opt.trials, opt.block, opt.threads, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t t = lo; t < hi; ++t)
            out[t] = simulate_trial(sys, fb, k, j, t, opt);
    });
    return out;
}

struct SweepRequest
{
    std::vector<double> snr;       // linear Upsilon values; P = snr * sigma2
    double gamma_th = 1.0;         // linear
    std::vector<Modulation> modulations;
};

struct SweepPoint
{
    double snr = 0.0;
    MetricEstimate outage;
    MetricEstimate rate;
    std::vector<MetricEstimate> ser; // one per requested modulation
    MetricEstimate interference;     // total residual interference I (kappa-weighted)
};

struct SweepResult
{
    std::vector<SweepPoint> points;
    std::size_t trials = 0;
    std::size_t nonconverged = 0;

    double nonconverged_fraction() const
    {
        return trials ? static_cast<double>(nonconverged) / static_cast<double>(trials) : 0.0;
    }
};

/// Monte Carlo sweep over SNR for fixed feedback bits. One IA solution per trial
/// serves every SNR point because the solver only sees channel directions.
/// Per-block statistics are merged in block order, so results do not depend on
/// the number of threads.
inline SweepResult run_sweep(const SystemConfig &sys, const FeedbackConfig &fb, int k, int j, const SweepRequest &req,
                             const SimulationOptions &opt)
{
    check_simulation_inputs(sys, fb, k, j);
    if (opt.trials < 1 || opt.block < 1)
        throw ConfigError("trials and block size must be positive");
    if (req.snr.empty())
        throw ConfigError("SNR list must be nonempty");
    for (const auto &m : req.modulations)
        m.validate();

    const std::size_t n_snr = req.snr.size();
    const std::size_t n_mod = req.modulations.size();
    const std::size_t per_snr = 3 + n_mod;
    const std::size_t blocks = (opt.trials + opt.block - 1) / opt.block;
    std::vector<std::vector<RunningStats>> block_stats(blocks);
    std::vector<std::size_t> block_fail(blocks, 0);

    std::vector<SystemConfig> at_snr;
    for (double s : req.snr)
    {
        SystemConfig c = sys;
        c.P = s * sys.sigma2;
        at_snr.push_back(c);
    }

    for_each_block(opt.trials, opt.block, opt.threads, [&](std::size_t b, std::size_t lo, std::size_t hi) {
        std::vector<RunningStats> st(n_snr * per_snr);
        std::size_t fail = 0;
        for (std::size_t t = lo; t < hi; ++t)
        {
            const LinkSample s = simulate_trial(sys, fb, k, j, t, opt);
            if (!s.converged)
                ++fail;
            for (std::size_t n = 0; n < n_snr; ++n)
            {
                const double gamma = s.sinr(at_snr[n], k);
                RunningStats *row = &st[n * per_snr];
                row[0].add(gamma <= req.gamma_th ? 1.0 : 0.0);
                row[1].add(std::log2(1.0 + gamma));
                row[2].add(s.total_interference(at_snr[n], k));
                for (std::size_t m = 0; m < n_mod; ++m)
                    row[3 + m].add(conditional_ser(req.modulations[m], gamma));
            }
        }
        block_stats[b] = std::move(st);
        block_fail[b] = fail;
    });

    std::vector<RunningStats> total(n_snr * per_snr);
    SweepResult res;
    res.trials = opt.trials;
    for (std::size_t b = 0; b < blocks; ++b)
    {
        for (std::size_t n = 0; n < total.size(); ++n)
            total[n].merge(block_stats[b][n]);
        res.nonconverged += block_fail[b];
    }
    for (std::size_t n = 0; n < n_snr; ++n)
    {
        const RunningStats *row = &total[n * per_snr];
        SweepPoint p;
        p.snr = req.snr[n];
        p.outage = to_estimate(row[0]);
        p.rate = to_estimate(row[1]);
        p.interference = to_estimate(row[2]);
        for (std::size_t m = 0; m < n_mod; ++m)
            p.ser.push_back(to_estimate(row[3 + m]));
        res.points.push_back(std::move(p));
    }
    return res;
}

inline MetricEstimate estimate_outage(const SystemConfig &sys, const FeedbackConfig &fb, int k, int j, double gamma_th,
                                      const SimulationOptions &opt)
{
    return run_sweep(sys, fb, k, j, {{sys.snr()}, gamma_th, {}}, opt).points[0].outage;
}

inline MetricEstimate estimate_rate(const SystemConfig &sys, const FeedbackConfig &fb, int k, int j,
                                    const SimulationOptions &opt)
{
    return run_sweep(sys, fb, k, j, {{sys.snr()}, 1.0, {}}, opt).points[0].rate;
}

inline MetricEstimate estimate_ser(const SystemConfig &sys, const FeedbackConfig &fb, int k, int j,
                                   const Modulation &mod, const SimulationOptions &opt)
{
    return run_sweep(sys, fb, k, j, {{sys.snr()}, 1.0, {mod}}, opt).points[0].ser[0];
}

} // namespace iacsi

#endif
