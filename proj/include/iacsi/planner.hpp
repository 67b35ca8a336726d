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

#ifndef IACSI_PLANNER_HPP
#define IACSI_PLANNER_HPP

#include "analysis.hpp"
#include "error.hpp"
#include "system.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

// Feedback-budget planning: how many bits per link keep the loss from growing with SNR.

namespace iacsi
{

enum class BudgetPolicy
{
    constant_outage_gap,
    constant_rate_gap
};

inline BudgetPolicy parse_budget_policy(const std::string &s)
{
    if (s == "constant-outage-gap")
        return BudgetPolicy::constant_outage_gap;
    if (s == "constant-rate-gap")
        return BudgetPolicy::constant_rate_gap;
    throw ConfigError("unknown budget policy '" + s + "'");
}

inline std::string budget_policy_name(BudgetPolicy p)
{
    return p == BudgetPolicy::constant_outage_gap ? "constant-outage-gap" : "constant-rate-gap";
}

struct BudgetPoint
{
    double snr = 0.0;    // linear
    int bits_per_link = 0;
    int total_bits = 0;  // summed over the K links feeding pair k
};

/// Per-link B(Upsilon) = ceil((N-1) log2(Upsilon / Upsilon_0)) + B_0, floored at 0, which
/// keeps Upsilon * rho constant. Both policies share this slope; they differ only in
/// which quantity the constant product pins.
inline std::vector<BudgetPoint> feedback_budget(const SystemConfig &sys, int k, const std::vector<double> &snr_grid,
                                                BudgetPolicy policy, double snr0, int B0)
{
    (void)policy;
    sys.validate();
    if (k < 0 || k >= sys.K)
        throw ConfigError("pair index out of range");
    if (!(snr0 > 0.0) || B0 < 0)
        throw ConfigError("reference SNR must be positive and B0 nonnegative");
    for (std::size_t n = 0; n < snr_grid.size(); ++n)
    {
        if (!(snr_grid[n] > 0.0))
            throw ConfigError("SNR grid must be positive");
        if (n > 0 && !(snr_grid[n] > snr_grid[n - 1]))
            throw ConfigError("SNR grid must be ascending");
    }
    const double slope = static_cast<double>(sys.dims() - 1);
    std::vector<BudgetPoint> out;
    for (double snr : snr_grid)
    {
        // The guard absorbs rounding in log2 so exact multiples are not pushed up a bit.
        const double raw = slope * std::log2(snr / snr0);
        const int b = std::max(0, static_cast<int>(std::ceil(raw - 1.0e-9)) + B0);
        out.push_back({snr, b, b * sys.K});
    }
    return out;
}

/// Smallest B >= 0 with pred(B) true, for pred monotone (false ... false true ... true).
/// Doubling search followed by bisection. Throws if no B up to max_bits satisfies pred.
inline int minimum_bits(const std::function<bool(int)> &pred, int max_bits = 4096)
{
    if (pred(0))
        return 0;
    int lo = 0; // pred(lo) false
    int hi = 1;
    while (!pred(hi))
    {
        lo = hi;
        if (hi >= max_bits)
            throw ConfigError("target not reachable within " + std::to_string(max_bits) + " bits");
        hi = std::min(2 * hi, max_bits);
    }
    while (hi - lo > 1)
    {
        const int mid = lo + (hi - lo) / 2;
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// Minimum uniform B with outage_floor(B) <= target.
inline int min_bits_for_outage_floor(const SystemConfig &sys, int k, double gamma_th, double target,
                                     const AnalysisOptions &opt = {})
{
    if (!(target > 0.0) || target > 1.0)
        throw ConfigError("outage-floor target must lie in (0, 1]");
    return minimum_bits([&](int B) {
        return outage_floor(sys, FeedbackConfig::uniform(sys.K, B), k, gamma_th, opt) <= target;
    });
}

// Minimum uniform B with rate_loss(B) <= target at the system's SNR.
inline int min_bits_for_rate_gap(const SystemConfig &sys, int k, double target, const AnalysisOptions &opt = {})
{
    if (!(target > 0.0))
        throw ConfigError("rate-gap target must be positive");
    return minimum_bits([&](int B) { return rate_loss(sys, FeedbackConfig::uniform(sys.K, B), k, opt) <= target; });
}

} // namespace iacsi

#endif
