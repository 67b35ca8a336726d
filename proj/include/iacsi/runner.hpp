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

#ifndef IACSI_RUNNER_HPP
#define IACSI_RUNNER_HPP

#include "analysis.hpp"
#include "planner.hpp"
#include "scenario.hpp"
#include "simulator.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

// Sweep execution behind the command-line front end.

namespace iacsi
{

#ifndef IACSI_VERSION
#define IACSI_VERSION "0.0.0"
#endif

inline constexpr double compare_gate_sigmas = 3.0;
inline constexpr double nonconvergence_threshold = 1.0e-3;

struct Table
{
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

struct RunReport
{
    Table table;
    bool gate_pass = true;
    std::size_t trials = 0;
    std::size_t nonconverged = 0;
    std::size_t cells = 0;
    std::size_t failed_cells = 0;

    double nonconverged_fraction() const
    {
        return trials ? static_cast<double>(nonconverged) / static_cast<double>(trials) : 0.0;
    }
};

inline std::string format_number(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

inline std::string format_csv(const Table &t)
{
    std::string out;
    for (std::size_t c = 0; c < t.header.size(); ++c)
        out += (c ? "," : "") + t.header[c];
    out += '\n';
    for (const auto &row : t.rows)
    {
        for (std::size_t c = 0; c < row.size(); ++c)
            out += (c ? "," : "") + format_number(row[c]);
        out += '\n';
    }
    return out;
}

namespace runner_detail
{

inline double stream_label(const std::vector<int> &d)
{
    for (int x : d)
        if (x != d.front())
            return std::numeric_limits<double>::quiet_NaN();
    return d.front();
}

inline std::vector<std::string> axis_header() { return {"d", "bits", "snr_db"}; }

inline bool is_ser_metric(const std::string &m) { return m.rfind("ser", 0) == 0; }

inline bool has_interference(const FeedbackConfig &fb, int k)
{
    for (int i = 0; i < fb.K; ++i)
        if (!fb.perfect(k, i))
            return true;
    return false;
}

inline double evaluate(const std::string &metric, const SystemConfig &sys, const FeedbackConfig &fb, int k,
                       double gamma_th, const Modulation &mod)
{
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (metric == "outage")
        return outage_probability(sys, fb, k, gamma_th);
    if (metric == "outage_perfect")
        return outage_perfect(sys, k, gamma_th);
    if (metric == "outage_floor")
        return outage_floor(sys, fb, k, gamma_th);
    if (metric == "outage_loss")
        return outage_loss(sys, fb, k, gamma_th);
    if (metric == "rate")
        return ergodic_rate(sys, fb, k);
    if (metric == "rate_perfect")
        return ergodic_rate_perfect(sys, k);
    if (metric == "rate_ceiling")
        return has_interference(fb, k) ? rate_ceiling(sys, fb, k) : inf;
    if (metric == "rate_loss")
        return rate_loss(sys, fb, k);
    if (metric == "rate_high_largeB")
        return has_interference(fb, k) ? rate_high_largeB(sys, fb, k) : nan;
    if (metric == "rate_loss_high_largeB")
        return has_interference(fb, k) ? rate_loss_high_largeB(sys, fb, k) : nan;
    if (metric == "ser")
        return ser_average(sys, fb, k, mod);
    if (metric == "ser_perfect")
        return ser_perfect(sys, k, mod);
    if (metric == "ser_loss")
        return ser_loss(sys, fb, k, mod);
    throw ConfigError("unknown metric '" + metric + "'");
}

// Metric columns: SER metrics expand to one column per modulation.
struct Column
{
    std::string name;
    std::string metric;
    std::size_t modulation = 0;
};

inline std::vector<Column> metric_columns(const Scenario &s, bool simulable_only)
{
    std::vector<Column> cols;
    for (const auto &m : s.metrics)
    {
        if (simulable_only && m != "outage" && m != "rate" && m != "ser")
            continue;
        if (is_ser_metric(m))
            for (std::size_t n = 0; n < s.modulations.size(); ++n)
                cols.push_back({m + "_" + s.modulations[n].name(), m, n});
        else
            cols.push_back({m, m, 0});
    }
    return cols;
}

inline MetricEstimate pick(const SweepPoint &p, const Column &c)
{
    if (c.metric == "outage")
        return p.outage;
    if (c.metric == "rate")
        return p.rate;
    return p.ser[c.modulation];
}

inline SweepRequest make_request(const Scenario &s)
{
    SweepRequest req;
    for (double x : s.snr_axis_db())
        req.snr.push_back(db_to_linear(x));
    req.gamma_th = s.gamma_th();
    req.modulations = s.modulations;
    return req;
}

inline SimulationOptions make_options(const Scenario &s)
{
    SimulationOptions opt;
    opt.mode = s.mode;
    opt.seed = s.seed;
    opt.trials = s.trials;
    opt.threads = s.threads;
    return opt;
}

} // namespace runner_detail

// Closed-form metrics at every (d, bits, snr) point.
inline RunReport run_analyze(const Scenario &s)
{
    using namespace runner_detail;
    validate_scenario(s);
    const auto cols = metric_columns(s, false);
    RunReport rep;
    rep.table.header = axis_header();
    for (const auto &c : cols)
        rep.table.header.push_back(c.name);
    const int k = s.pair_index();
    for (const auto &streams : s.stream_variants())
        for (double B : s.bits)
            for (double snr : s.snr_axis_db())
            {
                const SystemConfig sys = s.system(streams, snr);
                const FeedbackConfig fb = FeedbackConfig::uniform(s.K, B);
                std::vector<double> row{stream_label(streams), B, snr};
                for (const auto &c : cols)
                    row.push_back(evaluate(c.metric, sys, fb, k, s.gamma_th(),
                                           s.modulations.empty() ? Modulation{} : s.modulations[c.modulation]));
                rep.table.rows.push_back(std::move(row));
            }
    return rep;
}

// Monte Carlo estimates (mean and standard error) of outage, rate and SER.
inline RunReport run_simulate(const Scenario &s)
{
    using namespace runner_detail;
    validate_scenario(s);
    const auto cols = metric_columns(s, true);
    if (cols.empty())
        throw ConfigError("field 'metrics': simulate needs at least one of outage, rate, ser");
    RunReport rep;
    rep.table.header = axis_header();
    for (const auto &c : cols)
    {
        rep.table.header.push_back(c.name + "_mc");
        rep.table.header.push_back(c.name + "_stderr");
    }
    const int k = s.pair_index();
    const SweepRequest req = make_request(s);
    const SimulationOptions opt = make_options(s);
    for (const auto &streams : s.stream_variants())
        for (double B : s.bits)
        {
            const SystemConfig sys = s.system(streams, s.snr_axis_db().front());
            const SweepResult res = run_sweep(sys, FeedbackConfig::uniform(s.K, B), k, 0, req, opt);
            rep.trials += res.trials;
            rep.nonconverged += res.nonconverged;
            for (std::size_t n = 0; n < res.points.size(); ++n)
            {
                std::vector<double> row{stream_label(streams), B, s.snr_axis_db()[n]};
                for (const auto &c : cols)
                {
                    const MetricEstimate e = pick(res.points[n], c);
                    row.push_back(e.mean);
                    row.push_back(e.std_error);
                }
                rep.table.rows.push_back(std::move(row));
            }
        }
    return rep;
}

inline double z_score(double theory, const MetricEstimate &e)
{
    const double diff = e.mean - theory;
    if (e.std_error > 0.0)
        return diff / e.std_error;
    if (std::abs(diff) <= 1.0e-12)
        return 0.0;
    return diff > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

/// Theory against simulation with per-cell z-scores. The gate passes when every
/// |z| <= compare_gate_sigmas.
inline RunReport run_compare(const Scenario &s)
{
    using namespace runner_detail;
    validate_scenario(s);
    const auto cols = metric_columns(s, true);
    if (cols.empty())
        throw ConfigError("field 'metrics': compare needs at least one of outage, rate, ser");
    RunReport rep;
    rep.table.header = axis_header();
    for (const auto &c : cols)
        for (const char *suffix : {"_theory", "_mc", "_stderr", "_z"})
            rep.table.header.push_back(c.name + suffix);
    const int k = s.pair_index();
    const SweepRequest req = make_request(s);
    const SimulationOptions opt = make_options(s);
    for (const auto &streams : s.stream_variants())
        for (double B : s.bits)
        {
            const FeedbackConfig fb = FeedbackConfig::uniform(s.K, B);
            const SweepResult res = run_sweep(s.system(streams, s.snr_axis_db().front()), fb, k, 0, req, opt);
            rep.trials += res.trials;
            rep.nonconverged += res.nonconverged;
            for (std::size_t n = 0; n < res.points.size(); ++n)
            {
                const double snr = s.snr_axis_db()[n];
                const SystemConfig sys = s.system(streams, snr);
                std::vector<double> row{stream_label(streams), B, snr};
                for (const auto &c : cols)
                {
                    const double theory = evaluate(c.metric, sys, fb, k, s.gamma_th(),
                                                   s.modulations.empty() ? Modulation{} : s.modulations[c.modulation]);
                    const MetricEstimate e = pick(res.points[n], c);
                    const double z = z_score(theory, e);
                    ++rep.cells;
                    if (!(std::abs(z) <= compare_gate_sigmas))
                    {
                        ++rep.failed_cells;
                        rep.gate_pass = false;
                    }
                    row.insert(row.end(), {theory, e.mean, e.std_error, z});
                }
                rep.table.rows.push_back(std::move(row));
            }
        }
    return rep;
}

/// Bit schedules B(Upsilon) per link and per pair, plus the minimum uniform B for the
/// optional floor and rate-gap targets.
inline RunReport run_plan(const Scenario &s)
{
    validate_scenario(s);
    const PlanSpec plan = s.plan.value_or(PlanSpec{});
    const SystemConfig base = s.system();
    const int k = s.pair_index();
    std::vector<double> grid;
    for (double x : s.snr_axis_db())
        grid.push_back(db_to_linear(x));
    const auto schedule = feedback_budget(base, k, grid, plan.policy, db_to_linear(plan.snr0_db), plan.B0);

    RunReport rep;
    rep.table.header = {"snr_db", "bits_per_link", "total_bits"};
    if (plan.target_floor)
        rep.table.header.push_back("min_bits_floor");
    if (plan.target_rate_gap)
        rep.table.header.push_back("min_bits_rate_gap");
    std::optional<int> floor_bits;
    if (plan.target_floor)
        floor_bits = min_bits_for_outage_floor(base, k, s.gamma_th(), *plan.target_floor);
    for (std::size_t n = 0; n < schedule.size(); ++n)
    {
        std::vector<double> row{s.snr_axis_db()[n], static_cast<double>(schedule[n].bits_per_link),
                                static_cast<double>(schedule[n].total_bits)};
        if (floor_bits)
            row.push_back(*floor_bits);
        if (plan.target_rate_gap)
            row.push_back(min_bits_for_rate_gap(s.system(s.d, s.snr_axis_db()[n]), k, *plan.target_rate_gap));
        rep.table.rows.push_back(std::move(row));
    }
    return rep;
}

inline json run_metadata(const Scenario &s, const std::string &command, const RunReport &rep)
{
    json meta;
    meta["version"] = IACSI_VERSION;
    meta["command"] = command;
    meta["seed"] = s.seed;
    meta["config"] = scenario_to_json(s);
    if (command == "simulate" || command == "compare")
    {
        meta["trials_total"] = rep.trials;
        meta["nonconverged"] = rep.nonconverged;
    }
    if (command == "compare")
    {
        meta["gate_sigmas"] = compare_gate_sigmas;
        meta["cells"] = rep.cells;
        meta["failed_cells"] = rep.failed_cells;
        meta["gate_pass"] = rep.gate_pass;
    }
    return meta;
}

inline void write_text(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write '" + path + "'");
    out << text;
}

// CSV at `path` and metadata at `path`.meta.json.
inline void write_outputs(const std::string &path, const RunReport &rep, const json &meta)
{
    write_text(path, format_csv(rep.table));
    write_text(path + ".meta.json", meta.dump(2) + "\n");
}

} // namespace iacsi

#endif
