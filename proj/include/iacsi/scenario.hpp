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

#ifndef IACSI_SCENARIO_HPP
#define IACSI_SCENARIO_HPP

#include "channel.hpp"
#include "error.hpp"
#include "numeric.hpp"
#include "planner.hpp"
#include "system.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

// Scenario files: JSON objects describing a system, sweep axes and requested metrics.

namespace iacsi
{

using json = nlohmann::json;

struct PlanSpec
{
    BudgetPolicy policy = BudgetPolicy::constant_outage_gap;
    double snr0_db = 0.0;
    int B0 = 0;
    std::optional<double> target_floor;
    std::optional<double> target_rate_gap;

    bool operator==(const PlanSpec &) const = default;
};

struct Scenario
{
    int K = 3;
    int nt = 4;
    int nr = 2;
    std::vector<int> d{1, 1, 1};
    std::vector<double> alpha{1.000, 0.050, 0.005, 0.055, 1.000, 0.045, 0.004, 0.060, 1.000};
    double p_linear = 10.0;
    double sigma2 = 1.0;
    std::vector<double> snr_db{0.0, 10.0, 20.0, 30.0};
    std::vector<double> bits{6.0};
    double gamma_th_db = 0.0;
    std::vector<Modulation> modulations{{ModulationFamily::psk, 8}};
    std::vector<std::string> metrics{"outage", "rate"};
    std::size_t trials = 100000;
    std::uint64_t seed = 1;
    int pair = 1; // 1-based in files
    std::string output;
    std::vector<std::vector<int>> d_variants; // empty: only d
    QuantizationMode mode = QuantizationMode::error_model;
    unsigned threads = 0;
    std::optional<PlanSpec> plan;

    bool operator==(const Scenario &) const = default;

    int pair_index() const { return pair - 1; }
    double gamma_th() const { return db_to_linear(gamma_th_db); }

    std::vector<std::vector<int>> stream_variants() const
    {
        return d_variants.empty() ? std::vector<std::vector<int>>{d} : d_variants;
    }

    std::vector<double> snr_axis_db() const
    {
        return snr_db.empty() ? std::vector<double>{linear_to_db(p_linear / sigma2)} : snr_db;
    }

    SystemConfig system(const std::vector<int> &streams, double snr_db_value) const
    {
        SystemConfig s;
        s.K = K;
        s.nt = nt;
        s.nr = nr;
        s.d = streams;
        s.alpha = alpha;
        s.sigma2 = sigma2;
        s.P = db_to_linear(snr_db_value) * sigma2;
        return s;
    }

    SystemConfig system() const { return system(d, snr_axis_db().front()); }
};

inline const std::vector<std::string> &known_metrics()
{
    static const std::vector<std::string> m{"outage",      "outage_perfect", "outage_floor",     "outage_loss",
                                            "rate",        "rate_perfect",   "rate_ceiling",     "rate_loss",
                                            "rate_high_largeB", "rate_loss_high_largeB", "ser", "ser_perfect",
                                            "ser_loss"};
    return m;
}

inline void validate_scenario(const Scenario &s)
{
    for (const auto &streams : s.stream_variants())
        s.system(streams, 0.0).validate();
    if (s.bits.empty())
        throw ConfigError("field 'bits': axis must be nonempty");
    for (double b : s.bits)
        if (!(std::isinf(b) && b > 0.0) && (!(b >= 0.0) || b != std::floor(b)))
            throw ConfigError("field 'bits': entries must be nonnegative integers or \"inf\"");
    if (s.pair < 1 || s.pair > s.K)
        throw ConfigError("field 'pair': must lie in [1, K]");
    if (s.metrics.empty())
        throw ConfigError("field 'metrics': must be nonempty");
    for (const auto &m : s.metrics)
        if (std::find(known_metrics().begin(), known_metrics().end(), m) == known_metrics().end())
            throw ConfigError("field 'metrics': unknown metric '" + m + "'");
    for (const auto &m : s.modulations)
        m.validate();
    if (s.trials < 1)
        throw ConfigError("field 'trials': must be >= 1");
    if (!std::isfinite(s.gamma_th_db))
        throw ConfigError("field 'gamma_th_db': must be finite");
    for (double x : s.snr_db)
        if (!std::isfinite(x))
            throw ConfigError("field 'snr_db': entries must be finite");
    if (!(s.p_linear > 0.0))
        throw ConfigError("field 'p_dbm_or_linear': must be a positive linear power");
}

namespace scenario_detail
{

template <typename T>
T get_field(const json &j, const char *name, const T &fallback)
{
    if (!j.contains(name))
        return fallback;
    try
    {
        return j.at(name).get<T>();
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("field '") + name + "': " + e.what());
    }
}

inline double parse_bits_entry(const json &v)
{
    if (v.is_string())
    {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "Inf" || s == "INF")
            return perfect_csi;
        throw ConfigError("field 'bits': string entries must be \"inf\", got '" + s + "'");
    }
    if (v.is_number())
        return v.get<double>();
    throw ConfigError("field 'bits': entries must be numbers or \"inf\"");
}

inline json bits_entry_to_json(double b)
{
    if (std::isinf(b))
        return "inf";
    return static_cast<long long>(b);
}

inline Modulation parse_modulation(const json &v)
{
    if (!v.is_object() || !v.contains("family") || !v.contains("order"))
        throw ConfigError("field 'modulation': expected {\"family\": ..., \"order\": ...}");
    Modulation m;
    try
    {
        m.family = parse_family(v.at("family").get<std::string>());
        m.order = v.at("order").get<int>();
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("field 'modulation': ") + e.what());
    }
    return m;
}

} // namespace scenario_detail

inline Scenario scenario_from_json(const json &j)
{
    using namespace scenario_detail;
    if (!j.is_object())
        throw ConfigError("scenario must be a JSON object");
    Scenario s;
    s.K = get_field(j, "K", s.K);
    s.nt = get_field(j, "nt", s.nt);
    s.nr = get_field(j, "nr", s.nr);
    s.d = get_field(j, "d", std::vector<int>(static_cast<std::size_t>(std::max(s.K, 0)), 1));
    if (j.contains("alpha"))
    {
        const json &a = j.at("alpha");
        s.alpha.clear();
        try
        {
            for (const auto &row : a)
            {
                if (row.is_array())
                    for (const auto &x : row)
                        s.alpha.push_back(x.get<double>());
                else
                    s.alpha.push_back(row.get<double>());
            }
        }
        catch (const json::exception &e)
        {
            throw ConfigError(std::string("field 'alpha': ") + e.what());
        }
    }
    else if (s.K != 3)
        throw ConfigError("field 'alpha': required when K != 3");
    s.p_linear = get_field(j, "p_dbm_or_linear", s.p_linear);
    s.sigma2 = get_field(j, "sigma2", s.sigma2);
    s.snr_db = get_field(j, "snr_db", s.snr_db);
    if (j.contains("bits"))
    {
        s.bits.clear();
        const json &b = j.at("bits");
        if (b.is_array())
            for (const auto &v : b)
                s.bits.push_back(parse_bits_entry(v));
        else
            s.bits.push_back(parse_bits_entry(b));
    }
    s.gamma_th_db = get_field(j, "gamma_th_db", s.gamma_th_db);
    if (j.contains("modulation"))
    {
        s.modulations.clear();
        const json &m = j.at("modulation");
        if (m.is_array())
            for (const auto &v : m)
                s.modulations.push_back(parse_modulation(v));
        else
            s.modulations.push_back(parse_modulation(m));
    }
    s.metrics = get_field(j, "metrics", s.metrics);
    s.trials = get_field(j, "trials", s.trials);
    s.seed = get_field(j, "seed", s.seed);
    s.pair = get_field(j, "pair", s.pair);
    s.output = get_field(j, "output", s.output);
    s.d_variants = get_field(j, "d_variants", s.d_variants);
    if (j.contains("mode"))
        s.mode = parse_quantization_mode(get_field(j, "mode", std::string{}));
    s.threads = get_field(j, "threads", s.threads);
    if (j.contains("plan"))
    {
        const json &p = j.at("plan");
        if (!p.is_object())
            throw ConfigError("field 'plan': expected an object");
        PlanSpec plan;
        if (p.contains("policy"))
            plan.policy = parse_budget_policy(get_field(p, "policy", std::string{}));
        plan.snr0_db = get_field(p, "snr0_db", plan.snr0_db);
        plan.B0 = get_field(p, "B0", plan.B0);
        if (p.contains("target_floor"))
            plan.target_floor = get_field(p, "target_floor", 0.0);
        if (p.contains("target_rate_gap"))
            plan.target_rate_gap = get_field(p, "target_rate_gap", 0.0);
        s.plan = plan;
    }
    validate_scenario(s);
    return s;
}

inline json scenario_to_json(const Scenario &s)
{
    json j;
    j["K"] = s.K;
    j["nt"] = s.nt;
    j["nr"] = s.nr;
    j["d"] = s.d;
    j["alpha"] = s.alpha;
    j["p_dbm_or_linear"] = s.p_linear;
    j["sigma2"] = s.sigma2;
    j["snr_db"] = s.snr_db;
    json bits = json::array();
    for (double b : s.bits)
        bits.push_back(scenario_detail::bits_entry_to_json(b));
    j["bits"] = bits;
    j["gamma_th_db"] = s.gamma_th_db;
    json mods = json::array();
    for (const auto &m : s.modulations)
        mods.push_back({{"family", family_name(m.family)}, {"order", m.order}});
    j["modulation"] = mods;
    j["metrics"] = s.metrics;
    j["trials"] = s.trials;
    j["seed"] = s.seed;
    j["pair"] = s.pair;
    j["output"] = s.output;
    if (!s.d_variants.empty())
        j["d_variants"] = s.d_variants;
    j["mode"] = quantization_mode_name(s.mode);
    j["threads"] = s.threads;
    if (s.plan)
    {
        json p;
        p["policy"] = budget_policy_name(s.plan->policy);
        p["snr0_db"] = s.plan->snr0_db;
        p["B0"] = s.plan->B0;
        if (s.plan->target_floor)
            p["target_floor"] = *s.plan->target_floor;
        if (s.plan->target_rate_gap)
            p["target_rate_gap"] = *s.plan->target_rate_gap;
        j["plan"] = p;
    }
    return j;
}

inline Scenario parse_scenario_text(const std::string &text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("scenario parse error: ") + e.what());
    }
    return scenario_from_json(j);
}

inline Scenario load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open scenario file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

inline std::vector<double> db_range(double lo, double hi, double step)
{
    std::vector<double> v;
    for (int n = 0; lo + n * step <= hi + 1e-9; ++n)
        v.push_back(lo + n * step);
    return v;
}

inline const std::vector<std::string> &preset_names()
{
    static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
    return names;
}

// Commands the presets run: "compare" for theory-vs-simulation figures, else "analyze".
inline std::string preset_command(const std::string &name)
{
    return (name == "fig2" || name == "fig4" || name == "fig7") ? "compare" : "analyze";
}

inline Scenario preset(const std::string &name)
{
    Scenario s; // reference three-pair system, gamma_th = 0 dB
    s.snr_db = db_range(-10.0, 40.0, 5.0);
    s.output = name + ".csv";
    if (name == "fig2")
    {
        s.bits = {2, 6, 10, perfect_csi};
        s.metrics = {"outage"};
    }
    else if (name == "fig3")
    {
        s.bits = {2, 6, 10};
        s.metrics = {"outage", "outage_perfect", "outage_loss", "outage_floor"};
    }
    else if (name == "fig4")
    {
        s.bits = {2, 6, 10, perfect_csi};
        s.metrics = {"rate"};
    }
    else if (name == "fig5")
    {
        s.bits = {2, 6, 10};
        s.metrics = {"rate", "rate_perfect", "rate_loss", "rate_ceiling"};
    }
    else if (name == "fig6")
    {
        // Two streams per pair need Nt + Nr >= 8 with three pairs.
        s.nt = 4;
        s.nr = 4;
        s.d_variants = {{1, 1, 1}, {2, 2, 2}};
        s.bits = {6, 10, perfect_csi};
        s.metrics = {"rate"};
    }
    else if (name == "fig7")
    {
        s.bits = {6};
        s.modulations = {{ModulationFamily::psk, 8}, {ModulationFamily::pam, 8}, {ModulationFamily::qam, 8}};
        s.metrics = {"ser"};
    }
    else if (name == "fig8")
    {
        s.bits = {2, 6, 10};
        s.modulations = {{ModulationFamily::qam, 8}};
        s.metrics = {"ser", "ser_perfect", "ser_loss"};
    }
    else if (name == "fig9")
    {
        s.snr_db = {40.0, 50.0, 60.0};
        s.bits.clear();
        for (int b = 20; b <= 60; b += 5)
            s.bits.push_back(b);
        s.metrics = {"rate", "rate_high_largeB", "rate_ceiling", "rate_loss_high_largeB"};
    }
    else
        throw ConfigError("unknown preset '" + name + "' (expected fig2 .. fig9)");
    validate_scenario(s);
    return s;
}

} // namespace iacsi

#endif
