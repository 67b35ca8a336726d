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

#include <iacsi/runner.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

using namespace iacsi;

namespace
{

Scenario round_trip(const Scenario &s) { return parse_scenario_text(scenario_to_json(s).dump()); }

std::string parse_error(const std::string &text)
{
    try
    {
        parse_scenario_text(text);
    }
    catch (const ConfigError &e)
    {
        return e.what();
    }
    return "";
}

Scenario small_scenario()
{
    Scenario s;
    s.snr_db = {0.0, 10.0, 20.0};
    s.bits = {2, 6};
    s.metrics = {"outage", "rate", "ser"};
    s.modulations = {{ModulationFamily::psk, 8}, {ModulationFamily::qam, 8}};
    s.trials = 3000;
    s.seed = 17;
    return s;
}

} // namespace

TEST_CASE("presets survive a JSON round trip")
{
    for (const auto &name : preset_names())
    {
        INFO(name);
        const Scenario s = preset(name);
        CHECK(round_trip(s) == s);
    }
    CHECK_THROWS_AS(preset("fig1"), ConfigError);
    CHECK(preset_command("fig2") == "compare");
    CHECK(preset_command("fig5") == "analyze");
}

TEST_CASE("custom scenario with every optional field survives a round trip")
{
    Scenario s;
    s.K = 2;
    s.nt = 4;
    s.nr = 4;
    s.d = {2, 2};
    s.alpha = {1.0, 0.3, 0.2, 1.0};
    s.p_linear = 3.5;
    s.sigma2 = 0.5;
    s.bits = {0, 12, perfect_csi};
    s.gamma_th_db = 3.0;
    s.modulations = {{ModulationFamily::pam, 4}, {ModulationFamily::qam, 16}};
    s.metrics = {"outage_floor", "ser_loss"};
    s.trials = 77;
    s.seed = 123456789012345ULL;
    s.pair = 2;
    s.output = "x.csv";
    s.d_variants = {{1, 1}, {2, 2}};
    s.mode = QuantizationMode::rvq;
    s.threads = 3;
    s.plan = PlanSpec{BudgetPolicy::constant_rate_gap, 10.0, 4, 0.01, 0.5};
    CHECK(round_trip(s) == s);
    CHECK(scenario_to_json(s)["bits"][2] == "inf");
}

TEST_CASE("scenario parsing accepts the documented shapes")
{
    const Scenario s = parse_scenario_text(R"({"alpha": [[1, 0.05, 0.005], [0.055, 1, 0.045], [0.004, 0.06, 1]],
        "bits": 4, "modulation": {"family": "qam", "order": 8}, "snr_db": [5]})");
    CHECK(s.alpha == Scenario{}.alpha);
    CHECK(s.bits == std::vector<double>{4});
    CHECK(s.modulations.size() == 1);
    CHECK(s.modulations[0].name() == "8QAM");
    CHECK(parse_scenario_text("{}") == Scenario{});
}

TEST_CASE("parse errors name the offending field")
{
    CHECK_THAT(parse_error(R"({"nt": "four"})"), Catch::Matchers::ContainsSubstring("'nt'"));
    CHECK_THAT(parse_error(R"({"bits": [-1]})"), Catch::Matchers::ContainsSubstring("'bits'"));
    CHECK_THAT(parse_error(R"({"bits": ["many"]})"), Catch::Matchers::ContainsSubstring("'bits'"));
    CHECK_THAT(parse_error(R"({"bits": [2.5]})"), Catch::Matchers::ContainsSubstring("'bits'"));
    CHECK_THAT(parse_error(R"({"metrics": ["goodput"]})"), Catch::Matchers::ContainsSubstring("'metrics'"));
    CHECK_THAT(parse_error(R"({"modulation": {"family": "fsk", "order": 8}})"),
               Catch::Matchers::ContainsSubstring("modulation"));
    CHECK_THAT(parse_error(R"({"alpha": [1, "x"]})"), Catch::Matchers::ContainsSubstring("'alpha'"));
    CHECK_THAT(parse_error(R"({"K": 2})"), Catch::Matchers::ContainsSubstring("'alpha'"));
    CHECK_THAT(parse_error(R"({"pair": 4})"), Catch::Matchers::ContainsSubstring("'pair'"));
    CHECK_THAT(parse_error(R"({"trials": 0})"), Catch::Matchers::ContainsSubstring("'trials'"));
    CHECK_THAT(parse_error(R"({"plan": {"policy": "sometimes"}})"), Catch::Matchers::ContainsSubstring("policy"));
    CHECK_THAT(parse_error(R"({"mode": "lattice"})"), Catch::Matchers::ContainsSubstring("lattice"));
    CHECK_THAT(parse_error("{\"K\": 3,"), Catch::Matchers::ContainsSubstring("parse error"));
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ConfigError);
}

TEST_CASE("analyze emits one row per axis cell")
{
    const RunReport fig2 = run_analyze(preset("fig2"));
    CHECK(fig2.table.rows.size() == 4 * 11);
    CHECK(fig2.table.header == std::vector<std::string>{"d", "bits", "snr_db", "outage"});
    const RunReport fig6 = run_analyze(preset("fig6"));
    CHECK(fig6.table.rows.size() == 2 * 3 * 11);
    const RunReport fig7 = run_analyze(preset("fig7"));
    CHECK(fig7.table.header.size() == 3 + 3);
    const std::string csv = format_csv(fig2.table);
    CHECK(csv.rfind("d,bits,snr_db,outage\n", 0) == 0);
    CHECK(csv.find("inf") != std::string::npos);
}

TEST_CASE("analyze handles perfect CSI in asymptotic metrics")
{
    Scenario s;
    s.bits = {perfect_csi};
    s.metrics = {"rate_ceiling", "rate_high_largeB"};
    const RunReport r = run_analyze(s);
    for (const auto &row : r.table.rows)
    {
        CHECK(std::isinf(row[3]));
        CHECK(std::isnan(row[4]));
    }
}

TEST_CASE("simulation output is byte-stable across runs and thread counts")
{
    Scenario s = small_scenario();
    s.threads = 1;
    const std::string a = format_csv(run_simulate(s).table);
    s.threads = 4;
    const std::string b = format_csv(run_simulate(s).table);
    const std::string c = format_csv(run_simulate(s).table);
    CHECK(a == b);
    CHECK(b == c);
    s.seed = 18;
    CHECK(format_csv(run_simulate(s).table) != a);
}

TEST_CASE("small compare run passes the gate")
{
    Scenario s = small_scenario();
    s.trials = 20000;
    const RunReport r = run_compare(s);
    CHECK(r.table.rows.size() == 2 * 3);
    CHECK(r.cells == 2 * 3 * 4);
    CHECK(r.trials == 2 * 20000);
    CHECK(r.nonconverged == 0);
    CHECK(r.gate_pass);
    for (const auto &row : r.table.rows)
        for (std::size_t c = 3; c < row.size(); c += 4)
            CHECK(std::abs(row[c + 1] - row[c]) <= compare_gate_sigmas * row[c + 2]);
}

TEST_CASE("compare and simulate reject analysis-only metrics")
{
    Scenario s = small_scenario();
    s.metrics = {"rate_ceiling"};
    CHECK_THROWS_AS(run_simulate(s), ConfigError);
    CHECK_THROWS_AS(run_compare(s), ConfigError);
}

TEST_CASE("plan reproduces the per-doubling slope and target searches")
{
    Scenario s;
    s.snr_db = {0.0, 10.0, 20.0, 30.0};
    s.plan = PlanSpec{BudgetPolicy::constant_outage_gap, 0.0, 0, 0.01, std::nullopt};
    const RunReport r = run_plan(s);
    CHECK(r.table.header == std::vector<std::string>{"snr_db", "bits_per_link", "total_bits", "min_bits_floor"});
    REQUIRE(r.table.rows.size() == 4);
    const std::vector<double> expected{0, 24, 47, 70};
    for (std::size_t n = 0; n < 4; ++n)
    {
        CHECK(r.table.rows[n][1] == expected[n]);
        CHECK(r.table.rows[n][2] == 3 * expected[n]);
        CHECK(r.table.rows[n][3] == min_bits_for_outage_floor(s.system(), 0, 1.0, 0.01));
    }
}

TEST_CASE("outputs carry a metadata sidecar")
{
    Scenario s;
    s.snr_db = {10.0};
    const RunReport r = run_analyze(s);
    const std::string path = std::string(IACSI_TEST_DATA_DIR) + "/meta_check.csv";
    write_outputs(path, r, run_metadata(s, "analyze", r));
    std::ifstream csv(path), meta(path + ".meta.json");
    std::stringstream cs;
    cs << csv.rdbuf();
    CHECK(cs.str() == format_csv(r.table));
    const json m = json::parse(meta);
    CHECK(m["command"] == "analyze");
    CHECK(m["seed"] == 1);
    CHECK(m["version"] == IACSI_VERSION);
    CHECK(parse_scenario_text(m["config"].dump()) == s);
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(perfect_csi) == "inf");
}
