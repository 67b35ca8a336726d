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

// Command-line front end: analyze | simulate | compare | plan | preset <fig2..fig9>.

#include <iacsi/iacsi.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

namespace
{

enum ExitCode
{
    exit_ok = 0,
    exit_config = 2,
    exit_gate = 3,
    exit_nonconvergence = 4
};

struct Overrides
{
    std::string config;
    std::string output;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::string mode;
};

void apply(iacsi::Scenario &s, const Overrides &o)
{
    if (!o.output.empty())
        s.output = o.output;
    if (o.trials)
        s.trials = *o.trials;
    if (o.seed)
        s.seed = *o.seed;
    if (o.threads)
        s.threads = *o.threads;
    if (!o.mode.empty())
        s.mode = iacsi::parse_quantization_mode(o.mode);
    iacsi::validate_scenario(s);
}

int execute(const std::string &command, iacsi::Scenario s, const Overrides &o)
{
    apply(s, o);
    iacsi::RunReport rep;
    if (command == "analyze")
        rep = iacsi::run_analyze(s);
    else if (command == "simulate")
        rep = iacsi::run_simulate(s);
    else if (command == "compare")
        rep = iacsi::run_compare(s);
    else
        rep = iacsi::run_plan(s);

    const std::string csv = iacsi::format_csv(rep.table);
    if (s.output.empty())
        std::cout << csv;
    else
    {
        iacsi::write_outputs(s.output, rep, iacsi::run_metadata(s, command, rep));
        std::cerr << "wrote " << s.output << " (" << rep.table.rows.size() << " rows)\n";
    }
    if (command == "simulate" || command == "compare")
    {
        const double frac = rep.nonconverged_fraction();
        if (frac > iacsi::nonconvergence_threshold)
        {
            std::cerr << "solver did not converge in " << rep.nonconverged << " of " << rep.trials << " trials\n";
            return exit_nonconvergence;
        }
    }
    if (command == "compare")
    {
        std::cerr << "compare gate (|z| <= " << iacsi::compare_gate_sigmas << "): "
                  << (rep.gate_pass ? "PASS" : "FAIL") << ", " << rep.failed_cells << " of " << rep.cells
                  << " cells outside\n";
        if (!rep.gate_pass)
            return exit_gate;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Closed-form and Monte Carlo performance of interference alignment with quantized CSI"};
    app.set_version_flag("--version", std::string(IACSI_VERSION));
    app.require_subcommand(1);

    Overrides o;
    auto add_common = [&o](CLI::App *sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", o.config, "scenario file (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--output", o.output, "CSV output path (a .meta.json sidecar is written next to it)");
        sub->add_option("--trials", o.trials, "Monte Carlo trials");
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_option("--threads", o.threads, "worker threads (0: all cores)");
        sub->add_option("--mode", o.mode, "quantization model")->check(CLI::IsMember({"error-model", "rvq"}));
    };

    std::string preset_name;
    for (const char *name : {"analyze", "simulate", "compare", "plan"})
        add_common(app.add_subcommand(name, std::string(name) + " a scenario file"), true);
    auto *preset = app.add_subcommand("preset", "run a figure preset");
    preset->add_option("name", preset_name, "fig2 .. fig9")->required()->check(CLI::IsMember(iacsi::preset_names()));
    add_common(preset, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    try
    {
        CLI::App *sub = app.get_subcommands().front();
        const std::string command = sub->get_name();
        if (command == "preset")
        {
            return execute(iacsi::preset_command(preset_name), iacsi::preset(preset_name), o);
        }
        return execute(command, iacsi::load_scenario(o.config), o);
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
