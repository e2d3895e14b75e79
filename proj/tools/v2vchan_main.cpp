// SPDX-License-Identifier: Apache-2.0
//
// v2vchan - vehicle-to-vehicle mmWave channel synthesis and analysis toolkit
// Copyright (C) 2026 v2vchan contributors
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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "v2v/commands.hpp"
#include "v2v/version.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"v2vchan - vehicle-to-vehicle mmWave channel synthesis and analysis"};
    app.set_version_flag("--version", std::string(v2v::kVersion));
    app.require_subcommand(1);

    // synth
    v2v::SynthOptions synth_opt;
    std::uint64_t seed_value = 0;
    CLI::App *synth = app.add_subcommand("synth", "Generate a CIR record from a scenario config");
    synth->add_option("config", synth_opt.config_path, "scenario configuration file")->required();
    synth->add_option("output", synth_opt.out_path, "output CIR file")->required();
    CLI::Option *seed_opt =
        synth->add_option("--seed", seed_value, "override the config's rng_seed");

    // analyze
    v2v::AnalyzeOptions analyze_opt;
    std::string taper_name = "rect";
    std::string stationarity_mode = "anchor";
    CLI::App *analyze =
        app.add_subcommand("analyze", "Run the full channel characterization pipeline");
    analyze->add_option("input", analyze_opt.cir_path, "CIR file to analyze")->required();
    analyze->add_option("outdir", analyze_opt.out_dir, "output directory")->required();
    analyze->add_option("--noise-threshold", analyze_opt.params.noise_threshold,
                        "truncation threshold in dBm (default -70)");
    analyze->add_flag_callback(
        "--no-align", [&]() { analyze_opt.params.align_los = false; },
        "skip LOS time alignment");
    analyze->add_option("--stft-window", analyze_opt.params.stft_window,
                        "sliding-window length in snapshots (default 256)");
    analyze->add_option("--stft-step", analyze_opt.params.stft_step,
                        "sliding-window step in snapshots (default 64)");
    analyze->add_option("--taper", taper_name, "window taper: rect or hann (default rect)")
        ->check(CLI::IsMember({"rect", "hann"}));
    analyze->add_option("--stationarity-step", analyze_opt.params.stationarity_step,
                        "correlate every Nth snapshot (default 50)");
    analyze->add_option("--stationarity-threshold", analyze_opt.params.stationarity_threshold,
                        "correlation floor in (0, 1] (default 0.9)");
    analyze
        ->add_option("--stationarity-mode", stationarity_mode,
                     "region growth: anchor or consecutive (default anchor)")
        ->check(CLI::IsMember({"anchor", "consecutive"}));
    analyze->add_flag_callback(
        "--stationarity-magnitude",
        [&]() { analyze_opt.params.stationarity_on_magnitude = true; },
        "correlate |h| rows instead of power rows");
    analyze->add_option("--trend-window", analyze_opt.params.trend_window,
                        "moving-average span for trend curves (default 51)");

    // compare
    v2v::CompareOptions compare_opt;
    CLI::App *compare = app.add_subcommand("compare", "Compare two completed analyze runs");
    compare->add_option("run_a", compare_opt.dir_a, "first analyze output directory")->required();
    compare->add_option("run_b", compare_opt.dir_b, "second analyze output directory")
        ->required();
    compare->add_flag("--reference", compare_opt.reference,
                      "also print published campaign values for context (non-binding)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return v2v::kExitConfig;
    }

    if (synth->parsed()) {
        if (*seed_opt)
            synth_opt.seed_override = seed_value;
        return v2v::run_synth(synth_opt, std::cout, std::cerr);
    }
    if (analyze->parsed()) {
        analyze_opt.params.taper = taper_name == "hann" ? v2v::Taper::kHann : v2v::Taper::kRect;
        analyze_opt.params.stationarity_mode = stationarity_mode == "consecutive"
                                                   ? v2v::StationarityMode::kConsecutive
                                                   : v2v::StationarityMode::kAnchor;
        return v2v::run_analyze(analyze_opt, std::cout, std::cerr);
    }
    if (compare->parsed())
        return v2v::run_compare(compare_opt, std::cout, std::cerr);
    return v2v::kExitConfig;
}
