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

#include "v2v/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <ostream>

#include <json.hpp>

#include "v2v/cir_io.hpp"
#include "v2v/metrics_io.hpp"
#include "v2v/scenario.hpp"
#include "v2v/synth.hpp"
#include "v2v/version.hpp"

namespace v2v {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

class StageTimer {
  public:
    StageTimer() : last_(std::chrono::steady_clock::now()) {}
    void lap(const std::string &name)
    {
        const auto now = std::chrono::steady_clock::now();
        timings_[name] = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
    }
    const ordered_json &timings() const { return timings_; }

  private:
    std::chrono::steady_clock::time_point last_;
    ordered_json timings_;
};

ordered_json grid_json(const SamplingGrid &grid)
{
    ordered_json j;
    j["num_snapshots"] = grid.num_snapshots;
    j["num_delay_bins"] = grid.num_delay_bins;
    j["snapshot_interval_s"] = grid.snapshot_interval;
    j["delay_bin_s"] = grid.delay_bin;
    j["carrier_frequency_hz"] = grid.carrier_frequency;
    j["bandwidth_hz"] = grid.bandwidth;
    j["duration_s"] = grid.duration();
    return j;
}

const char *taper_name(Taper t) { return t == Taper::kHann ? "hann" : "rect"; }

ordered_json params_json(const AnalysisParams &p)
{
    ordered_json j;
    j["noise_threshold_dbm"] = p.noise_threshold;
    j["align_los"] = p.align_los;
    j["stft_window"] = p.stft_window;
    j["stft_step"] = p.stft_step;
    j["taper"] = taper_name(p.taper);
    j["stationarity_step"] = p.stationarity_step;
    j["stationarity_threshold"] = p.stationarity_threshold;
    j["stationarity_mode"] =
        p.stationarity_mode == StationarityMode::kAnchor ? "anchor" : "consecutive";
    j["stationarity_on_magnitude"] = p.stationarity_on_magnitude;
    j["trend_window"] = p.trend_window;
    return j;
}

// Published 60/80 GHz vehicle-passing measurement campaigns; context only,
// never used as a pass/fail target.
struct ReferenceRow {
    const char *metric;
    double mean_60, std_60, mean_80, std_80;
};

const ReferenceRow kReferenceCampaign1[] = {
    {"delay_spread_ns", 18.7, 5.94, 34.9, 18.2},
    {"doppler_m1_khz", 1.83, 0.44, 2.05, 0.45},
    {"doppler_m2_khz", 1.65, 0.39, 1.44, 0.63},
    {"stationarity_s", 0.51, 0.30, 0.48, 0.23},
};

const ReferenceRow kReferenceCampaign2[] = {
    {"delay_spread_ns", 22.1, 5.43, 38.9, 14.7},
    {"doppler_m1_khz", 1.91, 0.48, 2.16, 0.45},
    {"doppler_m2_khz", 1.81, 0.45, 1.57, 0.55},
    {"stationarity_s", 0.47, 0.27, 0.42, 0.21},
};

ordered_json reference_json()
{
    ordered_json ref;
    ref["description"] =
        "values from a published 60/80 GHz vehicle-passing measurement campaign";
    ref["non_binding"] = true;
    const std::pair<const char *, const ReferenceRow *> campaigns[] = {
        {"campaign_1", kReferenceCampaign1}, {"campaign_2", kReferenceCampaign2}};
    for (const auto &[name, rows] : campaigns) {
        ordered_json c;
        for (int i = 0; i < 4; ++i) {
            const ReferenceRow &r = rows[i];
            c[r.metric] = {{"mean_60ghz", r.mean_60},
                           {"std_60ghz", r.std_60},
                           {"mean_80ghz", r.mean_80},
                           {"std_80ghz", r.std_80}};
        }
        ref[name] = c;
    }
    return ref;
}

} // namespace

// ----- synth --------------------------------------------------------------

int run_synth(const SynthOptions &opt, std::ostream &out, std::ostream &err)
{
    try {
        StageTimer timer;
        ScenarioConfig cfg = load_scenario(opt.config_path);
        if (opt.seed_override)
            cfg.rng_seed = *opt.seed_override;
        timer.lap("load_config_ms");

        CirMatrix h = simulate(cfg);
        timer.lap("simulate_ms");

        write_cir(opt.out_path, h);
        timer.lap("write_ms");

        ordered_json manifest;
        manifest["tool"] = "v2vchan";
        manifest["version"] = kVersion;
        manifest["command"] = "synth";
        manifest["config"] = opt.config_path;
        manifest["output"] = opt.out_path;
        manifest["seed"] = cfg.rng_seed;
        manifest["num_scatterers"] = cfg.scatterers.size();
        manifest["grid"] = grid_json(h.grid());
        manifest["timings"] = timer.timings();
        out << manifest.dump(2) << "\n";
        return kExitOk;
    } catch (const config_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const aliasing_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitAliasing;
    } catch (const validation_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const io_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

// ----- analyze ------------------------------------------------------------

int run_analyze(const AnalyzeOptions &opt, std::ostream &out, std::ostream &err)
{
    try {
        const AnalysisParams &params = opt.params;
        params.validate();

        std::error_code ec;
        fs::create_directories(opt.out_dir, ec);
        if (ec)
            throw io_error(opt.out_dir + ": cannot create output directory: " + ec.message());
        auto out_path = [&](const char *name) { return (fs::path(opt.out_dir) / name).string(); };

        StageTimer timer;
        CirMatrix h = read_cir(opt.cir_path);
        const SamplingGrid grid = h.grid();
        timer.lap("read_ms");

        if (grid.num_snapshots < 2)
            throw validation_error("analyze: record needs at least 2 snapshots");
        if (grid.num_snapshots < params.stft_window)
            throw validation_error("analyze: stft_window " + std::to_string(params.stft_window) +
                                   " exceeds the record's " +
                                   std::to_string(grid.num_snapshots) + " snapshots");
        if (grid.num_snapshots < 2 * params.stationarity_step)
            throw validation_error("analyze: record shorter than 2 * stationarity_step (" +
                                   std::to_string(2 * params.stationarity_step) + " snapshots)");

        const double thr_mw = db_to_power(params.noise_threshold);
        const std::vector<double> time_axis = grid.time_axis();
        std::vector<double> delay_axis_ns = grid.delay_axis();
        for (double &v : delay_axis_ns)
            v *= 1e9;

        // Heatmap of the unaligned, threshold-truncated PDP: delay rows over
        // decimated time columns, so the delay trajectories stay visible.
        export_power_grid(
            out_path("pdp_heatmap.csv"), "delay_ns", delay_axis_ns, "time_s", time_axis,
            [&](std::size_t m) {
                std::vector<double> row(grid.num_snapshots);
                for (std::size_t n = 0; n < grid.num_snapshots; ++n) {
                    const double p = std::norm(h.at(n, m));
                    row[n] = p >= thr_mw ? p : 0.0;
                }
                return row;
            },
            2000);
        timer.lap("heatmap_ms");

        Alignment aligned = [&]() -> Alignment {
            if (params.align_los)
                return align_los(std::move(h), params.noise_threshold);
            return Alignment{std::move(h), std::vector<std::size_t>(grid.num_snapshots, 0),
                             std::vector<bool>(grid.num_snapshots, true), 0};
        }();
        timer.lap("align_ms");

        const CirMatrix ht = threshold_cir(std::move(aligned.cir), params.noise_threshold);
        timer.lap("threshold_ms");

        const PdpMatrix pt = pdp(ht);
        const SpreadSeries ds = rms_delay_spread(pt);
        const MetricSeries ds_trend = moving_average(ds.series, params.trend_window);
        export_metrics(out_path("delay_spread.csv"), "time_s", ds.series.axis,
                       {make_column("delay_spread_ns", ds.series, 1e9),
                        make_column("delay_spread_trend_ns", ds_trend, 1e9)});
        timer.lap("delay_spread_ms");

        SpreadSeries m1;
        {
            const DelayDopplerSpectrum dd = delay_doppler(ht, params.taper);
            std::vector<double> doppler_axis_khz = dd.doppler_axis();
            for (double &v : doppler_axis_khz)
                v *= 1e-3;
            export_power_grid(
                out_path("delay_doppler.csv"), "delay_ns", delay_axis_ns, "doppler_khz",
                doppler_axis_khz,
                [&](std::size_t m) {
                    const auto row = dd.row(m);
                    return std::vector<double>(row.begin(), row.end());
                },
                2000);
            m1 = rms_doppler_spread_m1(dd);
            std::vector<double> m1_axis_ns = m1.series.axis;
            for (double &v : m1_axis_ns)
                v *= 1e9;
            export_metrics(out_path("doppler_m1.csv"), "delay_ns", m1_axis_ns,
                           {make_column("doppler_m1_khz", m1.series, 1e-3)});
        }
        timer.lap("doppler_m1_ms");

        const SpreadSeries m2 = rms_doppler_spread_m2(ht, params);
        const MetricSeries m2_trend = moving_average(m2.series, params.trend_window);
        export_metrics(out_path("doppler_m2.csv"), "time_s", m2.series.axis,
                       {make_column("doppler_m2_khz", m2.series, 1e-3),
                        make_column("doppler_m2_trend_khz", m2_trend, 1e-3)});
        timer.lap("doppler_m2_ms");

        StationarityReport st;
        if (params.stationarity_on_magnitude) {
            const PdpMatrix mag = magnitude_matrix(ht);
            st = stationarity_regions(mag, params);
        } else {
            st = stationarity_regions(pt, params);
        }
        {
            std::vector<double> region_start_s;
            region_start_s.reserve(st.boundaries.size());
            for (std::size_t b : st.boundaries)
                region_start_s.push_back(static_cast<double>(b) * grid.snapshot_interval);
            ExportColumn lengths;
            lengths.name = "region_length_s";
            lengths.values = st.region_lengths;
            lengths.mean = st.mean;
            lengths.std_dev = st.std_dev;
            export_metrics(out_path("stationarity.csv"), "region_start_s", region_start_s,
                           {lengths});
        }
        timer.lap("stationarity_ms");

        write_summary(
            out_path("summary.txt"),
            {"v2vchan analysis summary", std::string("version = ") + kVersion,
             "input = " + opt.cir_path,
             "params: noise_threshold = " + std::to_string(params.noise_threshold) +
                 " dBm, align = " + (params.align_los ? "on" : "off") +
                 ", stft_window = " + std::to_string(params.stft_window) +
                 ", stft_step = " + std::to_string(params.stft_step) +
                 ", taper = " + taper_name(params.taper) +
                 ", stationarity_step = " + std::to_string(params.stationarity_step) +
                 ", stationarity_threshold = " + std::to_string(params.stationarity_threshold) +
                 ", trend_window = " + std::to_string(params.trend_window)},
            {
                {"grid_num_snapshots", static_cast<double>(grid.num_snapshots)},
                {"grid_num_delay_bins", static_cast<double>(grid.num_delay_bins)},
                {"grid_snapshot_interval", grid.snapshot_interval},
                {"grid_delay_bin", grid.delay_bin},
                {"grid_carrier_frequency", grid.carrier_frequency},
                {"grid_bandwidth", grid.bandwidth},
                {"delay_spread_ns_mean", ds.series.mean * 1e9},
                {"delay_spread_ns_std", ds.series.std_dev * 1e9},
                {"doppler_m1_khz_mean", m1.series.mean * 1e-3},
                {"doppler_m1_khz_std", m1.series.std_dev * 1e-3},
                {"doppler_m2_khz_mean", m2.series.mean * 1e-3},
                {"doppler_m2_khz_std", m2.series.std_dev * 1e-3},
                {"stationarity_s_mean", st.mean},
                {"stationarity_s_std", st.std_dev},
                {"stationarity_resolution_ms", st.resolution_seconds * 1e3},
                {"num_stationarity_regions", static_cast<double>(st.region_lengths.size())},
                {"unalignable_snapshots", static_cast<double>(aligned.num_unusable)},
                {"excluded_snapshots", static_cast<double>(ds.excluded.size())},
                {"excluded_delay_bins", static_cast<double>(m1.excluded.size())},
                {"excluded_windows", static_cast<double>(m2.excluded.size())},
                {"degenerate_correlations", static_cast<double>(st.num_degenerate)},
            });
        timer.lap("summary_ms");

        ordered_json manifest;
        manifest["tool"] = "v2vchan";
        manifest["version"] = kVersion;
        manifest["command"] = "analyze";
        manifest["input"] = opt.cir_path;
        manifest["output_dir"] = opt.out_dir;
        manifest["grid"] = grid_json(grid);
        manifest["params"] = params_json(params);
        manifest["outputs"] = {out_path("pdp_heatmap.csv"),  out_path("delay_spread.csv"),
                               out_path("delay_doppler.csv"), out_path("doppler_m1.csv"),
                               out_path("doppler_m2.csv"),    out_path("stationarity.csv"),
                               out_path("summary.txt")};
        manifest["summary"] = {
            {"delay_spread_ns_mean", ds.series.mean * 1e9},
            {"delay_spread_ns_std", ds.series.std_dev * 1e9},
            {"doppler_m1_khz_mean", m1.series.mean * 1e-3},
            {"doppler_m1_khz_std", m1.series.std_dev * 1e-3},
            {"doppler_m2_khz_mean", m2.series.mean * 1e-3},
            {"doppler_m2_khz_std", m2.series.std_dev * 1e-3},
            {"stationarity_s_mean", st.mean},
            {"stationarity_s_std", st.std_dev},
            {"stationarity_resolution_ms", st.resolution_seconds * 1e3},
            {"num_stationarity_regions", st.region_lengths.size()},
            {"unalignable_snapshots", aligned.num_unusable},
            {"excluded_snapshots", ds.excluded.size()},
            {"degenerate_correlations", st.num_degenerate},
        };
        manifest["timings"] = timer.timings();
        out << manifest.dump(2) << "\n";
        return kExitOk;
    } catch (const validation_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const io_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const analysis_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

// ----- compare ------------------------------------------------------------

int run_compare(const CompareOptions &opt, std::ostream &out, std::ostream &err)
{
    try {
        const std::string path_a = (fs::path(opt.dir_a) / "summary.txt").string();
        const std::string path_b = (fs::path(opt.dir_b) / "summary.txt").string();
        const auto sum_a = read_summary(path_a);
        const auto sum_b = read_summary(path_b);

        auto need = [](const std::map<std::string, double> &s, const std::string &path,
                       const std::string &key) {
            const auto it = s.find(key);
            if (it == s.end())
                throw io_error(path + ": missing key '" + key + "'");
            return it->second;
        };

        // Everything but the carrier must match for a band-vs-band comparison.
        std::vector<std::string> mismatched;
        for (const char *key : {"grid_num_snapshots", "grid_num_delay_bins",
                                "grid_snapshot_interval", "grid_delay_bin", "grid_bandwidth"}) {
            if (need(sum_a, path_a, key) != need(sum_b, path_b, key))
                mismatched.push_back(key);
        }
        if (!mismatched.empty()) {
            err << "error: runs have incompatible grids:";
            for (const auto &k : mismatched)
                err << " " << k;
            err << "\n";
            return kExitMismatch;
        }

        ordered_json manifest;
        manifest["tool"] = "v2vchan";
        manifest["version"] = kVersion;
        manifest["command"] = "compare";
        manifest["run_a"] = opt.dir_a;
        manifest["run_b"] = opt.dir_b;
        manifest["carrier_frequency_a_hz"] = need(sum_a, path_a, "grid_carrier_frequency");
        manifest["carrier_frequency_b_hz"] = need(sum_b, path_b, "grid_carrier_frequency");

        ordered_json metrics;
        for (const char *metric : {"delay_spread_ns", "doppler_m1_khz", "doppler_m2_khz",
                                   "stationarity_s"}) {
            const std::string mean_key = std::string(metric) + "_mean";
            const std::string std_key = std::string(metric) + "_std";
            const double a_mean = need(sum_a, path_a, mean_key);
            const double b_mean = need(sum_b, path_b, mean_key);
            ordered_json m;
            m["a_mean"] = a_mean;
            m["a_std"] = need(sum_a, path_a, std_key);
            m["b_mean"] = b_mean;
            m["b_std"] = need(sum_b, path_b, std_key);
            if (a_mean != 0.0)
                m["mean_ratio_b_over_a"] = b_mean / a_mean;
            else
                m["mean_ratio_b_over_a"] = nullptr;
            metrics[metric] = m;
        }
        manifest["metrics"] = metrics;

        // Doppler spread should scale like the carrier: check M1 against the
        // carrier ratio.
        const double fa = need(sum_a, path_a, "grid_carrier_frequency");
        const double fb = need(sum_b, path_b, "grid_carrier_frequency");
        const double m1a = need(sum_a, path_a, "doppler_m1_khz_mean");
        const double m1b = need(sum_b, path_b, "doppler_m1_khz_mean");
        ordered_json scaling;
        if (fa > 0.0 && m1a != 0.0) {
            const double expected = fb / fa;
            const double observed = m1b / m1a;
            scaling["expected_carrier_ratio"] = expected;
            scaling["observed_m1_ratio"] = observed;
            scaling["relative_deviation"] = observed / expected - 1.0;
        } else {
            scaling["expected_carrier_ratio"] = nullptr;
            scaling["observed_m1_ratio"] = nullptr;
            scaling["relative_deviation"] = nullptr;
        }
        manifest["doppler_scaling"] = scaling;

        if (opt.reference)
            manifest["reference_values"] = reference_json();

        out << manifest.dump(2) << "\n";
        return kExitOk;
    } catch (const io_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const validation_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

} // namespace v2v
