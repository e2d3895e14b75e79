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

#include "v2v/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "v2v/fft.hpp"
#include "v2v/parallel.hpp"

namespace v2v {

namespace {

constexpr double kPi = std::numbers::pi;

// Power ratio for the 6 dB LOS detector window.
const double kLosWindowRatio = db_to_power(-6.0);

std::vector<double> taper_weights(Taper taper, std::size_t n)
{
    std::vector<double> w(n, 1.0);
    if (taper == Taper::kHann && n > 1)
        for (std::size_t t = 0; t < n; ++t)
            w[t] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(t) /
                                         static_cast<double>(n - 1)));
    return w;
}

// Power-weighted standard deviation of axis; two-pass (shifted) moments so
// the variance cannot go negative through cancellation. Empty weight -> nullopt.
std::optional<double> weighted_std(std::span<const double> axis, std::span<const double> weight)
{
    double s0 = 0.0;
    double s1 = 0.0;
    for (std::size_t i = 0; i < weight.size(); ++i) {
        s0 += weight[i];
        s1 += weight[i] * axis[i];
    }
    if (!(s0 > 0.0))
        return std::nullopt;
    const double mu = s1 / s0;
    double s2 = 0.0;
    for (std::size_t i = 0; i < weight.size(); ++i) {
        const double d = axis[i] - mu;
        s2 += weight[i] * d * d;
    }
    return std::sqrt(s2 / s0);
}

bool zero_variance(std::span<const double> v)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] != v[0])
            return false;
    return true;
}

// fftshift target index: DFT bin j lands at k with axis[k] = (k - N/2)*dnu.
inline std::size_t shifted_index(std::size_t j, std::size_t n)
{
    return (j + n / 2) % n;
}

} // namespace

// ----- parameters ---------------------------------------------------------

void AnalysisParams::validate() const
{
    if (std::isnan(noise_threshold))
        throw validation_error("analysis params: noise_threshold must not be NaN");
    if (stft_window == 0)
        throw validation_error("analysis params: stft_window must be >= 1");
    if (stft_step == 0 || stft_step > stft_window)
        throw validation_error("analysis params: require 0 < stft_step <= stft_window");
    if (stationarity_step == 0)
        throw validation_error("analysis params: stationarity_step must be >= 1");
    if (!(stationarity_threshold > 0.0) || stationarity_threshold > 1.0)
        throw validation_error("analysis params: stationarity_threshold must be in (0, 1]");
    if (trend_window == 0)
        throw validation_error("analysis params: trend_window must be >= 1");
}

// ----- elementwise transforms ---------------------------------------------

PdpMatrix pdp(const CirMatrix &h)
{
    const SamplingGrid grid = h.grid();
    const auto &samples = h.samples();
    std::vector<double> power(samples.size());
    parallel_for(0, grid.num_snapshots, [&](std::size_t n) {
        const std::size_t base = n * grid.num_delay_bins;
        for (std::size_t m = 0; m < grid.num_delay_bins; ++m)
            power[base + m] = std::norm(samples[base + m]);
    });
    return PdpMatrix(grid, std::move(power));
}

PdpMatrix magnitude_matrix(const CirMatrix &h)
{
    const SamplingGrid grid = h.grid();
    const auto &samples = h.samples();
    std::vector<double> mag(samples.size());
    parallel_for(0, grid.num_snapshots, [&](std::size_t n) {
        const std::size_t base = n * grid.num_delay_bins;
        for (std::size_t m = 0; m < grid.num_delay_bins; ++m)
            mag[base + m] = std::abs(samples[base + m]);
    });
    return PdpMatrix(grid, std::move(mag));
}

PdpMatrix threshold_noise(PdpMatrix p, double threshold_dbm)
{
    const SamplingGrid grid = p.grid();
    const double floor_mw = db_to_power(threshold_dbm);
    std::vector<double> power = std::move(p).take_power();
    parallel_for(0, grid.num_snapshots, [&](std::size_t n) {
        const std::size_t base = n * grid.num_delay_bins;
        for (std::size_t m = 0; m < grid.num_delay_bins; ++m)
            if (power[base + m] < floor_mw)
                power[base + m] = 0.0;
    });
    return PdpMatrix(grid, std::move(power));
}

CirMatrix threshold_cir(CirMatrix h, double threshold_dbm)
{
    const SamplingGrid grid = h.grid();
    const double floor_mw = db_to_power(threshold_dbm);
    std::vector<std::complex<double>> samples = std::move(h).take_samples();
    parallel_for(0, grid.num_snapshots, [&](std::size_t n) {
        const std::size_t base = n * grid.num_delay_bins;
        for (std::size_t m = 0; m < grid.num_delay_bins; ++m)
            if (std::norm(samples[base + m]) < floor_mw)
                samples[base + m] = 0.0;
    });
    return CirMatrix(grid, std::move(samples));
}

// ----- LOS alignment ------------------------------------------------------

Alignment align_los(CirMatrix h, double noise_threshold_dbm)
{
    const SamplingGrid grid = h.grid();
    const std::size_t rows = grid.num_snapshots;
    const std::size_t cols = grid.num_delay_bins;
    const double floor_mw = db_to_power(noise_threshold_dbm);

    std::vector<std::complex<double>> samples = std::move(h).take_samples();
    std::vector<std::size_t> shifts(rows, 0);
    std::vector<unsigned char> usable(rows, 0);

    parallel_for(0, rows, [&](std::size_t n) {
        std::complex<double> *row = samples.data() + n * cols;
        double pmax = 0.0;
        for (std::size_t m = 0; m < cols; ++m)
            pmax = std::max(pmax, std::norm(row[m]));
        if (pmax < floor_mw || pmax == 0.0)
            return; // unalignable; leave unshifted
        const double cut = pmax * kLosWindowRatio;
        std::size_t los_bin = 0;
        for (std::size_t m = 0; m < cols; ++m) {
            if (std::norm(row[m]) >= cut) {
                los_bin = m;
                break;
            }
        }
        shifts[n] = los_bin;
        usable[n] = 1;
        if (los_bin > 0)
            std::rotate(row, row + los_bin, row + cols);
    });

    Alignment out{CirMatrix(grid, std::move(samples)), std::move(shifts), {}, 0};
    out.usable.assign(usable.begin(), usable.end());
    for (unsigned char u : usable)
        if (!u)
            ++out.num_unusable;
    return out;
}

// ----- RMS delay spread ---------------------------------------------------

SpreadSeries rms_delay_spread(const PdpMatrix &p)
{
    const SamplingGrid grid = p.grid();
    const std::size_t rows = grid.num_snapshots;
    const std::vector<double> tau = grid.delay_axis();

    std::vector<double> sigma(rows, 0.0);
    std::vector<unsigned char> has_power(rows, 0);
    parallel_for(0, rows, [&](std::size_t n) {
        const auto s = weighted_std(tau, p.row(n));
        if (s) {
            sigma[n] = *s;
            has_power[n] = 1;
        }
    });

    SpreadSeries out;
    std::vector<double> axis;
    std::vector<double> values;
    axis.reserve(rows);
    values.reserve(rows);
    for (std::size_t n = 0; n < rows; ++n) {
        if (has_power[n]) {
            axis.push_back(static_cast<double>(n) * grid.snapshot_interval);
            values.push_back(sigma[n]);
        } else {
            out.excluded.push_back(n);
        }
    }
    out.series = MetricSeries::from(std::move(axis), std::move(values));
    return out;
}

// ----- delay-Doppler spectrum ---------------------------------------------

DelayDopplerSpectrum delay_doppler(const CirMatrix &h, Taper taper)
{
    const SamplingGrid grid = h.grid();
    const std::size_t n_t = grid.num_snapshots;
    const std::size_t n_d = grid.num_delay_bins;
    if (n_t < 2)
        throw validation_error("delay_doppler: need at least 2 snapshots, got " +
                               std::to_string(n_t));

    const std::vector<double> w = taper_weights(taper, n_t);
    const auto &samples = h.samples();
    std::vector<double> power(n_d * n_t);

    struct Scratch {
        Fft fft;
        std::vector<std::complex<double>> in, out;
    };
    parallel_for_stateful(
        0, n_d,
        [&]() {
            return Scratch{Fft(n_t), std::vector<std::complex<double>>(n_t),
                           std::vector<std::complex<double>>(n_t)};
        },
        [&](Scratch &sc, std::size_t m) {
            for (std::size_t t = 0; t < n_t; ++t)
                sc.in[t] = samples[t * n_d + m] * w[t];
            sc.fft.forward(sc.in, sc.out);
            double *row = power.data() + m * n_t;
            for (std::size_t j = 0; j < n_t; ++j)
                row[shifted_index(j, n_t)] = std::norm(sc.out[j]);
        });

    return DelayDopplerSpectrum(grid, n_t, std::move(power));
}

// ----- RMS Doppler spread, full spectrum (method 1) -----------------------

SpreadSeries rms_doppler_spread_m1(const DelayDopplerSpectrum &s)
{
    const SamplingGrid grid = s.grid();
    const std::size_t n_d = grid.num_delay_bins;
    const std::vector<double> &nu = s.doppler_axis();
    const std::vector<double> tau = grid.delay_axis();

    std::vector<double> sigma(n_d, 0.0);
    std::vector<unsigned char> has_power(n_d, 0);
    parallel_for(0, n_d, [&](std::size_t m) {
        const auto sd = weighted_std(nu, s.row(m));
        if (sd) {
            sigma[m] = *sd;
            has_power[m] = 1;
        }
    });

    SpreadSeries out;
    std::vector<double> axis;
    std::vector<double> values;
    for (std::size_t m = 0; m < n_d; ++m) {
        if (has_power[m]) {
            axis.push_back(tau[m]);
            values.push_back(sigma[m]);
        } else {
            out.excluded.push_back(m);
        }
    }
    if (values.empty())
        throw analysis_error("doppler spread: every delay row of the spectrum is empty");
    out.series = MetricSeries::from(std::move(axis), std::move(values));
    return out;
}

// ----- RMS Doppler spread, sliding window (method 2) ----------------------

SpreadSeries rms_doppler_spread_m2(const CirMatrix &h, const AnalysisParams &params)
{
    params.validate();
    const SamplingGrid grid = h.grid();
    const std::size_t n_t = grid.num_snapshots;
    const std::size_t n_d = grid.num_delay_bins;
    const std::size_t win = params.stft_window;
    const std::size_t step = params.stft_step;
    if (n_t < win)
        throw analysis_error("doppler spread: record has " + std::to_string(n_t) +
                             " snapshots, shorter than one " + std::to_string(win) +
                             "-snapshot window");

    const std::size_t num_windows = (n_t - win) / step + 1;
    const std::vector<double> w = taper_weights(params.taper, win);
    const std::vector<double> nu = grid.doppler_axis(win);
    const auto &samples = h.samples();

    std::vector<double> window_value(num_windows, 0.0);
    std::vector<unsigned char> window_has_power(num_windows, 0);

    struct Scratch {
        Fft fft;
        std::vector<std::complex<double>> in, out;
        std::vector<double> spec;
    };
    parallel_for_stateful(
        0, num_windows,
        [&]() {
            return Scratch{Fft(win), std::vector<std::complex<double>>(win),
                           std::vector<std::complex<double>>(win), std::vector<double>(win)};
        },
        [&](Scratch &sc, std::size_t wi) {
            const std::size_t start = wi * step;
            double sum_sigma = 0.0;
            std::size_t count = 0;
            for (std::size_t m = 0; m < n_d; ++m) {
                for (std::size_t t = 0; t < win; ++t)
                    sc.in[t] = samples[(start + t) * n_d + m] * w[t];
                sc.fft.forward(sc.in, sc.out);
                for (std::size_t j = 0; j < win; ++j)
                    sc.spec[shifted_index(j, win)] = std::norm(sc.out[j]);
                const auto sd = weighted_std(nu, sc.spec);
                if (sd) {
                    sum_sigma += *sd;
                    ++count;
                }
            }
            if (count > 0) {
                window_value[wi] = sum_sigma / static_cast<double>(count);
                window_has_power[wi] = 1;
            }
        });

    SpreadSeries out;
    std::vector<double> axis;
    std::vector<double> values;
    for (std::size_t wi = 0; wi < num_windows; ++wi) {
        if (window_has_power[wi]) {
            const double center =
                (static_cast<double>(wi * step) + static_cast<double>(win - 1) / 2.0) *
                grid.snapshot_interval;
            axis.push_back(center);
            values.push_back(window_value[wi]);
        } else {
            out.excluded.push_back(wi);
        }
    }
    if (values.empty())
        throw analysis_error("doppler spread: no window contains power");
    out.series = MetricSeries::from(std::move(axis), std::move(values));
    return out;
}

// ----- Pearson correlation ------------------------------------------------

std::optional<double> pearson(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw validation_error("pearson: length mismatch " + std::to_string(x.size()) + " vs " +
                               std::to_string(y.size()));
    if (x.size() < 2)
        throw validation_error("pearson: need at least 2 points");
    const double mx = series_mean(x);
    const double my = series_mean(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// ----- stationarity regions -----------------------------------------------

StationarityReport stationarity_regions(const PdpMatrix &p, const AnalysisParams &params)
{
    params.validate();
    const SamplingGrid grid = p.grid();
    const std::size_t step = params.stationarity_step;
    if (grid.num_snapshots < 2 * step)
        throw validation_error("stationarity: record has " + std::to_string(grid.num_snapshots) +
                               " snapshots, need at least 2 * step = " + std::to_string(2 * step));

    const std::size_t num_sub = (grid.num_snapshots - 1) / step + 1;
    const double sub_seconds = static_cast<double>(step) * grid.snapshot_interval;

    StationarityReport report;
    report.resolution_seconds = sub_seconds;

    auto row_at = [&](std::size_t sub) { return p.row(sub * step); };

    std::size_t region_start = 0; // subsample index
    for (std::size_t i = 1; i < num_sub; ++i) {
        const std::size_t ref_sub =
            params.stationarity_mode == StationarityMode::kAnchor ? region_start : i - 1;
        const auto ref = row_at(ref_sub);
        const auto cur = row_at(i);
        double r;
        if (const auto ropt = pearson(ref, cur)) {
            r = *ropt;
        } else {
            // Constant rows: identical-shape pair counts as fully correlated.
            r = (zero_variance(ref) && zero_variance(cur)) ? 1.0 : 0.0;
            ++report.num_degenerate;
        }
        if (r < params.stationarity_threshold) {
            report.region_lengths.push_back(static_cast<double>(i - region_start) * sub_seconds);
            report.boundaries.push_back(region_start * step);
            region_start = i;
        }
    }
    report.region_lengths.push_back(static_cast<double>(num_sub - region_start) * sub_seconds);
    report.boundaries.push_back(region_start * step);

    report.mean = series_mean(report.region_lengths);
    report.std_dev = series_std(report.region_lengths, report.mean);
    return report;
}

// ----- moving average -----------------------------------------------------

MetricSeries moving_average(const MetricSeries &s, std::size_t window)
{
    if (window == 0)
        throw validation_error("moving_average: window must be >= 1");
    const std::size_t n = s.values.size();
    const std::size_t half_lo = (window - 1) / 2;
    const std::size_t half_hi = window / 2;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half_lo ? i - half_lo : 0;
        const std::size_t hi = std::min(n - 1, i + half_hi);
        double acc = 0.0;
        for (std::size_t j = lo; j <= hi; ++j)
            acc += s.values[j];
        out[i] = acc / static_cast<double>(hi - lo + 1);
    }
    return MetricSeries::from(s.axis, std::move(out));
}

} // namespace v2v
