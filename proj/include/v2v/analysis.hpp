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

#ifndef V2V_ANALYSIS_HPP
#define V2V_ANALYSIS_HPP

#include <optional>
#include <span>
#include <vector>

#include "v2v/core.hpp"

namespace v2v {

enum class Taper { kRect, kHann };

enum class StationarityMode {
    kAnchor,     // correlate each subsample against the region's first row
    kConsecutive // correlate each subsample against the previous one
};

struct AnalysisParams {
    double noise_threshold = -70.0; // dBm; entries below are truncated to zero
    bool align_los = true;
    std::size_t stft_window = 256;  // snapshots per sliding-window spectrum
    std::size_t stft_step = 64;     // snapshots between window starts
    Taper taper = Taper::kRect;
    std::size_t stationarity_step = 50;   // subsample every Nth snapshot
    double stationarity_threshold = 0.9;  // correlation floor, in (0, 1]
    StationarityMode stationarity_mode = StationarityMode::kAnchor;
    bool stationarity_on_magnitude = false; // correlate |h| rows instead of power
    std::size_t trend_window = 51;        // moving-average span for trend curves

    void validate() const; // throws validation_error
};

// Result of LOS alignment: per snapshot, the earliest delay bin within 6 dB
// of that snapshot's peak is rotated to index 0. Snapshots whose peak never
// reaches the noise threshold are flagged unusable and left unshifted; noise
// truncation downstream zeroes them, which drops them from every mean.
struct Alignment {
    CirMatrix cir;
    std::vector<std::size_t> shifts;
    std::vector<bool> usable;
    std::size_t num_unusable = 0;
};

// A per-snapshot or per-delay spread series; inputs with zero total power
// are dropped from the series and listed in excluded.
struct SpreadSeries {
    MetricSeries series;
    std::vector<std::size_t> excluded;
};

struct StationarityReport {
    std::vector<double> region_lengths;  // seconds, in record order
    std::vector<std::size_t> boundaries; // region start snapshot indices
    double mean = 0.0;
    double std_dev = 0.0;                // population std of region lengths
    double resolution_seconds = 0.0;     // stationarity_step * snapshot_interval
    std::size_t num_degenerate = 0;      // comparisons with undefined correlation
};

// Instantaneous power delay profile |h|^2, linear milliwatts.
PdpMatrix pdp(const CirMatrix &h);

// |h| per entry, for the magnitude-correlation stationarity option.
PdpMatrix magnitude_matrix(const CirMatrix &h);

// Entries whose dB value is below threshold become exactly 0; entries at or
// above it are unchanged.
PdpMatrix threshold_noise(PdpMatrix p, double threshold_dbm);

// CIR-domain counterpart: samples with |h|^2 below threshold become 0, so
// pdp(threshold_cir(h, thr)) == threshold_noise(pdp(h), thr).
CirMatrix threshold_cir(CirMatrix h, double threshold_dbm);

Alignment align_los(CirMatrix h, double noise_threshold_dbm);

// Per-snapshot RMS delay spread: power-weighted standard deviation of the
// delay axis. Series axis is snapshot time.
SpreadSeries rms_delay_spread(const PdpMatrix &p);

// Per delay bin, squared magnitude of the DFT along time of the optionally
// tapered snapshot sequence; Doppler axis centered on zero. No zero-padding.
DelayDopplerSpectrum delay_doppler(const CirMatrix &h, Taper taper);

// Full-spectrum RMS Doppler spread per delay bin (power-weighted std of the
// Doppler axis); series axis is delay. Throws analysis_error when every
// delay row is empty.
SpreadSeries rms_doppler_spread_m1(const DelayDopplerSpectrum &s);

// Sliding-window estimate: per window position, the mean over delay bins of
// the windowed-spectrum Doppler spread; one value per window, timestamped at
// the window center.
SpreadSeries rms_doppler_spread_m2(const CirMatrix &h, const AnalysisParams &params);

// Sample Pearson correlation; nullopt when either input has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

// Quasi-stationarity segmentation of subsampled rows of p (power or
// magnitude). Region lengths tile the subsampled span exactly.
StationarityReport stationarity_regions(const PdpMatrix &p, const AnalysisParams &params);

// Centered moving average with shrinking windows at the edges; axis kept.
MetricSeries moving_average(const MetricSeries &s, std::size_t window);

} // namespace v2v

#endif
