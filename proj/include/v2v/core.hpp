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

#ifndef V2V_CORE_HPP
#define V2V_CORE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace v2v {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

// Error taxonomy. The CLI maps these onto stable exit codes.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class validation_error : public error {
  public:
    using error::error;
};

// Scenario/config file problems; message names the offending key and line.
class config_error : public error {
  public:
    using error::error;
};

// A generated path's Doppler would exceed the unambiguous range.
class aliasing_error : public error {
  public:
    using error::error;
};

class io_error : public error {
  public:
    using error::error;
};

class analysis_error : public error {
  public:
    using error::error;
};

// ----- power units --------------------------------------------------------
//
// Internally all power is linear milliwatts; dB appears only at IO
// boundaries and thresholds. Zero power maps to -inf so it compares below
// any finite threshold.

double power_to_db(double p_mw); // throws std::domain_error for p < 0
double db_to_power(double dbm);

// ----- sampling grid ------------------------------------------------------

// Discrete time/delay grid shared by the CIR, PDP and delay-Doppler objects.
struct SamplingGrid {
    double snapshot_interval = 0.0;  // s between consecutive CIR snapshots
    double delay_bin = 0.0;          // s per delay bin (1/bandwidth)
    std::size_t num_snapshots = 0;
    std::size_t num_delay_bins = 0;
    double carrier_frequency = 0.0;  // Hz, 0 = unspecified
    double bandwidth = 0.0;          // Hz, 0 = unspecified

    void validate() const; // throws validation_error

    double duration() const { return snapshot_interval * static_cast<double>(num_snapshots); }
    double doppler_resolution() const {
        return 1.0 / (static_cast<double>(num_snapshots) * snapshot_interval);
    }
    double max_doppler() const { return 1.0 / (2.0 * snapshot_interval); }

    std::vector<double> time_axis() const;   // [0, dt, 2 dt, ...]
    std::vector<double> delay_axis() const;  // [0, dbin, 2 dbin, ...]

    // Centered Doppler axis for an N-point transform along time:
    // axis[k] = (k - floor(N/2)) / (N * snapshot_interval).
    std::vector<double> doppler_axis(std::size_t transform_length) const;

    bool same_geometry(const SamplingGrid &other) const;
};

// ----- channel impulse response -------------------------------------------

// Complex h(t_n, tau_m), row-major [snapshot][delay_bin]. Immutable after
// construction; |sample|^2 is linear power in milliwatts.
class CirMatrix {
  public:
    CirMatrix(SamplingGrid grid, std::vector<std::complex<double>> samples);

    const SamplingGrid &grid() const { return grid_; }
    const std::vector<std::complex<double>> &samples() const { return samples_; }

    std::span<const std::complex<double>> row(std::size_t n) const {
        return {samples_.data() + n * grid_.num_delay_bins, grid_.num_delay_bins};
    }
    const std::complex<double> &at(std::size_t n, std::size_t m) const {
        return samples_[n * grid_.num_delay_bins + m];
    }

    // Used by in-place transforms (alignment, truncation) that construct a
    // new matrix from a moved-in one.
    std::vector<std::complex<double>> take_samples() && { return std::move(samples_); }

  private:
    SamplingGrid grid_;
    std::vector<std::complex<double>> samples_;
};

// ----- power delay profile ------------------------------------------------

// P(t_n, tau_m) = |h|^2, linear milliwatts, row-major [snapshot][delay_bin].
class PdpMatrix {
  public:
    PdpMatrix(SamplingGrid grid, std::vector<double> power);

    const SamplingGrid &grid() const { return grid_; }
    const std::vector<double> &power() const { return power_; }

    std::span<const double> row(std::size_t n) const {
        return {power_.data() + n * grid_.num_delay_bins, grid_.num_delay_bins};
    }
    double at(std::size_t n, std::size_t m) const {
        return power_[n * grid_.num_delay_bins + m];
    }

    std::vector<double> take_power() && { return std::move(power_); }

  private:
    SamplingGrid grid_;
    std::vector<double> power_;
};

// ----- delay-Doppler spectrum ---------------------------------------------

// S(tau_m, nu_k), linear milliwatts, row-major [delay_bin][doppler_bin] with
// a centered Doppler axis (negative to positive).
class DelayDopplerSpectrum {
  public:
    DelayDopplerSpectrum(SamplingGrid grid, std::size_t transform_length,
                         std::vector<double> power);

    const SamplingGrid &grid() const { return grid_; }
    std::size_t transform_length() const { return transform_length_; }
    const std::vector<double> &power() const { return power_; }
    const std::vector<double> &doppler_axis() const { return doppler_axis_; }

    std::span<const double> row(std::size_t m) const {
        return {power_.data() + m * transform_length_, transform_length_};
    }

  private:
    SamplingGrid grid_;
    std::size_t transform_length_;
    std::vector<double> power_;
    std::vector<double> doppler_axis_;
};

// ----- multipath component ------------------------------------------------

// One propagation path evaluated at a fixed observation time.
struct MultipathComponent {
    std::string label;      // "los" or scatterer identifier
    double amplitude = 0.0; // unitless, >= 0; amplitude^2 = linear mW
    double phase = 0.0;     // radians
    double delay = 0.0;     // s, >= 0
    double doppler = 0.0;   // Hz
};

// ----- metric series ------------------------------------------------------

// A time- or delay-indexed scalar metric with population summary statistics.
struct MetricSeries {
    std::vector<double> axis;   // s
    std::vector<double> values; // unit depends on the metric
    double mean = 0.0;
    double std_dev = 0.0;       // population standard deviation

    static MetricSeries from(std::vector<double> axis, std::vector<double> values);
    std::size_t size() const { return values.size(); }
};

// Mean and population std over a span, summed in index order.
double series_mean(std::span<const double> v);
double series_std(std::span<const double> v, double mean);

} // namespace v2v

#endif
