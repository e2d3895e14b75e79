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

#include "v2v/core.hpp"

#include <cmath>

namespace v2v {

double power_to_db(double p_mw)
{
    if (p_mw < 0.0)
        throw std::domain_error("power_to_db: negative power " + std::to_string(p_mw));
    if (p_mw == 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(p_mw);
}

double db_to_power(double dbm)
{
    if (dbm == -std::numeric_limits<double>::infinity())
        return 0.0;
    return std::pow(10.0, dbm / 10.0);
}

// ----- SamplingGrid -------------------------------------------------------

void SamplingGrid::validate() const
{
    if (!(snapshot_interval > 0.0) || !std::isfinite(snapshot_interval))
        throw validation_error("sampling grid: snapshot_interval must be finite and > 0, got " +
                               std::to_string(snapshot_interval));
    if (!(delay_bin > 0.0) || !std::isfinite(delay_bin))
        throw validation_error("sampling grid: delay_bin must be finite and > 0, got " +
                               std::to_string(delay_bin));
    if (num_snapshots == 0)
        throw validation_error("sampling grid: num_snapshots must be >= 1");
    if (num_delay_bins == 0)
        throw validation_error("sampling grid: num_delay_bins must be >= 1");
    if (carrier_frequency < 0.0 || !std::isfinite(carrier_frequency))
        throw validation_error("sampling grid: carrier_frequency must be finite and >= 0");
    if (bandwidth < 0.0 || !std::isfinite(bandwidth))
        throw validation_error("sampling grid: bandwidth must be finite and >= 0");
    if (bandwidth > 0.0) {
        // delay_bin must equal 1/bandwidth to 1 ppm when both are supplied.
        const double expected = 1.0 / bandwidth;
        if (std::abs(delay_bin - expected) > 1e-6 * expected)
            throw validation_error("sampling grid: delay_bin " + std::to_string(delay_bin) +
                                   " inconsistent with 1/bandwidth " + std::to_string(expected));
    }
}

std::vector<double> SamplingGrid::time_axis() const
{
    std::vector<double> t(num_snapshots);
    for (std::size_t n = 0; n < num_snapshots; ++n)
        t[n] = static_cast<double>(n) * snapshot_interval;
    return t;
}

std::vector<double> SamplingGrid::delay_axis() const
{
    std::vector<double> tau(num_delay_bins);
    for (std::size_t m = 0; m < num_delay_bins; ++m)
        tau[m] = static_cast<double>(m) * delay_bin;
    return tau;
}

std::vector<double> SamplingGrid::doppler_axis(std::size_t transform_length) const
{
    if (transform_length == 0)
        throw validation_error("doppler_axis: transform_length must be >= 1");
    const double df = 1.0 / (static_cast<double>(transform_length) * snapshot_interval);
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(transform_length / 2);
    std::vector<double> nu(transform_length);
    for (std::size_t k = 0; k < transform_length; ++k)
        nu[k] = static_cast<double>(static_cast<std::ptrdiff_t>(k) - half) * df;
    return nu;
}

bool SamplingGrid::same_geometry(const SamplingGrid &other) const
{
    return snapshot_interval == other.snapshot_interval && delay_bin == other.delay_bin &&
           num_snapshots == other.num_snapshots && num_delay_bins == other.num_delay_bins &&
           bandwidth == other.bandwidth;
}

// ----- matrices -----------------------------------------------------------

CirMatrix::CirMatrix(SamplingGrid grid, std::vector<std::complex<double>> samples)
    : grid_(grid), samples_(std::move(samples))
{
    grid_.validate();
    const std::size_t expected = grid_.num_snapshots * grid_.num_delay_bins;
    if (samples_.size() != expected)
        throw validation_error("CIR matrix: expected " + std::to_string(expected) +
                               " samples, got " + std::to_string(samples_.size()));
    for (std::size_t i = 0; i < samples_.size(); ++i)
        if (!std::isfinite(samples_[i].real()) || !std::isfinite(samples_[i].imag()))
            throw validation_error("CIR matrix: non-finite sample at flat index " +
                                   std::to_string(i));
}

PdpMatrix::PdpMatrix(SamplingGrid grid, std::vector<double> power)
    : grid_(grid), power_(std::move(power))
{
    grid_.validate();
    const std::size_t expected = grid_.num_snapshots * grid_.num_delay_bins;
    if (power_.size() != expected)
        throw validation_error("PDP matrix: expected " + std::to_string(expected) +
                               " entries, got " + std::to_string(power_.size()));
    for (std::size_t i = 0; i < power_.size(); ++i)
        if (!(power_[i] >= 0.0) || !std::isfinite(power_[i]))
            throw validation_error("PDP matrix: negative or non-finite entry at flat index " +
                                   std::to_string(i));
}

DelayDopplerSpectrum::DelayDopplerSpectrum(SamplingGrid grid, std::size_t transform_length,
                                           std::vector<double> power)
    : grid_(grid), transform_length_(transform_length), power_(std::move(power))
{
    grid_.validate();
    if (transform_length_ == 0)
        throw validation_error("delay-Doppler spectrum: transform_length must be >= 1");
    const std::size_t expected = grid_.num_delay_bins * transform_length_;
    if (power_.size() != expected)
        throw validation_error("delay-Doppler spectrum: expected " + std::to_string(expected) +
                               " entries, got " + std::to_string(power_.size()));
    doppler_axis_ = grid_.doppler_axis(transform_length_);
}

// ----- metric series ------------------------------------------------------

double series_mean(std::span<const double> v)
{
    if (v.empty())
        return 0.0;
    double acc = 0.0;
    for (double x : v)
        acc += x;
    return acc / static_cast<double>(v.size());
}

double series_std(std::span<const double> v, double mean)
{
    if (v.empty())
        return 0.0;
    double acc = 0.0;
    for (double x : v) {
        const double d = x - mean;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

MetricSeries MetricSeries::from(std::vector<double> axis, std::vector<double> values)
{
    if (axis.size() != values.size())
        throw validation_error("metric series: axis length " + std::to_string(axis.size()) +
                               " != value length " + std::to_string(values.size()));
    MetricSeries s;
    s.axis = std::move(axis);
    s.values = std::move(values);
    s.mean = series_mean(s.values);
    s.std_dev = series_std(s.values, s.mean);
    return s;
}

} // namespace v2v
