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

#include "v2v/synth.hpp"

#include <cmath>
#include <numbers>

#include "v2v/parallel.hpp"

namespace v2v {

namespace {

constexpr double kPi = std::numbers::pi;

struct Vec3 {
    double x, y, z;
};

double norm(const Vec3 &v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

// tx drives +x at y = 0, rx drives -x at y = lane_offset; both cross x = 0
// at passing_time.
double tx_x(const ScenarioConfig &cfg, double t) { return cfg.tx_speed * (t - cfg.passing_time); }
double rx_x(const ScenarioConfig &cfg, double t) { return -cfg.rx_speed * (t - cfg.passing_time); }

// Elevation of the ray from a ground-level vehicle to a point, degrees.
double elevation_deg(const Vec3 &from, const Vec3 &to)
{
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    const double dz = to.z - from.z;
    const double horiz = std::sqrt(dx * dx + dy * dy);
    return std::atan2(std::abs(dz), horiz) * (180.0 / kPi);
}

double path_power_mw(const ScenarioConfig &cfg, double range_product_m, double extra_loss_db)
{
    // Power law anchored at 1 m; range_product_m is d for LOS, d1*d2 for a
    // single bounce.
    const double db = cfg.los_power_at_1m -
                      10.0 * cfg.path_loss_exponent * std::log10(range_product_m) - extra_loss_db;
    return db_to_power(db);
}

// Carrier phase from the absolute delay, reduced modulo one cycle before
// scaling to radians to avoid large-argument trig.
double carrier_phase(double carrier_frequency, double delay)
{
    const double cycles = carrier_frequency * delay;
    return -2.0 * kPi * (cycles - std::floor(cycles));
}

// ----- deterministic per-bin noise ----------------------------------------
//
// splitmix64 finalizer over a per-(snapshot, bin) counter: sequential and
// parallel synthesis draw identical values.

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + index * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::complex<double> complex_gaussian(std::uint64_t seed, std::uint64_t counter)
{
    // u1 in (0, 1], u2 in [0, 1); E|w|^2 = 1.
    const std::uint64_t z0 = splitmix64_at(seed, 2 * counter);
    const std::uint64_t z1 = splitmix64_at(seed, 2 * counter + 1);
    const double u1 = static_cast<double>((z0 >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(z1 >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-std::log(u1));
    const double theta = 2.0 * kPi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

} // namespace

// ----- placement kernel ---------------------------------------------------

double placement_kernel(double offset_bins, std::size_t num_delay_bins)
{
    const double ax = std::abs(offset_bins);
    if (ax >= static_cast<double>(kKernelHalfWidth))
        return 0.0;
    const double env = std::cos(kPi * offset_bins / (2.0 * kKernelHalfWidth));
    const double nearest = std::nearbyint(offset_bins);
    double dirichlet;
    if (std::abs(offset_bins - nearest) < 1e-12) {
        dirichlet = (nearest == 0.0) ? 1.0 : 0.0;
    } else {
        const double m = static_cast<double>(num_delay_bins);
        dirichlet = std::sin(kPi * offset_bins) / (m * std::sin(kPi * offset_bins / m));
    }
    return dirichlet * env * env;
}

// ----- per-path geometry --------------------------------------------------

MultipathComponent path_geometry(const ScenarioConfig &cfg, const Scatterer *scatterer, double t)
{
    const Vec3 tx{tx_x(cfg, t), 0.0, 0.0};
    const Vec3 rx{rx_x(cfg, t), cfg.lane_offset, 0.0};
    const double closing = cfg.tx_speed + cfg.rx_speed;

    MultipathComponent mpc;
    if (!scatterer) {
        mpc.label = "los";
        const Vec3 diff{rx.x - tx.x, rx.y - tx.y, rx.z - tx.z};
        const double d = norm(diff);
        // d(t) = sqrt(dx^2 + d0^2), dx = -(v_tx + v_rx)(t - t_pass).
        const double d_dot = -diff.x * closing / d;
        mpc.delay = d / kSpeedOfLight;
        mpc.doppler = -(cfg.carrier_frequency / kSpeedOfLight) * d_dot;
        const double gain = cfg.antenna.gain_db(elevation_deg(tx, rx)) +
                            cfg.antenna.gain_db(elevation_deg(rx, tx));
        const double p = path_power_mw(cfg, d, -gain);
        mpc.amplitude = std::sqrt(p);
    } else {
        mpc.label = scatterer->label;
        const Vec3 s{scatterer->x, scatterer->y, scatterer->z};
        const Vec3 leg1{s.x - tx.x, s.y - tx.y, s.z - tx.z};
        const Vec3 leg2{rx.x - s.x, rx.y - s.y, rx.z - s.z};
        const double d1 = norm(leg1);
        const double d2 = norm(leg2);
        const double d1_dot = -leg1.x * cfg.tx_speed / d1;
        const double d2_dot = leg2.x * (-cfg.rx_speed) / d2;
        mpc.delay = (d1 + d2) / kSpeedOfLight;
        mpc.doppler = -(cfg.carrier_frequency / kSpeedOfLight) * (d1_dot + d2_dot);
        const double gain = cfg.antenna.gain_db(elevation_deg(tx, s)) +
                            cfg.antenna.gain_db(elevation_deg(rx, s));
        const double p = path_power_mw(cfg, d1 * d2, scatterer->reflection_loss_db - gain);
        mpc.amplitude = std::sqrt(p);
    }
    mpc.phase = carrier_phase(cfg.carrier_frequency, mpc.delay);
    return mpc;
}

std::vector<MultipathComponent> list_paths(const ScenarioConfig &cfg, double t)
{
    std::vector<MultipathComponent> paths;
    paths.reserve(1 + cfg.scatterers.size());
    paths.push_back(path_geometry(cfg, nullptr, t));
    for (const auto &s : cfg.scatterers)
        if (s.active_at(t))
            paths.push_back(path_geometry(cfg, &s, t));
    return paths;
}

double doppler_supremum(const ScenarioConfig &cfg)
{
    // Every leg length changes at most at the vehicle's own speed, so no
    // path Doppler can exceed the head-on closing-speed value.
    return (cfg.carrier_frequency / kSpeedOfLight) * (cfg.tx_speed + cfg.rx_speed);
}

// ----- full record --------------------------------------------------------

CirMatrix simulate(const ScenarioConfig &cfg)
{
    cfg.validate();
    const SamplingGrid grid = cfg.grid();
    grid.validate();

    const double nyquist = grid.max_doppler();
    const double sup = doppler_supremum(cfg);
    if (sup >= nyquist)
        throw aliasing_error("scenario Doppler supremum " + std::to_string(sup) +
                             " Hz reaches the unambiguous limit " + std::to_string(nyquist) +
                             " Hz; increase the snapshot rate or lower the speeds");

    if (grid.num_delay_bins <= static_cast<std::size_t>(kKernelHalfWidth) + 1)
        throw validation_error("scenario: num_delay_bins must exceed the kernel half width + 1 (" +
                               std::to_string(kKernelHalfWidth + 1) + ")");
    if (grid.num_delay_bins >= (1u << 20))
        throw validation_error("scenario: num_delay_bins must be < 2^20 (noise counter packing)");

    // Path delay along each leg is convex in t, so the per-path maximum over
    // the record lies at an endpoint. The kernel needs kKernelHalfWidth bins
    // of headroom at the top of the delay window.
    const double max_delay =
        static_cast<double>(grid.num_delay_bins - 1 - kKernelHalfWidth) * grid.delay_bin;
    for (double t : {0.0, cfg.duration}) {
        for (const auto &mpc : list_paths(cfg, t)) {
            if (mpc.delay > max_delay)
                throw validation_error(
                    "path '" + mpc.label + "' delay " + std::to_string(mpc.delay * 1e9) +
                    " ns exceeds the delay window (max usable " + std::to_string(max_delay * 1e9) +
                    " ns); increase num_delay_bins");
        }
    }

    const std::size_t rows = grid.num_snapshots;
    const std::size_t cols = grid.num_delay_bins;
    std::vector<std::complex<double>> samples(rows * cols);

    const double noise_power = db_to_power(cfg.noise_floor);
    const double noise_scale = std::sqrt(noise_power);

    parallel_for(0, rows, [&](std::size_t n) {
        const double t = static_cast<double>(n) * grid.snapshot_interval;
        std::complex<double> *row = samples.data() + n * cols;
        for (const auto &mpc : list_paths(cfg, t)) {
            const double p = mpc.delay / grid.delay_bin; // fractional bin position
            const long lo = std::max(0L, static_cast<long>(std::ceil(p)) - kKernelHalfWidth);
            const long hi = std::min(static_cast<long>(cols) - 1,
                                     static_cast<long>(std::floor(p)) + kKernelHalfWidth);
            if (lo > hi)
                continue;
            // Unit-energy normalization over the full (unclipped) support so
            // per-path power is preserved regardless of fractional offset.
            double energy = 0.0;
            const long full_lo = static_cast<long>(std::ceil(p)) - kKernelHalfWidth;
            const long full_hi = static_cast<long>(std::floor(p)) + kKernelHalfWidth;
            for (long m = full_lo; m <= full_hi; ++m) {
                const double w = placement_kernel(p - static_cast<double>(m), cols);
                energy += w * w;
            }
            const double scale = energy > 0.0 ? 1.0 / std::sqrt(energy) : 0.0;
            const std::complex<double> contrib =
                mpc.amplitude * std::complex<double>(std::cos(mpc.phase), std::sin(mpc.phase));
            for (long m = lo; m <= hi; ++m) {
                const double w = placement_kernel(p - static_cast<double>(m), cols) * scale;
                if (w != 0.0)
                    row[m] += contrib * w;
            }
        }
        if (noise_power > 0.0) {
            for (std::size_t m = 0; m < cols; ++m) {
                const std::uint64_t counter = (static_cast<std::uint64_t>(n) << 20) | m;
                row[m] += noise_scale * complex_gaussian(cfg.rng_seed, counter);
            }
        }
    });

    return CirMatrix(grid, std::move(samples));
}

} // namespace v2v
