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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>

#include "oracles.hpp"
#include "v2v/synth.hpp"

using namespace v2v;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Static vehicles, noise off: the simplest valid scenario.
ScenarioConfig static_cfg()
{
    ScenarioConfig c;
    c.tx_speed = 0.0;
    c.rx_speed = 0.0;
    c.lane_offset = 4.0;
    c.passing_time = 0.0;
    c.duration = 0.05; // 400 snapshots at 8 kHz
    c.carrier_frequency = 60e9;
    c.snapshot_interval = 125e-6;
    c.bandwidth = 2.048e9;
    c.num_delay_bins = 64;
    c.noise_floor = -kInf;
    return c;
}

// Opposite-direction passing at 30+20 km/h; Doppler supremum 2.78 kHz stays
// inside the 4 kHz unambiguous range of the 8 kHz snapshot rate.
ScenarioConfig passing_cfg()
{
    ScenarioConfig c = static_cfg();
    c.tx_speed = 30.0 / 3.6;
    c.rx_speed = 20.0 / 3.6;
    c.passing_time = 0.5;
    c.duration = 1.0;
    return c;
}

std::size_t count_nonzero(std::span<const std::complex<double>> row)
{
    std::size_t n = 0;
    for (const auto &z : row)
        if (z != std::complex<double>(0.0, 0.0))
            ++n;
    return n;
}

} // namespace

// ----- placement kernel ---------------------------------------------------

TEST_CASE("placement kernel is 1 at zero and exactly 0 at other integers")
{
    CHECK(placement_kernel(0.0, 547) == 1.0);
    for (int k : {-3, -2, -1, 1, 2, 3})
        CHECK(placement_kernel(static_cast<double>(k), 547) == 0.0);
    CHECK(placement_kernel(4.0, 547) == 0.0);
    CHECK(placement_kernel(-4.0, 547) == 0.0);
    CHECK(placement_kernel(17.3, 547) == 0.0);
}

TEST_CASE("placement kernel support is strictly inside +/- 4 bins")
{
    CHECK(placement_kernel(3.999, 547) != 0.0);
    CHECK(placement_kernel(4.001, 547) == 0.0);
}

TEST_CASE("placement kernel keeps at least 99% of energy within 3 bins")
{
    for (double frac : {0.5, 0.25, 0.77, 0.999, 0.001}) {
        const double p = 30.0 + frac; // kernel center between bins 30 and 31
        double total = 0.0, local = 0.0;
        for (long m = 20; m <= 40; ++m) {
            const double w = placement_kernel(p - static_cast<double>(m), 64);
            total += w * w;
            if (std::abs(p - static_cast<double>(m)) <= 3.0)
                local += w * w;
        }
        CAPTURE(frac);
        CHECK(local / total >= 0.99);
    }
}

// ----- path geometry ------------------------------------------------------

TEST_CASE("LOS Doppler is zero at the passing instant")
{
    const ScenarioConfig c = passing_cfg();
    const auto mpc = path_geometry(c, nullptr, c.passing_time);
    CHECK(mpc.label == "los");
    CHECK(mpc.doppler == 0.0);
    // and the delay is the lane-offset distance
    CHECK(mpc.delay == doctest::Approx(c.lane_offset / kSpeedOfLight));
}

TEST_CASE("far-approach Doppler tends to the head-on limit")
{
    // 40+40 km/h closing = 22.22 m/s; at 60 GHz the head-on Doppler is about
    // +4.445 kHz.
    ScenarioConfig c = static_cfg();
    c.tx_speed = 40.0 / 3.6;
    c.rx_speed = 40.0 / 3.6;
    c.passing_time = 4500.0; // far in the future: vehicles ~100 km apart at t=0
    c.duration = 1.0;
    c.snapshot_interval = 62.5e-6; // keep the scenario itself alias-free

    const double closing = c.tx_speed + c.rx_speed;
    const double head_on = (c.carrier_frequency / kSpeedOfLight) * closing;
    const auto mpc = path_geometry(c, nullptr, 0.0);

    CHECK(mpc.doppler > 0.0); // approaching vehicles shift the carrier up
    CHECK(oracles::rel_err(mpc.doppler, head_on) < 1e-6);
    CHECK(oracles::rel_err(mpc.doppler, 4445.0) < 2e-3);
}

TEST_CASE("Doppler scales linearly with carrier frequency")
{
    ScenarioConfig c60 = passing_cfg();
    c60.scatterers.push_back({"scatterer.1", 10.0, 8.0, 0.0, 3.0, {}, {}});
    ScenarioConfig c80 = c60;
    c80.carrier_frequency = 80e9;

    for (double t : {0.1, 0.37, 0.5, 0.9}) {
        const auto p60 = list_paths(c60, t);
        const auto p80 = list_paths(c80, t);
        REQUIRE(p60.size() == p80.size());
        for (std::size_t i = 0; i < p60.size(); ++i) {
            if (p60[i].doppler == 0.0) {
                CHECK(p80[i].doppler == 0.0);
            } else {
                CHECK(oracles::rel_err(p80[i].doppler, p60[i].doppler * (80.0 / 60.0)) < 1e-12);
            }
            // delays are carrier-independent
            CHECK(p80[i].delay == p60[i].delay);
        }
    }
}

TEST_CASE("LOS power follows the anchored power law")
{
    ScenarioConfig c = static_cfg();
    c.lane_offset = 1.0;
    const double p1 = path_geometry(c, nullptr, 0.0).amplitude;
    CHECK(p1 * p1 == doctest::Approx(db_to_power(c.los_power_at_1m)).epsilon(1e-12));

    c.lane_offset = 10.0;
    const double p10 = path_geometry(c, nullptr, 0.0).amplitude;
    CHECK(p10 * p10 / (p1 * p1) == doctest::Approx(0.01).epsilon(1e-12)); // exponent 2

    c.path_loss_exponent = 3.0;
    const double p10n3 = path_geometry(c, nullptr, 0.0).amplitude;
    CHECK(p10n3 * p10n3 / (p1 * p1) == doctest::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("bounce path uses the two-leg range product and reflection loss")
{
    // tx at origin, rx at (0, 8); scatterer at (3, 4) gives two 5 m legs.
    ScenarioConfig c = static_cfg();
    c.lane_offset = 8.0;
    Scatterer s{"scatterer.1", 3.0, 4.0, 0.0, 7.0, {}, {}};
    const auto mpc = path_geometry(c, &s, 0.0);

    CHECK(mpc.delay == doctest::Approx(10.0 / kSpeedOfLight).epsilon(1e-12));
    const double want_db = c.los_power_at_1m - 10.0 * 2.0 * std::log10(25.0) - 7.0;
    CHECK(power_to_db(mpc.amplitude * mpc.amplitude) == doctest::Approx(want_db).epsilon(1e-9));
    CHECK(mpc.doppler == 0.0); // static vehicles
}

TEST_CASE("carrier phase is the fractional-cycle delay phase")
{
    const ScenarioConfig c = passing_cfg();
    for (double t : {0.0, 0.3, 0.5, 0.77}) {
        const auto mpc = path_geometry(c, nullptr, t);
        CHECK(mpc.phase <= 0.0);
        CHECK(mpc.phase > -2.0 * std::numbers::pi);
        const long double cycles = static_cast<long double>(c.carrier_frequency) * mpc.delay;
        const long double frac = cycles - std::floor(cycles);
        CHECK(std::abs(mpc.phase - static_cast<double>(-2.0L * std::numbers::pi_v<long double> *
                                                       frac)) < 1e-9);
    }
}

TEST_CASE("antenna pattern from beamwidth")
{
    const auto p = AntennaPattern::from_beamwidth(30.0);
    CHECK(p.gain_db(0.0) == 0.0);
    CHECK(p.gain_db(15.0) == doctest::Approx(-3.0)); // half beamwidth
    // linear interpolation between the 5-degree breakpoints
    CHECK(p.gain_db(7.5) == doctest::Approx(-(1.0 / 3.0 + 4.0 / 3.0) / 2.0));
    CHECK(p.gain_db(90.0) == doctest::Approx(-30.0));
    CHECK(p.gain_db(-15.0) == p.gain_db(15.0)); // symmetric in elevation
    for (double e = 0.0; e < 90.0; e += 2.5)
        CHECK(p.gain_db(e) >= p.gain_db(e + 2.5)); // monotone main lobe

    CHECK(AntennaPattern::isotropic().gain_db(45.0) == 0.0);
    CHECK_THROWS_AS(AntennaPattern::from_beamwidth(0.0), validation_error);
}

TEST_CASE("elevation gain is applied at both link ends")
{
    ScenarioConfig iso = static_cfg();
    iso.lane_offset = 8.0;
    Scatterer s{"scatterer.1", 3.0, 4.0, 6.0, 0.0, {}, {}}; // elevated
    const auto flat = path_geometry(iso, &s, 0.0);

    ScenarioConfig beamed = iso;
    beamed.antenna = AntennaPattern::from_beamwidth(30.0);
    const auto shaped = path_geometry(beamed, &s, 0.0);

    // elevation of the scatterer seen from tx (0,0,0) and rx (0,8,0)
    const double e_tx = std::atan2(6.0, 5.0) * 180.0 / std::numbers::pi;
    const double e_rx = std::atan2(6.0, 5.0) * 180.0 / std::numbers::pi;
    const double want = beamed.antenna.gain_db(e_tx) + beamed.antenna.gain_db(e_rx);
    const double got =
        power_to_db(shaped.amplitude * shaped.amplitude) - power_to_db(flat.amplitude * flat.amplitude);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("list_paths puts LOS first and honors activity windows")
{
    ScenarioConfig c = passing_cfg();
    c.scatterers.push_back({"scatterer.1", 5.0, 8.0, 0.0, 0.0, {}, {}});
    c.scatterers.push_back({"scatterer.2", -5.0, 8.0, 0.0, 0.0, 1.0, 2.0});
    c.scatterers.push_back({"scatterer.3", 0.0, 12.0, 0.0, 0.0, {}, {}});

    const auto at0 = list_paths(c, 0.0);
    REQUIRE(at0.size() == 3); // scatterer.2 not yet active
    CHECK(at0[0].label == "los");
    CHECK(at0[1].label == "scatterer.1");
    CHECK(at0[2].label == "scatterer.3");

    const auto at15 = list_paths(c, 1.5);
    REQUIRE(at15.size() == 4);
    CHECK(at15[2].label == "scatterer.2");
}

TEST_CASE("doppler supremum is the head-on closing-speed value")
{
    ScenarioConfig c = passing_cfg();
    const double want = (c.carrier_frequency / kSpeedOfLight) * (c.tx_speed + c.rx_speed);
    CHECK(doppler_supremum(c) == want);
}

// ----- simulate -----------------------------------------------------------

TEST_CASE("an on-grid static path occupies exactly one delay bin")
{
    ScenarioConfig c = static_cfg();
    // LOS distance of exactly 20 delay bins
    c.lane_offset = 20.0 * kSpeedOfLight / c.bandwidth;
    const CirMatrix h = simulate(c);

    const double expect_power =
        db_to_power(c.los_power_at_1m - 20.0 * std::log10(c.lane_offset));
    for (std::size_t n = 0; n < h.grid().num_snapshots; n += 37) {
        const auto row = h.row(n);
        CHECK(count_nonzero(row) == 1);
        CHECK(std::norm(row[20]) == doctest::Approx(expect_power).epsilon(1e-12));
    }
}

TEST_CASE("off-grid placement preserves path power and stays local")
{
    ScenarioConfig c = static_cfg();
    // fractional bin position ~20.37
    c.lane_offset = 20.37 * kSpeedOfLight / c.bandwidth;
    const CirMatrix h = simulate(c);
    const auto mpc = path_geometry(c, nullptr, 0.0);
    const double p = mpc.delay / h.grid().delay_bin;

    const auto row = h.row(0);
    double total = 0.0, local = 0.0;
    for (std::size_t m = 0; m < row.size(); ++m) {
        total += std::norm(row[m]);
        if (std::abs(p - static_cast<double>(m)) <= 3.0)
            local += std::norm(row[m]);
    }
    CHECK(total == doctest::Approx(mpc.amplitude * mpc.amplitude).epsilon(1e-9));
    CHECK(local / total >= 0.99);
}

TEST_CASE("static scenarios repeat the same snapshot")
{
    ScenarioConfig c = static_cfg();
    c.lane_offset = 20.37 * kSpeedOfLight / c.bandwidth;
    const CirMatrix h = simulate(c);
    const auto first = h.row(0);
    for (std::size_t n = 1; n < h.grid().num_snapshots; n += 53) {
        const auto row = h.row(n);
        for (std::size_t m = 0; m < row.size(); ++m)
            CHECK(row[m] == first[m]);
    }
}

TEST_CASE("LOS delay trace is V-shaped with its minimum at the passing time")
{
    const ScenarioConfig c = passing_cfg();
    const CirMatrix h = simulate(c);
    const SamplingGrid g = h.grid();

    // ground truth from the geometry
    std::size_t argmin_true = 0;
    double best = kInf;
    for (std::size_t n = 0; n < g.num_snapshots; ++n) {
        const double t = static_cast<double>(n) * g.snapshot_interval;
        const double d = path_geometry(c, nullptr, t).delay;
        if (d < best) {
            best = d;
            argmin_true = n;
        }
    }
    // the configured passing instant is the closest snapshot to 0.5 s
    CHECK(std::abs(static_cast<double>(argmin_true) * g.snapshot_interval - c.passing_time) <=
          g.snapshot_interval);

    auto peak_bin = [&](std::size_t n) {
        const auto row = h.row(n);
        std::size_t arg = 0;
        double top = -1.0;
        for (std::size_t m = 0; m < row.size(); ++m)
            if (std::norm(row[m]) > top) {
                top = std::norm(row[m]);
                arg = m;
            }
        return arg;
    };

    const std::size_t mid = peak_bin(argmin_true);
    const std::size_t lo = peak_bin(0);
    const std::size_t hi = peak_bin(g.num_snapshots - 1);
    const double p_true = path_geometry(c, nullptr, c.passing_time).delay / g.delay_bin;
    CHECK(std::abs(static_cast<double>(mid) - p_true) <= 1.0);
    CHECK(lo > mid); // farther out -> longer delay on both sides
    CHECK(hi > mid);
}

TEST_CASE("simulate is deterministic, including across thread counts")
{
    ScenarioConfig c = passing_cfg();
    c.duration = 0.1;
    c.noise_floor = -85.0;

    const CirMatrix a = simulate(c);
    const CirMatrix b = simulate(c);
    REQUIRE(a.samples().size() == b.samples().size());
    CHECK(a.samples() == b.samples());

    setenv("V2V_THREADS", "3", 1);
    const CirMatrix c3 = simulate(c);
    unsetenv("V2V_THREADS");
    CHECK(a.samples() == c3.samples());
}

TEST_CASE("noise floor sets the mean per-bin noise power")
{
    ScenarioConfig c = static_cfg();
    c.lane_offset = 20.0 * kSpeedOfLight / c.bandwidth;
    c.duration = 0.5; // 4000 snapshots
    c.noise_floor = -60.0;
    const CirMatrix h = simulate(c);

    // bins far from the single LOS bin hold pure noise
    long double acc = 0.0L;
    std::size_t count = 0;
    for (std::size_t n = 0; n < h.grid().num_snapshots; ++n) {
        const auto row = h.row(n);
        for (std::size_t m = 0; m < row.size(); ++m) {
            if (m >= 16 && m <= 24)
                continue;
            acc += std::norm(row[m]);
            ++count;
        }
    }
    const double mean = static_cast<double>(acc / static_cast<long double>(count));
    CHECK(oracles::rel_err(mean, db_to_power(-60.0)) < 0.02);
}

TEST_CASE("different seeds give different noise")
{
    ScenarioConfig c = static_cfg();
    c.noise_floor = -60.0;
    c.rng_seed = 1;
    const CirMatrix a = simulate(c);
    c.rng_seed = 2;
    const CirMatrix b = simulate(c);
    CHECK(a.samples() != b.samples());
}

TEST_CASE("scenarios whose Doppler reaches the unambiguous limit are rejected")
{
    ScenarioConfig c = static_cfg();
    c.tx_speed = 15.0;
    c.rx_speed = 15.0; // 6 kHz supremum at 60 GHz vs 4 kHz limit
    CHECK_THROWS_AS(simulate(c), aliasing_error);

    c.snapshot_interval = 62.5e-6; // 16 kHz: limit 8 kHz
    CHECK_NOTHROW(simulate(c));
}

TEST_CASE("paths outside the delay window are rejected with their label")
{
    ScenarioConfig c = static_cfg();
    c.lane_offset = 12.0; // 40 ns LOS vs 28.8 ns usable window
    CHECK_THROWS_WITH_AS(simulate(c), doctest::Contains("los"), validation_error);

    c.lane_offset = 4.0;
    c.scatterers.push_back({"scatterer.1", 30.0, 8.0, 0.0, 0.0, {}, {}});
    CHECK_THROWS_WITH_AS(simulate(c), doctest::Contains("scatterer.1"), validation_error);
}

TEST_CASE("tiny delay grids are rejected")
{
    ScenarioConfig c = static_cfg();
    c.num_delay_bins = 5;
    c.bandwidth = 2.048e9;
    c.lane_offset = 0.1;
    CHECK_THROWS_AS(simulate(c), validation_error);
}
