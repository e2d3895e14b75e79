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

#ifndef V2V_SCENARIO_HPP
#define V2V_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "v2v/core.hpp"

namespace v2v {

// Point scatterer beside the road; single-bounce reflection only.
struct Scatterer {
    std::string label;               // "scatterer.N" from the config file
    double x = 0.0;                  // m along the road
    double y = 0.0;                  // m lateral
    double z = 0.0;                  // m height
    double reflection_loss_db = 0.0; // dB, >= 0
    // Visibility window [active_start, active_end]; unset bound = unbounded.
    std::optional<double> active_start;
    std::optional<double> active_end;

    bool active_at(double t) const
    {
        if (active_start && t < *active_start)
            return false;
        if (active_end && t > *active_end)
            return false;
        return true;
    }
};

// Scalar elevation-gain antenna weight. Piecewise-linear in |elevation|
// (degrees); gain interpolated in dB, clamped at the last breakpoint.
struct AntennaPattern {
    struct Point {
        double elevation_deg = 0.0; // >= 0, strictly increasing
        double gain_db = 0.0;
    };
    std::vector<Point> points;

    double gain_db(double elevation_deg) const;
    bool is_isotropic() const { return points.empty(); }

    static AntennaPattern isotropic() { return {}; }
    // Parabolic main-lobe approximation: -3 dB at beamwidth/2, sampled to
    // breakpoints out to 90 degrees.
    static AntennaPattern from_beamwidth(double beamwidth_deg);
};

// Two vehicles passing in opposite directions along a straight road.
// tx drives +x at y = 0; rx drives -x at y = lane_offset; both cross x = 0
// at passing_time.
struct ScenarioConfig {
    double tx_speed = 0.0;          // m/s, >= 0
    double rx_speed = 0.0;          // m/s, >= 0
    double lane_offset = 0.0;       // m, > 0
    double passing_time = 0.0;      // s
    double duration = 0.0;          // s, > 0
    double carrier_frequency = 0.0; // Hz, > 0
    double snapshot_interval = 0.0; // s, > 0
    double bandwidth = 0.0;         // Hz, > 0
    std::size_t num_delay_bins = 0;

    std::vector<Scatterer> scatterers;

    double los_power_at_1m = -20.0;   // dBm at 1 m LOS distance
    double path_loss_exponent = 2.0;
    double noise_floor = -85.0;       // dBm per delay bin; -inf disables noise
    AntennaPattern antenna;
    std::uint64_t rng_seed = 1;

    void validate() const; // throws validation_error

    std::size_t num_snapshots() const;
    SamplingGrid grid() const;
};

// Flat key=value scenario file; '#' starts a comment; scatterers and antenna
// breakpoints as repeated indexed groups. Errors name the key and line.
ScenarioConfig load_scenario(const std::string &path);
ScenarioConfig parse_scenario(const std::string &text, const std::string &origin);
void save_scenario(const ScenarioConfig &cfg, const std::string &path);

} // namespace v2v

#endif
