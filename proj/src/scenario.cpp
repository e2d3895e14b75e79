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

#include "v2v/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace v2v {

// ----- antenna ------------------------------------------------------------

double AntennaPattern::gain_db(double elevation_deg) const
{
    if (points.empty())
        return 0.0;
    const double e = std::abs(elevation_deg);
    if (e <= points.front().elevation_deg)
        return points.front().gain_db;
    if (e >= points.back().elevation_deg)
        return points.back().gain_db;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (e <= points[i].elevation_deg) {
            const auto &a = points[i - 1];
            const auto &b = points[i];
            const double f = (e - a.elevation_deg) / (b.elevation_deg - a.elevation_deg);
            return a.gain_db + f * (b.gain_db - a.gain_db);
        }
    }
    return points.back().gain_db;
}

AntennaPattern AntennaPattern::from_beamwidth(double beamwidth_deg)
{
    if (!(beamwidth_deg > 0.0) || beamwidth_deg > 360.0)
        throw validation_error("antenna: beamwidth must be in (0, 360] degrees, got " +
                               std::to_string(beamwidth_deg));
    // Parabolic main lobe, -3 dB at beamwidth/2, floored at -30 dB.
    AntennaPattern p;
    const double half = beamwidth_deg / 2.0;
    for (double e = 0.0; e <= 90.0 + 1e-9; e += 5.0) {
        const double g = std::max(-3.0 * (e / half) * (e / half), -30.0);
        p.points.push_back({e, g});
    }
    return p;
}

// ----- config validation --------------------------------------------------

void ScenarioConfig::validate() const
{
    if (!(duration > 0.0) || !std::isfinite(duration))
        throw validation_error("scenario: duration must be finite and > 0");
    if (tx_speed < 0.0 || !std::isfinite(tx_speed))
        throw validation_error("scenario: tx_speed must be finite and >= 0");
    if (rx_speed < 0.0 || !std::isfinite(rx_speed))
        throw validation_error("scenario: rx_speed must be finite and >= 0");
    if (!(lane_offset > 0.0) || !std::isfinite(lane_offset))
        throw validation_error("scenario: lane_offset must be finite and > 0");
    if (!std::isfinite(passing_time))
        throw validation_error("scenario: passing_time must be finite");
    if (!(carrier_frequency > 0.0) || !std::isfinite(carrier_frequency))
        throw validation_error("scenario: carrier_frequency must be finite and > 0");
    if (!(snapshot_interval > 0.0) || !std::isfinite(snapshot_interval))
        throw validation_error("scenario: snapshot_interval must be finite and > 0");
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw validation_error("scenario: bandwidth must be finite and > 0");
    if (num_delay_bins == 0)
        throw validation_error("scenario: num_delay_bins must be >= 1");
    if (num_snapshots() == 0)
        throw validation_error("scenario: duration shorter than one snapshot_interval");
    if (!std::isfinite(los_power_at_1m))
        throw validation_error("scenario: los_power_at_1m must be finite");
    if (!(noise_floor < los_power_at_1m))
        throw validation_error("scenario: noise_floor must be below los_power_at_1m");
    if (std::isnan(noise_floor) || noise_floor == std::numeric_limits<double>::infinity())
        throw validation_error("scenario: noise_floor must be finite or -inf");
    if (!(path_loss_exponent >= 0.0) || !std::isfinite(path_loss_exponent))
        throw validation_error("scenario: path_loss_exponent must be finite and >= 0");
    for (const auto &s : scatterers) {
        if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.z))
            throw validation_error("scenario: " + s.label + " position must be finite");
        if (s.reflection_loss_db < 0.0 || !std::isfinite(s.reflection_loss_db))
            throw validation_error("scenario: " + s.label +
                                   " reflection_loss must be finite and >= 0");
        if (s.active_start && s.active_end && *s.active_start > *s.active_end)
            throw validation_error("scenario: " + s.label + " active_start > active_end");
    }
    for (std::size_t i = 0; i < antenna.points.size(); ++i) {
        const auto &pt = antenna.points[i];
        if (pt.elevation_deg < 0.0 || pt.elevation_deg > 90.0 || !std::isfinite(pt.gain_db))
            throw validation_error("scenario: antenna breakpoint " + std::to_string(i) +
                                   " out of range");
        if (i > 0 && pt.elevation_deg <= antenna.points[i - 1].elevation_deg)
            throw validation_error("scenario: antenna elevations must be strictly increasing");
    }
}

std::size_t ScenarioConfig::num_snapshots() const
{
    return static_cast<std::size_t>(std::llround(duration / snapshot_interval));
}

SamplingGrid ScenarioConfig::grid() const
{
    SamplingGrid g;
    g.snapshot_interval = snapshot_interval;
    g.delay_bin = 1.0 / bandwidth;
    g.num_snapshots = num_snapshots();
    g.num_delay_bins = num_delay_bins;
    g.carrier_frequency = carrier_frequency;
    g.bandwidth = bandwidth;
    return g;
}

// ----- key-value parser ---------------------------------------------------

namespace {

struct Entry {
    std::string value;
    std::size_t line = 0;
    bool used = false;
};

using EntryMap = std::map<std::string, Entry>;

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string &origin, std::size_t line, const std::string &msg)
{
    throw config_error(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string &origin, const Entry &e, const std::string &key)
{
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(e.value, &pos);
    } catch (const std::exception &) {
        fail(origin, e.line, "key '" + key + "': invalid number '" + e.value + "'");
    }
    if (pos != e.value.size())
        fail(origin, e.line, "key '" + key + "': trailing characters in '" + e.value + "'");
    if (std::isnan(v))
        fail(origin, e.line, "key '" + key + "': NaN is not a valid value");
    return v;
}

std::uint64_t parse_unsigned(const std::string &origin, const Entry &e, const std::string &key)
{
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(e.value, &pos);
    } catch (const std::exception &) {
        fail(origin, e.line, "key '" + key + "': invalid unsigned integer '" + e.value + "'");
    }
    if (pos != e.value.size() || e.value.find('-') != std::string::npos)
        fail(origin, e.line, "key '" + key + "': invalid unsigned integer '" + e.value + "'");
    return static_cast<std::uint64_t>(v);
}

Entry *find(EntryMap &entries, const std::string &key)
{
    auto it = entries.find(key);
    if (it == entries.end())
        return nullptr;
    it->second.used = true;
    return &it->second;
}

double require_number(EntryMap &entries, const std::string &origin, const std::string &key)
{
    Entry *e = find(entries, key);
    if (!e)
        throw config_error(origin + ": missing required key '" + key + "'");
    return parse_number(origin, *e, key);
}

} // namespace

ScenarioConfig parse_scenario(const std::string &text, const std::string &origin)
{
    EntryMap entries;
    std::istringstream stream(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(stream, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(origin, lineno, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(origin, lineno, "empty key");
        if (value.empty())
            fail(origin, lineno, "key '" + key + "': empty value");
        if (entries.count(key))
            fail(origin, lineno, "duplicate key '" + key + "' (first at line " +
                                     std::to_string(entries[key].line) + ")");
        entries[key] = Entry{value, lineno, false};
    }

    ScenarioConfig cfg;
    cfg.carrier_frequency = require_number(entries, origin, "carrier_frequency");
    cfg.duration = require_number(entries, origin, "duration");
    cfg.snapshot_interval = require_number(entries, origin, "snapshot_interval");
    cfg.bandwidth = require_number(entries, origin, "bandwidth");
    cfg.tx_speed = require_number(entries, origin, "tx_speed");
    cfg.rx_speed = require_number(entries, origin, "rx_speed");
    cfg.lane_offset = require_number(entries, origin, "lane_offset");
    cfg.passing_time = require_number(entries, origin, "passing_time");
    {
        Entry *e = find(entries, "num_delay_bins");
        if (!e)
            throw config_error(origin + ": missing required key 'num_delay_bins'");
        cfg.num_delay_bins = static_cast<std::size_t>(parse_unsigned(origin, *e, "num_delay_bins"));
    }
    if (Entry *e = find(entries, "los_power_at_1m"))
        cfg.los_power_at_1m = parse_number(origin, *e, "los_power_at_1m");
    if (Entry *e = find(entries, "path_loss_exponent"))
        cfg.path_loss_exponent = parse_number(origin, *e, "path_loss_exponent");
    if (Entry *e = find(entries, "noise_floor"))
        cfg.noise_floor = parse_number(origin, *e, "noise_floor");
    if (Entry *e = find(entries, "rng_seed"))
        cfg.rng_seed = parse_unsigned(origin, *e, "rng_seed");

    // Scatterers: scatterer.N.{x, y, z, reflection_loss, active_start, active_end}
    std::set<unsigned long> scatterer_ids;
    for (const auto &[key, entry] : entries) {
        if (key.rfind("scatterer.", 0) != 0)
            continue;
        const std::string rest = key.substr(10);
        const auto dot = rest.find('.');
        if (dot == std::string::npos || dot == 0)
            fail(origin, entry.line, "malformed scatterer key '" + key + "'");
        std::size_t pos = 0;
        unsigned long id = 0;
        try {
            id = std::stoul(rest.substr(0, dot), &pos);
        } catch (const std::exception &) {
            fail(origin, entry.line, "malformed scatterer index in '" + key + "'");
        }
        if (pos != dot)
            fail(origin, entry.line, "malformed scatterer index in '" + key + "'");
        scatterer_ids.insert(id);
    }
    for (unsigned long id : scatterer_ids) {
        const std::string prefix = "scatterer." + std::to_string(id) + ".";
        Scatterer s;
        s.label = "scatterer." + std::to_string(id);
        for (const char *coord : {"x", "y"}) {
            Entry *e = find(entries, prefix + coord);
            if (!e)
                throw config_error(origin + ": missing required key '" + prefix + coord + "'");
            (std::string(coord) == "x" ? s.x : s.y) = parse_number(origin, *e, prefix + coord);
        }
        if (Entry *e = find(entries, prefix + "z"))
            s.z = parse_number(origin, *e, prefix + "z");
        if (Entry *e = find(entries, prefix + "reflection_loss"))
            s.reflection_loss_db = parse_number(origin, *e, prefix + "reflection_loss");
        if (Entry *e = find(entries, prefix + "active_start"))
            s.active_start = parse_number(origin, *e, prefix + "active_start");
        if (Entry *e = find(entries, prefix + "active_end"))
            s.active_end = parse_number(origin, *e, prefix + "active_end");
        cfg.scatterers.push_back(std::move(s));
    }

    // Antenna: either a beamwidth preset or explicit breakpoints.
    std::set<unsigned long> antenna_ids;
    for (const auto &[key, entry] : entries) {
        if (key.rfind("antenna_gain.", 0) != 0)
            continue;
        const std::string rest = key.substr(13);
        const auto dot = rest.find('.');
        if (dot == std::string::npos || dot == 0)
            fail(origin, entry.line, "malformed antenna key '" + key + "'");
        std::size_t pos = 0;
        unsigned long id = 0;
        try {
            id = std::stoul(rest.substr(0, dot), &pos);
        } catch (const std::exception &) {
            fail(origin, entry.line, "malformed antenna index in '" + key + "'");
        }
        if (pos != dot)
            fail(origin, entry.line, "malformed antenna index in '" + key + "'");
        antenna_ids.insert(id);
    }
    Entry *bw = find(entries, "antenna_beamwidth");
    if (bw && !antenna_ids.empty())
        fail(origin, bw->line,
             "antenna_beamwidth and antenna_gain.* breakpoints are mutually exclusive");
    if (bw) {
        cfg.antenna = AntennaPattern::from_beamwidth(
            parse_number(origin, *bw, "antenna_beamwidth"));
    } else {
        for (unsigned long id : antenna_ids) {
            const std::string prefix = "antenna_gain." + std::to_string(id) + ".";
            AntennaPattern::Point pt;
            Entry *ee = find(entries, prefix + "elevation");
            if (!ee)
                throw config_error(origin + ": missing required key '" + prefix + "elevation'");
            pt.elevation_deg = parse_number(origin, *ee, prefix + "elevation");
            Entry *eg = find(entries, prefix + "gain_db");
            if (!eg)
                throw config_error(origin + ": missing required key '" + prefix + "gain_db'");
            pt.gain_db = parse_number(origin, *eg, prefix + "gain_db");
            cfg.antenna.points.push_back(pt);
        }
    }

    for (const auto &[key, entry] : entries)
        if (!entry.used)
            fail(origin, entry.line, "unknown key '" + key + "'");

    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error(path + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

namespace {

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void save_scenario(const ScenarioConfig &cfg, const std::string &path)
{
    cfg.validate();
    std::ofstream out(path);
    if (!out)
        throw io_error(path + ": cannot open for writing");
    out << "# v2vchan scenario\n";
    out << "carrier_frequency = " << fmt(cfg.carrier_frequency) << "\n";
    out << "bandwidth = " << fmt(cfg.bandwidth) << "\n";
    out << "num_delay_bins = " << cfg.num_delay_bins << "\n";
    out << "duration = " << fmt(cfg.duration) << "\n";
    out << "snapshot_interval = " << fmt(cfg.snapshot_interval) << "\n";
    out << "tx_speed = " << fmt(cfg.tx_speed) << "\n";
    out << "rx_speed = " << fmt(cfg.rx_speed) << "\n";
    out << "lane_offset = " << fmt(cfg.lane_offset) << "\n";
    out << "passing_time = " << fmt(cfg.passing_time) << "\n";
    out << "los_power_at_1m = " << fmt(cfg.los_power_at_1m) << "\n";
    out << "path_loss_exponent = " << fmt(cfg.path_loss_exponent) << "\n";
    out << "noise_floor = " << fmt(cfg.noise_floor) << "\n";
    out << "rng_seed = " << cfg.rng_seed << "\n";
    for (std::size_t i = 0; i < cfg.scatterers.size(); ++i) {
        const auto &s = cfg.scatterers[i];
        const std::string p = "scatterer." + std::to_string(i) + ".";
        out << p << "x = " << fmt(s.x) << "\n";
        out << p << "y = " << fmt(s.y) << "\n";
        out << p << "z = " << fmt(s.z) << "\n";
        out << p << "reflection_loss = " << fmt(s.reflection_loss_db) << "\n";
        if (s.active_start)
            out << p << "active_start = " << fmt(*s.active_start) << "\n";
        if (s.active_end)
            out << p << "active_end = " << fmt(*s.active_end) << "\n";
    }
    for (std::size_t i = 0; i < cfg.antenna.points.size(); ++i) {
        const std::string p = "antenna_gain." + std::to_string(i) + ".";
        out << p << "elevation = " << fmt(cfg.antenna.points[i].elevation_deg) << "\n";
        out << p << "gain_db = " << fmt(cfg.antenna.points[i].gain_db) << "\n";
    }
    if (!out)
        throw io_error(path + ": write failed");
}

} // namespace v2v
