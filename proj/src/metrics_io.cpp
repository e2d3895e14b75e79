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

#include "v2v/metrics_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace v2v {

namespace {

std::string fmt12(double v)
{
    if (v == -std::numeric_limits<double>::infinity())
        return "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt17(double v)
{
    if (v == -std::numeric_limits<double>::infinity())
        return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

ExportColumn make_column(const std::string &name, const MetricSeries &series, double scale)
{
    ExportColumn c;
    c.name = name;
    c.values.reserve(series.values.size());
    for (double v : series.values)
        c.values.push_back(v * scale);
    c.mean = series.mean * scale;
    c.std_dev = series.std_dev * scale;
    return c;
}

void export_metrics(const std::string &path, const std::string &axis_name,
                    const std::vector<double> &axis, const std::vector<ExportColumn> &columns)
{
    if (columns.empty())
        throw validation_error("export_metrics: need at least one column");
    for (const auto &c : columns)
        if (c.values.size() != axis.size())
            throw validation_error("export_metrics: column '" + c.name + "' has " +
                                   std::to_string(c.values.size()) + " values, axis has " +
                                   std::to_string(axis.size()));
    std::ofstream out(path);
    if (!out)
        throw io_error(path + ": cannot open for writing");
    out << axis_name;
    for (const auto &c : columns)
        out << "," << c.name;
    out << "\n";
    for (std::size_t i = 0; i < axis.size(); ++i) {
        out << fmt12(axis[i]);
        for (const auto &c : columns)
            out << "," << fmt12(c.values[i]);
        out << "\n";
    }
    for (const auto &c : columns) {
        out << "# " << c.name << " mean = " << fmt12(c.mean) << "\n";
        out << "# " << c.name << " std = " << fmt12(c.std_dev) << "\n";
    }
    if (!out)
        throw io_error(path + ": write failed");
}

void export_power_grid(const std::string &path, const std::string &row_axis_name,
                       const std::vector<double> &row_axis, const std::string &col_axis_name,
                       const std::vector<double> &col_axis,
                       const std::function<std::vector<double>(std::size_t)> &row_power,
                       std::size_t max_columns)
{
    if (max_columns == 0)
        throw validation_error("export_power_grid: max_columns must be >= 1");

    const std::size_t cols = col_axis.size();
    const std::size_t group = cols > max_columns ? (cols + max_columns - 1) / max_columns : 1;
    const std::size_t out_cols = (cols + group - 1) / group;

    std::ofstream out(path);
    if (!out)
        throw io_error(path + ": cannot open for writing");
    out << "# columns: " << col_axis_name;
    if (group > 1)
        out << " (max-hold over groups of " << group << ")";
    out << "\n";
    out << row_axis_name;
    for (std::size_t g = 0; g < out_cols; ++g) {
        const std::size_t lo = g * group;
        const std::size_t hi = std::min(cols - 1, lo + group - 1);
        out << "," << fmt12(0.5 * (col_axis[lo] + col_axis[hi]));
    }
    out << "\n";
    for (std::size_t r = 0; r < row_axis.size(); ++r) {
        out << fmt12(row_axis[r]);
        const std::vector<double> row = row_power(r);
        if (row.size() != cols)
            throw validation_error("export_power_grid: row " + std::to_string(r) + " has " +
                                   std::to_string(row.size()) + " columns, axis has " +
                                   std::to_string(cols));
        for (std::size_t g = 0; g < out_cols; ++g) {
            const std::size_t lo = g * group;
            const std::size_t hi = std::min(cols, lo + group);
            double peak = 0.0;
            for (std::size_t c = lo; c < hi; ++c)
                peak = std::max(peak, row[c]);
            out << "," << fmt12(power_to_db(peak));
        }
        out << "\n";
    }
    if (!out)
        throw io_error(path + ": write failed");
}

void write_summary(const std::string &path, const std::vector<std::string> &comment_lines,
                   const std::vector<std::pair<std::string, double>> &entries)
{
    std::ofstream out(path);
    if (!out)
        throw io_error(path + ": cannot open for writing");
    for (const auto &line : comment_lines)
        out << "# " << line << "\n";
    for (const auto &[key, value] : entries)
        out << key << " = " << fmt17(value) << "\n";
    if (!out)
        throw io_error(path + ": write failed");
}

std::map<std::string, double> read_summary(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error(path + ": cannot open");
    std::map<std::string, double> entries;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        std::istringstream line(raw);
        std::string key, eq, value;
        if (!(line >> key))
            continue;
        if (!(line >> eq >> value) || eq != "=")
            throw io_error(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        try {
            std::size_t pos = 0;
            const double v = std::stod(value, &pos);
            if (pos != value.size())
                throw std::invalid_argument(value);
            entries[key] = v;
        } catch (const std::exception &) {
            throw io_error(path + ":" + std::to_string(lineno) + ": key '" + key +
                           "': invalid number '" + value + "'");
        }
    }
    return entries;
}

} // namespace v2v
