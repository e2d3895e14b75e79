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

#ifndef V2V_METRICS_IO_HPP
#define V2V_METRICS_IO_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "v2v/core.hpp"

namespace v2v {

// One CSV column with its summary statistics (values already in the export
// unit).
struct ExportColumn {
    std::string name;
    std::vector<double> values;
    double mean = 0.0;
    double std_dev = 0.0;
};

ExportColumn make_column(const std::string &name, const MetricSeries &series, double scale);

// CSV: header row, one data row per axis point (%.12g, parse-back exact to 9
// significant digits), then two trailing comment lines per column:
//   # <name> mean = <value>
//   # <name> std = <value>
void export_metrics(const std::string &path, const std::string &axis_name,
                    const std::vector<double> &axis, const std::vector<ExportColumn> &columns);

// Power grid as CSV in dB ("-inf" for zero power): row label column first,
// then one column per (possibly decimated) column-axis point. Columns are
// reduced to at most max_columns by max-hold over linear power, so peaks
// survive decimation. row_power(r) supplies one row of linear power at a
// time, so the full grid never has to be materialized for export.
void export_power_grid(const std::string &path, const std::string &row_axis_name,
                       const std::vector<double> &row_axis, const std::string &col_axis_name,
                       const std::vector<double> &col_axis,
                       const std::function<std::vector<double>(std::size_t)> &row_power,
                       std::size_t max_columns);

// Flat "key = value" summary; doubles at full precision. read_summary
// ignores '#' comment lines.
void write_summary(const std::string &path, const std::vector<std::string> &comment_lines,
                   const std::vector<std::pair<std::string, double>> &entries);
std::map<std::string, double> read_summary(const std::string &path);

} // namespace v2v

#endif
