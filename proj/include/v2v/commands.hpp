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

#ifndef V2V_COMMANDS_HPP
#define V2V_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "v2v/analysis.hpp"

namespace v2v {

// Stable exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;   // config parse error or bad flags
inline constexpr int kExitAliasing = 3; // scenario Doppler exceeds the grid
inline constexpr int kExitIo = 4;       // unreadable, corrupt, or unwritable data
inline constexpr int kExitMismatch = 5; // compared runs have incompatible grids

struct SynthOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed_override;
};

struct AnalyzeOptions {
    std::string cir_path;
    std::string out_dir;
    AnalysisParams params;
};

struct CompareOptions {
    std::string dir_a;
    std::string dir_b;
    bool reference = false; // also print published campaign values for context
};

// Each command writes a JSON run manifest to `out` on success and
// diagnostics to `err`, and returns one of the exit codes above.
int run_synth(const SynthOptions &opt, std::ostream &out, std::ostream &err);
int run_analyze(const AnalyzeOptions &opt, std::ostream &out, std::ostream &err);
int run_compare(const CompareOptions &opt, std::ostream &out, std::ostream &err);

} // namespace v2v

#endif
