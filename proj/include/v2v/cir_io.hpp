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

#ifndef V2V_CIR_IO_HPP
#define V2V_CIR_IO_HPP

#include <array>
#include <cstdint>
#include <string>

#include "v2v/core.hpp"

namespace v2v {

// Binary CIR container: 86-byte little-endian header, then float32 (re, im)
// pairs, snapshot-major. Layout:
//   offset  0: magic "V2VCIR01" (8 bytes)
//   offset  8: version          (u16)
//   offset 10: num_snapshots    (u64)
//   offset 18: num_delay_bins   (u32)
//   offset 22: snapshot_interval(f64, seconds)
//   offset 30: delay_bin        (f64, seconds)
//   offset 38: carrier_frequency(f64, Hz)
//   offset 46: bandwidth        (f64, Hz)
//   offset 54: reserved         (32 zero bytes)
inline constexpr std::size_t kCirHeaderSize = 86;
inline constexpr std::uint16_t kCirFormatVersion = 1;
inline constexpr char kCirMagic[9] = "V2VCIR01";

struct CirFileHeader {
    std::uint16_t version = kCirFormatVersion;
    std::uint64_t num_snapshots = 0;
    std::uint32_t num_delay_bins = 0;
    double snapshot_interval = 0.0;
    double delay_bin = 0.0;
    double carrier_frequency = 0.0;
    double bandwidth = 0.0;

    SamplingGrid to_grid() const;
    static CirFileHeader from_grid(const SamplingGrid &grid);

    std::array<unsigned char, kCirHeaderSize> serialize() const;
    // Validates magic and version; context prefixes error messages.
    static CirFileHeader deserialize(const unsigned char *bytes, const std::string &context);
};

void write_cir(const std::string &path, const CirMatrix &h);
CirMatrix read_cir(const std::string &path);
CirFileHeader read_cir_header(const std::string &path);

} // namespace v2v

#endif
