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

#include "v2v/cir_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace v2v {

namespace {

// Explicit little-endian packing, independent of host byte order.
void put_u16(unsigned char *p, std::uint16_t v)
{
    p[0] = static_cast<unsigned char>(v);
    p[1] = static_cast<unsigned char>(v >> 8);
}

void put_u32(unsigned char *p, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        p[i] = static_cast<unsigned char>(v >> (8 * i));
}

void put_u64(unsigned char *p, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        p[i] = static_cast<unsigned char>(v >> (8 * i));
}

void put_f64(unsigned char *p, double v) { put_u64(p, std::bit_cast<std::uint64_t>(v)); }

void put_f32(unsigned char *p, float v)
{
    put_u32(p, std::bit_cast<std::uint32_t>(v));
}

std::uint16_t get_u16(const unsigned char *p)
{
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const unsigned char *p)
{
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(const unsigned char *p)
{
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

double get_f64(const unsigned char *p) { return std::bit_cast<double>(get_u64(p)); }

float get_f32(const unsigned char *p) { return std::bit_cast<float>(get_u32(p)); }

} // namespace

// ----- header -------------------------------------------------------------

SamplingGrid CirFileHeader::to_grid() const
{
    SamplingGrid g;
    g.snapshot_interval = snapshot_interval;
    g.delay_bin = delay_bin;
    g.num_snapshots = static_cast<std::size_t>(num_snapshots);
    g.num_delay_bins = num_delay_bins;
    g.carrier_frequency = carrier_frequency;
    g.bandwidth = bandwidth;
    return g;
}

CirFileHeader CirFileHeader::from_grid(const SamplingGrid &grid)
{
    CirFileHeader h;
    h.num_snapshots = grid.num_snapshots;
    h.num_delay_bins = static_cast<std::uint32_t>(grid.num_delay_bins);
    h.snapshot_interval = grid.snapshot_interval;
    h.delay_bin = grid.delay_bin;
    h.carrier_frequency = grid.carrier_frequency;
    h.bandwidth = grid.bandwidth;
    return h;
}

std::array<unsigned char, kCirHeaderSize> CirFileHeader::serialize() const
{
    std::array<unsigned char, kCirHeaderSize> b{};
    std::memcpy(b.data(), kCirMagic, 8);
    put_u16(b.data() + 8, version);
    put_u64(b.data() + 10, num_snapshots);
    put_u32(b.data() + 18, num_delay_bins);
    put_f64(b.data() + 22, snapshot_interval);
    put_f64(b.data() + 30, delay_bin);
    put_f64(b.data() + 38, carrier_frequency);
    put_f64(b.data() + 46, bandwidth);
    // bytes 54..85 stay zero (reserved)
    return b;
}

CirFileHeader CirFileHeader::deserialize(const unsigned char *bytes, const std::string &context)
{
    if (std::memcmp(bytes, kCirMagic, 8) != 0)
        throw io_error(context + ": bad magic (not a CIR file)");
    CirFileHeader h;
    h.version = get_u16(bytes + 8);
    if (h.version != kCirFormatVersion)
        throw io_error(context + ": unsupported format version " + std::to_string(h.version) +
                       " (expected " + std::to_string(kCirFormatVersion) + ")");
    h.num_snapshots = get_u64(bytes + 10);
    h.num_delay_bins = get_u32(bytes + 18);
    h.snapshot_interval = get_f64(bytes + 22);
    h.delay_bin = get_f64(bytes + 30);
    h.carrier_frequency = get_f64(bytes + 38);
    h.bandwidth = get_f64(bytes + 46);
    if (h.num_snapshots == 0 || h.num_delay_bins == 0)
        throw io_error(context + ": header has zero dimensions");
    return h;
}

// ----- whole-file operations ----------------------------------------------

void write_cir(const std::string &path, const CirMatrix &h)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error(path + ": cannot open for writing");
    const auto header = CirFileHeader::from_grid(h.grid()).serialize();
    out.write(reinterpret_cast<const char *>(header.data()),
              static_cast<std::streamsize>(header.size()));

    const std::size_t cols = h.grid().num_delay_bins;
    std::vector<unsigned char> rowbuf(cols * 8);
    for (std::size_t n = 0; n < h.grid().num_snapshots; ++n) {
        const auto row = h.row(n);
        for (std::size_t m = 0; m < cols; ++m) {
            put_f32(rowbuf.data() + 8 * m, static_cast<float>(row[m].real()));
            put_f32(rowbuf.data() + 8 * m + 4, static_cast<float>(row[m].imag()));
        }
        out.write(reinterpret_cast<const char *>(rowbuf.data()),
                  static_cast<std::streamsize>(rowbuf.size()));
    }
    if (!out)
        throw io_error(path + ": write failed (disk full?)");
}

CirFileHeader read_cir_header(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error(path + ": cannot open");
    unsigned char bytes[kCirHeaderSize];
    in.read(reinterpret_cast<char *>(bytes), kCirHeaderSize);
    if (in.gcount() != static_cast<std::streamsize>(kCirHeaderSize))
        throw io_error(path + ": truncated header (" + std::to_string(in.gcount()) + " of " +
                       std::to_string(kCirHeaderSize) + " bytes)");
    return CirFileHeader::deserialize(bytes, path);
}

CirMatrix read_cir(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error(path + ": cannot open");
    unsigned char hdr_bytes[kCirHeaderSize];
    in.read(reinterpret_cast<char *>(hdr_bytes), kCirHeaderSize);
    if (in.gcount() != static_cast<std::streamsize>(kCirHeaderSize))
        throw io_error(path + ": truncated header (" + std::to_string(in.gcount()) + " of " +
                       std::to_string(kCirHeaderSize) + " bytes)");
    const CirFileHeader header = CirFileHeader::deserialize(hdr_bytes, path);

    if (header.num_snapshots > (1ULL << 40) / header.num_delay_bins)
        throw io_error(path + ": header dimensions exceed supported payload size");
    const std::size_t total = static_cast<std::size_t>(header.num_snapshots) *
                              static_cast<std::size_t>(header.num_delay_bins);

    std::vector<std::complex<double>> samples(total);
    const std::size_t cols = header.num_delay_bins;
    std::vector<unsigned char> rowbuf(cols * 8);
    for (std::size_t n = 0; n < header.num_snapshots; ++n) {
        in.read(reinterpret_cast<char *>(rowbuf.data()),
                static_cast<std::streamsize>(rowbuf.size()));
        if (in.gcount() != static_cast<std::streamsize>(rowbuf.size())) {
            const std::size_t got_samples =
                n * cols + static_cast<std::size_t>(in.gcount()) / 8;
            throw io_error(path + ": truncated payload (expected " + std::to_string(total) +
                           " samples, found " + std::to_string(got_samples) + ")");
        }
        for (std::size_t m = 0; m < cols; ++m)
            samples[n * cols + m] = {static_cast<double>(get_f32(rowbuf.data() + 8 * m)),
                                     static_cast<double>(get_f32(rowbuf.data() + 8 * m + 4))};
    }

    try {
        return CirMatrix(header.to_grid(), std::move(samples));
    } catch (const validation_error &e) {
        throw io_error(path + ": " + e.what());
    }
}

} // namespace v2v
