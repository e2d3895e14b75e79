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

#include "v2v/fft.hpp"

#include <cstring>
#include <mutex>

#include <fftw3.h>

#include "v2v/core.hpp"

namespace v2v {

namespace {
// FFTW's planner mutates global state; executing existing plans does not.
std::mutex planner_mutex;
} // namespace

Fft::Fft(std::size_t n) : n_(n)
{
    if (n_ == 0)
        throw validation_error("fft: transform length must be >= 1");
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_complex *in = fftw_alloc_complex(n_);
    fftw_complex *out = fftw_alloc_complex(n_);
    if (!in || !out) {
        fftw_free(in);
        fftw_free(out);
        throw error("fft: allocation failed for length " + std::to_string(n_));
    }
    // FFTW_ESTIMATE picks the plan from fixed heuristics (no runtime
    // measurement), keeping outputs bit-identical run to run.
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n_), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    if (!plan) {
        fftw_free(in);
        fftw_free(out);
        throw error("fft: planning failed for length " + std::to_string(n_));
    }
    in_ = in;
    out_ = out;
    plan_ = plan;
}

Fft::~Fft()
{
    std::lock_guard<std::mutex> lock(planner_mutex);
    if (plan_)
        fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    fftw_free(in_);
    fftw_free(out_);
}

void Fft::forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out)
{
    if (in.size() != n_ || out.size() != n_)
        throw validation_error("fft: buffer length mismatch (plan length " + std::to_string(n_) +
                               ", in " + std::to_string(in.size()) + ", out " +
                               std::to_string(out.size()) + ")");
    // std::complex<double> is layout-compatible with fftw_complex.
    std::memcpy(in_, in.data(), n_ * sizeof(fftw_complex));
    fftw_execute(static_cast<fftw_plan>(plan_));
    std::memcpy(out.data(), out_, n_ * sizeof(fftw_complex));
}

} // namespace v2v
