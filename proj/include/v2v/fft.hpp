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

#ifndef V2V_FFT_HPP
#define V2V_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>

namespace v2v {

// One forward complex DFT plan of fixed length. Plan creation is globally
// serialized (the planner is not thread-safe); forward() is safe to call
// concurrently on distinct instances. Plans use deterministic heuristics so
// results are bit-identical across runs.
class Fft {
  public:
    explicit Fft(std::size_t n);
    ~Fft();
    Fft(const Fft &) = delete;
    Fft &operator=(const Fft &) = delete;

    std::size_t size() const { return n_; }

    // out[k] = sum_t in[t] * exp(-2*pi*i*t*k/n), unnormalized.
    void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

  private:
    std::size_t n_;
    void *plan_ = nullptr;
    void *in_ = nullptr;
    void *out_ = nullptr;
};

} // namespace v2v

#endif
