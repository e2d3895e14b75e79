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

#ifndef V2V_SYNTH_HPP
#define V2V_SYNTH_HPP

#include <vector>

#include "v2v/core.hpp"
#include "v2v/scenario.hpp"

namespace v2v {

// Delay-placement kernel half width in bins; paths must stay this many bins
// inside the delay window.
inline constexpr int kKernelHalfWidth = 4;

// Band-limited delay-placement weight at a fractional bin offset. Periodic
// sinc (Dirichlet) for num_delay_bins, shaped by a raised-cosine envelope so
// the support is |offset| < kKernelHalfWidth. Exactly 1 at offset 0 and
// exactly 0 at every other integer offset.
double placement_kernel(double offset_bins, std::size_t num_delay_bins);

// Evaluates one path (LOS when scatterer is null, else single bounce) at
// time t: delay, Doppler, amplitude and carrier phase from the scenario
// geometry and path loss law.
MultipathComponent path_geometry(const ScenarioConfig &cfg, const Scatterer *scatterer, double t);

// All paths present at time t (LOS first, then active scatterers in config
// order), exactly as simulate uses them.
std::vector<MultipathComponent> list_paths(const ScenarioConfig &cfg, double t);

// Largest |Doppler| any path of this scenario can reach at any time.
double doppler_supremum(const ScenarioConfig &cfg);

// Full record synthesis: per snapshot, sum kernel-placed path contributions
// and add per-bin circularly-symmetric complex Gaussian noise at noise_floor
// (disabled when noise_floor is -inf). Deterministic for a fixed rng_seed,
// independent of thread count.
CirMatrix simulate(const ScenarioConfig &cfg);

} // namespace v2v

#endif
