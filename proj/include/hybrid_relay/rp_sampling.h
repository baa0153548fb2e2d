// Copyright 2026 The hybrid_relay Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random region-probability vectors for verification sweeps.

#ifndef HYBRID_RELAY_RP_SAMPLING_H_
#define HYBRID_RELAY_RP_SAMPLING_H_

#include <random>
#include <vector>

#include "hybrid_relay/channel_model.h"

namespace hybrid_relay {

// Uniform on the probability simplex (Dirichlet(1, ..., 1)).
RegionProbabilities SampleDirichlet(std::mt19937_64& rng);

// Vectors lying on each of the four case boundaries
//   P_R3 = S - P_R1 - P_R2,  S - P_R2,  S + P_R2,  S + P_R2 + P_R1
// (S = P_R4 + P_R5), `per_boundary` of each, plus a few hand-picked ones
// where several boundaries coincide.
std::vector<RegionProbabilities> CaseBoundaryVectors(std::mt19937_64& rng,
                                                     int per_boundary);

}  // namespace hybrid_relay

#endif  // HYBRID_RELAY_RP_SAMPLING_H_
