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

#include "hybrid_relay/rp_sampling.h"

#include <array>

namespace hybrid_relay {
namespace {

// Rescales to sum one, folding the residual round-off into the largest entry.
RegionProbabilities Normalize(std::array<double, kNumRegions> w) {
  double sum = 0.0;
  for (double v : w) sum += v;
  size_t largest = 0;
  for (size_t k = 0; k < w.size(); ++k) {
    w[k] /= sum;
    if (w[k] > w[largest]) largest = k;
  }
  double total = 0.0;
  for (double v : w) total += v;
  w[largest] += 1.0 - total;
  return RegionProbabilities(w);
}

}  // namespace

RegionProbabilities SampleDirichlet(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::array<double, kNumRegions> w;
  for (double& v : w) v = e(rng);
  return Normalize(w);
}

std::vector<RegionProbabilities> CaseBoundaryVectors(std::mt19937_64& rng,
                                                     int per_boundary) {
  std::vector<RegionProbabilities> out;
  std::exponential_distribution<double> e(1.0);
  // P_R3 = s + sign2 * P_R2 + sign1 * P_R1 for each boundary.
  constexpr std::array<std::array<double, 2>, 4> kBoundaries = {{
      {-1.0, -1.0},
      {0.0, -1.0},
      {0.0, 1.0},
      {1.0, 1.0},
  }};
  for (const auto& [sign1, sign2] : kBoundaries) {
    int made = 0;
    while (made < per_boundary) {
      std::array<double, kNumRegions> w;
      for (double& v : w) v = e(rng);
      const double r3 = w[3] + w[4] + sign2 * w[1] + sign1 * w[0];
      if (r3 < 0.0) continue;
      w[2] = r3;
      // Homogeneous constraint, so scaling keeps the vector on the boundary.
      double sum = 0.0;
      for (double v : w) sum += v;
      for (double& v : w) v /= sum;
      double total = 0.0;
      for (double v : w) total += v;
      w[5] += 1.0 - total;  // R6 does not enter any boundary
      if (w[5] < 0.0) continue;
      out.emplace_back(w);
      ++made;
    }
  }
  // Coinciding boundaries and zero-mass regions.
  out.emplace_back(std::array<double, kNumRegions>{0, 0, 0, 0, 0, 1});
  out.emplace_back(std::array<double, kNumRegions>{0.5, 0, 0, 0, 0, 0.5});
  out.emplace_back(std::array<double, kNumRegions>{0, 0, 0.5, 0.5, 0, 0});
  out.emplace_back(std::array<double, kNumRegions>{0.25, 0, 0.25, 0.25, 0, 0.25});
  out.emplace_back(std::array<double, kNumRegions>{0, 0.25, 0.25, 0, 0.25, 0.25});
  out.emplace_back(std::array<double, kNumRegions>{0.2, 0.2, 0.2, 0.2, 0.2, 0});
  out.emplace_back(std::array<double, kNumRegions>{0, 0, 1, 0, 0, 0});
  out.emplace_back(std::array<double, kNumRegions>{0, 0, 0, 1, 0, 0});
  out.emplace_back(std::array<double, kNumRegions>{1, 0, 0, 0, 0, 0});
  out.emplace_back(std::array<double, kNumRegions>{0, 1, 0, 0, 0, 0});
  return out;
}

}  // namespace hybrid_relay
