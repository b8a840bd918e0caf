// Copyright 2026 The crisisnet Authors
//
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

#include "crisisnet/random.hpp"

#include <cmath>

#include "crisisnet/error.hpp"

namespace crisisnet {

std::uint64_t Rng::UniformInt(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "empty range");
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t r = engine_();
  while (r < threshold) r = engine_();
  return r % bound;
}

std::uint64_t Rng::Poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw Error(ErrorCode::kInvalidArgument, "Poisson mean must be finite and >= 0");
  }
  constexpr double kChunk = 30.0;
  std::uint64_t total = 0;
  while (mean > 0.0) {
    const double part = mean > kChunk ? kChunk : mean;
    mean -= part;
    const double limit = std::exp(-part);
    double product = UniformReal();
    while (product > limit) {
      ++total;
      product *= UniformReal();
    }
  }
  return total;
}

}  // namespace crisisnet
