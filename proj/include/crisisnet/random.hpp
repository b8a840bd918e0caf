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

// Portable seeded randomness. The engine is MT19937-64 seeded directly with
// the 64-bit seed; its output sequence is fixed by the C++ standard. The
// std:: distributions are implementation-defined, so every transform used by
// the library is spelled out here:
//
//   UniformInt(b)  draw r until r >= (2^64 - b) mod b, return r mod b
//   UniformReal()  (r >> 11) * 2^-53
//   Poisson(l)     Knuth's product method on chunks of mean <= 30, summed

#ifndef CRISISNET_RANDOM_HPP_
#define CRISISNET_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace crisisnet {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform on [0, bound); bound must be positive.
  std::uint64_t UniformInt(std::uint64_t bound);

  // Uniform on [0, 1).
  double UniformReal() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t Poisson(double mean);

  // Fisher-Yates, last position first.
  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(UniformInt(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace crisisnet

#endif  // CRISISNET_RANDOM_HPP_
