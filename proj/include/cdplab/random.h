// Copyright 2026 The cdplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CDPLAB_RANDOM_H_
#define CDPLAB_RANDOM_H_

#include <array>
#include <concepts>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace cdplab {

// Every sampling routine takes a generator producing full-range 64-bit words.
// Samplers below only use raw words (never std:: distributions), so a seed
// reproduces the same draws on every standard library.
template <typename G>
concept RandomBitStream = std::uniform_random_bit_generator<G> &&
    std::same_as<typename G::result_type, std::uint64_t> &&
    (G::min() == 0) &&
    (G::max() == std::numeric_limits<std::uint64_t>::max());

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t Fnv1a64(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) h = (h ^ c) * 1099511628211ULL;
  return h;
}

// Seeded Mersenne Twister that also supports labeled derivation: Derive()
// depends only on the seed and the label, not on how many words were drawn.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return engine_(); }

  RandomStream Derive(std::string_view label) const {
    return RandomStream(SplitMix64(seed_ ^ SplitMix64(Fnv1a64(label))));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Uniform on [0, 1) with 53 random bits.
template <RandomBitStream G>
double UniformDouble(G& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

template <RandomBitStream G>
bool Bernoulli(G& g, double p) {
  return UniformDouble(g) < p;
}

// Uniform integer in [0, bound) by rejection.
template <RandomBitStream G>
std::uint64_t UniformBelow(G& g, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = g();
  } while (v >= limit);
  return v % bound;
}

template <RandomBitStream G>
std::array<std::uint8_t, 16> RandomBytes16(G& g) {
  std::array<std::uint8_t, 16> out{};
  for (int half = 0; half < 2; ++half) {
    std::uint64_t w = g();
    for (int i = 0; i < 8; ++i) {
      out[half * 8 + i] = static_cast<std::uint8_t>(w >> (56 - 8 * i));
    }
  }
  return out;
}

// Child stream seeded from one word of the parent. Used where the parent is an
// arbitrary generator (possibly a test stub) rather than a RandomStream.
template <RandomBitStream G>
RandomStream SplitStream(G& g) {
  return RandomStream(g());
}

}  // namespace cdplab

#endif  // CDPLAB_RANDOM_H_
