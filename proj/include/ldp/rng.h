// Copyright 2026 The ldpfreq Authors
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

#ifndef LDPFREQ_LDP_RNG_H_
#define LDPFREQ_LDP_RNG_H_

#include <algorithm>
#include <cstdint>
#include <vector>

namespace ldp {

inline constexpr uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// 64-bit finalizer with full avalanche (murmur3 variant).
inline uint64_t Mix64(uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

// Seeded hash of a category value, used by the local-hashing clients. The
// pair (seed, value) fully determines the output, so an aggregator can
// re-evaluate supports from the report alone.
inline uint64_t HashPair(uint64_t seed, uint64_t value) {
  return Mix64(seed ^ Mix64(value + kGoldenGamma));
}

// Derives an independent child seed for substream `stream`. All simulation
// randomness is arranged as a tree of substreams so results do not depend on
// scheduling or worker count.
inline uint64_t SubstreamSeed(uint64_t seed, uint64_t stream) {
  return Mix64(seed ^ (kGoldenGamma + Mix64(stream)));
}

// Small, fast, portable generator (splitmix64). Every randomized operation in
// the library takes one of these by reference; there is no ambient global
// randomness. Identical seeds give identical draw sequences on every
// platform, which the harness relies on for reproducibility.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t NextU64() {
    uint64_t z = (state_ += kGoldenGamma);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double NextDouble() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return NextDouble() < p; }

  // Uniform integer in [0, bound). Unbiased (Lemire multiply-shift with
  // rejection). bound must be >= 1.
  uint32_t UniformInt(uint32_t bound) {
    if (bound <= 1) return 0;
    uint64_t x = NextU64();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<uint64_t>(m);
    if (low < bound) {
      const uint64_t threshold = (-static_cast<uint64_t>(bound)) % bound;
      while (low < threshold) {
        x = NextU64();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint32_t>(m >> 64);
  }

 private:
  uint64_t state_;
};

// Uniform m-subset of [0, bound), sorted ascending (Floyd's algorithm).
// Requires m <= bound. Membership checks are linear; intended for small m.
inline std::vector<uint32_t> SampleWithoutReplacement(Rng& rng, uint32_t m,
                                                      uint32_t bound) {
  std::vector<uint32_t> out;
  out.reserve(m);
  for (uint32_t j = bound - m; j < bound; ++j) {
    const uint32_t t = rng.UniformInt(j + 1);
    if (std::find(out.begin(), out.end(), t) != out.end()) {
      out.push_back(j);
    } else {
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ldp

#endif  // LDPFREQ_LDP_RNG_H_
