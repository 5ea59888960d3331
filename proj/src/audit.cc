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

#include "ldp/audit.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ldp/error.h"

namespace ldp {
namespace {

void CheckSpace(uint64_t rows, uint64_t cols) {
  if (rows > kMaxOutputSpace || cols > kMaxOutputSpace) {
    throw OutputSpaceTooLarge("channel exceeds the enumerable space bound");
  }
}

uint64_t Choose(uint32_t n, uint32_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  uint64_t result = 1;
  for (uint32_t i = 1; i <= r; ++i) {
    result = result * (n - r + i) / i;
  }
  return result;
}

// Advances an ascending index combination to its lexicographic successor.
// Returns false after the last combination.
bool NextCombination(std::vector<uint32_t>& comb, uint32_t n) {
  const uint32_t r = static_cast<uint32_t>(comb.size());
  for (uint32_t i = r; i-- > 0;) {
    if (comb[i] < n - r + i) {
      ++comb[i];
      for (uint32_t j = i + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

ChannelMatrix IdentityChannel(uint32_t n) {
  CheckSpace(n, n);
  ChannelMatrix m{n, n, std::vector<double>(size_t{n} * n, 0.0)};
  for (uint32_t i = 0; i < n; ++i) m.At(i, i) = 1.0;
  return m;
}

ChannelMatrix SymmetricValueChannel(uint32_t k, double p, double q) {
  CheckSpace(k, k);
  ChannelMatrix m{k, k, std::vector<double>(size_t{k} * k, q)};
  for (uint32_t v = 0; v < k; ++v) m.At(v, v) = p;
  return m;
}

ChannelMatrix UnaryChannel(uint32_t k, double p, double q) {
  if (k >= 32) throw OutputSpaceTooLarge("unary output space 2^k too large");
  const uint32_t outputs = 1u << k;
  CheckSpace(k, outputs);
  ChannelMatrix m{k, outputs, std::vector<double>(size_t{k} * outputs, 0.0)};
  for (uint32_t v = 0; v < k; ++v) {
    for (uint32_t y = 0; y < outputs; ++y) {
      double prob = 1.0;
      for (uint32_t bit = 0; bit < k; ++bit) {
        const bool one = (y >> bit) & 1u;
        const double stay = bit == v ? p : q;
        prob *= one ? stay : 1.0 - stay;
      }
      m.At(v, y) = prob;
    }
  }
  return m;
}

ChannelMatrix UnaryTransitionChannel(uint32_t k, double p, double q) {
  if (k >= 32) throw OutputSpaceTooLarge("unary output space 2^k too large");
  const uint32_t outputs = 1u << k;
  CheckSpace(outputs, outputs);
  ChannelMatrix m{outputs, outputs,
                  std::vector<double>(size_t{outputs} * outputs, 0.0)};
  for (uint32_t x = 0; x < outputs; ++x) {
    for (uint32_t y = 0; y < outputs; ++y) {
      double prob = 1.0;
      for (uint32_t bit = 0; bit < k; ++bit) {
        const bool in_one = (x >> bit) & 1u;
        const bool out_one = (y >> bit) & 1u;
        const double stay = in_one ? p : q;
        prob *= out_one ? stay : 1.0 - stay;
      }
      m.At(x, y) = prob;
    }
  }
  return m;
}

ChannelMatrix SubsetChannel(const SsParams& params) {
  const uint32_t k = params.k;
  const uint32_t omega = params.omega;
  const uint64_t subsets = Choose(k, omega);
  CheckSpace(k, subsets);
  const uint32_t cols = static_cast<uint32_t>(subsets);
  ChannelMatrix m{k, cols, std::vector<double>(size_t{k} * cols, 0.0)};
  // Conditioned on membership the subset is uniform: p spreads over the
  // C(k-1, omega-1) subsets containing v, 1-p over the C(k-1, omega) others.
  const double in_prob = params.p / static_cast<double>(Choose(k - 1, omega - 1));
  const double out_prob =
      (1.0 - params.p) / static_cast<double>(Choose(k - 1, omega));
  std::vector<uint32_t> comb(omega);
  for (uint32_t i = 0; i < omega; ++i) comb[i] = i;
  uint32_t col = 0;
  do {
    for (uint32_t v = 0; v < k; ++v) {
      const bool member =
          std::find(comb.begin(), comb.end(), v) != comb.end();
      m.At(v, col) = member ? in_prob : out_prob;
    }
    ++col;
  } while (NextCombination(comb, k));
  return m;
}

std::vector<std::vector<uint32_t>> EnumerateSubsets(uint32_t k, uint32_t m) {
  if (m == 0 || m > k) throw InvalidSampleSize("subset size outside [1, k]");
  const uint64_t subsets = Choose(k, m);
  CheckSpace(k, subsets);
  std::vector<std::vector<uint32_t>> out;
  out.reserve(subsets);
  std::vector<uint32_t> comb(m);
  for (uint32_t i = 0; i < m; ++i) comb[i] = i;
  do {
    out.push_back(comb);
  } while (NextCombination(comb, k));
  return out;
}

ChannelMatrix HashedChannel(const LhParams& params, uint64_t seed, uint32_t k) {
  const uint32_t g = params.g;
  CheckSpace(k, g);
  ChannelMatrix m{k, g, std::vector<double>(size_t{k} * g, 0.0)};
  const double other = (1.0 - params.p) / (g - 1.0);
  for (uint32_t v = 0; v < k; ++v) {
    const uint32_t hashed = LhBucket(seed, v, g);
    for (uint32_t b = 0; b < g; ++b) {
      m.At(v, b) = b == hashed ? params.p : other;
    }
  }
  return m;
}

ChannelMatrix SampledBitChannel(uint32_t k, const std::vector<uint32_t>& buckets,
                                double p) {
  const uint32_t d = static_cast<uint32_t>(buckets.size());
  if (d >= 32) throw OutputSpaceTooLarge("bit output space 2^d too large");
  const uint32_t outputs = 1u << d;
  CheckSpace(k, outputs);
  ChannelMatrix m{k, outputs, std::vector<double>(size_t{k} * outputs, 0.0)};
  for (uint32_t v = 0; v < k; ++v) {
    for (uint32_t y = 0; y < outputs; ++y) {
      double prob = 1.0;
      for (uint32_t j = 0; j < d; ++j) {
        const bool true_bit = buckets[j] == v;
        const bool out_one = (y >> j) & 1u;
        prob *= out_one == true_bit ? p : 1.0 - p;
      }
      m.At(v, y) = prob;
    }
  }
  return m;
}

ChannelMatrix OracleChannel(const OracleParams& params, uint32_t k,
                            uint64_t lh_seed) {
  return std::visit(
      [&](const auto& par) -> ChannelMatrix {
        using T = std::decay_t<decltype(par)>;
        if constexpr (std::is_same_v<T, GrrParams>) {
          return SymmetricValueChannel(par.k, par.p, par.q);
        } else if constexpr (std::is_same_v<T, UeParams>) {
          return UnaryChannel(k, par.p, par.q);
        } else if constexpr (std::is_same_v<T, LhParams>) {
          return HashedChannel(par, lh_seed, k);
        } else {
          return SubsetChannel(par);
        }
      },
      params);
}

ChannelMatrix Compose(const ChannelMatrix& first, const ChannelMatrix& second) {
  if (first.cols != second.rows) {
    throw ShapeMismatch("inner dimensions of composed channels differ");
  }
  ChannelMatrix out{first.rows, second.cols,
                    std::vector<double>(size_t{first.rows} * second.cols, 0.0)};
  for (uint32_t r = 0; r < first.rows; ++r) {
    for (uint32_t mid = 0; mid < first.cols; ++mid) {
      const double w = first.At(r, mid);
      if (w == 0.0) continue;
      for (uint32_t c = 0; c < second.cols; ++c) {
        out.At(r, c) += w * second.At(mid, c);
      }
    }
  }
  return out;
}

RealizedEps RealizedEpsilon(const ChannelMatrix& m) {
  RealizedEps result;
  double best = 0.0;
  for (uint32_t c = 0; c < m.cols; ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (uint32_t r = 0; r < m.rows; ++r) {
      const double e = m.At(r, c);
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    if (hi == 0.0) continue;  // output never occurs under any input
    if (lo == 0.0) {
      result.infinite = true;
      continue;
    }
    best = std::max(best, std::log(hi / lo));
  }
  result.eps =
      result.infinite ? std::numeric_limits<double>::infinity() : best;
  return result;
}

double MaxRowSumError(const ChannelMatrix& m) {
  double worst = 0.0;
  for (uint32_t r = 0; r < m.rows; ++r) {
    double sum = 0.0;
    for (uint32_t c = 0; c < m.cols; ++c) sum += m.At(r, c);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

}  // namespace ldp
