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
//
// Exact privacy auditing. A mechanism on a small domain is written out as a
// row-stochastic channel matrix (input value -> output probability), rounds
// compose by matrix product, and the realized privacy level is the largest
// log-ratio between any two rows in any column. A mechanism satisfies its
// declared budget iff that realized level does not exceed it.

#ifndef LDPFREQ_LDP_AUDIT_H_
#define LDPFREQ_LDP_AUDIT_H_

#include <cstdint>
#include <vector>

#include "ldp/oracles.h"

namespace ldp {

// Largest enumerable output space (and input space) for channel matrices.
inline constexpr uint32_t kMaxOutputSpace = 1u << 10;

// Dense row-major channel matrix. Row = input value, column = output symbol
// under some fixed enumeration of the output space.
struct ChannelMatrix {
  uint32_t rows = 0;
  uint32_t cols = 0;
  std::vector<double> entries;

  double& At(uint32_t r, uint32_t c) { return entries[size_t{r} * cols + c]; }
  double At(uint32_t r, uint32_t c) const {
    return entries[size_t{r} * cols + c];
  }
};

struct RealizedEps {
  double eps = 0.0;
  // Set when some output has zero probability under one input and positive
  // probability under another; the log-ratio is unbounded there.
  bool infinite = false;
};

ChannelMatrix IdentityChannel(uint32_t n);

// k x k channel keeping the input with probability p and moving to each
// specific other value with probability q. Models GRR-style mechanisms.
ChannelMatrix SymmetricValueChannel(uint32_t k, double p, double q);

// k x 2^k channel: one-hot encode the input, then report each 1-bit as 1
// with probability p and each 0-bit as 1 with probability q. Output column
// index encodes the bit vector with value v at bit position v.
ChannelMatrix UnaryChannel(uint32_t k, double p, double q);

// 2^k x 2^k per-bit channel applied to an arbitrary bit vector: each 1-bit
// stays 1 with probability p, each 0-bit turns 1 with probability q. Used to
// compose the two rounds of chained unary mechanisms.
ChannelMatrix UnaryTransitionChannel(uint32_t k, double p, double q);

// k x C(k, omega) channel over all omega-subsets in lexicographic order.
ChannelMatrix SubsetChannel(const SsParams& params);

// The size-m subsets of {0, ..., k-1} in lexicographic order, matching the
// column order of SubsetChannel.
std::vector<std::vector<uint32_t>> EnumerateSubsets(uint32_t k, uint32_t m);

// k x g channel of a local-hashing client conditioned on a fixed seed. The
// seed is drawn independently of the data, so the conditional channel
// carries the privacy guarantee.
ChannelMatrix HashedChannel(const LhParams& params, uint64_t seed, uint32_t k);

// k x 2^d channel of a memoized-bit mechanism conditioned on a fixed sample
// of d buckets: bit j reports [buckets[j] == v] truthfully with probability
// p, flipped otherwise. Output column index encodes bit j at position j.
ChannelMatrix SampledBitChannel(uint32_t k, const std::vector<uint32_t>& buckets,
                                double p);

// Channel of any pure oracle; lh_seed conditions the LH variants.
ChannelMatrix OracleChannel(const OracleParams& params, uint32_t k,
                            uint64_t lh_seed = 0);

// Matrix product: the channel that runs `first`, then feeds its output into
// `second`.
ChannelMatrix Compose(const ChannelMatrix& first, const ChannelMatrix& second);

// Max over outputs y and input pairs (v1, v2) of ln(M[v1,y] / M[v2,y]).
// Columns that are identically zero are unreachable and skipped.
RealizedEps RealizedEpsilon(const ChannelMatrix& m);

// Largest deviation of any row sum from 1; stochasticity check.
double MaxRowSumError(const ChannelMatrix& m);

}  // namespace ldp

#endif  // LDPFREQ_LDP_AUDIT_H_
