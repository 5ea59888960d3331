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
// Single-attribute frequency oracles: six client-side randomizers with
// matched server-side unbiased estimators. Every oracle fits the same
// recipe: a support probability p* for the true value, a support probability
// q* for any other value, and the shared estimator
//   est[v] = (c_v / n - q*) / (p* - q*),
// where c_v counts the reports whose decoded support set contains v.

#ifndef LDPFREQ_LDP_ORACLES_H_
#define LDPFREQ_LDP_ORACLES_H_

#include <cstdint>
#include <variant>
#include <vector>

#include "ldp/report.h"
#include "ldp/rng.h"

namespace ldp {

// Generalized randomized response over k categories.
struct GrrParams {
  uint32_t k;
  double eps;
  double p;  // keep probability, e^eps / (e^eps + k - 1)
  double q;  // probability of each specific other value, (1 - p) / (k - 1)
};

enum class UeVariant { kSue, kOue };

// Unary encoding: one-hot encode, then flip each bit independently.
struct UeParams {
  UeVariant variant;
  double eps;
  double p;  // P(1-bit reported as 1)
  double q;  // P(0-bit reported as 1)
};

enum class LhVariant { kBlh, kOlh };

// Local hashing: hash into g buckets with a fresh public seed, then
// randomize the bucket.
struct LhParams {
  LhVariant variant;
  double eps;
  uint32_t g;     // hash range, 2 for BLH, max(2, round(e^eps) + 1) for OLH
  double p;       // P(reported bucket = hashed bucket)
  double q_star;  // support probability of a non-true value, 1/g
};

// Subset selection: report a random omega-subset biased toward the truth.
struct SsParams {
  uint32_t k;
  double eps;
  uint32_t omega;  // reported subset size, max(1, round(k / (e^eps + 1)))
  double p;        // P(true value in reported subset)
  double q_star;   // P(fixed other value in reported subset)
};

// Raw unbiased estimate. Entries may fall outside [0,1]; they sum to 1 in
// expectation only.
struct FrequencyEstimate {
  std::vector<double> est;
};

GrrParams MakeGrr(double eps, uint32_t k);
UeParams MakeUe(double eps, UeVariant variant);
LhParams MakeLh(double eps, LhVariant variant);
SsParams MakeSs(double eps, uint32_t k);

Report GrrClient(uint32_t v, const GrrParams& params, Rng& rng);
Report UeClient(uint32_t v, uint32_t k, const UeParams& params, Rng& rng);
Report LhClient(uint32_t v, const LhParams& params, Rng& rng);
Report SsClient(uint32_t v, const SsParams& params, Rng& rng);

// Bucket a value hashes to under a given report seed.
inline uint32_t LhBucket(uint64_t seed, uint32_t v, uint32_t g) {
  return static_cast<uint32_t>(HashPair(seed, v) % g);
}

// Uniform dispatch over the six oracles, used by the harness and the
// multidimensional wrappers.
enum class OracleKind { kGrr, kSue, kOue, kBlh, kOlh, kSs };

using OracleParams = std::variant<GrrParams, UeParams, LhParams, SsParams>;

OracleParams MakeOracle(OracleKind kind, double eps, uint32_t k);
Report OracleClient(uint32_t v, uint32_t k, const OracleParams& params,
                    Rng& rng);

// The (p*, q*) pair that makes the shared estimator unbiased: (p, q) for
// GRR and UE, (p, 1/g) for LH, (p, q_star) for SS.
struct PureProbs {
  double p_star;
  double q_star;
};

PureProbs PurePair(const OracleParams& params);

// Per-value support counts. Value reports support their value; bit reports
// support every set bit; hash reports support v iff Hash(seed, v) mod g is
// the reported bucket; subset reports support their members.
std::vector<uint64_t> SupportCounts(const std::vector<Report>& reports,
                                    const OracleParams& params, uint32_t k);

FrequencyEstimate EstimatePure(const std::vector<uint64_t>& counts, uint64_t n,
                               double p_star, double q_star);

// SupportCounts followed by EstimatePure at the oracle's (p*, q*).
FrequencyEstimate OracleAggregate(const std::vector<Report>& reports,
                                  const OracleParams& params, uint32_t k);

// Optional post-processing: clip to [0,1], then renormalize to sum 1.
// Off by default everywhere; estimates are reported raw.
FrequencyEstimate ClipAndRenormalize(const FrequencyEstimate& raw);

}  // namespace ldp

#endif  // LDPFREQ_LDP_ORACLES_H_
