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
// Longitudinal protocols for repeated collection from the same users. Each
// user sanitizes once at a permanent budget eps_perm and memoizes the
// result, then re-sanitizes the memo with fresh randomness on every
// collection so that any single report satisfies the tighter budget eps_1
// while unboundedly many reports stay within eps_perm. The round-2
// parameters are solved so the end-to-end channel realizes eps_1 exactly.

#ifndef LDPFREQ_LDP_LONGITUDINAL_H_
#define LDPFREQ_LDP_LONGITUDINAL_H_

#include <cstdint>
#include <variant>
#include <vector>

#include "ldp/oracles.h"
#include "ldp/report.h"
#include "ldp/rng.h"

namespace ldp {

// Budget pair for two-round protocols: eps_perm bounds the leakage of the
// memoized value over any number of reports, eps_1 bounds a single report.
struct LongBudget {
  double eps_perm;
  double eps_1;
};

// Chained randomized response: GRR at eps_perm, memoize, GRR again with
// solved (p2, q2). (p_star, q_star) describe the composed channel.
struct LongGrrParams {
  uint32_t k;
  LongBudget budget;
  double p1;
  double q1;
  double p2;
  double q2;
  double p_star;
  double q_star;
};

// First letter = round-1 bit channel, second = round-2 bit channel;
// S is symmetric (q = 1-p), O is optimized (p = 1/2).
enum class LongUeVariant { kLsue, kLoue, kLsoue, kLosue };

// Chained unary encoding; probabilities are per bit.
struct LongUeParams {
  LongUeVariant variant;
  LongBudget budget;
  double p1;
  double q1;
  double p2;
  double q2;
  double p_star;
  double q_star;
};

LongGrrParams SolveLGrr(double eps_perm, double eps_1, uint32_t k);
LongUeParams SolveLUe(double eps_perm, double eps_1, LongUeVariant variant);

// Largest single-report budget the variant can realize at eps_perm. The
// optimized-round-2 chains hit their ceiling at q2 = 0 and return a finite
// bound; the symmetric-round-2 chains can always reach eps_perm itself.
double MaxAttainableEps1(LongUeVariant variant, double eps_perm);

// Permanent first-round state. Keyed by the true value: a user who changes
// value draws a fresh memo.
struct UserMemo {
  uint32_t value;
  Report round1;
};

UserMemo MemoizeRound1(uint32_t v, const LongGrrParams& params, Rng& rng);
UserMemo MemoizeRound1(uint32_t v, uint32_t k, const LongUeParams& params,
                       Rng& rng);

// One collection: round-2 randomization of the memo, fresh noise per call.
Report LongClient(const UserMemo& memo, const LongGrrParams& params, Rng& rng);
Report LongClient(const UserMemo& memo, uint32_t k, const LongUeParams& params,
                  Rng& rng);

FrequencyEstimate LongAggregate(const std::vector<Report>& reports,
                                const LongGrrParams& params);
FrequencyEstimate LongAggregate(const std::vector<Report>& reports, uint32_t k,
                                const LongUeParams& params);

// Memoized d-bit flipping: each user samples d of the k buckets once,
// sanitizes the corresponding one-hot bits once at eps_perm, and replays
// that exact report forever.
struct DBitParams {
  uint32_t k;
  uint32_t d;
  double eps_perm;
  double p;  // per-bit keep probability, e^{eps_perm/2}/(e^{eps_perm/2}+1)
};

struct DBitMemo {
  std::vector<uint32_t> buckets;  // sorted, fixed for the user's lifetime
  std::vector<uint8_t> bits;      // memoized sanitized bits, one per bucket
};

DBitParams MakeDBit(double eps_perm, uint32_t k, uint32_t d);
DBitMemo DBitInit(uint32_t v, const DBitParams& params, Rng& rng);
Report DBitClient(const DBitMemo& memo);

struct DBitEstimate {
  FrequencyEstimate freq;
  // Flags values no user sampled; their estimate is pinned to 0.
  std::vector<uint8_t> no_samplers;
};

DBitEstimate DBitAggregate(const std::vector<Report>& reports,
                           const DBitParams& params);

// Uniform dispatch over the longitudinal protocols, used by the harness.
enum class LongProtocolKind { kLgrr, kLsue, kLoue, kLsoue, kLosue, kDbit };

using LongParams = std::variant<LongGrrParams, LongUeParams, DBitParams>;
using LongMemo = std::variant<UserMemo, DBitMemo>;

// dbit_d is only read by the d-bit protocol; eps_1 is ignored by it.
LongParams MakeLongProtocol(LongProtocolKind kind, double eps_perm,
                            double eps_1, uint32_t k, uint32_t dbit_d);
LongMemo LongMemoInit(uint32_t v, uint32_t k, const LongParams& params,
                      Rng& rng);
Report LongRound2(const LongMemo& memo, uint32_t k, const LongParams& params,
                  Rng& rng);
FrequencyEstimate LongParamsAggregate(const std::vector<Report>& reports,
                                      uint32_t k, const LongParams& params);

}  // namespace ldp

#endif  // LDPFREQ_LDP_LONGITUDINAL_H_
