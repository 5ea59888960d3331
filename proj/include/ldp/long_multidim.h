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
// Repeated collection over d attributes. L-SPL runs a longitudinal protocol
// per attribute at split budgets (eps_perm/d, eps_1/d). L-SMP samples one
// attribute per user, once and for all, and runs the full-budget protocol
// on it; resampling each collection would leak across attributes beyond
// eps_perm, so the attribute choice is memoized alongside the round-1 state.

#ifndef LDPFREQ_LDP_LONG_MULTIDIM_H_
#define LDPFREQ_LDP_LONG_MULTIDIM_H_

#include <cstdint>
#include <vector>

#include "ldp/longitudinal.h"
#include "ldp/multidim.h"
#include "ldp/report.h"
#include "ldp/rng.h"

namespace ldp {

enum class LongMdimSolution { kLspl, kLsmp };

struct LongMdimConfig {
  uint32_t d;
  std::vector<uint32_t> ks;
  LongBudget budget;
  LongMdimSolution solution;
  LongProtocolKind protocol;
  uint32_t dbit_d;  // sampled bits for the d-bit protocol; 0 = all of ks[j]
  // Protocol parameters per attribute at the solution's working budgets.
  std::vector<LongParams> attr_params;
};

LongMdimConfig MakeLongMdimConfig(LongMdimSolution solution,
                                  LongProtocolKind protocol, double eps_perm,
                                  double eps_1,
                                  const std::vector<uint32_t>& ks,
                                  uint32_t dbit_d = 0);

// Everything a user keeps across collections: the sampled attribute (L-SMP)
// and the permanent round-1 memos (one per attribute for L-SPL, one for the
// sampled attribute for L-SMP).
struct LongMdimUserState {
  uint32_t attr = 0;
  std::vector<LongMemo> memos;
};

LongMdimUserState SampleUserState(const std::vector<uint32_t>& tuple,
                                  const LongMdimConfig& cfg, Rng& rng);

// One collection from one user; fresh round-2 noise, stable state.
MdimReport LongMdimClient(const LongMdimUserState& state,
                          const LongMdimConfig& cfg, Rng& rng);

GroupedEstimate LongMdimAggregate(const std::vector<MdimReport>& reports,
                                  const LongMdimConfig& cfg);

}  // namespace ldp

#endif  // LDPFREQ_LDP_LONG_MULTIDIM_H_
