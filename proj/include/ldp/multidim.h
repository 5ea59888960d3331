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
// Single-collection estimation over d attributes. Three budget strategies:
// SPL sanitizes every attribute at eps/d; SMP samples one attribute and
// spends the full eps on it; RS+FD also samples one attribute but hides
// which one by emitting fake reports for the rest, which amplifies the
// usable budget to ln(d(e^eps - 1) + 1).

#ifndef LDPFREQ_LDP_MULTIDIM_H_
#define LDPFREQ_LDP_MULTIDIM_H_

#include <cstdint>
#include <vector>

#include "ldp/oracles.h"
#include "ldp/report.h"
#include "ldp/rng.h"

namespace ldp {

enum class MdimSolution { kSpl, kSmp, kRsfd };

// How RS+FD fabricates a fake unary-encoding report: sanitize the all-zeros
// vector, or sanitize a uniformly random one-hot vector.
enum class FakeMode { kZero, kRnd };

struct MdimConfig {
  uint32_t d;
  std::vector<uint32_t> ks;
  double eps;
  MdimSolution solution;
  OracleKind oracle;
  FakeMode fake_mode;
  double eps_amp;  // RS+FD working budget; equals eps otherwise
  // Oracle parameters per attribute at the solution's working budget.
  std::vector<OracleParams> attr_params;
};

// ln(d(e^eps - 1) + 1); returns eps unchanged at d = 1.
double Amplify(double eps, uint32_t d);

// RS+FD accepts GRR and the two UE oracles only.
MdimConfig MakeMdimConfig(MdimSolution solution, OracleKind oracle, double eps,
                          const std::vector<uint32_t>& ks,
                          FakeMode fake_mode = FakeMode::kZero);

MdimReport SplClient(const std::vector<uint32_t>& tuple, const MdimConfig& cfg,
                     Rng& rng);
MdimReport SmpClient(const std::vector<uint32_t>& tuple, const MdimConfig& cfg,
                     Rng& rng);
MdimReport RsfdClient(const std::vector<uint32_t>& tuple, const MdimConfig& cfg,
                      Rng& rng);

// Dispatch on cfg.solution.
MdimReport MdimClient(const std::vector<uint32_t>& tuple, const MdimConfig& cfg,
                      Rng& rng);

struct GroupedEstimate {
  std::vector<FrequencyEstimate> per_attr;
  // Attributes no sampled report landed on (SMP only); their estimate is a
  // zero vector.
  std::vector<uint8_t> empty_group;
};

GroupedEstimate SplAggregate(const std::vector<MdimReport>& reports,
                             const MdimConfig& cfg);
GroupedEstimate SmpAggregate(const std::vector<MdimReport>& reports,
                             const MdimConfig& cfg);
GroupedEstimate RsfdAggregate(const std::vector<MdimReport>& reports,
                              const MdimConfig& cfg);

GroupedEstimate MdimAggregate(const std::vector<MdimReport>& reports,
                              const MdimConfig& cfg);

}  // namespace ldp

#endif  // LDPFREQ_LDP_MULTIDIM_H_
