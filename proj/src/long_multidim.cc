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

#include "ldp/long_multidim.h"

#include "ldp/error.h"

namespace ldp {

LongMdimConfig MakeLongMdimConfig(LongMdimSolution solution,
                                  LongProtocolKind protocol, double eps_perm,
                                  double eps_1,
                                  const std::vector<uint32_t>& ks,
                                  uint32_t dbit_d) {
  if (ks.empty()) throw InvalidDomain("need at least one attribute");
  for (uint32_t k : ks) {
    if (k < 2) throw InvalidDomain("every domain size must be at least 2");
  }
  const auto d = static_cast<uint32_t>(ks.size());
  LongMdimConfig cfg;
  cfg.d = d;
  cfg.ks = ks;
  cfg.budget = LongBudget{eps_perm, eps_1};
  cfg.solution = solution;
  cfg.protocol = protocol;
  cfg.dbit_d = dbit_d;
  const bool split = solution == LongMdimSolution::kLspl;
  const double perm = split ? eps_perm / d : eps_perm;
  const double one = split ? eps_1 / d : eps_1;
  cfg.attr_params.reserve(d);
  for (uint32_t k : ks) {
    const uint32_t bits = dbit_d == 0 ? k : dbit_d;
    cfg.attr_params.push_back(
        MakeLongProtocol(protocol, perm, one, k, bits));
  }
  return cfg;
}

LongMdimUserState SampleUserState(const std::vector<uint32_t>& tuple,
                                  const LongMdimConfig& cfg, Rng& rng) {
  if (tuple.size() != cfg.d) {
    throw ShapeMismatch("tuple length differs from the attribute count");
  }
  LongMdimUserState state;
  if (cfg.solution == LongMdimSolution::kLspl) {
    state.memos.reserve(cfg.d);
    for (uint32_t j = 0; j < cfg.d; ++j) {
      state.memos.push_back(
          LongMemoInit(tuple[j], cfg.ks[j], cfg.attr_params[j], rng));
    }
    return state;
  }
  state.attr = rng.UniformInt(cfg.d);
  state.memos.push_back(LongMemoInit(tuple[state.attr], cfg.ks[state.attr],
                                     cfg.attr_params[state.attr], rng));
  return state;
}

MdimReport LongMdimClient(const LongMdimUserState& state,
                          const LongMdimConfig& cfg, Rng& rng) {
  if (cfg.solution == LongMdimSolution::kLspl) {
    if (state.memos.size() != cfg.d) {
      throw ShapeMismatch("user state does not cover every attribute");
    }
    SplReport out;
    out.reports.reserve(cfg.d);
    for (uint32_t j = 0; j < cfg.d; ++j) {
      out.reports.push_back(
          LongRound2(state.memos[j], cfg.ks[j], cfg.attr_params[j], rng));
    }
    return out;
  }
  if (state.attr >= cfg.d || state.memos.size() != 1) {
    throw ShapeMismatch("user state does not hold one sampled attribute");
  }
  return SmpReport{state.attr,
                   LongRound2(state.memos[0], cfg.ks[state.attr],
                              cfg.attr_params[state.attr], rng)};
}

GroupedEstimate LongMdimAggregate(const std::vector<MdimReport>& reports,
                                  const LongMdimConfig& cfg) {
  if (reports.empty()) throw EmptyReportSet("no reports to aggregate");
  GroupedEstimate out;
  out.per_attr.resize(cfg.d);
  out.empty_group.assign(cfg.d, 0);
  if (cfg.solution == LongMdimSolution::kLspl) {
    for (uint32_t j = 0; j < cfg.d; ++j) {
      std::vector<Report> column;
      column.reserve(reports.size());
      for (const MdimReport& report : reports) {
        const SplReport* r = std::get_if<SplReport>(&report);
        if (r == nullptr) throw MixedReportTypes("expected split reports");
        if (r->reports.size() != cfg.d) {
          throw ShapeMismatch("report does not cover every attribute");
        }
        column.push_back(r->reports[j]);
      }
      out.per_attr[j] =
          LongParamsAggregate(column, cfg.ks[j], cfg.attr_params[j]);
    }
    return out;
  }
  std::vector<std::vector<Report>> groups(cfg.d);
  for (const MdimReport& report : reports) {
    const SmpReport* r = std::get_if<SmpReport>(&report);
    if (r == nullptr) throw MixedReportTypes("expected sampled reports");
    if (r->attr >= cfg.d) throw OutOfDomain("sampled attribute out of range");
    groups[r->attr].push_back(r->report);
  }
  for (uint32_t j = 0; j < cfg.d; ++j) {
    if (groups[j].empty()) {
      out.per_attr[j].est.assign(cfg.ks[j], 0.0);
      out.empty_group[j] = 1;
      continue;
    }
    out.per_attr[j] =
        LongParamsAggregate(groups[j], cfg.ks[j], cfg.attr_params[j]);
  }
  return out;
}

}  // namespace ldp
