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

#include "ldp/multidim.h"

#include <cmath>

#include "ldp/error.h"

namespace ldp {
namespace {

void CheckTuple(const std::vector<uint32_t>& tuple, const MdimConfig& cfg) {
  if (tuple.size() != cfg.d) {
    throw ShapeMismatch("tuple length differs from the attribute count");
  }
  for (uint32_t j = 0; j < cfg.d; ++j) {
    if (tuple[j] >= cfg.ks[j]) {
      throw OutOfDomain("attribute value outside its domain");
    }
  }
}

// A fake report indistinguishable in form from a sanitized one. GRR fakes
// are raw uniform draws; UE fakes sanitize a zero or random one-hot vector.
Report FakeReport(uint32_t k, const OracleParams& params, FakeMode mode,
                  Rng& rng) {
  if (const auto* grr = std::get_if<GrrParams>(&params)) {
    (void)grr;
    return ValueReport{rng.UniformInt(k)};
  }
  const UeParams& ue = std::get<UeParams>(params);
  if (mode == FakeMode::kRnd) {
    return UeClient(rng.UniformInt(k), k, ue, rng);
  }
  BitsReport out;
  out.bits.resize(k);
  for (uint32_t i = 0; i < k; ++i) {
    out.bits[i] = rng.Bernoulli(ue.q) ? 1 : 0;
  }
  return out;
}

std::vector<uint64_t> PositionCounts(const std::vector<MdimReport>& reports,
                                     uint32_t attr, const OracleParams& params,
                                     uint32_t k) {
  std::vector<Report> column;
  column.reserve(reports.size());
  for (const MdimReport& report : reports) {
    const RsfdReport* r = std::get_if<RsfdReport>(&report);
    if (r == nullptr) throw MixedReportTypes("expected fake-data reports");
    if (r->reports.size() <= attr) {
      throw ShapeMismatch("report is missing attribute positions");
    }
    column.push_back(r->reports[attr]);
  }
  return SupportCounts(column, params, k);
}

}  // namespace

double Amplify(double eps, uint32_t d) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidBudget("privacy budget must be a positive finite real");
  }
  if (d < 1) throw InvalidDomain("attribute count must be at least 1");
  if (d == 1) return eps;  // exact: sampling one of one amplifies nothing
  return std::log(d * (std::exp(eps) - 1.0) + 1.0);
}

MdimConfig MakeMdimConfig(MdimSolution solution, OracleKind oracle, double eps,
                          const std::vector<uint32_t>& ks,
                          FakeMode fake_mode) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidBudget("privacy budget must be a positive finite real");
  }
  if (ks.empty()) throw InvalidDomain("need at least one attribute");
  for (uint32_t k : ks) {
    if (k < 2) throw InvalidDomain("every domain size must be at least 2");
  }
  const auto d = static_cast<uint32_t>(ks.size());
  MdimConfig cfg;
  cfg.d = d;
  cfg.ks = ks;
  cfg.eps = eps;
  cfg.solution = solution;
  cfg.oracle = oracle;
  cfg.fake_mode = fake_mode;
  double working = eps;
  switch (solution) {
    case MdimSolution::kSpl:
      working = eps / d;
      break;
    case MdimSolution::kSmp:
      working = eps;
      break;
    case MdimSolution::kRsfd:
      if (oracle != OracleKind::kGrr && oracle != OracleKind::kSue &&
          oracle != OracleKind::kOue) {
        throw InvalidConfig(
            "fake-data reports exist only for GRR and unary encoding");
      }
      working = Amplify(eps, d);
      break;
  }
  cfg.eps_amp = solution == MdimSolution::kRsfd ? working : eps;
  cfg.attr_params.reserve(d);
  for (uint32_t k : ks) {
    cfg.attr_params.push_back(MakeOracle(oracle, working, k));
  }
  return cfg;
}

MdimReport SplClient(const std::vector<uint32_t>& tuple, const MdimConfig& cfg,
                     Rng& rng) {
  CheckTuple(tuple, cfg);
  SplReport out;
  out.reports.reserve(cfg.d);
  for (uint32_t j = 0; j < cfg.d; ++j) {
    out.reports.push_back(
        OracleClient(tuple[j], cfg.ks[j], cfg.attr_params[j], rng));
  }
  return out;
}

MdimReport SmpClient(const std::vector<uint32_t>& tuple, const MdimConfig& cfg,
                     Rng& rng) {
  CheckTuple(tuple, cfg);
  const uint32_t attr = rng.UniformInt(cfg.d);
  return SmpReport{
      attr, OracleClient(tuple[attr], cfg.ks[attr], cfg.attr_params[attr], rng)};
}

MdimReport RsfdClient(const std::vector<uint32_t>& tuple, const MdimConfig& cfg,
                      Rng& rng) {
  CheckTuple(tuple, cfg);
  const uint32_t attr = rng.UniformInt(cfg.d);
  RsfdReport out;
  out.reports.reserve(cfg.d);
  for (uint32_t j = 0; j < cfg.d; ++j) {
    if (j == attr) {
      out.reports.push_back(
          OracleClient(tuple[j], cfg.ks[j], cfg.attr_params[j], rng));
    } else {
      out.reports.push_back(
          FakeReport(cfg.ks[j], cfg.attr_params[j], cfg.fake_mode, rng));
    }
  }
  return out;
}

MdimReport MdimClient(const std::vector<uint32_t>& tuple, const MdimConfig& cfg,
                      Rng& rng) {
  switch (cfg.solution) {
    case MdimSolution::kSpl:
      return SplClient(tuple, cfg, rng);
    case MdimSolution::kSmp:
      return SmpClient(tuple, cfg, rng);
    case MdimSolution::kRsfd:
      return RsfdClient(tuple, cfg, rng);
  }
  throw InvalidConfig("unknown multidimensional solution");
}

GroupedEstimate SplAggregate(const std::vector<MdimReport>& reports,
                             const MdimConfig& cfg) {
  if (reports.empty()) throw EmptyReportSet("no reports to aggregate");
  GroupedEstimate out;
  out.per_attr.resize(cfg.d);
  out.empty_group.assign(cfg.d, 0);
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
    out.per_attr[j] = OracleAggregate(column, cfg.attr_params[j], cfg.ks[j]);
  }
  return out;
}

GroupedEstimate SmpAggregate(const std::vector<MdimReport>& reports,
                             const MdimConfig& cfg) {
  if (reports.empty()) throw EmptyReportSet("no reports to aggregate");
  std::vector<std::vector<Report>> groups(cfg.d);
  for (const MdimReport& report : reports) {
    const SmpReport* r = std::get_if<SmpReport>(&report);
    if (r == nullptr) throw MixedReportTypes("expected sampled reports");
    if (r->attr >= cfg.d) throw OutOfDomain("sampled attribute out of range");
    groups[r->attr].push_back(r->report);
  }
  GroupedEstimate out;
  out.per_attr.resize(cfg.d);
  out.empty_group.assign(cfg.d, 0);
  for (uint32_t j = 0; j < cfg.d; ++j) {
    if (groups[j].empty()) {
      out.per_attr[j].est.assign(cfg.ks[j], 0.0);
      out.empty_group[j] = 1;
      continue;
    }
    out.per_attr[j] =
        OracleAggregate(groups[j], cfg.attr_params[j], cfg.ks[j]);
  }
  return out;
}

GroupedEstimate RsfdAggregate(const std::vector<MdimReport>& reports,
                              const MdimConfig& cfg) {
  if (reports.empty()) throw EmptyReportSet("no reports to aggregate");
  const auto n = static_cast<double>(reports.size());
  const double d = cfg.d;
  GroupedEstimate out;
  out.per_attr.resize(cfg.d);
  out.empty_group.assign(cfg.d, 0);
  for (uint32_t j = 0; j < cfg.d; ++j) {
    const uint32_t k = cfg.ks[j];
    const std::vector<uint64_t> counts =
        PositionCounts(reports, j, cfg.attr_params[j], k);
    const PureProbs pp = PurePair(cfg.attr_params[j]);
    const double gap = pp.p_star - pp.q_star;
    if (gap < 1e-12) throw DegenerateChannel("p* - q* too small to invert");
    FrequencyEstimate est;
    est.est.reserve(k);
    const bool grr = cfg.oracle == OracleKind::kGrr;
    for (uint32_t v = 0; v < k; ++v) {
      const double rate = static_cast<double>(counts[v]) / n;
      double f;
      if (grr) {
        // Fakes are uniform draws: they add (d-1)/(dk) to the support rate.
        f = (rate - pp.q_star / d - (d - 1.0) / (d * k)) * d / gap;
      } else if (cfg.fake_mode == FakeMode::kZero) {
        // Fakes support v at rate q.
        f = d * (rate - pp.q_star) / gap;
      } else {
        // Fakes are sanitized random one-hots: rate q + (p-q)/k each.
        f = d * (rate - pp.q_star) / gap - (d - 1.0) / k;
      }
      est.est.push_back(f);
    }
    out.per_attr[j] = std::move(est);
  }
  return out;
}

GroupedEstimate MdimAggregate(const std::vector<MdimReport>& reports,
                              const MdimConfig& cfg) {
  switch (cfg.solution) {
    case MdimSolution::kSpl:
      return SplAggregate(reports, cfg);
    case MdimSolution::kSmp:
      return SmpAggregate(reports, cfg);
    case MdimSolution::kRsfd:
      return RsfdAggregate(reports, cfg);
  }
  throw InvalidConfig("unknown multidimensional solution");
}

}  // namespace ldp
