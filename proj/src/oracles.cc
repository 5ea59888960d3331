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

#include "ldp/oracles.h"

#include <cmath>
#include <cstdlib>

#include "ldp/error.h"

namespace ldp {
namespace {

void CheckBudget(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidBudget("privacy budget must be a positive finite real");
  }
}

void CheckDomain(uint32_t k) {
  if (k < 2) throw InvalidDomain("domain size must be at least 2");
}

void CheckValue(uint32_t v, uint32_t k) {
  if (v >= k) throw OutOfDomain("value outside [0, k)");
}

// Uniform draw over [0, k) \ {v}.
uint32_t UniformOther(uint32_t v, uint32_t k, Rng& rng) {
  const uint32_t u = rng.UniformInt(k - 1);
  return u + (u >= v ? 1 : 0);
}

}  // namespace

GrrParams MakeGrr(double eps, uint32_t k) {
  CheckBudget(eps);
  CheckDomain(k);
  const double e = std::exp(eps);
  const double p = e / (e + k - 1.0);
  return GrrParams{k, eps, p, (1.0 - p) / (k - 1.0)};
}

UeParams MakeUe(double eps, UeVariant variant) {
  CheckBudget(eps);
  if (variant == UeVariant::kSue) {
    const double half = std::exp(eps / 2.0);
    const double p = half / (half + 1.0);
    return UeParams{variant, eps, p, 1.0 - p};
  }
  return UeParams{variant, eps, 0.5, 1.0 / (std::exp(eps) + 1.0)};
}

LhParams MakeLh(double eps, LhVariant variant) {
  CheckBudget(eps);
  const double e = std::exp(eps);
  uint32_t g = 2;
  if (variant == LhVariant::kOlh) {
    // Optimal range e^eps + 1 at integer granularity, round half up.
    const long long rounded = std::llround(e) + 1;
    g = rounded < 2 ? 2u : static_cast<uint32_t>(rounded);
  }
  const double p = e / (e + g - 1.0);
  return LhParams{variant, eps, g, p, 1.0 / g};
}

SsParams MakeSs(double eps, uint32_t k) {
  CheckBudget(eps);
  CheckDomain(k);
  const double e = std::exp(eps);
  const long long rounded = std::llround(k / (e + 1.0));
  const uint32_t omega = rounded < 1 ? 1u : static_cast<uint32_t>(rounded);
  if (omega >= k) throw DegenerateSubset("subset size must stay below k");
  const double p = omega * e / (omega * e + k - omega);
  const double q_star =
      p * (omega - 1.0) / (k - 1.0) + (1.0 - p) * omega / (k - 1.0);
  return SsParams{k, eps, omega, p, q_star};
}

Report GrrClient(uint32_t v, const GrrParams& params, Rng& rng) {
  CheckValue(v, params.k);
  if (rng.Bernoulli(params.p)) return ValueReport{v};
  return ValueReport{UniformOther(v, params.k, rng)};
}

Report UeClient(uint32_t v, uint32_t k, const UeParams& params, Rng& rng) {
  CheckValue(v, k);
  BitsReport out;
  out.bits.resize(k);
  for (uint32_t i = 0; i < k; ++i) {
    out.bits[i] = rng.Bernoulli(i == v ? params.p : params.q) ? 1 : 0;
  }
  return out;
}

Report LhClient(uint32_t v, const LhParams& params, Rng& rng) {
  const uint64_t seed = rng.NextU64();
  const uint32_t hashed = LhBucket(seed, v, params.g);
  if (rng.Bernoulli(params.p)) return LhReport{seed, hashed};
  return LhReport{seed, UniformOther(hashed, params.g, rng)};
}

Report SsClient(uint32_t v, const SsParams& params, Rng& rng) {
  CheckValue(v, params.k);
  const bool keep = rng.Bernoulli(params.p);
  const uint32_t extra = keep ? params.omega - 1 : params.omega;
  // Sample among the other k-1 values, then shift indices past v.
  std::vector<uint32_t> others =
      SampleWithoutReplacement(rng, extra, params.k - 1);
  SubsetReport out;
  out.values.reserve(params.omega);
  bool placed = !keep;
  for (uint32_t idx : others) {
    const uint32_t u = idx + (idx >= v ? 1 : 0);
    if (!placed && v < u) {
      out.values.push_back(v);
      placed = true;
    }
    out.values.push_back(u);
  }
  if (!placed) out.values.push_back(v);
  return out;
}

OracleParams MakeOracle(OracleKind kind, double eps, uint32_t k) {
  switch (kind) {
    case OracleKind::kGrr:
      return MakeGrr(eps, k);
    case OracleKind::kSue:
      return MakeUe(eps, UeVariant::kSue);
    case OracleKind::kOue:
      return MakeUe(eps, UeVariant::kOue);
    case OracleKind::kBlh:
      return MakeLh(eps, LhVariant::kBlh);
    case OracleKind::kOlh:
      return MakeLh(eps, LhVariant::kOlh);
    case OracleKind::kSs:
      return MakeSs(eps, k);
  }
  throw InvalidConfig("unknown oracle kind");
}

Report OracleClient(uint32_t v, uint32_t k, const OracleParams& params,
                    Rng& rng) {
  return std::visit(
      [&](const auto& par) -> Report {
        using T = std::decay_t<decltype(par)>;
        if constexpr (std::is_same_v<T, GrrParams>) {
          return GrrClient(v, par, rng);
        } else if constexpr (std::is_same_v<T, UeParams>) {
          return UeClient(v, k, par, rng);
        } else if constexpr (std::is_same_v<T, LhParams>) {
          CheckValue(v, k);
          return LhClient(v, par, rng);
        } else {
          return SsClient(v, par, rng);
        }
      },
      params);
}

PureProbs PurePair(const OracleParams& params) {
  return std::visit(
      [](const auto& par) -> PureProbs {
        using T = std::decay_t<decltype(par)>;
        if constexpr (std::is_same_v<T, GrrParams>) {
          return PureProbs{par.p, par.q};
        } else if constexpr (std::is_same_v<T, UeParams>) {
          return PureProbs{par.p, par.q};
        } else if constexpr (std::is_same_v<T, LhParams>) {
          return PureProbs{par.p, par.q_star};
        } else {
          return PureProbs{par.p, par.q_star};
        }
      },
      params);
}

std::vector<uint64_t> SupportCounts(const std::vector<Report>& reports,
                                    const OracleParams& params, uint32_t k) {
  if (reports.empty()) throw EmptyReportSet("no reports to count");
  std::vector<uint64_t> counts(k, 0);
  const bool lh = std::holds_alternative<LhParams>(params);
  const uint32_t g = lh ? std::get<LhParams>(params).g : 0;
  for (const Report& report : reports) {
    std::visit(
        [&](const auto& r) {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, ValueReport>) {
            if (!std::holds_alternative<GrrParams>(params)) {
              throw MixedReportTypes("value report under non-GRR params");
            }
            if (r.value >= k) throw OutOfDomain("reported value outside k");
            ++counts[r.value];
          } else if constexpr (std::is_same_v<T, BitsReport>) {
            if (!std::holds_alternative<UeParams>(params)) {
              throw MixedReportTypes("bit report under non-UE params");
            }
            if (r.bits.size() != k) {
              throw ShapeMismatch("bit report length differs from k");
            }
            for (uint32_t v = 0; v < k; ++v) counts[v] += r.bits[v];
          } else if constexpr (std::is_same_v<T, LhReport>) {
            if (!lh) throw MixedReportTypes("hash report under non-LH params");
            for (uint32_t v = 0; v < k; ++v) {
              if (LhBucket(r.seed, v, g) == r.bucket) ++counts[v];
            }
          } else if constexpr (std::is_same_v<T, SubsetReport>) {
            if (!std::holds_alternative<SsParams>(params)) {
              throw MixedReportTypes("subset report under non-SS params");
            }
            for (uint32_t v : r.values) {
              if (v >= k) throw OutOfDomain("subset member outside k");
              ++counts[v];
            }
          } else {
            throw MixedReportTypes("report kind has no pure-oracle support");
          }
        },
        report);
  }
  return counts;
}

FrequencyEstimate EstimatePure(const std::vector<uint64_t>& counts, uint64_t n,
                               double p_star, double q_star) {
  if (n == 0) throw EmptyReportSet("estimator requires n >= 1");
  const double gap = p_star - q_star;
  if (gap < 1e-12) throw DegenerateChannel("p* - q* too small to invert");
  FrequencyEstimate out;
  out.est.reserve(counts.size());
  for (uint64_t c : counts) {
    out.est.push_back((static_cast<double>(c) / n - q_star) / gap);
  }
  return out;
}

FrequencyEstimate OracleAggregate(const std::vector<Report>& reports,
                                  const OracleParams& params, uint32_t k) {
  const std::vector<uint64_t> counts = SupportCounts(reports, params, k);
  const PureProbs pp = PurePair(params);
  return EstimatePure(counts, reports.size(), pp.p_star, pp.q_star);
}

FrequencyEstimate ClipAndRenormalize(const FrequencyEstimate& raw) {
  FrequencyEstimate out;
  out.est.reserve(raw.est.size());
  double total = 0.0;
  for (double x : raw.est) {
    const double clipped = x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
    out.est.push_back(clipped);
    total += clipped;
  }
  if (total <= 0.0) {
    // All mass clipped away; fall back to uniform.
    for (double& x : out.est) x = 1.0 / out.est.size();
    return out;
  }
  for (double& x : out.est) x /= total;
  return out;
}

}  // namespace ldp
