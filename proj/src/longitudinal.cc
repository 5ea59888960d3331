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

#include "ldp/longitudinal.h"

#include <cmath>
#include <limits>

#include "ldp/error.h"

namespace ldp {
namespace {

constexpr double kSelfCheckTol = 1e-9;
constexpr double kBisectTol = 1e-12;
constexpr int kBisectMaxIter = 200;

void CheckLongBudget(double eps_perm, double eps_1) {
  if (!(eps_perm > 0.0) || !std::isfinite(eps_perm) || !(eps_1 > 0.0) ||
      !std::isfinite(eps_1)) {
    throw InvalidBudget("budgets must be positive finite reals");
  }
  if (eps_1 >= eps_perm) {
    throw InvalidBudget("single-report budget must stay below eps_perm");
  }
}

// Privacy level of a per-bit channel (p, q): the worst log-ratio over the
// two-bit patterns that distinguish two one-hot inputs.
double UeEpsilon(double p, double q) {
  return std::log(p * (1.0 - q) / (q * (1.0 - p)));
}

struct Round1Probs {
  double p1;
  double q1;
};

Round1Probs UeRound1(LongUeVariant variant, double eps_perm) {
  const bool symmetric_first =
      variant == LongUeVariant::kLsue || variant == LongUeVariant::kLsoue;
  if (symmetric_first) {
    const double s = std::exp(eps_perm / 2.0);
    const double p1 = s / (s + 1.0);
    return {p1, 1.0 - p1};
  }
  return {0.5, 1.0 / (std::exp(eps_perm) + 1.0)};
}

bool OptimizedSecond(LongUeVariant variant) {
  return variant == LongUeVariant::kLoue || variant == LongUeVariant::kLsoue;
}

// Composed per-bit probabilities of the two chained rounds.
void ComposeUe(double p1, double q1, double p2, double q2, double* p_star,
               double* q_star) {
  *p_star = p1 * p2 + (1.0 - p1) * q2;
  *q_star = q1 * p2 + (1.0 - q1) * q2;
}

}  // namespace

LongGrrParams SolveLGrr(double eps_perm, double eps_1, uint32_t k) {
  CheckLongBudget(eps_perm, eps_1);
  if (k < 2) throw InvalidDomain("domain size must be at least 2");
  const GrrParams round1 = MakeGrr(eps_perm, k);
  const double p1 = round1.p;
  const double q1 = round1.q;
  const double a = std::exp(eps_1);
  const double p2 = (a * (p1 + (k - 2.0) * q1) - (k - 1.0) * q1) /
                    ((p1 - q1) * (k - 1.0 + a));
  if (!(p2 > 0.0) || p2 > 1.0 + 1e-15) {
    throw InfeasibleBudget("no valid second-round keep probability");
  }
  const double q2 = (1.0 - p2) / (k - 1.0);
  const double p_star = p1 * p2 + (1.0 - p1) * q2;
  const double q_star = q1 * p2 + p1 * q2 + (k - 2.0) * q1 * q2;
  if (p_star <= q_star) {
    throw InfeasibleBudget("composed channel lost its signal");
  }
  if (std::abs(std::log(p_star / q_star) - eps_1) > kSelfCheckTol) {
    throw DegenerateChannel("solved chain failed its privacy self-check");
  }
  return LongGrrParams{k,  LongBudget{eps_perm, eps_1}, p1, q1,
                       p2, q2,                          p_star, q_star};
}

double MaxAttainableEps1(LongUeVariant variant, double eps_perm) {
  if (!OptimizedSecond(variant)) {
    return std::numeric_limits<double>::infinity();
  }
  // Ceiling sits at q2 = 0, where the composed pair is (p1/2, q1/2).
  const Round1Probs r1 = UeRound1(variant, eps_perm);
  return UeEpsilon(r1.p1 / 2.0, r1.q1 / 2.0);
}

LongUeParams SolveLUe(double eps_perm, double eps_1, LongUeVariant variant) {
  CheckLongBudget(eps_perm, eps_1);
  const Round1Probs r1 = UeRound1(variant, eps_perm);
  const double p1 = r1.p1;
  const double q1 = r1.q1;
  double p2;
  double q2;
  double p_star;
  double q_star;
  if (OptimizedSecond(variant)) {
    if (eps_1 > MaxAttainableEps1(variant, eps_perm)) {
      throw InfeasibleBudget(
          "requested single-report budget exceeds the chain's ceiling");
    }
    // p2 pinned at 1/2; the composed level falls monotonically in q2 from
    // the ceiling at q2 = 0 to 0 at q2 = 1/2.
    p2 = 0.5;
    double lo = 0.0;
    double hi = 0.5;
    for (int i = 0; i < kBisectMaxIter && hi - lo > kBisectTol; ++i) {
      const double mid = 0.5 * (lo + hi);
      ComposeUe(p1, q1, p2, mid, &p_star, &q_star);
      (UeEpsilon(p_star, q_star) > eps_1 ? lo : hi) = mid;
    }
    q2 = 0.5 * (lo + hi);
  } else {
    // q2 = 1 - p2; the composed level rises monotonically in p2 from 0 at
    // p2 = 1/2 to eps_perm at p2 = 1, so any eps_1 below eps_perm has a
    // root.
    double lo = 0.5;
    double hi = 1.0;
    for (int i = 0; i < kBisectMaxIter && hi - lo > kBisectTol; ++i) {
      const double mid = 0.5 * (lo + hi);
      ComposeUe(p1, q1, mid, 1.0 - mid, &p_star, &q_star);
      (UeEpsilon(p_star, q_star) < eps_1 ? lo : hi) = mid;
    }
    p2 = 0.5 * (lo + hi);
    q2 = 1.0 - p2;
  }
  ComposeUe(p1, q1, p2, q2, &p_star, &q_star);
  if (std::abs(UeEpsilon(p_star, q_star) - eps_1) > kSelfCheckTol) {
    throw DegenerateChannel("solved chain failed its privacy self-check");
  }
  return LongUeParams{variant, LongBudget{eps_perm, eps_1}, p1, q1,
                      p2,      q2,                          p_star, q_star};
}

UserMemo MemoizeRound1(uint32_t v, const LongGrrParams& params, Rng& rng) {
  const GrrParams round1{params.k, params.budget.eps_perm, params.p1,
                         params.q1};
  return UserMemo{v, GrrClient(v, round1, rng)};
}

UserMemo MemoizeRound1(uint32_t v, uint32_t k, const LongUeParams& params,
                       Rng& rng) {
  const UeParams round1{UeVariant::kSue, params.budget.eps_perm, params.p1,
                        params.q1};
  return UserMemo{v, UeClient(v, k, round1, rng)};
}

Report LongClient(const UserMemo& memo, const LongGrrParams& params,
                  Rng& rng) {
  const ValueReport* held = std::get_if<ValueReport>(&memo.round1);
  if (held == nullptr || held->value >= params.k) {
    throw ShapeMismatch("memo does not hold a value in this domain");
  }
  const GrrParams round2{params.k, params.budget.eps_1, params.p2, params.q2};
  return GrrClient(held->value, round2, rng);
}

Report LongClient(const UserMemo& memo, uint32_t k, const LongUeParams& params,
                  Rng& rng) {
  const BitsReport* held = std::get_if<BitsReport>(&memo.round1);
  if (held == nullptr || held->bits.size() != k) {
    throw ShapeMismatch("memo does not hold a bit vector of length k");
  }
  BitsReport out;
  out.bits.resize(k);
  for (uint32_t i = 0; i < k; ++i) {
    out.bits[i] =
        rng.Bernoulli(held->bits[i] ? params.p2 : params.q2) ? 1 : 0;
  }
  return out;
}

FrequencyEstimate LongAggregate(const std::vector<Report>& reports,
                                const LongGrrParams& params) {
  // The composed channel is again symmetric over values, so the pure
  // estimator applies with (p_star, q_star).
  const OracleParams composed = GrrParams{params.k, params.budget.eps_1,
                                          params.p_star, params.q_star};
  const std::vector<uint64_t> counts =
      SupportCounts(reports, composed, params.k);
  return EstimatePure(counts, reports.size(), params.p_star, params.q_star);
}

FrequencyEstimate LongAggregate(const std::vector<Report>& reports, uint32_t k,
                                const LongUeParams& params) {
  const OracleParams composed = UeParams{UeVariant::kSue, params.budget.eps_1,
                                         params.p_star, params.q_star};
  const std::vector<uint64_t> counts = SupportCounts(reports, composed, k);
  return EstimatePure(counts, reports.size(), params.p_star, params.q_star);
}

DBitParams MakeDBit(double eps_perm, uint32_t k, uint32_t d) {
  if (!(eps_perm > 0.0) || !std::isfinite(eps_perm)) {
    throw InvalidBudget("privacy budget must be a positive finite real");
  }
  if (k < 2) throw InvalidDomain("domain size must be at least 2");
  if (d < 1 || d > k) {
    throw InvalidSampleSize("bit count must lie in [1, k]");
  }
  const double s = std::exp(eps_perm / 2.0);
  return DBitParams{k, d, eps_perm, s / (s + 1.0)};
}

DBitMemo DBitInit(uint32_t v, const DBitParams& params, Rng& rng) {
  if (v >= params.k) throw OutOfDomain("value outside [0, k)");
  DBitMemo memo;
  memo.buckets = SampleWithoutReplacement(rng, params.d, params.k);
  memo.bits.resize(params.d);
  for (uint32_t j = 0; j < params.d; ++j) {
    const uint8_t true_bit = memo.buckets[j] == v ? 1 : 0;
    memo.bits[j] = rng.Bernoulli(params.p) ? true_bit : 1 - true_bit;
  }
  return memo;
}

Report DBitClient(const DBitMemo& memo) {
  return DBitReport{memo.buckets, memo.bits};
}

DBitEstimate DBitAggregate(const std::vector<Report>& reports,
                           const DBitParams& params) {
  if (reports.empty()) throw EmptyReportSet("no reports to aggregate");
  const uint32_t k = params.k;
  std::vector<uint64_t> samplers(k, 0);  // users whose sample contains v
  std::vector<uint64_t> ones(k, 0);      // of those, memoized bit = 1
  for (const Report& report : reports) {
    const DBitReport* r = std::get_if<DBitReport>(&report);
    if (r == nullptr) throw MixedReportTypes("expected d-bit reports");
    if (r->buckets.size() != r->bits.size() ||
        r->buckets.size() != params.d) {
      throw ShapeMismatch("report does not carry exactly d sampled bits");
    }
    for (uint32_t j = 0; j < params.d; ++j) {
      const uint32_t v = r->buckets[j];
      if (v >= k) throw OutOfDomain("sampled bucket outside k");
      ++samplers[v];
      ones[v] += r->bits[j];
    }
  }
  const double s = std::exp(params.eps_perm / 2.0);
  DBitEstimate out;
  out.freq.est.resize(k, 0.0);
  out.no_samplers.resize(k, 0);
  for (uint32_t v = 0; v < k; ++v) {
    if (samplers[v] == 0) {
      out.no_samplers[v] = 1;
      continue;
    }
    // Mean over samplers of (bit (s+1) - 1)/(s - 1), written with integer
    // counts so the result is independent of report order.
    const double m = static_cast<double>(samplers[v]);
    const double o = static_cast<double>(ones[v]);
    out.freq.est[v] = (o * (s + 1.0) - m) / (m * (s - 1.0));
  }
  return out;
}

LongParams MakeLongProtocol(LongProtocolKind kind, double eps_perm,
                            double eps_1, uint32_t k, uint32_t dbit_d) {
  switch (kind) {
    case LongProtocolKind::kLgrr:
      return SolveLGrr(eps_perm, eps_1, k);
    case LongProtocolKind::kLsue:
      return SolveLUe(eps_perm, eps_1, LongUeVariant::kLsue);
    case LongProtocolKind::kLoue:
      return SolveLUe(eps_perm, eps_1, LongUeVariant::kLoue);
    case LongProtocolKind::kLsoue:
      return SolveLUe(eps_perm, eps_1, LongUeVariant::kLsoue);
    case LongProtocolKind::kLosue:
      return SolveLUe(eps_perm, eps_1, LongUeVariant::kLosue);
    case LongProtocolKind::kDbit:
      return MakeDBit(eps_perm, k, dbit_d);
  }
  throw InvalidConfig("unknown longitudinal protocol");
}

LongMemo LongMemoInit(uint32_t v, uint32_t k, const LongParams& params,
                      Rng& rng) {
  return std::visit(
      [&](const auto& par) -> LongMemo {
        using T = std::decay_t<decltype(par)>;
        if constexpr (std::is_same_v<T, LongGrrParams>) {
          return MemoizeRound1(v, par, rng);
        } else if constexpr (std::is_same_v<T, LongUeParams>) {
          return MemoizeRound1(v, k, par, rng);
        } else {
          return DBitInit(v, par, rng);
        }
      },
      params);
}

Report LongRound2(const LongMemo& memo, uint32_t k, const LongParams& params,
                  Rng& rng) {
  return std::visit(
      [&](const auto& par) -> Report {
        using T = std::decay_t<decltype(par)>;
        if constexpr (std::is_same_v<T, LongGrrParams>) {
          const UserMemo* m = std::get_if<UserMemo>(&memo);
          if (m == nullptr) throw ShapeMismatch("memo kind mismatch");
          return LongClient(*m, par, rng);
        } else if constexpr (std::is_same_v<T, LongUeParams>) {
          const UserMemo* m = std::get_if<UserMemo>(&memo);
          if (m == nullptr) throw ShapeMismatch("memo kind mismatch");
          return LongClient(*m, k, par, rng);
        } else {
          const DBitMemo* m = std::get_if<DBitMemo>(&memo);
          if (m == nullptr) throw ShapeMismatch("memo kind mismatch");
          return DBitClient(*m);
        }
      },
      params);
}

FrequencyEstimate LongParamsAggregate(const std::vector<Report>& reports,
                                      uint32_t k, const LongParams& params) {
  return std::visit(
      [&](const auto& par) -> FrequencyEstimate {
        using T = std::decay_t<decltype(par)>;
        if constexpr (std::is_same_v<T, LongGrrParams>) {
          return LongAggregate(reports, par);
        } else if constexpr (std::is_same_v<T, LongUeParams>) {
          return LongAggregate(reports, k, par);
        } else {
          return DBitAggregate(reports, par).freq;
        }
      },
      params);
}

}  // namespace ldp
