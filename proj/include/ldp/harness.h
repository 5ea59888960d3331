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
// Monte Carlo simulation pipeline: synthesize a dataset, run every user's
// client, aggregate, and report metrics. All randomness is derived from the
// experiment seed through per-user substreams, so results are bit-for-bit
// reproducible at any worker count.

#ifndef LDPFREQ_LDP_HARNESS_H_
#define LDPFREQ_LDP_HARNESS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ldp/long_multidim.h"
#include "ldp/longitudinal.h"
#include "ldp/multidim.h"
#include "ldp/oracles.h"

namespace ldp {

enum class Task { kSingle, kLong, kMdim, kLongMdim };

struct DistributionSpec {
  enum class Kind { kUniform, kZipf, kPointMass };
  Kind kind = Kind::kUniform;
  double zipf_a = 1.0;   // mass of value i proportional to (i+1)^-a
  uint32_t point_v = 0;  // all users hold this value
};

// Accepts "uniform", "zipf:<a>", "point:<v>".
DistributionSpec ParseDistribution(const std::string& text);
std::string FormatDistribution(const DistributionSpec& spec);

// Exact probability vector of the distribution truncated to k values.
std::vector<double> DistributionMass(const DistributionSpec& spec, uint32_t k);

Task ParseTask(const std::string& name);
OracleKind ParseOracle(const std::string& name);
LongProtocolKind ParseLongProtocol(const std::string& name);
bool IsLongProtocolName(const std::string& name);

// Raw harness input, string selectors as the CLI passes them. Validation
// happens inside RunExperiment; invalid combinations raise InvalidConfig
// (or a more specific configuration error).
struct ExperimentConfig {
  std::string task = "single";    // single|long|mdim|long-mdim
  std::string protocol = "grr";   // oracle or longitudinal protocol name
  std::string solution = "spl";   // spl|smp|rsfd (multidimensional tasks)
  std::string fake_mode = "zero";  // zero|rnd (rsfd with unary encoding)
  double eps = 0.0;
  double eps_perm = 0.0;
  double eps_1 = 0.0;
  uint64_t n = 0;
  std::vector<uint32_t> ks;   // one entry per attribute
  uint32_t dbit = 0;          // sampled bits for dbitflippm; 0 = k
  uint32_t collections = 1;   // longitudinal tasks only
  std::string dist = "uniform";
  uint64_t seed = 0;
  uint32_t trials = 1;
  bool postprocess = false;
  uint32_t threads = 1;
};

struct ExperimentResult {
  ExperimentConfig config;
  // Empirical frequencies of the generated data, per attribute, averaged
  // over trials.
  std::vector<std::vector<double>> true_freq;
  // Estimates averaged over collections and trials, per attribute.
  std::vector<std::vector<double>> est_freq;
  // Per-trial estimates, indexed [trial][attribute][value]; serialized only
  // when more than one trial ran.
  std::vector<std::vector<std::vector<double>>> est_freq_trials;
  // Mean over values of (est - true)^2, per attribute.
  std::vector<double> mse;
  double elapsed_ms = 0.0;
};

ExperimentResult RunExperiment(const ExperimentConfig& cfg);

std::string ResultToJson(const ExperimentResult& result);
// One row per (attribute, value): attr,value,true_freq,est_freq,mse.
std::string ResultToCsv(const ExperimentResult& result);

// Synthetic users, one tuple per user, drawn i.i.d. from the distribution
// through per-user substreams of `seed`.
struct Dataset {
  uint64_t n = 0;
  uint32_t d = 0;
  std::vector<uint32_t> values;            // row-major n x d
  std::vector<std::vector<double>> freq;   // empirical, per attribute
};

Dataset GenDataset(const DistributionSpec& dist, uint64_t n,
                   const std::vector<uint32_t>& ks, uint64_t seed,
                   uint32_t threads);

// Runs fn over contiguous chunks of [0, n) on `threads` workers. The chunk
// boundaries never influence results because every loop body draws from
// per-index substreams.
void ParallelFor(uint64_t n, uint32_t threads,
                 const std::function<void(uint64_t, uint64_t)>& fn);

}  // namespace ldp

#endif  // LDPFREQ_LDP_HARNESS_H_
