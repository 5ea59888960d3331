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

#include "ldp/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ldp/error.h"

namespace ldp {
namespace {

using Json = nlohmann::ordered_json;

// Stream tags separating the independent randomness consumers of a trial.
constexpr uint64_t kDataStream = 0xD47A;
constexpr uint64_t kClientStream = 0xC11E;

double ParseDouble(const std::string& text) {
  size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw InvalidDistributionParam("malformed numeric parameter: " + text);
  }
  if (pos != text.size()) {
    throw InvalidDistributionParam("malformed numeric parameter: " + text);
  }
  return value;
}

uint64_t ParseUnsigned(const std::string& text) {
  size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw InvalidDistributionParam("malformed integer parameter: " + text);
  }
  if (pos != text.size()) {
    throw InvalidDistributionParam("malformed integer parameter: " + text);
  }
  return value;
}

}  // namespace

DistributionSpec ParseDistribution(const std::string& text) {
  DistributionSpec spec;
  if (text == "uniform") {
    spec.kind = DistributionSpec::Kind::kUniform;
    return spec;
  }
  if (text.rfind("zipf:", 0) == 0) {
    spec.kind = DistributionSpec::Kind::kZipf;
    spec.zipf_a = ParseDouble(text.substr(5));
    if (!(spec.zipf_a >= 0.0) || !std::isfinite(spec.zipf_a)) {
      throw InvalidDistributionParam("zipf exponent must be a finite real >= 0");
    }
    return spec;
  }
  if (text.rfind("point:", 0) == 0) {
    spec.kind = DistributionSpec::Kind::kPointMass;
    spec.point_v = static_cast<uint32_t>(ParseUnsigned(text.substr(6)));
    return spec;
  }
  throw InvalidDistributionParam("unknown distribution: " + text);
}

std::string FormatDistribution(const DistributionSpec& spec) {
  switch (spec.kind) {
    case DistributionSpec::Kind::kUniform:
      return "uniform";
    case DistributionSpec::Kind::kZipf: {
      std::ostringstream out;
      out << "zipf:" << spec.zipf_a;
      return out.str();
    }
    case DistributionSpec::Kind::kPointMass: {
      std::ostringstream out;
      out << "point:" << spec.point_v;
      return out.str();
    }
  }
  throw InvalidDistributionParam("unknown distribution kind");
}

std::vector<double> DistributionMass(const DistributionSpec& spec, uint32_t k) {
  if (k < 1) throw InvalidDomain("domain size must be at least 1");
  std::vector<double> mass(k, 0.0);
  switch (spec.kind) {
    case DistributionSpec::Kind::kUniform:
      for (double& m : mass) m = 1.0 / k;
      return mass;
    case DistributionSpec::Kind::kZipf: {
      double total = 0.0;
      for (uint32_t i = 0; i < k; ++i) {
        mass[i] = std::pow(i + 1.0, -spec.zipf_a);
        total += mass[i];
      }
      for (double& m : mass) m /= total;
      return mass;
    }
    case DistributionSpec::Kind::kPointMass:
      if (spec.point_v >= k) {
        throw InvalidDistributionParam("point mass outside the domain");
      }
      mass[spec.point_v] = 1.0;
      return mass;
  }
  throw InvalidDistributionParam("unknown distribution kind");
}

Task ParseTask(const std::string& name) {
  if (name == "single") return Task::kSingle;
  if (name == "long") return Task::kLong;
  if (name == "mdim") return Task::kMdim;
  if (name == "long-mdim") return Task::kLongMdim;
  throw InvalidConfig("unknown task: " + name);
}

OracleKind ParseOracle(const std::string& name) {
  if (name == "grr") return OracleKind::kGrr;
  if (name == "sue") return OracleKind::kSue;
  if (name == "oue") return OracleKind::kOue;
  if (name == "blh") return OracleKind::kBlh;
  if (name == "olh") return OracleKind::kOlh;
  if (name == "ss") return OracleKind::kSs;
  throw InvalidConfig("unknown frequency oracle: " + name);
}

LongProtocolKind ParseLongProtocol(const std::string& name) {
  if (name == "l-grr") return LongProtocolKind::kLgrr;
  if (name == "l-sue") return LongProtocolKind::kLsue;
  if (name == "l-oue") return LongProtocolKind::kLoue;
  if (name == "l-soue") return LongProtocolKind::kLsoue;
  if (name == "l-osue") return LongProtocolKind::kLosue;
  if (name == "dbitflippm") return LongProtocolKind::kDbit;
  throw InvalidConfig("unknown longitudinal protocol: " + name);
}

bool IsLongProtocolName(const std::string& name) {
  return name == "l-grr" || name == "l-sue" || name == "l-oue" ||
         name == "l-soue" || name == "l-osue" || name == "dbitflippm";
}

void ParallelFor(uint64_t n, uint32_t threads,
                 const std::function<void(uint64_t, uint64_t)>& fn) {
  if (threads <= 1 || n < 2) {
    fn(0, n);
    return;
  }
  const uint64_t workers = std::min<uint64_t>(threads, n);
  const uint64_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mu;
  for (uint64_t w = 0; w < workers; ++w) {
    const uint64_t begin = w * chunk;
    const uint64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

Dataset GenDataset(const DistributionSpec& dist, uint64_t n,
                   const std::vector<uint32_t>& ks, uint64_t seed,
                   uint32_t threads) {
  if (n == 0) throw InvalidConfig("need at least one user");
  if (ks.empty()) throw InvalidDomain("need at least one attribute");
  const auto d = static_cast<uint32_t>(ks.size());
  std::vector<std::vector<double>> cdfs;
  cdfs.reserve(d);
  for (uint32_t k : ks) {
    std::vector<double> cdf = DistributionMass(dist, k);
    for (uint32_t i = 1; i < k; ++i) cdf[i] += cdf[i - 1];
    cdf[k - 1] = 1.0;
    cdfs.push_back(std::move(cdf));
  }
  Dataset data;
  data.n = n;
  data.d = d;
  data.values.resize(n * d);
  ParallelFor(n, threads, [&](uint64_t begin, uint64_t end) {
    for (uint64_t u = begin; u < end; ++u) {
      Rng rng(SubstreamSeed(seed, u));
      for (uint32_t j = 0; j < d; ++j) {
        const std::vector<double>& cdf = cdfs[j];
        const double x = rng.NextDouble();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
        const auto idx = static_cast<uint32_t>(
            std::min<std::ptrdiff_t>(it - cdf.begin(), ks[j] - 1));
        data.values[u * d + j] = idx;
      }
    }
  });
  data.freq.resize(d);
  for (uint32_t j = 0; j < d; ++j) {
    std::vector<uint64_t> counts(ks[j], 0);
    for (uint64_t u = 0; u < n; ++u) ++counts[data.values[u * d + j]];
    data.freq[j].reserve(ks[j]);
    for (uint64_t c : counts) {
      data.freq[j].push_back(static_cast<double>(c) / n);
    }
  }
  return data;
}

namespace {

// Resolved experiment: validated selectors plus pre-built parameters.
struct Plan {
  Task task = Task::kSingle;
  uint32_t d = 1;
  std::vector<uint32_t> ks;
  uint32_t collections = 1;
  OracleParams oracle;
  LongParams long_params;
  MdimConfig mdim;
  LongMdimConfig long_mdim;
};

MdimSolution ParseMdimSolution(const std::string& name) {
  if (name == "spl") return MdimSolution::kSpl;
  if (name == "smp") return MdimSolution::kSmp;
  if (name == "rsfd") return MdimSolution::kRsfd;
  throw InvalidConfig("unknown multidimensional solution: " + name);
}

FakeMode ParseFakeMode(const std::string& name) {
  if (name == "zero") return FakeMode::kZero;
  if (name == "rnd") return FakeMode::kRnd;
  throw InvalidConfig("unknown fake mode: " + name);
}

Plan BuildPlan(const ExperimentConfig& cfg) {
  Plan plan;
  plan.task = ParseTask(cfg.task);
  if (cfg.n == 0) throw InvalidConfig("need at least one user");
  if (cfg.trials == 0) throw InvalidConfig("need at least one trial");
  if (cfg.ks.empty()) throw InvalidConfig("a domain size is required");
  plan.ks = cfg.ks;
  plan.d = static_cast<uint32_t>(cfg.ks.size());
  const bool long_task =
      plan.task == Task::kLong || plan.task == Task::kLongMdim;
  if (long_task) {
    if (cfg.collections == 0) {
      throw InvalidConfig("need at least one collection");
    }
    plan.collections = cfg.collections;
  } else if (cfg.collections > 1) {
    throw InvalidConfig("collections apply to longitudinal tasks only");
  }
  switch (plan.task) {
    case Task::kSingle:
      if (plan.d != 1) {
        throw InvalidConfig("single-attribute task takes exactly one k");
      }
      plan.oracle = MakeOracle(ParseOracle(cfg.protocol), cfg.eps, plan.ks[0]);
      break;
    case Task::kLong:
      if (plan.d != 1) {
        throw InvalidConfig("single-attribute task takes exactly one k");
      }
      plan.long_params =
          MakeLongProtocol(ParseLongProtocol(cfg.protocol), cfg.eps_perm,
                           cfg.eps_1, plan.ks[0], cfg.dbit);
      break;
    case Task::kMdim:
      plan.mdim =
          MakeMdimConfig(ParseMdimSolution(cfg.solution),
                         ParseOracle(cfg.protocol), cfg.eps, plan.ks,
                         ParseFakeMode(cfg.fake_mode));
      break;
    case Task::kLongMdim: {
      LongMdimSolution sol;
      if (cfg.solution == "spl") {
        sol = LongMdimSolution::kLspl;
      } else if (cfg.solution == "smp") {
        sol = LongMdimSolution::kLsmp;
      } else {
        throw InvalidConfig("longitudinal tasks offer spl and smp");
      }
      plan.long_mdim =
          MakeLongMdimConfig(sol, ParseLongProtocol(cfg.protocol),
                             cfg.eps_perm, cfg.eps_1, plan.ks, cfg.dbit);
      break;
    }
  }
  return plan;
}

// One trial: fresh dataset, full client loop, per-collection aggregation,
// estimates averaged over collections.
std::vector<std::vector<double>> RunTrial(
    const Plan& plan, const ExperimentConfig& cfg,
    const DistributionSpec& dist, uint64_t trial_seed,
    std::vector<std::vector<double>>* truth) {
  const Dataset data = GenDataset(dist, cfg.n, plan.ks,
                                  SubstreamSeed(trial_seed, kDataStream),
                                  cfg.threads);
  *truth = data.freq;
  const uint64_t client_root = SubstreamSeed(trial_seed, kClientStream);
  const uint64_t n = cfg.n;
  const uint32_t d = plan.d;
  // per_collection[c][attr] = that collection's aggregate.
  std::vector<std::vector<FrequencyEstimate>> per_collection;
  switch (plan.task) {
    case Task::kSingle: {
      std::vector<Report> reports(n);
      ParallelFor(n, cfg.threads, [&](uint64_t begin, uint64_t end) {
        for (uint64_t u = begin; u < end; ++u) {
          Rng rng(SubstreamSeed(client_root, u));
          reports[u] =
              OracleClient(data.values[u], plan.ks[0], plan.oracle, rng);
        }
      });
      per_collection.push_back(
          {OracleAggregate(reports, plan.oracle, plan.ks[0])});
      break;
    }
    case Task::kLong: {
      std::vector<std::vector<Report>> reports(
          plan.collections, std::vector<Report>(n));
      ParallelFor(n, cfg.threads, [&](uint64_t begin, uint64_t end) {
        for (uint64_t u = begin; u < end; ++u) {
          Rng rng(SubstreamSeed(client_root, u));
          const LongMemo memo =
              LongMemoInit(data.values[u], plan.ks[0], plan.long_params, rng);
          for (uint32_t c = 0; c < plan.collections; ++c) {
            reports[c][u] = LongRound2(memo, plan.ks[0], plan.long_params, rng);
          }
        }
      });
      for (uint32_t c = 0; c < plan.collections; ++c) {
        per_collection.push_back(
            {LongParamsAggregate(reports[c], plan.ks[0], plan.long_params)});
      }
      break;
    }
    case Task::kMdim: {
      std::vector<MdimReport> reports(n);
      ParallelFor(n, cfg.threads, [&](uint64_t begin, uint64_t end) {
        std::vector<uint32_t> tuple(d);
        for (uint64_t u = begin; u < end; ++u) {
          for (uint32_t j = 0; j < d; ++j) tuple[j] = data.values[u * d + j];
          Rng rng(SubstreamSeed(client_root, u));
          reports[u] = MdimClient(tuple, plan.mdim, rng);
        }
      });
      per_collection.push_back(MdimAggregate(reports, plan.mdim).per_attr);
      break;
    }
    case Task::kLongMdim: {
      std::vector<std::vector<MdimReport>> reports(
          plan.collections, std::vector<MdimReport>(n));
      ParallelFor(n, cfg.threads, [&](uint64_t begin, uint64_t end) {
        std::vector<uint32_t> tuple(d);
        for (uint64_t u = begin; u < end; ++u) {
          for (uint32_t j = 0; j < d; ++j) tuple[j] = data.values[u * d + j];
          Rng rng(SubstreamSeed(client_root, u));
          const LongMdimUserState state =
              SampleUserState(tuple, plan.long_mdim, rng);
          for (uint32_t c = 0; c < plan.collections; ++c) {
            reports[c][u] = LongMdimClient(state, plan.long_mdim, rng);
          }
        }
      });
      for (uint32_t c = 0; c < plan.collections; ++c) {
        per_collection.push_back(
            LongMdimAggregate(reports[c], plan.long_mdim).per_attr);
      }
      break;
    }
  }
  std::vector<std::vector<double>> averaged(d);
  for (uint32_t j = 0; j < d; ++j) averaged[j].assign(plan.ks[j], 0.0);
  const double weight = 1.0 / per_collection.size();
  for (const std::vector<FrequencyEstimate>& collection : per_collection) {
    for (uint32_t j = 0; j < d; ++j) {
      const FrequencyEstimate est = cfg.postprocess
                                        ? ClipAndRenormalize(collection[j])
                                        : collection[j];
      for (uint32_t v = 0; v < plan.ks[j]; ++v) {
        averaged[j][v] += est.est[v] * weight;
      }
    }
  }
  return averaged;
}

Json ConfigToJson(const ExperimentConfig& cfg) {
  const Task task = ParseTask(cfg.task);
  const bool mdim = task == Task::kMdim || task == Task::kLongMdim;
  const bool long_task = task == Task::kLong || task == Task::kLongMdim;
  Json j;
  j["task"] = cfg.task;
  j["protocol"] = cfg.protocol;
  if (mdim) j["solution"] = cfg.solution;
  if (task == Task::kMdim && cfg.solution == "rsfd" && cfg.protocol != "grr") {
    j["fake_mode"] = cfg.fake_mode;
  }
  if (long_task) {
    j["eps_perm"] = cfg.eps_perm;
    if (cfg.protocol != "dbitflippm") j["eps_1"] = cfg.eps_1;
  } else {
    j["eps"] = cfg.eps;
  }
  j["n"] = cfg.n;
  if (mdim) {
    j["ks"] = cfg.ks;
  } else {
    j["k"] = cfg.ks.empty() ? 0 : cfg.ks[0];
  }
  if (cfg.protocol == "dbitflippm" && cfg.dbit != 0) j["d"] = cfg.dbit;
  if (long_task) j["collections"] = cfg.collections;
  j["dist"] = cfg.dist;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["postprocess"] = cfg.postprocess ? "clip-renorm" : "off";
  return j;
}

}  // namespace

ExperimentResult RunExperiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig norm = cfg;
  if (norm.threads == 0) norm.threads = 1;
  const DistributionSpec dist = ParseDistribution(norm.dist);
  const Plan plan = BuildPlan(norm);
  ExperimentResult result;
  result.config = norm;
  std::vector<std::vector<double>> est_sum;
  std::vector<std::vector<double>> true_sum;
  for (uint32_t t = 0; t < norm.trials; ++t) {
    std::vector<std::vector<double>> truth;
    std::vector<std::vector<double>> est =
        RunTrial(plan, norm, dist, SubstreamSeed(norm.seed, t), &truth);
    if (t == 0) {
      est_sum = est;
      true_sum = truth;
      for (auto& row : est_sum) row.assign(row.size(), 0.0);
      for (auto& row : true_sum) row.assign(row.size(), 0.0);
    }
    for (uint32_t j = 0; j < plan.d; ++j) {
      for (uint32_t v = 0; v < plan.ks[j]; ++v) {
        est_sum[j][v] += est[j][v];
        true_sum[j][v] += truth[j][v];
      }
    }
    result.est_freq_trials.push_back(std::move(est));
  }
  result.est_freq = est_sum;
  result.true_freq = true_sum;
  for (uint32_t j = 0; j < plan.d; ++j) {
    for (uint32_t v = 0; v < plan.ks[j]; ++v) {
      result.est_freq[j][v] /= norm.trials;
      result.true_freq[j][v] /= norm.trials;
    }
  }
  result.mse.resize(plan.d);
  for (uint32_t j = 0; j < plan.d; ++j) {
    double acc = 0.0;
    for (uint32_t v = 0; v < plan.ks[j]; ++v) {
      const double diff = result.est_freq[j][v] - result.true_freq[j][v];
      acc += diff * diff;
    }
    result.mse[j] = acc / plan.ks[j];
  }
  const auto stop = std::chrono::steady_clock::now();
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return result;
}

std::string ResultToJson(const ExperimentResult& result) {
  Json j;
  j["config"] = ConfigToJson(result.config);
  j["true_freq"] = result.true_freq;
  j["est_freq"] = result.est_freq;
  if (result.config.trials > 1) j["est_freq_trials"] = result.est_freq_trials;
  j["mse"] = result.mse;
  j["elapsed_ms"] = result.elapsed_ms;
  return j.dump(2);
}

std::string ResultToCsv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "attr,value,true_freq,est_freq,mse\n";
  for (size_t j = 0; j < result.est_freq.size(); ++j) {
    for (size_t v = 0; v < result.est_freq[j].size(); ++v) {
      out << j << ',' << v << ',' << Json(result.true_freq[j][v]).dump()
          << ',' << Json(result.est_freq[j][v]).dump() << ','
          << Json(result.mse[j]).dump() << '\n';
    }
  }
  return out.str();
}

}  // namespace ldp
