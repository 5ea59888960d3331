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

#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "ldp/error.h"
#include "nlohmann/json.hpp"

namespace ldp {
namespace {

TEST(ParseDistributionTest, AcceptsTheThreeFamilies) {
  EXPECT_EQ(ParseDistribution("uniform").kind,
            DistributionSpec::Kind::kUniform);
  const DistributionSpec zipf = ParseDistribution("zipf:1.5");
  EXPECT_EQ(zipf.kind, DistributionSpec::Kind::kZipf);
  EXPECT_DOUBLE_EQ(zipf.zipf_a, 1.5);
  const DistributionSpec point = ParseDistribution("point:3");
  EXPECT_EQ(point.kind, DistributionSpec::Kind::kPointMass);
  EXPECT_EQ(point.point_v, 3u);
}

TEST(ParseDistributionTest, RejectsGarbage) {
  EXPECT_THROW(ParseDistribution("nope"), InvalidDistributionParam);
  EXPECT_THROW(ParseDistribution("zipf:x"), InvalidDistributionParam);
  EXPECT_THROW(ParseDistribution("zipf:-1"), InvalidDistributionParam);
  EXPECT_THROW(ParseDistribution("point:"), InvalidDistributionParam);
  EXPECT_THROW(ParseDistribution(""), InvalidDistributionParam);
}

TEST(ParseDistributionTest, FormatRoundTrips) {
  for (const std::string text : {"uniform", "zipf:1.5", "point:3"}) {
    EXPECT_EQ(FormatDistribution(ParseDistribution(text)), text);
  }
}

TEST(DistributionMassTest, FamiliesSumToOneAndMatchClosedForms) {
  const std::vector<double> uniform =
      DistributionMass(ParseDistribution("uniform"), 5);
  for (const double m : uniform) EXPECT_DOUBLE_EQ(m, 0.2);

  const std::vector<double> zipf =
      DistributionMass(ParseDistribution("zipf:1.5"), 10);
  double norm = 0.0;
  for (int i = 0; i < 10; ++i) norm += std::pow(i + 1.0, -1.5);
  double total = 0.0;
  for (int i = 0; i < 10; ++i) {
    EXPECT_NEAR(zipf[i], std::pow(i + 1.0, -1.5) / norm, 1e-12);
    total += zipf[i];
  }
  EXPECT_NEAR(total, 1.0, 1e-12);

  const std::vector<double> point =
      DistributionMass(ParseDistribution("point:2"), 4);
  EXPECT_EQ(point, (std::vector<double>{0.0, 0.0, 1.0, 0.0}));
  EXPECT_THROW(DistributionMass(ParseDistribution("point:4"), 4),
               InvalidDistributionParam);
}

TEST(ParseSelectorsTest, NamesMapToKinds) {
  EXPECT_EQ(ParseTask("long-mdim"), Task::kLongMdim);
  EXPECT_THROW(ParseTask("weekly"), InvalidConfig);
  EXPECT_EQ(ParseOracle("olh"), OracleKind::kOlh);
  EXPECT_THROW(ParseOracle("l-sue"), InvalidConfig);
  EXPECT_EQ(ParseLongProtocol("l-osue"), LongProtocolKind::kLosue);
  EXPECT_EQ(ParseLongProtocol("dbitflippm"), LongProtocolKind::kDbit);
  EXPECT_THROW(ParseLongProtocol("grr"), InvalidConfig);
  EXPECT_TRUE(IsLongProtocolName("l-grr"));
  EXPECT_FALSE(IsLongProtocolName("grr"));
}

TEST(GenDatasetTest, UniformFrequenciesWithinBinomialNoise) {
  const Dataset data =
      GenDataset(ParseDistribution("uniform"), 1000000, {5}, 99, 1);
  ASSERT_EQ(data.freq.size(), 1u);
  for (const double f : data.freq[0]) EXPECT_NEAR(f, 0.2, 0.002);
}

TEST(GenDatasetTest, PointMassIsExact) {
  const Dataset data =
      GenDataset(ParseDistribution("point:2"), 1000, {4}, 1, 1);
  for (const uint32_t v : data.values) EXPECT_EQ(v, 2u);
  EXPECT_EQ(data.freq[0][2], 1.0);
}

TEST(GenDatasetTest, ZipfMatchesMass) {
  const DistributionSpec spec = ParseDistribution("zipf:1.5");
  const Dataset data = GenDataset(spec, 1000000, {10}, 7, 1);
  const std::vector<double> mass = DistributionMass(spec, 10);
  for (int v = 0; v < 10; ++v) EXPECT_NEAR(data.freq[0][v], mass[v], 0.005);
}

TEST(GenDatasetTest, DeterministicAndThreadCountInvariant) {
  const DistributionSpec spec = ParseDistribution("zipf:1.1");
  const Dataset a = GenDataset(spec, 20000, {6, 3}, 1234, 1);
  const Dataset b = GenDataset(spec, 20000, {6, 3}, 1234, 3);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.freq, b.freq);
  const Dataset c = GenDataset(spec, 20000, {6, 3}, 1235, 1);
  EXPECT_NE(a.values, c.values);
}

TEST(ParallelForTest, CoversEveryIndexExactlyOnce) {
  for (const uint32_t threads : {1u, 2u, 5u}) {
    std::vector<std::atomic<int>> hits(1000);
    for (auto& h : hits) h = 0;
    ParallelFor(1000, threads, [&](uint64_t begin, uint64_t end) {
      for (uint64_t i = begin; i < end; ++i) hits[i] += 1;
    });
    for (const auto& h : hits) EXPECT_EQ(h, 1);
  }
}

TEST(ParallelForTest, PropagatesWorkerExceptions) {
  EXPECT_THROW(
      ParallelFor(100, 4,
                  [](uint64_t begin, uint64_t) {
                    if (begin > 0) throw InvalidConfig("boom");
                  }),
      InvalidConfig);
}

ExperimentConfig BaseConfig() {
  ExperimentConfig cfg;
  cfg.task = "single";
  cfg.protocol = "grr";
  cfg.eps = 1.0;
  cfg.n = 20000;
  cfg.ks = {5};
  cfg.seed = 7;
  return cfg;
}

TEST(RunExperimentTest, SingleTaskRecoversUniform) {
  ExperimentConfig cfg = BaseConfig();
  cfg.n = 200000;
  const ExperimentResult result = RunExperiment(cfg);
  ASSERT_EQ(result.est_freq.size(), 1u);
  for (const double f : result.est_freq[0]) EXPECT_NEAR(f, 0.2, 0.015);
  for (const double f : result.true_freq[0]) EXPECT_NEAR(f, 0.2, 0.005);
  ASSERT_EQ(result.mse.size(), 1u);
  EXPECT_LT(result.mse[0], 1e-3);
}

TEST(RunExperimentTest, EveryTaskShapeRuns) {
  {
    ExperimentConfig cfg = BaseConfig();
    cfg.task = "long";
    cfg.protocol = "l-osue";
    cfg.eps = 0.0;
    cfg.eps_perm = 2.0;
    cfg.eps_1 = 1.0;
    cfg.collections = 3;
    const ExperimentResult result = RunExperiment(cfg);
    for (const double f : result.est_freq[0]) EXPECT_NEAR(f, 0.2, 0.05);
  }
  {
    ExperimentConfig cfg = BaseConfig();
    cfg.task = "mdim";
    cfg.solution = "smp";
    cfg.ks = {4, 6};
    const ExperimentResult result = RunExperiment(cfg);
    ASSERT_EQ(result.est_freq.size(), 2u);
    ASSERT_EQ(result.est_freq[1].size(), 6u);
  }
  {
    ExperimentConfig cfg = BaseConfig();
    cfg.task = "long-mdim";
    cfg.solution = "spl";
    cfg.protocol = "dbitflippm";
    cfg.eps = 0.0;
    cfg.eps_perm = 4.0;
    cfg.ks = {5, 5};
    cfg.dbit = 2;
    cfg.collections = 2;
    const ExperimentResult result = RunExperiment(cfg);
    ASSERT_EQ(result.est_freq.size(), 2u);
  }
}

TEST(RunExperimentTest, ThreadCountNeverChangesEstimates) {
  for (const char* task : {"single", "long", "mdim", "long-mdim"}) {
    ExperimentConfig cfg = BaseConfig();
    cfg.task = task;
    if (std::string(task) == "long" || std::string(task) == "long-mdim") {
      cfg.protocol = "l-grr";
      cfg.eps = 0.0;
      cfg.eps_perm = 2.0;
      cfg.eps_1 = 1.0;
      cfg.collections = 2;
    }
    if (std::string(task) == "mdim" || std::string(task) == "long-mdim") {
      cfg.ks = {4, 4};
      cfg.solution = "smp";
    }
    cfg.threads = 1;
    const ExperimentResult one = RunExperiment(cfg);
    cfg.threads = 4;
    const ExperimentResult four = RunExperiment(cfg);
    EXPECT_EQ(one.est_freq, four.est_freq) << "task=" << task;
    EXPECT_EQ(one.true_freq, four.true_freq) << "task=" << task;
    EXPECT_EQ(one.mse, four.mse) << "task=" << task;
  }
}

TEST(RunExperimentTest, RepeatRunsAreBitIdentical) {
  ExperimentConfig cfg = BaseConfig();
  cfg.trials = 3;
  const ExperimentResult a = RunExperiment(cfg);
  const ExperimentResult b = RunExperiment(cfg);
  EXPECT_EQ(a.est_freq, b.est_freq);
  EXPECT_EQ(a.est_freq_trials, b.est_freq_trials);
}

TEST(RunExperimentTest, SeedChangesEstimates) {
  ExperimentConfig cfg = BaseConfig();
  const ExperimentResult a = RunExperiment(cfg);
  cfg.seed = 8;
  const ExperimentResult b = RunExperiment(cfg);
  EXPECT_NE(a.est_freq, b.est_freq);
}

TEST(RunExperimentTest, PostprocessClipsAndNormalizes) {
  ExperimentConfig cfg = BaseConfig();
  cfg.dist = "point:0";
  cfg.n = 2000;
  cfg.postprocess = true;
  const ExperimentResult result = RunExperiment(cfg);
  double total = 0.0;
  for (const double f : result.est_freq[0]) {
    EXPECT_GE(f, 0.0);
    total += f;
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(RunExperimentTest, RejectsInvalidCombinations) {
  {
    ExperimentConfig cfg = BaseConfig();
    cfg.task = "weekly";
    EXPECT_THROW(RunExperiment(cfg), InvalidConfig);
  }
  {
    ExperimentConfig cfg = BaseConfig();
    cfg.protocol = "l-grr";  // longitudinal protocol on a one-shot task
    EXPECT_THROW(RunExperiment(cfg), InvalidConfig);
  }
  {
    ExperimentConfig cfg = BaseConfig();
    cfg.collections = 3;  // repeated collections need a longitudinal task
    EXPECT_THROW(RunExperiment(cfg), InvalidConfig);
  }
  {
    ExperimentConfig cfg = BaseConfig();
    cfg.ks = {5, 5};  // several attributes need a multidimensional task
    EXPECT_THROW(RunExperiment(cfg), InvalidConfig);
  }
  {
    ExperimentConfig cfg = BaseConfig();
    cfg.n = 0;
    EXPECT_THROW(RunExperiment(cfg), InvalidConfig);
  }
  {
    ExperimentConfig cfg = BaseConfig();
    cfg.trials = 0;
    EXPECT_THROW(RunExperiment(cfg), InvalidConfig);
  }
  {
    ExperimentConfig cfg = BaseConfig();
    cfg.task = "long-mdim";
    cfg.protocol = "l-grr";
    cfg.eps = 0.0;
    cfg.eps_perm = 2.0;
    cfg.eps_1 = 1.0;
    cfg.ks = {4, 4};
    cfg.solution = "rsfd";  // fake-data has no longitudinal counterpart
    EXPECT_THROW(RunExperiment(cfg), InvalidConfig);
  }
}

TEST(ResultSerializationTest, JsonSchemaAndDeterminism) {
  ExperimentConfig cfg = BaseConfig();
  const ExperimentResult result = RunExperiment(cfg);
  const nlohmann::json parsed = nlohmann::json::parse(ResultToJson(result));
  ASSERT_TRUE(parsed.contains("config"));
  ASSERT_TRUE(parsed.contains("true_freq"));
  ASSERT_TRUE(parsed.contains("est_freq"));
  ASSERT_TRUE(parsed.contains("mse"));
  ASSERT_TRUE(parsed.contains("elapsed_ms"));
  EXPECT_FALSE(parsed.contains("est_freq_trials"));
  EXPECT_EQ(parsed["config"]["task"], "single");
  EXPECT_EQ(parsed["config"]["protocol"], "grr");
  EXPECT_EQ(parsed["config"]["k"], 5);
  EXPECT_EQ(parsed["config"]["n"], 20000);
  EXPECT_EQ(parsed["est_freq"].size(), 1u);
  EXPECT_EQ(parsed["est_freq"][0].size(), 5u);
  // The config echo never leaks the thread count: results are thread-count
  // invariant and their serialized form must be too.
  EXPECT_FALSE(parsed["config"].contains("threads"));

  ExperimentResult copy = result;
  copy.elapsed_ms = 0.0;
  ExperimentResult again = RunExperiment(cfg);
  again.elapsed_ms = 0.0;
  EXPECT_EQ(ResultToJson(copy), ResultToJson(again));
}

TEST(ResultSerializationTest, TrialsFieldAppearsWhenRequested) {
  ExperimentConfig cfg = BaseConfig();
  cfg.trials = 2;
  const ExperimentResult result = RunExperiment(cfg);
  const nlohmann::json parsed = nlohmann::json::parse(ResultToJson(result));
  ASSERT_TRUE(parsed.contains("est_freq_trials"));
  EXPECT_EQ(parsed["est_freq_trials"].size(), 2u);
}

TEST(ResultSerializationTest, CsvHasOneRowPerCell) {
  ExperimentConfig cfg = BaseConfig();
  cfg.task = "mdim";
  cfg.solution = "spl";
  cfg.ks = {3, 4};
  const ExperimentResult result = RunExperiment(cfg);
  const std::string csv = ResultToCsv(result);
  size_t lines = 0;
  for (const char ch : csv) lines += ch == '\n';
  EXPECT_EQ(lines, 1u + 3u + 4u);  // header plus one row per (attr, value)
  EXPECT_EQ(csv.rfind("attr,value,true_freq,est_freq,mse\n", 0), 0u);
}

}  // namespace
}  // namespace ldp
