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

#include "ldp/report.h"

#include <nlohmann/json.hpp>

#include "ldp/error.h"

namespace ldp {
namespace {

using Json = nlohmann::ordered_json;

std::string BitsToString(const std::vector<uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (uint8_t b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<uint8_t> BitsFromString(const std::string& s) {
  std::vector<uint8_t> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw MixedReportTypes("bit string contains non-binary character");
    }
    bits.push_back(c == '1' ? 1 : 0);
  }
  return bits;
}

Json ReportToJson(const Report& report) {
  Json j;
  std::visit(
      [&j](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ValueReport>) {
          j["t"] = "value";
          j["v"] = r.value;
        } else if constexpr (std::is_same_v<T, BitsReport>) {
          j["t"] = "bits";
          j["bits"] = BitsToString(r.bits);
        } else if constexpr (std::is_same_v<T, LhReport>) {
          j["t"] = "lh";
          j["seed"] = r.seed;
          j["b"] = r.bucket;
        } else if constexpr (std::is_same_v<T, SubsetReport>) {
          j["t"] = "subset";
          j["s"] = r.values;
        } else if constexpr (std::is_same_v<T, DBitReport>) {
          j["t"] = "dbit";
          j["idx"] = r.buckets;
          j["bits"] = BitsToString(r.bits);
        }
      },
      report);
  return j;
}

Report ReportFromJson(const Json& j) {
  const std::string type = j.at("t").get<std::string>();
  if (type == "value") {
    return ValueReport{j.at("v").get<uint32_t>()};
  }
  if (type == "bits") {
    return BitsReport{BitsFromString(j.at("bits").get<std::string>())};
  }
  if (type == "lh") {
    return LhReport{j.at("seed").get<uint64_t>(), j.at("b").get<uint32_t>()};
  }
  if (type == "subset") {
    return SubsetReport{j.at("s").get<std::vector<uint32_t>>()};
  }
  if (type == "dbit") {
    return DBitReport{j.at("idx").get<std::vector<uint32_t>>(),
                      BitsFromString(j.at("bits").get<std::string>())};
  }
  throw MixedReportTypes("unknown report type: " + type);
}

Json MdimReportToJson(const MdimReport& report) {
  Json j;
  std::visit(
      [&j](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SplReport>) {
          j["t"] = "spl";
          Json arr = Json::array();
          for (const Report& inner : r.reports) arr.push_back(ReportToJson(inner));
          j["reports"] = std::move(arr);
        } else if constexpr (std::is_same_v<T, SmpReport>) {
          j["t"] = "smp";
          j["attr"] = r.attr;
          Json arr = Json::array();
          arr.push_back(ReportToJson(r.report));
          j["reports"] = std::move(arr);
        } else if constexpr (std::is_same_v<T, RsfdReport>) {
          j["t"] = "rsfd";
          Json arr = Json::array();
          for (const Report& inner : r.reports) arr.push_back(ReportToJson(inner));
          j["reports"] = std::move(arr);
        }
      },
      report);
  return j;
}

MdimReport MdimReportFromJson(const Json& j) {
  const std::string type = j.at("t").get<std::string>();
  const Json& arr = j.at("reports");
  if (type == "spl") {
    SplReport r;
    for (const Json& inner : arr) r.reports.push_back(ReportFromJson(inner));
    return r;
  }
  if (type == "smp") {
    if (arr.size() != 1) {
      throw MixedReportTypes("smp report must carry exactly one inner report");
    }
    return SmpReport{j.at("attr").get<uint32_t>(), ReportFromJson(arr[0])};
  }
  if (type == "rsfd") {
    RsfdReport r;
    for (const Json& inner : arr) r.reports.push_back(ReportFromJson(inner));
    return r;
  }
  throw MixedReportTypes("unknown multi-attribute report type: " + type);
}

}  // namespace

std::string ReportToJsonLine(const Report& report) {
  return ReportToJson(report).dump();
}

Report ReportFromJsonLine(std::string_view line) {
  Json j = Json::parse(line);
  return ReportFromJson(j);
}

std::string MdimReportToJsonLine(const MdimReport& report) {
  return MdimReportToJson(report).dump();
}

MdimReport MdimReportFromJsonLine(std::string_view line) {
  Json j = Json::parse(line);
  return MdimReportFromJson(j);
}

}  // namespace ldp
