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

#ifndef LDPFREQ_LDP_REPORT_H_
#define LDPFREQ_LDP_REPORT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ldp {

// Sanitized client outputs. One report kind per mechanism family.

struct ValueReport {
  uint32_t value;
};

struct BitsReport {
  std::vector<uint8_t> bits;  // 0/1 entries, length k
};

struct LhReport {
  uint64_t seed;    // per-report hash seed, released in the clear
  uint32_t bucket;  // in [0, g)
};

struct SubsetReport {
  std::vector<uint32_t> values;  // distinct, sorted ascending
};

struct DBitReport {
  std::vector<uint32_t> buckets;  // distinct, sorted ascending
  std::vector<uint8_t> bits;      // memoized bit per bucket
};

using Report =
    std::variant<ValueReport, BitsReport, LhReport, SubsetReport, DBitReport>;

// Multi-attribute wrappers.

struct SplReport {
  std::vector<Report> reports;  // one per attribute
};

struct SmpReport {
  uint32_t attr;
  Report report;
};

struct RsfdReport {
  std::vector<Report> reports;  // sampled attribute sanitized, others fake
};

using MdimReport = std::variant<SplReport, SmpReport, RsfdReport>;

// Line-oriented JSON wire format, one report per line:
//   {"t":"value","v":3}
//   {"t":"bits","bits":"01001"}
//   {"t":"lh","seed":12345,"b":2}
//   {"t":"subset","s":[1,4]}
//   {"t":"dbit","idx":[0,3],"bits":"10"}
//   {"t":"spl","reports":[...]} / {"t":"smp","attr":1,"reports":[...]} /
//   {"t":"rsfd","reports":[...]}
std::string ReportToJsonLine(const Report& report);
Report ReportFromJsonLine(std::string_view line);

std::string MdimReportToJsonLine(const MdimReport& report);
MdimReport MdimReportFromJsonLine(std::string_view line);

}  // namespace ldp

#endif  // LDPFREQ_LDP_REPORT_H_
