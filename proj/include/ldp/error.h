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

#ifndef LDPFREQ_LDP_ERROR_H_
#define LDPFREQ_LDP_ERROR_H_

#include <stdexcept>
#include <string>

namespace ldp {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A privacy budget is non-positive, non-finite, or ordered incorrectly
// (e.g. a first-report budget at or above the longitudinal bound).
class InvalidBudget : public Error {
 public:
  using Error::Error;
};

// A categorical domain size below 2.
class InvalidDomain : public Error {
 public:
  using Error::Error;
};

// An input value outside [0, k).
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

// Subset selection resolved a subset size >= the domain size.
class DegenerateSubset : public Error {
 public:
  using Error::Error;
};

// Estimation would divide by a vanishing p* - q* gap.
class DegenerateChannel : public Error {
 public:
  using Error::Error;
};

// A report sequence mixes incompatible report kinds.
class MixedReportTypes : public Error {
 public:
  using Error::Error;
};

class EmptyReportSet : public Error {
 public:
  using Error::Error;
};

// A budget pair that no round-2 parameter can realize.
class InfeasibleBudget : public Error {
 public:
  using Error::Error;
};

// Mismatched dimensions between reports, parameters, or matrices.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// Bucket sample size outside [1, k].
class InvalidSampleSize : public Error {
 public:
  using Error::Error;
};

// Channel enumeration was asked for an output space that is too large.
class OutputSpaceTooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidDistributionParam : public Error {
 public:
  using Error::Error;
};

// Harness configuration that fails validation.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

}  // namespace ldp

#endif  // LDPFREQ_LDP_ERROR_H_
