// Copyright 2026 The Floorplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLOORPLAN_ERRORS_H_
#define FLOORPLAN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace floorplan {

// Failure classes surfaced to callers. The CLI maps these onto exit codes;
// library code throws and never exits.
enum class Errc {
  kInstanceEmpty,
  kFormatError,
  kCountMismatch,
  kNonRectangularBlock,
  kDuplicateId,
  kModeMismatch,
  kBadDimension,
  kConfigError,
  kBackendUnavailable,
  kProtocolError,
  kIncompleteModel,
  kInstanceMismatch,
  kOracleTooLarge,
  kEncodingBug,
};

const char* ErrcName(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(ErrcName(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace floorplan

#endif  // FLOORPLAN_ERRORS_H_
