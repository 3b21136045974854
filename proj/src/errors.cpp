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

#include "floorplan/errors.hpp"

namespace floorplan {

const char* ErrcName(Errc code) {
  switch (code) {
    case Errc::kInstanceEmpty:
      return "InstanceEmpty";
    case Errc::kFormatError:
      return "FormatError";
    case Errc::kCountMismatch:
      return "CountMismatch";
    case Errc::kNonRectangularBlock:
      return "NonRectangularBlock";
    case Errc::kDuplicateId:
      return "DuplicateId";
    case Errc::kModeMismatch:
      return "ModeMismatch";
    case Errc::kBadDimension:
      return "BadDimension";
    case Errc::kConfigError:
      return "ConfigError";
    case Errc::kBackendUnavailable:
      return "BackendUnavailable";
    case Errc::kProtocolError:
      return "ProtocolError";
    case Errc::kIncompleteModel:
      return "IncompleteModel";
    case Errc::kInstanceMismatch:
      return "InstanceMismatch";
    case Errc::kOracleTooLarge:
      return "OracleTooLarge";
    case Errc::kEncodingBug:
      return "EncodingBug";
  }
  return "UnknownError";
}

}  // namespace floorplan
