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

#ifndef FLOORPLAN_PLACEMENT_IO_H_
#define FLOORPLAN_PLACEMENT_IO_H_

#include <string>

#include "floorplan/model.hpp"

namespace floorplan {

// Placement text format, LF endings:
//   placement <instance> region <c> <d>
//   <id> <x> <y> <w> <h> <rotated 0|1>
// Rationals are written p/q when non-integral. Write -> read -> write is
// byte-identical.
std::string WritePlacement(const Placement& placement);

// Throws kFormatError with a line reference on malformed input.
Placement ReadPlacement(const std::string& text,
                        const std::string& source_path = "<string>");

}  // namespace floorplan

#endif  // FLOORPLAN_PLACEMENT_IO_H_
