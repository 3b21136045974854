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

#ifndef FLOORPLAN_RATIONAL_H_
#define FLOORPLAN_RATIONAL_H_

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace floorplan {

// All model-side geometry uses exact rational arithmetic; floating point
// appears only at rendering edges (SVG, tables).
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Accepts "12", "-3", "7/2", "-7/2", "1.25", ".5". Anything else (including
// a zero denominator) yields nullopt.
std::optional<Rat> ParseRational(std::string_view text);

// Canonical text form: "p" when integral, "p/q" otherwise (q > 0, reduced).
// Round-trips through ParseRational.
std::string FormatRational(const Rat& value);

// Plain decimal rendering with up to `digits` significant digits, half-up
// rounding, no exponent notation. Exact when the value terminates within the
// budget; trailing fractional zeros are trimmed.
std::string FormatDecimal(const Rat& value, int digits = 6);

bool IsInteger(const Rat& value);

BigInt FloorRat(const Rat& value);
BigInt CeilRat(const Rat& value);

// Smallest non-negative integer s with s*s >= value. Requires value >= 0.
BigInt CeilSqrt(const Rat& value);

double ToDouble(const Rat& value);

}  // namespace floorplan

#endif  // FLOORPLAN_RATIONAL_H_
