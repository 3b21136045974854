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

#include "floorplan/rational.hpp"

#include "doctest.h"

namespace floorplan {
namespace {

TEST_CASE("ParseRational accepts integers, fractions and decimals") {
  CHECK(*ParseRational("12") == Rat(12));
  CHECK(*ParseRational("-3") == Rat(-3));
  CHECK(*ParseRational("0") == Rat(0));
  CHECK(*ParseRational("7/2") == Rat(7, 2));
  CHECK(*ParseRational("-7/2") == Rat(-7, 2));
  CHECK(*ParseRational("1.25") == Rat(5, 4));
  CHECK(*ParseRational(".5") == Rat(1, 2));
  CHECK(*ParseRational("-0.75") == Rat(-3, 4));
  CHECK(*ParseRational("100.00") == Rat(100));
}

TEST_CASE("ParseRational rejects malformed text") {
  CHECK_FALSE(ParseRational(""));
  CHECK_FALSE(ParseRational("a"));
  CHECK_FALSE(ParseRational("1/0"));
  CHECK_FALSE(ParseRational("1.2.3"));
  CHECK_FALSE(ParseRational("1/-2"));
  CHECK_FALSE(ParseRational("1/"));
  CHECK_FALSE(ParseRational("/2"));
  CHECK_FALSE(ParseRational("1 2"));
  CHECK_FALSE(ParseRational("2e3"));
}

TEST_CASE("FormatRational canonical form round-trips") {
  CHECK(FormatRational(Rat(3)) == "3");
  CHECK(FormatRational(Rat(-3)) == "-3");
  CHECK(FormatRational(Rat(5, 4)) == "5/4");
  CHECK(FormatRational(Rat(-7, 2)) == "-7/2");
  CHECK(FormatRational(Rat(4, 2)) == "2");
  CHECK(*ParseRational(FormatRational(Rat(22, 7))) == Rat(22, 7));
}

TEST_CASE("FormatDecimal rounds to significant digits") {
  CHECK(FormatDecimal(Rat(0)) == "0");
  CHECK(FormatDecimal(Rat(12)) == "12");
  CHECK(FormatDecimal(Rat(50)) == "50");
  CHECK(FormatDecimal(Rat(362)) == "362");
  CHECK(FormatDecimal(Rat(1, 2)) == "0.5");
  CHECK(FormatDecimal(Rat(-1, 2)) == "-0.5");
  CHECK(FormatDecimal(Rat(1, 3)) == "0.333333");
  CHECK(FormatDecimal(Rat(2, 3)) == "0.666667");
  CHECK(FormatDecimal(Rat(1, 3), 2) == "0.33");
  // Rounding can carry across the leading digit.
  CHECK(FormatDecimal(Rat(9999, 10), 3) == "1000");
  // Trailing zeros after the point are trimmed.
  CHECK(FormatDecimal(Rat(1000001, 1000000), 4) == "1");
}

TEST_CASE("Floor, ceil and integrality honor negative values") {
  CHECK(IsInteger(Rat(4)));
  CHECK_FALSE(IsInteger(Rat(3, 2)));
  CHECK(FloorRat(Rat(3, 2)) == 1);
  CHECK(CeilRat(Rat(3, 2)) == 2);
  CHECK(FloorRat(Rat(-3, 2)) == -2);
  CHECK(CeilRat(Rat(-3, 2)) == -1);
  CHECK(FloorRat(Rat(5)) == 5);
  CHECK(CeilRat(Rat(5)) == 5);
}

TEST_CASE("CeilSqrt brackets from above") {
  CHECK(CeilSqrt(Rat(0)) == 0);
  CHECK(CeilSqrt(Rat(1)) == 1);
  CHECK(CeilSqrt(Rat(2)) == 2);
  CHECK(CeilSqrt(Rat(4)) == 2);
  CHECK(CeilSqrt(Rat(5)) == 3);
  CHECK(CeilSqrt(Rat(362)) == 20);
  CHECK(CeilSqrt(Rat(1500)) == 39);
}

}  // namespace
}  // namespace floorplan
