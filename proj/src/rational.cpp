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

#include <cctype>

namespace floorplan {

namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rat> ParseRational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  Rat result;
  auto slash = text.find('/');
  auto dot = text.find('.');
  if (slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) return std::nullopt;
    BigInt d{std::string(den)};
    if (d == 0) return std::nullopt;
    result = Rat(BigInt(std::string(num))) / Rat(d);
  } else if (dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (!whole.empty() && !AllDigits(whole)) return std::nullopt;
    if (!frac.empty() && !AllDigits(frac)) return std::nullopt;
    BigInt w = whole.empty() ? BigInt(0) : BigInt(std::string(whole));
    BigInt scale = 1;
    BigInt f = 0;
    if (!frac.empty()) {
      f = BigInt(std::string(frac));
      for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    }
    result = Rat(w * scale + f) / Rat(scale);
  } else {
    if (!AllDigits(text)) return std::nullopt;
    result = Rat(BigInt(std::string(text)));
  }
  if (negative) result = -result;
  return result;
}

std::string FormatRational(const Rat& value) {
  BigInt num = numerator(value);
  BigInt den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool IsInteger(const Rat& value) { return denominator(value) == 1; }

BigInt FloorRat(const Rat& value) {
  BigInt num = numerator(value);
  BigInt den = denominator(value);
  BigInt q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

BigInt CeilRat(const Rat& value) {
  BigInt num = numerator(value);
  BigInt den = denominator(value);
  BigInt q = num / den;
  if (num > 0 && q * den != num) ++q;
  return q;
}

BigInt CeilSqrt(const Rat& value) {
  if (value <= 0) return 0;
  BigInt s = boost::multiprecision::sqrt(CeilRat(value));  // floor sqrt
  while (Rat(s * s) < value) ++s;
  while (s > 0 && Rat((s - 1) * (s - 1)) >= value) --s;
  return s;
}

double ToDouble(const Rat& value) { return value.convert_to<double>(); }

std::string FormatDecimal(const Rat& value, int digits) {
  if (digits < 1) digits = 1;
  if (value == 0) return "0";
  bool negative = value < 0;
  Rat v = negative ? -value : value;

  // Scale v into [10^(digits-1), 10^digits) tracking the decimal exponent,
  // then round half-up to an integer mantissa.
  BigInt lo = 1;
  for (int i = 0; i < digits - 1; ++i) lo *= 10;
  BigInt hi = lo * 10;
  int exp = 0;  // v_original = mantissa * 10^(exp - digits + 1) roughly
  while (v < Rat(lo)) {
    v *= 10;
    --exp;
  }
  while (v >= Rat(hi)) {
    v /= 10;
    ++exp;
  }
  BigInt mantissa = FloorRat(v + Rat(1, 2));
  if (mantissa >= hi) {  // rounding carried over, e.g. 999.96 -> 1000
    mantissa /= 10;
    ++exp;
  }

  std::string m = mantissa.str();
  // Value = m * 10^exp, so the point sits after len(m) + exp digits.
  int point = static_cast<int>(m.size()) + exp;
  std::string out;
  if (point <= 0) {
    out = "0.";
    for (int i = 0; i < -point; ++i) out += '0';
    out += m;
  } else if (static_cast<size_t>(point) >= m.size()) {
    out = m;
    for (size_t i = m.size(); i < static_cast<size_t>(point); ++i) out += '0';
  } else {
    out = m.substr(0, point) + "." + m.substr(point);
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  if (out == "0") return "0";
  return negative ? "-" + out : out;
}

}  // namespace floorplan
