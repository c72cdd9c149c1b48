// Copyright 2026 The Mechlab Authors.
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

#include "mechlab/rational.h"

#include <charconv>
#include <limits>
#include <ostream>

#include "mechlab/errors.h"

namespace mechlab {
namespace {

using Wide = __int128;

Wide WideAbs(Wide x) { return x < 0 ? -x : x; }

Wide WideGcd(Wide a, Wide b) {
  a = WideAbs(a);
  b = WideAbs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool FitsInt64(Wide x) {
  return x >= std::numeric_limits<std::int64_t>::min() &&
         x <= std::numeric_limits<std::int64_t>::max();
}

bool ParseInt(std::string_view text, std::int64_t& out) {
  if (text.empty()) return false;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  *this = FromWide(num, den);
}

Rational Rational::FromWide(Wide num, Wide den) {
  if (den == 0) throw ArithmeticError("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = WideGcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!FitsInt64(num) || !FitsInt64(den)) {
    throw ArithmeticError("rational overflow");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  if (r.num_ == 0) r.den_ = 1;
  return r;
}

double Rational::ToDouble() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::Parse(std::string_view text) {
  std::int64_t num = 0;
  std::int64_t den = 1;
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!ParseInt(text, num)) {
      throw ParseError("", "malformed rational \"" + std::string(text) + "\"");
    }
  } else {
    if (!ParseInt(text.substr(0, slash), num) ||
        !ParseInt(text.substr(slash + 1), den) ||
        text.substr(slash + 1).starts_with('-')) {
      throw ParseError("", "malformed rational \"" + std::string(text) + "\"");
    }
    if (den == 0) {
      throw ParseError("", "zero denominator in \"" + std::string(text) + "\"");
    }
  }
  return Rational(num, den);
}

std::int64_t Rational::Floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::Ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

Rational Rational::operator-() const { return FromWide(-Wide(num_), den_); }

Rational& Rational::operator+=(const Rational& other) {
  if (den_ == other.den_) {
    *this = FromWide(Wide(num_) + other.num_, den_);
  } else {
    *this = FromWide(Wide(num_) * other.den_ + Wide(other.num_) * den_,
                     Wide(den_) * other.den_);
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  if (den_ == other.den_) {
    *this = FromWide(Wide(num_) - other.num_, den_);
  } else {
    *this = FromWide(Wide(num_) * other.den_ - Wide(other.num_) * den_,
                     Wide(den_) * other.den_);
  }
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  *this = FromWide(Wide(num_) * other.num_, Wide(den_) * other.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.num_ == 0) throw ArithmeticError("division by zero");
  *this = FromWide(Wide(num_) * other.den_, Wide(den_) * other.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = Wide(a.num_) * b.den_;
  Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.ToString();
}

Rational Abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational Min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational Max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational Pow(const Rational& base, int exp) {
  if (exp < 0) throw DomainError("negative exponent");
  Rational result(1);
  for (int i = 0; i < exp; ++i) result *= base;
  return result;
}

ExtendedRatio ExtendedRatio::Of(const Rational& numerator,
                                const Rational& denominator) {
  if (denominator.is_zero()) {
    if (numerator.is_zero()) return {Rational(1), false};
    return Infinite();
  }
  return {numerator / denominator, false};
}

double ExtendedRatio::ToDouble() const {
  return infinite ? std::numeric_limits<double>::infinity() : value.ToDouble();
}

std::string ExtendedRatio::ToString() const {
  return infinite ? "inf" : value.ToString();
}

std::strong_ordering operator<=>(const ExtendedRatio& a,
                                 const ExtendedRatio& b) {
  if (a.infinite || b.infinite) {
    return static_cast<int>(a.infinite) <=> static_cast<int>(b.infinite);
  }
  return a.value <=> b.value;
}

}  // namespace mechlab
