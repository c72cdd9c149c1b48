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

#ifndef MECHLAB_RATIONAL_H_
#define MECHLAB_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace mechlab {

// Exact signed rational with 64-bit numerator and denominator. Always stored
// in lowest terms with a positive denominator. Intermediate products use
// 128-bit integers; a result that does not fit 64 bits throws
// ArithmeticError instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  double ToDouble() const;
  // "n" for integers, "n/d" otherwise.
  std::string ToString() const;
  // Accepts "n", "-n", "n/d". Throws ParseError on malformed text or a zero
  // denominator.
  static Rational Parse(std::string_view text);

  std::int64_t Floor() const;
  std::int64_t Ceil() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  static Rational FromWide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational Abs(const Rational& r);
Rational Min(const Rational& a, const Rational& b);
Rational Max(const Rational& a, const Rational& b);
// base^exp for exp >= 0.
Rational Pow(const Rational& base, int exp);

// Monetary amounts: values, prices, payments, welfare. Non-negativity is
// enforced where money enters the system (valuations, price specs); utilities
// and differences reuse the same signed type.
using Money = Rational;

// A ratio that may be +infinity (e.g. OPT / 0).
struct ExtendedRatio {
  Rational value;
  bool infinite = false;

  static ExtendedRatio Infinite() { return {Rational(0), true}; }
  // numerator / denominator, infinite when denominator is zero and numerator
  // positive, 1 when both are zero.
  static ExtendedRatio Of(const Rational& numerator,
                          const Rational& denominator);

  double ToDouble() const;
  std::string ToString() const;

  friend bool operator==(const ExtendedRatio& a, const ExtendedRatio& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend std::strong_ordering operator<=>(const ExtendedRatio& a,
                                          const ExtendedRatio& b);
};

}  // namespace mechlab

#endif  // MECHLAB_RATIONAL_H_
