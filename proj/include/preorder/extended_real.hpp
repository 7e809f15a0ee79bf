// Copyright 2026 The preorder Authors
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

#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace preorder {

// Real number extended by symbolic -inf and +inf. Arithmetic never touches the
// payload of an infinite value, so sums cannot overflow into garbage.
class ExtendedReal {
 public:
  enum class Kind : std::int8_t { kNegInf = -1, kFinite = 0, kPosInf = 1 };

  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : value_(v) {}  // NOLINT: implicit by intent

  static constexpr ExtendedReal pos_inf() { return ExtendedReal(Kind::kPosInf); }
  static constexpr ExtendedReal neg_inf() { return ExtendedReal(Kind::kNegInf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::kFinite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::kPosInf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::kNegInf; }
  // Payload; meaningful only when finite.
  constexpr double value() const { return value_; }

  constexpr ExtendedReal operator-() const {
    switch (kind_) {
      case Kind::kNegInf:
        return pos_inf();
      case Kind::kPosInf:
        return neg_inf();
      case Kind::kFinite:
        break;
    }
    return ExtendedReal(-value_);
  }

  friend constexpr std::partial_ordering operator<=>(const ExtendedReal& a,
                                                     const ExtendedReal& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.kind_ != Kind::kFinite) return std::partial_ordering::equivalent;
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return (a <=> b) == std::partial_ordering::equivalent;
  }

  friend constexpr ExtendedReal min(const ExtendedReal& a, const ExtendedReal& b) {
    return b < a ? b : a;
  }
  friend constexpr ExtendedReal max(const ExtendedReal& a, const ExtendedReal& b) {
    return a < b ? b : a;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::kNegInf:
        return "-inf";
      case Kind::kPosInf:
        return "+inf";
      case Kind::kFinite:
        break;
    }
    return std::to_string(value_);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) {
    if (x.is_finite()) return os << x.value_;
    return os << x.to_string();
  }

 private:
  constexpr explicit ExtendedReal(Kind k) : kind_(k) {}

  Kind kind_ = Kind::kFinite;
  double value_ = 0.0;
};

// max(0, x)
constexpr ExtendedReal positive_part(const ExtendedReal& x) {
  return x < ExtendedReal(0.0) ? ExtendedReal(0.0) : x;
}

// Running sum of nonnegative extended reals: a count of +inf terms and the sum
// of the finite ones. Supports removal of a previously added term.
class NonnegativeSum {
 public:
  void add(const ExtendedReal& term) {
    if (term.is_pos_inf()) {
      ++infinite_terms_;
    } else {
      finite_ += term.value();
    }
  }
  void remove(const ExtendedReal& term) {
    if (term.is_pos_inf()) {
      --infinite_terms_;
    } else {
      finite_ -= term.value();
    }
  }
  ExtendedReal total() const {
    return infinite_terms_ > 0 ? ExtendedReal::pos_inf() : ExtendedReal(finite_);
  }
  std::int64_t infinite_terms() const { return infinite_terms_; }
  double finite_part() const { return finite_; }

 private:
  std::int64_t infinite_terms_ = 0;
  double finite_ = 0.0;
};

}  // namespace preorder
