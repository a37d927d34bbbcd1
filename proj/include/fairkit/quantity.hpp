#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fairkit {

// Exact rational number. Always stored in lowest terms with a positive
// denominator; arithmetic never rounds. Division by zero throws.
class Quantity {
 public:
  Quantity() : v_(0) {}
  Quantity(long value) : v_(value) {}  // NOLINT: implicit by design
  Quantity(long numerator, long denominator);

  // Accepts integers ("42", "-7"), decimals ("0.25", "-1.5e-3") and
  // fractions ("3/4", "-22/7"). Decimals map to the exact rational the
  // literal denotes. Throws std::invalid_argument on anything else.
  static Quantity from_string(std::string_view text);
  static Quantity from_int64(std::int64_t value);

  Quantity operator+(const Quantity& rhs) const { return Quantity(mpq_class(v_ + rhs.v_)); }
  Quantity operator-(const Quantity& rhs) const { return Quantity(mpq_class(v_ - rhs.v_)); }
  Quantity operator*(const Quantity& rhs) const { return Quantity(mpq_class(v_ * rhs.v_)); }
  Quantity operator/(const Quantity& rhs) const;
  Quantity operator-() const { return Quantity(mpq_class(-v_)); }

  Quantity& operator+=(const Quantity& rhs) { v_ += rhs.v_; return *this; }
  Quantity& operator-=(const Quantity& rhs) { v_ -= rhs.v_; return *this; }
  Quantity& operator*=(const Quantity& rhs) { v_ *= rhs.v_; return *this; }
  Quantity& operator/=(const Quantity& rhs) { *this = *this / rhs; return *this; }

  Quantity abs() const { return sign() < 0 ? -*this : *this; }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  bool operator==(const Quantity& rhs) const { return v_ == rhs.v_; }
  std::strong_ordering operator<=>(const Quantity& rhs) const {
    int c = cmp(v_, rhs.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  double as_double() const { return v_.get_d(); }

  // "7", "-3" or "p/q" in lowest terms.
  std::string to_string() const;
  // Exact finite decimal ("0.25") when the denominator is 2^a*5^b, else "".
  std::string to_exact_decimal() const;
  // Rounded decimal with at most `significant` significant digits,
  // half-up, trailing zeros trimmed.
  std::string to_decimal_string(int significant = 12) const;

 private:
  explicit Quantity(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Quantity& q);

}  // namespace fairkit
