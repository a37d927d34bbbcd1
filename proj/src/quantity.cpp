#include "fairkit/quantity.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace fairkit {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Strict integer token: optional sign, then digits only.
mpz_class parse_integer_token(std::string_view s, const char* what) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument(std::string("invalid number: ") + what);
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

mpz_class pow10z(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

}  // namespace

Quantity::Quantity(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("Quantity: zero denominator");
  v_ = mpq_class(numerator, denominator);
  v_.canonicalize();
}

Quantity Quantity::from_int64(std::int64_t value) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return Quantity(static_cast<long>(value));
}

Quantity Quantity::operator/(const Quantity& rhs) const {
  if (rhs.is_zero()) throw std::domain_error("Quantity: division by zero");
  return Quantity(mpq_class(v_ / rhs.v_));
}

Quantity Quantity::from_string(std::string_view text) {
  std::string original(text);
  auto fail = [&original]() -> Quantity {
    throw std::invalid_argument("invalid number: " + original);
  };

  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer_token(text.substr(0, slash), original.c_str());
    mpz_class den = parse_integer_token(text.substr(slash + 1), original.c_str());
    if (den == 0) throw std::domain_error("Quantity: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Quantity(std::move(q));
  }

  bool neg = false;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    text.remove_prefix(1);
  }

  long exponent = 0;
  if (auto epos = text.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view etok = text.substr(epos + 1);
    text = text.substr(0, epos);
    bool eneg = false;
    if (!etok.empty() && (etok[0] == '+' || etok[0] == '-')) {
      eneg = etok[0] == '-';
      etok.remove_prefix(1);
    }
    if (!all_digits(etok) || etok.size() > 6) return fail();
    exponent = std::stol(std::string(etok));
    if (eneg) exponent = -exponent;
  }

  std::string_view intpart = text, fracpart;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    intpart = text.substr(0, dot);
    fracpart = text.substr(dot + 1);
  }
  if (intpart.empty() && fracpart.empty()) return fail();
  if (!intpart.empty() && !all_digits(intpart)) return fail();
  if (!fracpart.empty() && !all_digits(fracpart)) return fail();

  std::string digits;
  digits.reserve(intpart.size() + fracpart.size());
  digits.append(intpart);
  digits.append(fracpart);
  mpz_class mantissa(digits, 10);

  long scale = exponent - static_cast<long>(fracpart.size());
  mpz_class num = mantissa, den = 1;
  if (scale > 0)
    num *= pow10z(static_cast<unsigned long>(scale));
  else if (scale < 0)
    den = pow10z(static_cast<unsigned long>(-scale));
  if (neg) num = -num;

  mpq_class q(num, den);
  q.canonicalize();
  return Quantity(std::move(q));
}

std::string Quantity::to_string() const { return v_.get_str(); }

std::string Quantity::to_exact_decimal() const {
  if (is_integer()) return v_.get_num().get_str();
  mpz_class den = v_.get_den(), two = 2, five = 5, reduced;
  unsigned long a2 = mpz_remove(reduced.get_mpz_t(), den.get_mpz_t(), two.get_mpz_t());
  unsigned long a5 = mpz_remove(reduced.get_mpz_t(), reduced.get_mpz_t(), five.get_mpz_t());
  if (reduced != 1) return "";  // infinite expansion

  unsigned long k = std::max(a2, a5);
  mpz_class scaled = ::abs(v_.get_num());
  mpz_ui_pow_ui(two.get_mpz_t(), 2, k - a2);
  mpz_ui_pow_ui(five.get_mpz_t(), 5, k - a5);
  scaled *= two * five;

  std::string s = scaled.get_str();
  if (s.size() <= k) s.insert(0, k + 1 - s.size(), '0');
  s.insert(s.size() - k, ".");
  if (sign() < 0) s.insert(0, "-");
  return s;
}

std::string Quantity::to_decimal_string(int significant) const {
  if (significant < 1) significant = 1;
  if (is_zero()) return "0";

  mpz_class a = ::abs(v_.get_num());
  const mpz_class& b = v_.get_den();

  mpz_class ipart = a / b;
  unsigned long frac_digits;
  if (ipart > 0) {
    size_t int_digits = ipart.get_str().size();
    frac_digits = int_digits >= static_cast<size_t>(significant)
                      ? 0
                      : static_cast<unsigned long>(significant) - int_digits;
  } else {
    // Leading zeros after the point are not significant.
    unsigned long zeros = 0;
    mpz_class r = a * 10;
    while (r < b) {
      r *= 10;
      ++zeros;
    }
    frac_digits = zeros + static_cast<unsigned long>(significant);
  }

  mpz_class scaled = a * pow10z(frac_digits);
  scaled = (2 * scaled + b) / (2 * b);  // half-up

  std::string s = scaled.get_str();
  if (frac_digits > 0) {
    if (s.size() <= frac_digits) s.insert(0, frac_digits + 1 - s.size(), '0');
    s.insert(s.size() - frac_digits, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (sign() < 0 && s != "0") s.insert(0, "-");
  return s;
}

std::ostream& operator<<(std::ostream& os, const Quantity& q) {
  return os << q.to_string();
}

}  // namespace fairkit
