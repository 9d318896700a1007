#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "mechkit/errors.hpp"

namespace mechkit {

// Exact rational number. Always kept in canonical form (reduced, positive
// denominator).
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long long v) : q_(mpz_class(std::to_string(v), 10)) {}  // NOLINT
  Scalar(unsigned long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long long num, long long den) {
    require(den != 0, "rational with zero denominator");
    q_ = mpq_class(mpz_class(std::to_string(num), 10), mpz_class(std::to_string(den), 10));
    q_.canonicalize();
  }
  explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "n", "n/d", and plain decimals such as "-0.125" or "1.5e-3".
  // Decimals are converted exactly.
  static Scalar parse(std::string_view text);

  // Closest simple rational within `tolerance` of `value` (continued
  // fractions). Only used when ingesting floating-point JSON numbers.
  static Scalar from_double(double value, double tolerance = 1e-9);

  const mpq_class& raw() const { return q_; }

  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  double to_double() const { return q_.get_d(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Scalar operator-() const { return Scalar(mpq_class(-q_)); }
  Scalar& operator+=(const Scalar& o) { q_ += o.q_; return *this; }
  Scalar& operator-=(const Scalar& o) { q_ -= o.q_; return *this; }
  Scalar& operator*=(const Scalar& o) { q_ *= o.q_; return *this; }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw InvariantError("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.str();
  }

 private:
  mpq_class q_;
};

inline Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }
inline const Scalar& min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline const Scalar& max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

inline Scalar Scalar::parse(std::string_view text) {
  std::string s(text);
  auto bad = [&]() { return InputError("not a rational number: \"" + s + "\""); };
  if (s.empty()) throw bad();
  const auto slash = s.find('/');
  auto parse_int = [&](const std::string& digits) {
    std::size_t start = (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) ? 1 : 0;
    if (start == digits.size()) throw bad();
    for (std::size_t i = start; i < digits.size(); ++i) {
      if (digits[i] < '0' || digits[i] > '9') throw bad();
    }
    return mpz_class(digits[0] == '+' ? digits.substr(1) : digits, 10);
  };
  if (slash != std::string::npos) {
    mpz_class num = parse_int(s.substr(0, slash));
    mpz_class den = parse_int(s.substr(slash + 1));
    if (den == 0) throw InputError("rational with zero denominator: \"" + s + "\"");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
  }
  // Decimal, optional exponent.
  std::string mantissa = s;
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    const std::string exp_text = s.substr(e + 1);
    mpz_class ez = parse_int(exp_text);
    if (ez > 4096 || ez < -4096) throw bad();
    exponent = ez.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.') {
      if (seen_point) throw bad();
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw bad();
    }
  }
  if (digits.empty()) throw bad();
  mpz_class num(digits, 10);
  if (negative) num = -num;
  const long shift = exponent - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  mpq_class q = shift < 0 ? mpq_class(num, pow10) : mpq_class(num * pow10);
  q.canonicalize();
  return Scalar(q);
}

inline Scalar Scalar::from_double(double value, double tolerance) {
  if (!std::isfinite(value)) throw InputError("non-finite number");
  // Continued-fraction convergents until within tolerance.
  const bool negative = value < 0;
  double x = std::fabs(value);
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    const double approx = mpq_class(h, k).get_d();
    if (std::fabs(approx - x) <= tolerance || frac == 0.0) break;
    const double inv = 1.0 / frac;
    const long a = static_cast<long>(std::floor(inv));
    frac = inv - std::floor(inv);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    h_prev = h; h = h_next;
    k_prev = k; k = k_next;
  }
  mpq_class q(h, k);
  q.canonicalize();
  if (negative) q = -q;
  return Scalar(q);
}

}  // namespace mechkit
