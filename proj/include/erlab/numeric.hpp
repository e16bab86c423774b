#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace erlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using HighFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<200, boost::multiprecision::digit_base_2>>;

/// Parses "p/q", "p" or a plain decimal literal ("0.25") into an exact rational.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& value);
long double to_long_double(const Rational& value);

/// Best rational approximation with denominator at most max_den (continued
/// fractions); nullopt when no convergent lies within tolerance.
std::optional<Rational> rationalize(long double value, std::int64_t max_den,
                                    long double tolerance);

/// Exact linear form sum_p c_p * log2(p) over primes p with rational
/// coefficients. The coefficient of p = 2 is the rational constant term.
/// Logarithms of distinct primes are linearly independent over Q, so two
/// forms denote the same real number iff their coefficient maps coincide.
class LogForm {
 public:
  LogForm() = default;
  static LogForm constant(const Rational& c);
  /// log2(t) for a positive integer t; log2(1) is the zero form.
  static LogForm log2_of(std::uint64_t t);

  LogForm& operator+=(const LogForm& other);
  LogForm& operator-=(const LogForm& other);
  LogForm& operator*=(const Rational& scale);
  friend LogForm operator+(LogForm a, const LogForm& b) { return a += b; }
  friend LogForm operator-(LogForm a, const LogForm& b) { return a -= b; }
  friend LogForm operator*(LogForm a, const Rational& s) { return a *= s; }
  friend LogForm operator*(const Rational& s, LogForm a) { return a *= s; }
  friend bool operator==(const LogForm& a, const LogForm& b) {
    return a.coeffs_ == b.coeffs_;
  }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const;
  Rational rational_part() const;
  Rational coefficient(std::uint64_t prime) const;
  const std::map<std::uint64_t, Rational>& coefficients() const { return coeffs_; }

  long double value() const;
  HighFloat high_value() const;
  /// Exact sign: -1, 0, +1 (zero iff the form is zero; otherwise decided at
  /// 200 bits, which is far beyond any gap between small-coefficient forms).
  int sign() const;

  /// Symbolic rendering such as "1/4 + 1/2·log2(3)".
  std::string to_string() const;

 private:
  void normalise();
  std::map<std::uint64_t, Rational> coeffs_;
};

/// -1, 0 or +1 comparing a and b exactly.
int compare(const LogForm& a, const LogForm& b);
HighFloat high_log2(std::uint64_t t);
std::string format_decimal(long double value, int digits = 15);

}  // namespace erlab
