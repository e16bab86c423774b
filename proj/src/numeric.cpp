#include "erlab/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "erlab/error.hpp"

namespace erlab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptySequence: return "EmptySequence";
    case Errc::EntryBelowThree: return "EntryBelowThree";
    case Errc::SingleColour: return "SingleColour";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::EqualIndices: return "EqualIndices";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::InfeasiblePattern: return "InfeasiblePattern";
    case Errc::InfeasibleInput: return "InfeasibleInput";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::NotBasicOptimal: return "NotBasicOptimal";
    case Errc::EmptyOptSet: return "EmptyOptSet";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::NotKFree: return "NotKFree";
    case Errc::TooLarge: return "TooLarge";
    case Errc::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

BigInt parse_int(std::string_view s) {
  if (!all_digits(s)) {
    throw Error(Errc::InvalidInput, "not an integer: '" + std::string(s) + "'");
  }
  std::string text(s[0] == '+' ? s.substr(1) : s);
  return BigInt(text);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(trim(text.substr(0, slash)));
    BigInt den = parse_int(trim(text.substr(slash + 1)));
    if (den == 0) throw Error(Errc::InvalidInput, "zero denominator");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    bool negative = !ip.empty() && ip[0] == '-';
    if (negative || (!ip.empty() && ip[0] == '+')) ip.remove_prefix(1);
    BigInt whole = ip.empty() ? BigInt(0) : parse_int(ip);
    BigInt frac = fp.empty() ? BigInt(0) : parse_int(fp);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fp.size()));
    Rational r(whole * scale + frac, scale);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_int(text));
}

std::string format_rational(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

long double to_long_double(const Rational& value) {
  return value.convert_to<long double>();
}

std::optional<Rational> rationalize(long double value, std::int64_t max_den,
                                    long double tolerance) {
  // Walk the continued-fraction convergents h/k of value.
  long double x = value;
  BigInt h_prev = 1, h = static_cast<long long>(std::floor(x));
  BigInt k_prev = 0, k = 1;
  long double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    Rational candidate(h, k);
    if (std::fabs(to_long_double(candidate) - value) <= tolerance) return candidate;
    if (frac < 1e-30L) break;
    x = 1.0L / frac;
    long long a = static_cast<long long>(std::floor(x));
    frac = x - std::floor(x);
    BigInt h_next = a * h + h_prev;
    BigInt k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h; h = h_next;
    k_prev = k; k = k_next;
  }
  return std::nullopt;
}

LogForm LogForm::constant(const Rational& c) {
  LogForm f;
  if (c != 0) f.coeffs_[2] = c;
  return f;
}

LogForm LogForm::log2_of(std::uint64_t t) {
  if (t == 0) throw Error(Errc::InvalidInput, "log2 of zero");
  LogForm f;
  for (std::uint64_t p = 2; p * p <= t; ++p) {
    while (t % p == 0) {
      f.coeffs_[p] += 1;
      t /= p;
    }
  }
  if (t > 1) f.coeffs_[t] += 1;
  return f;
}

void LogForm::normalise() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second == 0) it = coeffs_.erase(it);
    else ++it;
  }
}

LogForm& LogForm::operator+=(const LogForm& other) {
  for (const auto& [p, c] : other.coeffs_) coeffs_[p] += c;
  normalise();
  return *this;
}

LogForm& LogForm::operator-=(const LogForm& other) {
  for (const auto& [p, c] : other.coeffs_) coeffs_[p] -= c;
  normalise();
  return *this;
}

LogForm& LogForm::operator*=(const Rational& scale) {
  if (scale == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& entry : coeffs_) entry.second *= scale;
  return *this;
}

bool LogForm::is_rational() const {
  return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 2);
}

Rational LogForm::rational_part() const { return coefficient(2); }

Rational LogForm::coefficient(std::uint64_t prime) const {
  auto it = coeffs_.find(prime);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

long double LogForm::value() const {
  long double total = 0;
  for (const auto& [p, c] : coeffs_) {
    total += to_long_double(c) * std::log2(static_cast<long double>(p));
  }
  return total;
}

HighFloat high_log2(std::uint64_t t) {
  static std::mutex mu;
  static std::unordered_map<std::uint64_t, HighFloat> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(t);
  if (it != cache.end()) return it->second;
  HighFloat v = boost::multiprecision::log(HighFloat(t)) / boost::multiprecision::log(HighFloat(2));
  cache.emplace(t, v);
  return v;
}

HighFloat LogForm::high_value() const {
  HighFloat total = 0;
  for (const auto& [p, c] : coeffs_) {
    HighFloat coeff = HighFloat(boost::multiprecision::numerator(c)) /
                      HighFloat(boost::multiprecision::denominator(c));
    total += coeff * (p == 2 ? HighFloat(1) : high_log2(p));
  }
  return total;
}

int LogForm::sign() const {
  if (coeffs_.empty()) return 0;
  if (is_rational()) return coeffs_.begin()->second > 0 ? 1 : -1;
  HighFloat v = high_value();
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

int compare(const LogForm& a, const LogForm& b) { return (a - b).sign(); }

std::string LogForm::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, c] : coeffs_) {
    Rational magnitude = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (p == 2) {
      out << format_rational(magnitude);
    } else {
      if (magnitude != 1) out << format_rational(magnitude) << "·";
      out << "log2(" << p << ")";
    }
  }
  return out.str();
}

std::string format_decimal(long double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", digits, value);
  std::string s(buf);
  if (s == "-0." + std::string(digits, '0')) s.erase(0, 1);
  return s;
}

}  // namespace erlab
