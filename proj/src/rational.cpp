#include "wpress/rational.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace wpress {

namespace {

long long checked_ll(__int128 v, const char* what) {
  if (v > __int128(9223372036854775807LL) || v < -__int128(9223372036854775807LL) - 1) {
    throw std::overflow_error(std::string("rational overflow in ") + what);
  }
  return static_cast<long long>(v);
}

}  // namespace

Rational::Rational(long long num, long long den) : num_(num), den_(den) {
  if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational& Rational::operator+=(const Rational& o) {
  __int128 n = __int128(num_) * o.den_ + __int128(o.num_) * den_;
  __int128 d = __int128(den_) * o.den_;
  // Reduce before narrowing; the gcd of the 128-bit values fits after division.
  __int128 a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  num_ = checked_ll(n, "addition");
  den_ = checked_ll(d, "addition");
  normalize();
  return *this;
}

long long Rational::ceil_mul(long long n) const {
  if (n < 0) throw std::invalid_argument("ceil_mul expects n >= 0");
  __int128 p = __int128(num_) * n;
  __int128 q = den_;
  __int128 quot = p / q;
  if (p % q != 0 && p > 0) quot += 1;
  return checked_ll(quot, "ceil_mul");
}

long long Rational::floor_value() const {
  long long q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

long long Rational::ceil_value() const {
  long long q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  // Trim surrounding whitespace.
  auto issp = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  size_t b = 0, e = s.size();
  while (b < e && issp(s[b])) ++b;
  while (e > b && issp(s[e - 1])) --e;
  s = s.substr(b, e - b);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  bool neg = false;
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  auto digits = [&](size_t& pos) {
    size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) throw std::invalid_argument("bad rational literal: " + s);
    return s.substr(start, pos - start);
  };

  std::string ip = digits(i);
  long long num = 0, den = 1;
  auto append_digit = [](long long v, char c) {
    __int128 w = __int128(v) * 10 + (c - '0');
    return checked_ll(w, "parse");
  };
  for (char c : ip) num = append_digit(num, c);

  if (i < s.size() && s[i] == '.') {
    ++i;
    std::string fp = digits(i);
    for (char c : fp) {
      num = append_digit(num, c);
      den = checked_ll(__int128(den) * 10, "parse");
    }
  } else if (i < s.size() && s[i] == '/') {
    ++i;
    std::string dp = digits(i);
    den = 0;
    for (char c : dp) den = append_digit(den, c);
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
  }
  if (i != s.size()) throw std::invalid_argument("bad rational literal: " + s);
  return Rational(neg ? -num : num, den);
}

}  // namespace wpress
