#pragma once

#include <string>
#include <string_view>

namespace wpress {

// Exact rational arithmetic for weight vectors. Weights arrive as decimal or
// p/q strings and are kept exact so that window ceilings never land on a
// floating-point boundary.
class Rational {
 public:
  Rational() = default;
  Rational(long long num, long long den);
  static Rational of(long long integer) { return Rational(integer, 1); }

  // Accepts "3", "-2", "0.5", "1.25", "7/10".
  static Rational parse(std::string_view text);

  long long num() const { return num_; }
  long long den() const { return den_; }
  double to_double() const;
  bool is_positive() const { return num_ > 0; }
  bool is_negative() const { return num_ < 0; }

  Rational& operator+=(const Rational& o);
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // ceil(this * n) for n >= 0, evaluated exactly.
  long long ceil_mul(long long n) const;
  long long floor_value() const;
  long long ceil_value() const;

  std::string str() const;

 private:
  long long num_ = 0;
  long long den_ = 1;
  void normalize();
};

}  // namespace wpress
