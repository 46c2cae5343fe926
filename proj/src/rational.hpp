#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "error.hpp"

namespace uorb {

using int128 = __int128;

inline int128 abs128(int128 x) { return x < 0 ? -x : x; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string to_string_128(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

// Exact rational with 128-bit numerator/denominator.  The magnitudes in this
// project (structure constants, Lagrange interpolation on degree <= ~12 data)
// stay far below the overflow guard; the guard turns any surprise into a hard
// error instead of silent wraparound.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(int128 n, int128 d) : num_(n), den_(d) { normalize(); }

  int128 num() const { return num_; }
  int128 den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  long long as_int64() const {
    if (den_ != 1) fail_internal("rational is not an integer: " + str());
    if (num_ > INT64_MAX || num_ < INT64_MIN) fail_internal("rational exceeds int64: " + str());
    return static_cast<long long>(num_);
  }

  Rational operator+(const Rational& o) const {
    return Rational(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                    checked_mul(den_, o.den_));
  }
  Rational operator-(const Rational& o) const {
    return Rational(checked_add(checked_mul(num_, o.den_), -checked_mul(o.num_, den_)),
                    checked_mul(den_, o.den_));
  }
  Rational operator*(const Rational& o) const {
    return Rational(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) fail_internal("rational division by zero");
    return Rational(checked_mul(num_, o.den_), checked_mul(den_, o.num_));
  }
  Rational operator-() const { return Rational(-num_, den_); }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }

  std::string str() const {
    if (den_ == 1) return to_string_128(num_);
    return to_string_128(num_) + "/" + to_string_128(den_);
  }

private:
  static int128 checked_mul(int128 a, int128 b) {
    // Keep magnitudes below 2^96 so products of two normalized values fit.
    static const int128 kGuard = int128(1) << 96;
    if (abs128(a) >= kGuard || abs128(b) >= kGuard) fail_internal("rational overflow guard (mul)");
    return a * b;
  }
  static int128 checked_add(int128 a, int128 b) { return a + b; }

  void normalize() {
    if (den_ == 0) fail_internal("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    int128 g = gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  int128 num_;
  int128 den_;
};

}  // namespace uorb
