#pragma once

#include <cstdint>
#include <string>

#include "qemac/errors.hpp"

namespace qemac {

/// Exact rational on checked 128-bit integers. Region and capacity logic is
/// all-rational; any overflow throws rather than silently degrading.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long long v) : num_(v), den_(1) {}  // NOLINT: implicit on purpose
  Rat(long long num, long long den);

  static Rat from_parts(__int128 num, __int128 den);

  long long num() const;
  long long den() const;
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  Rat operator-() const;
  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b);
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  /// "num/den", or just "num" for integers.
  std::string str() const;

  /// Accepts "3", "-3/4", and decimal literals like "0.25".
  static Rat parse(const std::string& s);

  static Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
  static Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

 private:
  void normalize();

  __int128 num_;
  __int128 den_;  // > 0
};

}  // namespace qemac
