#include "qemac/rational.hpp"

#include <cctype>
#include <limits>

namespace qemac {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

u128 gcd_u128(u128 a, u128 b) {
  while (b) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 checked_mul(i128 a, i128 b) {
  i128 out;
  require(!__builtin_mul_overflow(a, b, &out), errc::overflow, "rational overflow in multiply");
  return out;
}

i128 checked_add(i128 a, i128 b) {
  i128 out;
  require(!__builtin_add_overflow(a, b, &out), errc::overflow, "rational overflow in add");
  return out;
}

}  // namespace

Rat::Rat(long long num, long long den) : num_(num), den_(den) {
  require(den != 0, errc::division_by_zero, "rational with zero denominator");
  normalize();
}

Rat Rat::from_parts(i128 num, i128 den) {
  require(den != 0, errc::division_by_zero, "rational with zero denominator");
  Rat r;
  r.num_ = num;
  r.den_ = den;
  r.normalize();
  return r;
}

void Rat::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  const u128 g = gcd_u128(uabs(num_), uabs(den_));
  num_ /= static_cast<i128>(g);
  den_ /= static_cast<i128>(g);
}

long long Rat::num() const {
  require(num_ >= std::numeric_limits<long long>::min() &&
              num_ <= std::numeric_limits<long long>::max(),
          errc::overflow, "rational numerator exceeds 64 bits");
  return static_cast<long long>(num_);
}

long long Rat::den() const {
  require(den_ <= std::numeric_limits<long long>::max(), errc::overflow,
          "rational denominator exceeds 64 bits");
  return static_cast<long long>(den_);
}

Rat Rat::operator-() const { return from_parts(-num_, den_); }

Rat& Rat::operator+=(const Rat& o) {
  const i128 n = checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_));
  const i128 d = checked_mul(den_, o.den_);
  num_ = n;
  den_ = d;
  normalize();
  return *this;
}

Rat& Rat::operator-=(const Rat& o) { return *this += -o; }

Rat& Rat::operator*=(const Rat& o) {
  num_ = checked_mul(num_, o.num_);
  den_ = checked_mul(den_, o.den_);
  normalize();
  return *this;
}

Rat& Rat::operator/=(const Rat& o) {
  require(o.num_ != 0, errc::division_by_zero, "rational division by zero");
  num_ = checked_mul(num_, o.den_);
  den_ = checked_mul(den_, o.num_);
  normalize();
  return *this;
}

bool operator<(const Rat& a, const Rat& b) {
  return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
}

std::string Rat::str() const {
  auto i128_str = [](i128 v) {
    if (v == 0) return std::string("0");
    const bool neg = v < 0;
    u128 u = uabs(v);
    std::string s;
    while (u) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
      u /= 10;
    }
    return neg ? "-" + s : s;
  };
  if (den_ == 1) return i128_str(num_);
  return i128_str(num_) + "/" + i128_str(den_);
}

Rat Rat::parse(const std::string& s) {
  require(!s.empty(), errc::invalid_argument, "empty rational literal");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    try {
      return Rat(std::stoll(a), std::stoll(b));
    } catch (const std::exception&) {
      fail(errc::invalid_argument, "bad rational literal: " + s);
    }
  }
  const auto dot = s.find('.');
  if (dot == std::string::npos) {
    try {
      return Rat(std::stoll(s), 1);
    } catch (const std::exception&) {
      fail(errc::invalid_argument, "bad rational literal: " + s);
    }
  }
  const std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
  require(!frac.empty(), errc::invalid_argument, "bad rational literal: " + s);
  for (char c : frac)
    require(std::isdigit(static_cast<unsigned char>(c)), errc::invalid_argument,
            "bad rational literal: " + s);
  long long den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) {
    require(den <= 1000000000000000000LL / 10, errc::overflow, "decimal literal too long");
    den *= 10;
  }
  try {
    const bool neg = !whole.empty() && whole[0] == '-';
    const long long w = whole.empty() || whole == "-" ? 0 : std::stoll(whole);
    const long long fpart = std::stoll(frac);
    const long long mag = (neg ? -w : w);
    Rat r = Rat(mag, 1) + Rat(fpart, den);
    return neg ? -r : r;
  } catch (const std::exception&) {
    fail(errc::invalid_argument, "bad rational literal: " + s);
  }
}

}  // namespace qemac
