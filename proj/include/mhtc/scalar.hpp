#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mhtc/error.hpp"

namespace mhtc {

/// The base field: either the rationals or a prime field F_p.
///
/// Prime moduli are limited to p < 2^31 so that every product of two
/// residues fits in a signed 64-bit integer.
class Field {
 public:
  static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

  Field() = default;

  static Field rationals() { return Field{}; }

  static Field prime(std::uint64_t p) {
    if (p < 2 || p > kMaxModulus) {
      throw InputError("prime field modulus out of range: " + std::to_string(p));
    }
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        throw InputError("prime field modulus is not prime: " + std::to_string(p));
      }
    }
    Field f;
    f.modulus_ = p;
    return f;
  }

  /// Parses "Q" or "F<p>".
  static Field parse(std::string_view text) {
    if (text == "Q") return rationals();
    if (text.size() >= 2 && text.front() == 'F') {
      std::uint64_t p = 0;
      for (char c : text.substr(1)) {
        if (c < '0' || c > '9') throw InputError("bad field spec: " + std::string(text));
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
        if (p > kMaxModulus) throw InputError("bad field spec: " + std::string(text));
      }
      return prime(p);
    }
    throw InputError("bad field spec: " + std::string(text));
  }

  bool is_rational() const { return modulus_ == 0; }
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t characteristic() const { return modulus_; }

  std::string name() const { return is_rational() ? "Q" : "F" + std::to_string(modulus_); }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint64_t modulus_ = 0;
};

/// An exact field element in canonical form.
///
/// Over Q the value is a reduced fraction num/den with den > 0; over F_p it
/// is a residue in [0, p) stored in num with den == 1. Rational arithmetic is
/// carried in 64-bit numerators/denominators with 128-bit intermediates and
/// throws std::overflow_error rather than wrapping.
class Scalar {
 public:
  Scalar() = default;

  Scalar(Field field, std::int64_t value) : field_(field) {
    if (field_.is_rational()) {
      num_ = value;
    } else {
      num_ = reduce_mod(value);
    }
  }

  static Scalar zero(Field f) { return Scalar(f, 0); }
  static Scalar one(Field f) { return Scalar(f, 1); }

  static Scalar fraction(Field f, std::int64_t num, std::int64_t den) {
    if (den == 0) throw InputError("zero denominator");
    if (f.is_rational()) {
      Scalar s;
      s.field_ = f;
      s.assign_rational(static_cast<__int128>(num), static_cast<__int128>(den));
      return s;
    }
    Scalar n(f, num);
    Scalar d(f, den);
    if (d.is_zero()) {
      throw InputError("denominator " + std::to_string(den) + " vanishes in " + f.name());
    }
    return n / d;
  }

  /// Integer or fraction literal: "3", "-2", "1/2".
  static Scalar parse(Field f, std::string_view text) {
    auto slash = text.find('/');
    auto parse_int = [&](std::string_view s) -> std::int64_t {
      if (s.empty()) throw InputError("bad scalar literal: '" + std::string(text) + "'");
      std::size_t pos = 0;
      bool neg = false;
      if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        pos = 1;
      }
      if (pos == s.size()) throw InputError("bad scalar literal: '" + std::string(text) + "'");
      __int128 v = 0;
      for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c < '0' || c > '9') throw InputError("bad scalar literal: '" + std::string(text) + "'");
        v = v * 10 + (c - '0');
        if (v > INT64_MAX) throw InputError("scalar literal too large: '" + std::string(text) + "'");
      }
      return static_cast<std::int64_t>(neg ? -v : v);
    };
    if (slash == std::string_view::npos) return Scalar(f, parse_int(text));
    return fraction(f, parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }

  const Field& field() const { return field_; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  Scalar operator-() const {
    Scalar r = *this;
    if (field_.is_rational()) {
      if (num_ == INT64_MIN) throw std::overflow_error("rational overflow");
      r.num_ = -num_;
    } else if (num_ != 0) {
      r.num_ = static_cast<std::int64_t>(field_.modulus()) - num_;
    }
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    Scalar r;
    r.field_ = a.field_;
    if (a.field_.is_rational()) {
      if (a.den_ == b.den_) {
        r.assign_rational(static_cast<__int128>(a.num_) + b.num_, a.den_);
      } else {
        r.assign_rational(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                          static_cast<__int128>(a.den_) * b.den_);
      }
    } else {
      auto p = static_cast<std::int64_t>(a.field_.modulus());
      std::int64_t s = a.num_ + b.num_;
      r.num_ = s >= p ? s - p : s;
    }
    return r;
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    Scalar r;
    r.field_ = a.field_;
    if (a.field_.is_rational()) {
      r.assign_rational(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    } else {
      r.num_ = (a.num_ * b.num_) % static_cast<std::int64_t>(a.field_.modulus());
    }
    return r;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Scalar r;
    r.field_ = field_;
    if (field_.is_rational()) {
      r.assign_rational(den_, num_);
      return r;
    }
    // Extended Euclid on (num, p).
    auto p = static_cast<std::int64_t>(field_.modulus());
    std::int64_t t = 0, new_t = 1, rr = p, new_r = num_;
    while (new_r != 0) {
      std::int64_t q = rr / new_r;
      t = std::exchange(new_t, t - q * new_t);
      rr = std::exchange(new_r, rr - q * new_r);
    }
    r.num_ = t < 0 ? t + p : t;
    return r;
  }

  Scalar pow(std::uint64_t e) const {
    Scalar base = *this;
    Scalar acc = one(field_);
    while (e > 0) {
      if (e & 1U) acc *= base;
      base *= base;
      e >>= 1U;
    }
    return acc;
  }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  static void check_same(const Scalar& a, const Scalar& b) {
    if (!(a.field_ == b.field_)) {
      throw std::invalid_argument("field mismatch: " + a.field_.name() + " vs " + b.field_.name());
    }
  }

  std::int64_t reduce_mod(std::int64_t v) const {
    auto p = static_cast<std::int64_t>(field_.modulus());
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
  }

  void assign_rational(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) a = std::exchange(b, a % b);
    if (a > 1) {
      num /= a;
      den /= a;
    }
    if (num == 0) den = 1;
    if (num > INT64_MAX || num < -INT64_MAX || den > INT64_MAX) {
      throw std::overflow_error("rational overflow");
    }
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
  }

  Field field_;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Smallest element of exact multiplicative order n.
///
/// Over F_p this needs n | p - 1; over Q only n = 1 and n = 2 exist.
inline Scalar primitive_root_of_unity(std::uint64_t n, Field f) {
  if (n == 0) throw InputError("root of unity of order 0");
  if (f.is_rational()) {
    if (n == 1) return Scalar::one(f);
    if (n == 2) return Scalar(f, -1);
    throw InputError("Q has no primitive root of unity of order " + std::to_string(n));
  }
  const std::uint64_t p = f.modulus();
  if ((p - 1) % n != 0) {
    throw InputError("no primitive " + std::to_string(n) + "-th root of unity in " + f.name());
  }
  std::vector<std::uint64_t> prime_factors;
  std::uint64_t m = n;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      prime_factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) prime_factors.push_back(m);
  for (std::uint64_t x = 1; x < p; ++x) {
    Scalar s(f, static_cast<std::int64_t>(x));
    if (!s.pow(n).is_one()) continue;
    bool exact = true;
    for (auto q : prime_factors) {
      if (s.pow(n / q).is_one()) {
        exact = false;
        break;
      }
    }
    if (exact) return s;
  }
  throw InputError("no primitive root found");  // unreachable for prime p
}

}  // namespace mhtc
