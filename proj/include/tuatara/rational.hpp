#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace tuatara {

using BigInt = mpz_class;

/// 2^k as an arbitrary-precision integer.
BigInt pow2(std::uint64_t k);

/// Number of bits in |n| (0 for n == 0).
std::size_t bit_length(const BigInt& n);

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);

  /// Accepts "a", "a/b", "-a/b" and finite decimals like "0.125" or "-3.5".
  /// Decimals convert exactly.
  static Rational parse(std::string_view text);

  /// 2^k for any integer k.
  static Rational pow2(std::int64_t k);

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  BigInt floor() const;
  BigInt ceil() const;

  /// "a/b", or just "a" when the denominator is 1.
  std::string to_string() const;

  /// Nearest double; for display and float oracles in tests only.
  double to_double() const { return q_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Multiply by 2^k (k may be negative).
  Rational mul_pow2(std::int64_t k) const;

  const mpq_class& raw() const { return q_; }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);

/// x^k for a nonnegative integer exponent.
Rational pow(const Rational& x, std::uint64_t k);

/// Largest multiple of 2^-bits that is <= q.
Rational floor_to_grid(const Rational& q, std::int64_t bits);
/// Smallest multiple of 2^-bits that is >= q.
Rational ceil_to_grid(const Rational& q, std::int64_t bits);

/// Round a positive rational down/up to a dyadic with about `bits`
/// significant bits. Zero maps to zero.
Rational round_down_relative(const Rational& q, std::int64_t bits);
Rational round_up_relative(const Rational& q, std::int64_t bits);

/// Bits needed for the denominator (rough size measure).
std::size_t denominator_bits(const Rational& q);

}  // namespace tuatara

template <>
struct std::hash<tuatara::Rational> {
  std::size_t operator()(const tuatara::Rational& r) const noexcept;
};
