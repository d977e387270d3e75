#include "tuatara/rational.hpp"

#include <ostream>

#include "tuatara/errors.hpp"

namespace tuatara {

BigInt pow2(std::uint64_t k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

std::size_t bit_length(const BigInt& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (!all_digits(s)) throw InvalidArgument("not a rational literal: '" + std::string(whole) + "'");
  return BigInt(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational r;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(body.substr(0, slash), text);
    const BigInt den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    r = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
      throw InvalidArgument("not a rational literal: '" + std::string(text) + "'");
    BigInt whole = int_part.empty() ? BigInt(0) : parse_integer(int_part, text);
    BigInt frac = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    r = Rational(BigInt(whole * scale + frac), scale);
  } else {
    r = Rational(parse_integer(body, text));
  }
  return negative ? -r : r;
}

Rational Rational::pow2(std::int64_t k) {
  if (k >= 0) return Rational(tuatara::pow2(static_cast<std::uint64_t>(k)));
  return Rational(BigInt(1), tuatara::pow2(static_cast<std::uint64_t>(-k)));
}

BigInt Rational::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

BigInt Rational::ceil() const {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

std::string Rational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InvalidArgument("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::mul_pow2(std::int64_t k) const {
  mpq_class r;
  if (k >= 0)
    mpq_mul_2exp(r.get_mpq_t(), q_.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
  else
    mpq_div_2exp(r.get_mpq_t(), q_.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
  return Rational(std::move(r));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& x, std::uint64_t k) {
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), x.raw().get_num_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), x.raw().get_den_mpz_t(), k);
  return Rational(n, d);
}

Rational floor_to_grid(const Rational& q, std::int64_t bits) {
  return Rational(q.mul_pow2(bits).floor()).mul_pow2(-bits);
}

Rational ceil_to_grid(const Rational& q, std::int64_t bits) {
  return Rational(q.mul_pow2(bits).ceil()).mul_pow2(-bits);
}

namespace {

// Shift that leaves roughly `bits` bits in the integer part of |q| * 2^shift.
std::int64_t relative_shift(const Rational& q, std::int64_t bits) {
  const auto nb = static_cast<std::int64_t>(bit_length(q.num()));
  const auto db = static_cast<std::int64_t>(bit_length(q.den()));
  return bits - (nb - db) + 1;
}

}  // namespace

Rational round_down_relative(const Rational& q, std::int64_t bits) {
  if (q.is_zero()) return q;
  return floor_to_grid(q, relative_shift(q, bits));
}

Rational round_up_relative(const Rational& q, std::int64_t bits) {
  if (q.is_zero()) return q;
  return ceil_to_grid(q, relative_shift(q, bits));
}

std::size_t denominator_bits(const Rational& q) { return bit_length(q.den()); }

}  // namespace tuatara

std::size_t std::hash<tuatara::Rational>::operator()(const tuatara::Rational& r) const noexcept {
  const std::size_t h1 = std::hash<std::string>{}(r.num().get_str(16));
  const std::size_t h2 = std::hash<std::string>{}(r.den().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}
