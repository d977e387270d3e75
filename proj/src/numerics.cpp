#include "tuatara/numerics.hpp"

#include <algorithm>

#include "tuatara/errors.hpp"

namespace tuatara {

namespace {

struct Fraction {
  BigInt num;
  BigInt den;
};

// sum_{n=a}^{b} 1/n as an unreduced fraction (binary splitting).
Fraction harmonic_split(const BigInt& a, const BigInt& b) {
  if (b - a < 16) {
    Fraction f{0, 1};
    for (BigInt n = a; n <= b; ++n) {
      f.num = f.num * n + f.den;
      f.den *= n;
    }
    return f;
  }
  const BigInt mid = (a + b) / 2;
  const Fraction l = harmonic_split(a, mid);
  const Fraction r = harmonic_split(mid + 1, b);
  return {l.num * r.den + r.num * l.den, l.den * r.den};
}

Enclosure scaled(const Enclosure& e, const Rational& k) {
  if (k.sign() >= 0) return Enclosure::between(e.lo() * k, *e.hi() * k);
  return Enclosure::between(*e.hi() * k, e.lo() * k);
}

// 2 atanh(t) = ln((1+t)/(1-t)) for |t| <= 1/5, to about 2^-bits absolutely.
Enclosure two_atanh(const Rational& t, std::int64_t bits) {
  if (t.is_zero()) return Enclosure::exact(Rational(0));
  const std::int64_t grid = bits + 8;
  const Rational t2 = t * t;
  const Rational bound = Rational::pow2(-grid - 2);
  Rational lo, hi;
  Rational power = t;  // t^(2k+1)
  for (std::uint64_t k = 0;; ++k) {
    const Rational term = power / Rational(static_cast<long>(2 * k + 1));
    lo += floor_to_grid(term, grid);
    hi += ceil_to_grid(term, grid);
    power *= t2;
    // Remainder after this term: |t|^(2k+3) / ((2k+3)(1 - t^2)).
    const Rational rem = abs(power) / (Rational(static_cast<long>(2 * k + 3)) * (Rational(1) - t2));
    if (rem < bound) {
      const Rational rem_up = ceil_to_grid(rem, grid);
      return Enclosure::between((lo - rem_up) * 2, (hi + rem_up) * 2);
    }
  }
}

// floor(z^(1/b)) for an integer z >= 0.
BigInt floor_root(const BigInt& z, unsigned long b) {
  BigInt r;
  mpz_root(r.get_mpz_t(), z.get_mpz_t(), b);
  return r;
}

int sign_of_w_exp_w_minus_x(const Rational& w, const Rational& x) {
  for (std::int64_t precision = 64; precision <= (1 << 14); precision *= 2) {
    const Enclosure ew = exp_enclosure(w, precision);
    if (w * ew.lo() > x) return 1;
    if (w * *ew.hi() < x) return -1;
  }
  throw Error("lambert_w: could not certify the sign of w e^w - x at w = " + w.to_string());
}

}  // namespace

Rational harmonic_segment(const BigInt& i, const BigInt& j) {
  if (i < 1) throw InvalidArgument("harmonic_segment needs i >= 1");
  if (j < i) throw InvalidArgument("harmonic_segment needs j >= i");
  const Fraction f = harmonic_split(i, j);
  return Rational(f.num, f.den);
}

BigInt catalan(std::uint64_t k) {
  BigInt c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * k, k);
  return BigInt(c / (k + 1));
}

Enclosure e_bounds(std::uint64_t terms) {
  Rational sum;
  BigInt factorial = 1;
  for (std::uint64_t k = 0; k <= terms; ++k) {
    if (k > 0) factorial *= k;
    sum += Rational(BigInt(1), factorial);
  }
  factorial *= terms + 1;
  return Enclosure::between(sum, sum + Rational(BigInt(2), factorial));
}

Enclosure exp_enclosure(const Rational& w, std::int64_t bits) {
  if (w.is_zero()) return Enclosure::exact(Rational(1));
  if (w.sign() < 0) {
    const Enclosure pos = exp_enclosure(-w, bits + 2);
    return Enclosure::between(round_down_relative(Rational(1) / *pos.hi(), bits + 2),
                              round_up_relative(Rational(1) / pos.lo(), bits + 2));
  }
  std::int64_t halvings = 0;
  Rational t = w;
  const Rational half(BigInt(1), BigInt(2));
  while (t > half) {
    t = t.mul_pow2(-1);
    ++halvings;
  }
  // Each squaring doubles the relative error.
  const std::int64_t precision = bits + halvings + 8;
  const Rational target = Rational::pow2(-precision - 1);
  Rational sum(1), term(1);
  BigInt factorial = 1;
  for (std::uint64_t k = 1;; ++k) {
    term *= t;
    factorial *= k;
    term /= Rational(static_cast<long>(k));
    sum += term;
    // Tail beyond this term, t <= 1/2: at most 2 t^(k+1)/(k+1)!.
    const Rational rem = term * t * 2 / Rational(static_cast<long>(k + 1));
    if (rem < target) {
      Rational lo = round_down_relative(sum, precision);
      Rational hi = round_up_relative(sum + rem, precision);
      for (std::int64_t i = 0; i < halvings; ++i) {
        lo = round_down_relative(lo * lo, precision);
        hi = round_up_relative(hi * hi, precision);
      }
      return Enclosure::between(lo, hi);
    }
  }
}

Enclosure ln_enclosure(const Rational& x, std::int64_t bits) {
  if (x.sign() <= 0) throw InvalidArgument("ln needs x > 0, got " + x.to_string());
  if (x == Rational(1)) return Enclosure::exact(Rational(0));
  auto e = static_cast<std::int64_t>(bit_length(x.num())) - static_cast<std::int64_t>(bit_length(x.den()));
  Rational y = x.mul_pow2(-e);
  const Rational upper(BigInt(4), BigInt(3));
  const Rational lower(BigInt(2), BigInt(3));
  while (y > upper) {
    y = y.mul_pow2(-1);
    ++e;
  }
  while (y < lower) {
    y = y.mul_pow2(1);
    --e;
  }
  const Enclosure ln_y = two_atanh((y - Rational(1)) / (y + Rational(1)), bits + 2);
  if (e == 0) return ln_y;
  const std::int64_t extra = static_cast<std::int64_t>(bit_length(BigInt(std::to_string(e < 0 ? -e : e)))) + 4;
  const Enclosure ln2 = two_atanh(Rational(BigInt(1), BigInt(3)), bits + extra);
  const Enclosure scaled_ln2 = scaled(ln2, Rational(static_cast<long>(e)));
  return Enclosure::between(scaled_ln2.lo() + ln_y.lo(), *scaled_ln2.hi() + *ln_y.hi());
}

Enclosure power_enclosure(const Rational& base, const Rational& exponent, std::int64_t bits) {
  if (base.sign() <= 0) throw InvalidArgument("power_enclosure needs a positive base");
  if (base == Rational(1) || exponent.is_zero()) return Enclosure::exact(Rational(1));
  if (exponent.sign() < 0) {
    const Enclosure pos = power_enclosure(base, -exponent, bits + 2);
    return Enclosure::between(round_down_relative(Rational(1) / *pos.hi(), bits + 2),
                              round_up_relative(Rational(1) / pos.lo(), bits + 2));
  }
  if (exponent.is_integer()) {
    return Enclosure::exact(pow(base, exponent.num().get_ui()));
  }
  const BigInt a = exponent.num();
  const BigInt b = exponent.den();
  if (!b.fits_ulong_p() || !a.fits_ulong_p()) throw InvalidArgument("exponent too large for power_enclosure");
  const unsigned long root = b.get_ui();
  const Rational x = pow(base, a.get_ui());
  // Result magnitude is about 2^m.
  const auto m = (static_cast<std::int64_t>(bit_length(x.num())) - static_cast<std::int64_t>(bit_length(x.den()))) /
                 static_cast<std::int64_t>(root);
  const std::int64_t frac_bits = std::max<std::int64_t>(0, bits - m + 2);
  const Rational z = x.mul_pow2(frac_bits * static_cast<std::int64_t>(root));
  const BigInt lo_int = floor_root(z.floor(), root);
  const BigInt z_up = z.ceil();
  BigInt hi_int = floor_root(z_up, root);
  BigInt check;
  mpz_pow_ui(check.get_mpz_t(), hi_int.get_mpz_t(), root);
  if (check < z_up) ++hi_int;
  return Enclosure::between(Rational(lo_int).mul_pow2(-frac_bits), Rational(hi_int).mul_pow2(-frac_bits));
}

Enclosure lambert_w(const Rational& x, const Rational& tol) {
  if (x.sign() < 0) throw InvalidArgument("lambert_w covers the principal branch on [0, inf) only");
  if (tol.sign() <= 0) throw InvalidArgument("lambert_w needs tol > 0");
  if (x.is_zero()) return Enclosure::exact(Rational(0));
  // W(x) < 1 for x < e, and W(x) <= ln x <= log2 x for x >= e.
  Rational lo(0);
  Rational hi = std::max(Rational(1), Rational(static_cast<long>(bit_length(x.ceil()))));
  while (hi - lo > tol) {
    const Rational mid = (lo + hi).mul_pow2(-1);
    if (sign_of_w_exp_w_minus_x(mid, x) > 0)
      hi = mid;
    else
      lo = mid;
  }
  return Enclosure::between(lo, hi);
}

Enclosure lambert_w(const Enclosure& x, const Rational& tol) {
  if (!x.bounded()) throw InvalidArgument("lambert_w needs a bounded argument enclosure");
  if (x.is_exact()) return lambert_w(x.lo(), tol);
  return Enclosure::between(lambert_w(x.lo(), tol).lo(), *lambert_w(*x.hi(), tol).hi());
}

Enclosure w_ratio(std::uint64_t m, const Rational& tol) {
  if (m == 0) throw InvalidArgument("w_ratio needs m >= 1");
  const Rational mr(static_cast<long>(m));
  const Enclosure w = lambert_w(Rational(pow2(m)), tol * mr / Rational(4));
  std::int64_t bits = 8;
  while (Rational::pow2(-bits) * Rational(8) > tol) ++bits;
  const Enclosure ln2 = ln_enclosure(Rational(2), bits + 4);
  return w / Enclosure::between(ln2.lo() * mr, *ln2.hi() * mr);
}

namespace {

// Integer whose binary numeral is the integer part followed by the first k
// digits of the unending expansion of r >= 0.
BigInt unending_prefix(const Rational& r, std::size_t k) {
  if (r.is_zero()) return 0;
  return BigInt(r.mul_pow2(static_cast<std::int64_t>(k)).ceil() - 1);
}

}  // namespace

DigitResult digits(const Enclosure& e, std::size_t n) {
  if (!e.bounded()) return {BitString(), 0, 0};
  if (e.lo().sign() < 0) throw InvalidArgument("digits needs a nonnegative enclosure");
  const Rational& lo = e.lo();
  const Rational& hi = *e.hi();
  DigitResult result{BitString(), 0, 0};
  if (unending_prefix(lo, 0) != unending_prefix(hi, 0)) return result;
  result.integer_part = unending_prefix(lo, 0);
  for (std::size_t k = 1; k <= n; ++k) {
    const BigInt a = unending_prefix(lo, k);
    if (a != unending_prefix(hi, k)) break;
    result.digits.push_back(mpz_tstbit(a.get_mpz_t(), 0));
  }
  result.determined_count = result.digits.size();
  return result;
}

}  // namespace tuatara
