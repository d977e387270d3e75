#include "tuatara/spectral.hpp"

#include "tuatara/errors.hpp"
#include "tuatara/numerics.hpp"

namespace tuatara {

namespace {

constexpr std::int64_t kPowerBits = 128;

Enclosure inv_power(const BigInt& n, const Rational& s) {
  if (s.is_integer()) return Enclosure::exact(Rational(1) / pow(Rational(n), s.num().get_ui()));
  return power_enclosure(Rational(n), -s, kPowerBits);
}

// 1 - 2^(1-s) for s > 1.
Enclosure normalizer(const Rational& s) {
  const Enclosure p = power_enclosure(Rational(2), Rational(1) - s, kPowerBits);
  return Enclosure::between(Rational(1) - *p.hi(), Rational(1) - p.lo());
}

}  // namespace

Enclosure omega_s(const MachineSpec& m, const Rational& s, std::uint64_t budget) {
  if (s.sign() <= 0) throw InvalidArgument("omega_s needs s > 0, got " + s.to_string());
  return weighted_sum(m, Weight::Omega, s, budget);
}

Enclosure zeta_s(const MachineSpec& m, const Rational& s, std::uint64_t budget) {
  if (s < Rational(1)) throw InvalidArgument("zeta_s needs s >= 1, got " + s.to_string());
  return weighted_sum(m, Weight::Zeta, s, budget);
}

Enclosure riemann_zeta(const Rational& s, std::uint64_t budget) {
  if (s <= Rational(1)) throw InvalidArgument("riemann_zeta needs s > 1, got " + s.to_string());
  const std::uint64_t n = std::max<std::uint64_t>(budget, 1);
  SumAccumulator acc;
  for (std::uint64_t k = 1; k <= n; ++k) acc.add(inv_power(BigInt(static_cast<unsigned long>(k)), s));
  // sum_{k > n} k^-s lies between the integrals from n+1 and from n.
  const Rational s1 = s - Rational(1);
  const Enclosure lo_tail = inv_power(BigInt(static_cast<unsigned long>(n + 1)), s1);
  const Enclosure hi_tail = inv_power(BigInt(static_cast<unsigned long>(n)), s1);
  const Rational lo = acc.lo() + lo_tail.lo() / s1;
  const Rational hi = acc.hi() + *hi_tail.hi() / s1;
  return Enclosure::between(lo, hi).rounded(acc.grid_bits());
}

Enclosure kappa(const MachineSpec& m, const Rational& s, std::uint64_t budget) {
  if (s <= Rational(1)) throw InvalidArgument("kappa needs s > 1, got " + s.to_string());
  return normalizer(s) * omega_s(m, s, budget);
}

Enclosure kappa_natural(const MachineSpec& m, const Rational& s, std::uint64_t budget) {
  if (s <= Rational(1)) throw InvalidArgument("kappa_natural needs s > 1, got " + s.to_string());
  return (zeta_s(m, s, budget) / riemann_zeta(s, budget)).rounded(320);
}

Rational dyadic_weight_sum(std::uint64_t levels) {
  if (levels < 1) throw InvalidArgument("dyadic_weight_sum needs L >= 1");
  Rational sum;
  for (std::uint64_t k = 0; k < levels; ++k) {
    // 2^k values of n share floor(log2 n) = k.
    sum += Rational(pow2(k)) * Rational::pow2(-2 * static_cast<std::int64_t>(k));
  }
  return sum;
}

std::vector<std::uint64_t> pnt_check(std::uint64_t upper) {
  if (upper < 6) throw InvalidArgument("pnt_check needs upper >= 6");
  PrimeTable primes;
  std::vector<std::uint64_t> violations;
  for (std::uint64_t i = 6; i <= upper; ++i) {
    const Rational p(static_cast<long>(primes.nth(i)));
    const Rational ii(static_cast<long>(i));
    for (std::int64_t bits = 32;; bits *= 2) {
      const Enclosure ln = ln_enclosure(ii, bits);
      if (*ln.hi() * ii < p) break;
      if (ln.lo() * ii >= p) {
        violations.push_back(i);
        break;
      }
      if (bits > 4096) throw Error("pnt_check: could not separate i ln i from p_i at i = " + std::to_string(i));
    }
  }
  return violations;
}

}  // namespace tuatara
