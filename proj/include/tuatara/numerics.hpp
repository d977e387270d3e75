#pragma once

#include <cstdint>

#include "tuatara/bitstring.hpp"
#include "tuatara/enclosure.hpp"
#include "tuatara/rational.hpp"

namespace tuatara {

/// 1/i + 1/(i+1) + ... + 1/j, exactly. Requires 1 <= i <= j.
Rational harmonic_segment(const BigInt& i, const BigInt& j);

/// k-th Catalan number binomial(2k, k) / (k + 1).
BigInt catalan(std::uint64_t k);

/// Bounds on Euler's number from the first K+1 terms of sum 1/k!, with the
/// remainder bounded by 2/(K+1)!.
Enclosure e_bounds(std::uint64_t terms);

/// Enclosure of exp(w) with roughly `bits` bits of relative accuracy.
/// Truncated Taylor series with explicit remainder after halving the
/// argument, then repeated squaring with outward rounding.
Enclosure exp_enclosure(const Rational& w, std::int64_t bits);

/// Enclosure of ln(x), x > 0, accurate to about 2^-bits absolutely.
/// Uses ln(x) = e ln 2 + 2 atanh((y-1)/(y+1)) with y in [2/3, 4/3].
Enclosure ln_enclosure(const Rational& x, std::int64_t bits);

/// Enclosure of base^exponent for base > 0 and rational exponent, with about
/// `bits` bits of relative accuracy. Exact when the result is rational in the
/// obvious way (integer exponent).
Enclosure power_enclosure(const Rational& base, const Rational& exponent, std::int64_t bits);

/// Principal-branch Lambert W on [0, inf): an enclosure of width <= tol.
/// Bisection on w e^w - x; signs are certified with exp_enclosure.
Enclosure lambert_w(const Rational& x, const Rational& tol);

/// W over an enclosure of arguments (W is increasing). The result width is
/// at least the image width; each endpoint is resolved to tol.
Enclosure lambert_w(const Enclosure& x, const Rational& tol);

/// W(2^m) / (m ln 2).
Enclosure w_ratio(std::uint64_t m, const Rational& tol);

/// Binary digits shared by every real in an enclosure.
struct DigitResult {
  BitString digits;              ///< digits after the binary point
  std::size_t determined_count;  ///< equals digits.size()
  BigInt integer_part;           ///< common integer part (valid when determined_count > 0)
};

/// Longest common prefix (at most n digits after the point) of the unending
/// binary expansions of all reals in `e`. Dyadic rationals use the trailing
/// ones expansion, so 1/2 reads 0.0111... Requires lo >= 0 and a bounded
/// enclosure; returns determined_count = 0 when even the integer part or the
/// first digit is not pinned down.
DigitResult digits(const Enclosure& e, std::size_t n);

}  // namespace tuatara
