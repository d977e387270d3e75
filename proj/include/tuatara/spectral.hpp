#pragma once

#include <cstdint>
#include <vector>

#include "tuatara/enclosure.hpp"
#include "tuatara/machines.hpp"
#include "tuatara/rational.hpp"

namespace tuatara {

/// sum of 2^(-s|p|) over dom(m). Requires s > 0.
Enclosure omega_s(const MachineSpec& m, const Rational& s, std::uint64_t budget);

/// sum of n^-s over the indices n with bin(n) in dom(m). Requires s >= 1.
Enclosure zeta_s(const MachineSpec& m, const Rational& s, std::uint64_t budget);

/// Riemann zeta for s > 1: the first max(budget, 1) terms plus the integral
/// bracket on the rest.
Enclosure riemann_zeta(const Rational& s, std::uint64_t budget);

/// (1 - 2^(1-s)) omega_s(m, s), s > 1.
Enclosure kappa(const MachineSpec& m, const Rational& s, std::uint64_t budget);

/// zeta_s(m, s) / riemann_zeta(s), s > 1.
Enclosure kappa_natural(const MachineSpec& m, const Rational& s, std::uint64_t budget);

/// sum over 1 <= n < 2^L of 4^-floor(log2 n), one level of equal floor(log2 n) at a time.
Rational dyadic_weight_sum(std::uint64_t levels);

/// Every i in (5, upper] with i ln i >= p_i. Requires upper >= 6.
std::vector<std::uint64_t> pnt_check(std::uint64_t upper);

}  // namespace tuatara
