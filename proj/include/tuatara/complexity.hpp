#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tuatara/bitstring.hpp"
#include "tuatara/machines.hpp"
#include "tuatara/rational.hpp"

namespace tuatara {

/// Result of a budget-bounded witness search. `value` is empty when no
/// witness turned up (NoWitness). `exact` is false when an input of
/// undetermined halting status came before the witness (or before the end
/// of the budget), so the value is only an upper bound.
struct ComplexityValue {
  std::optional<BigInt> value;
  bool exact = true;
  std::optional<BitString> witness;
};

/// least |w| with M(w) = x.
ComplexityValue plain_k(const MachineSpec& m, const BitString& x, std::uint64_t budget);
/// plain_k on a machine with a prefix-free domain; rejects machines known not
/// to be prefix-free.
ComplexityValue program_size_h(const MachineSpec& m, const BitString& x, std::uint64_t budget);
/// least n >= 1 with V(bin(n)) = x.
ComplexityValue nabla(const MachineSpec& v, const BitString& x, std::uint64_t budget);

/// max over the sample of nabla_W(x) / nabla_V(x); nullopt when some value is
/// missing.
std::optional<Rational> universality_factor(const MachineSpec& w, const MachineSpec& v,
                                            std::span<const BitString> sample, std::uint64_t budget);

enum class Measure { Plain, ProgramSize, Nabla, NablaLog };

/// Complexity of x under the measure; Nabla gives the index itself and
/// NablaLog gives floor(log2 nabla).
ComplexityValue measure(Measure kind, const MachineSpec& m, const BitString& x, std::uint64_t budget);

struct DeficiencyRow {
  std::uint64_t m = 0;
  std::optional<BigInt> complexity;  ///< of the first m digits
  Rational threshold;                ///< m / s
  std::optional<Rational> slack;     ///< complexity - m/s
  std::optional<Rational> nabla_statistic;  ///< 2^-m nabla (nabla measures only)
  bool exact = true;
};

struct DeficiencyReport {
  std::vector<DeficiencyRow> rows;
  std::optional<Rational> worst_slack;  ///< min slack over rows that have one
  bool complete = true;                 ///< every row found a witness
};

DeficiencyReport deficiency(const BitString& digits, const Rational& s, Measure kind, const MachineSpec& m,
                            std::uint64_t budget);

/// min over 1 <= n <= |digits| of complexity(first n digits) / n. Finite
/// prefixes only; says nothing about the true liminf. nullopt when no prefix
/// has a witness.
std::optional<Rational> liminf_proxy(const BitString& digits, Measure kind, const MachineSpec& m,
                                     std::uint64_t budget);

}  // namespace tuatara
