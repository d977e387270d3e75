#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tuatara/rational.hpp"

namespace tuatara {

/// Output of egyptian_floor, split by phase.
struct EgyptianExpansion {
  std::vector<BigInt> harmonic;  ///< N, N+1, ..., N+k
  std::vector<BigInt> greedy;    ///< strictly increasing
  std::vector<BigInt> denominators() const;
};

/// Distinct unit fractions with denominators >= floor summing to q: the
/// longest run 1/N + ... + 1/(N+k) that stays <= q, then greedy on the rest.
/// Greedy denominators can grow doubly exponentially; once one exceeds
/// max_denominator_bits the call throws BudgetExhausted.
EgyptianExpansion egyptian_floor(const Rational& q, const BigInt& floor,
                                 std::size_t max_denominator_bits = 65536);

/// sum 1/d over the list, exactly.
Rational unit_sum(std::span<const BigInt> denominators);

/// One nonzero cell of the dyadic grid: 2^-exponent, taken from row `row`.
struct DiagonalTerm {
  std::size_t row;
  std::uint64_t exponent;
  Rational value() const { return Rational::pow2(-static_cast<std::int64_t>(exponent)); }
};

/// Row i holds the nonzero terms of the binary expansion of 1/m_i (its j-th
/// column is the j-th such term). Cells are emitted along anti-diagonals
/// d = i + j, lower left to upper right, skipping empty cells.
class DyadicDiagonal {
 public:
  using Source = std::function<std::optional<BigInt>()>;

  explicit DyadicDiagonal(Source source);
  explicit DyadicDiagonal(std::vector<BigInt> denominators);

  /// Next term, or nullopt once every row is finished (only possible for a
  /// finite stream of dyadic reciprocals).
  std::optional<DiagonalTerm> next();

 private:
  struct Row {
    BigInt m;
    BigInt remainder;  // long-division state for 1/m
    std::uint64_t position = 0;
    bool done = false;
  };
  std::optional<std::uint64_t> advance(Row& row);
  bool pull_row();

  Source source_;
  bool source_done_ = false;
  std::vector<Row> rows_;
  std::size_t pass_ = 0;
  std::size_t cursor_ = 0;  // rows still to visit in the current pass, counted down
  bool pass_open_ = false;
};

}  // namespace tuatara
