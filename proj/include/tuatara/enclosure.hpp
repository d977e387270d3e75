#pragma once

#include <optional>
#include <string>

#include "tuatara/rational.hpp"

namespace tuatara {

/// Certified bounds [lo, hi] on a real number. `hi` may be absent, meaning
/// no finite upper bound is known.
class Enclosure {
 public:
  Enclosure() = default;

  static Enclosure exact(const Rational& value) { return Enclosure(value, value); }
  static Enclosure between(const Rational& lo, const Rational& hi);
  static Enclosure at_least(const Rational& lo) { return Enclosure(lo, std::nullopt); }

  const Rational& lo() const { return lo_; }
  const std::optional<Rational>& hi() const { return hi_; }

  bool bounded() const { return hi_.has_value(); }
  bool is_exact() const { return hi_ && *hi_ == lo_; }
  std::optional<Rational> width() const;
  Rational midpoint() const;  // requires bounded()

  bool contains(const Rational& x) const { return lo_ <= x && (!hi_ || x <= *hi_); }
  /// True iff this enclosure lies inside `outer`.
  bool within(const Enclosure& outer) const;

  /// Sum of two enclosures.
  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  /// Product; both operands must be nonnegative (lo >= 0).
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  /// Quotient of a nonnegative enclosure by a bounded, strictly positive one.
  friend Enclosure operator/(const Enclosure& a, const Enclosure& b);

  /// Outward rounding of both ends onto the 2^-bits grid.
  Enclosure rounded(std::int64_t bits) const;

  std::string to_string() const;

  friend bool operator==(const Enclosure&, const Enclosure&) = default;

 private:
  Enclosure(Rational lo, std::optional<Rational> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

  Rational lo_;
  std::optional<Rational> hi_ = Rational(0);
};

/// Running sum of nonnegative terms with certified bounds. Sums are exact
/// until a denominator grows past `exact_limit_bits`; from then on every term
/// is rounded outward onto the 2^-grid_bits grid, so the error is at most
/// 2^-grid_bits per term.
class SumAccumulator {
 public:
  explicit SumAccumulator(std::int64_t grid_bits = 320, std::size_t exact_limit_bits = 1 << 14)
      : grid_bits_(grid_bits), exact_limit_bits_(exact_limit_bits) {}

  void add(const Rational& term) { add(term, term); }
  void add(const Enclosure& term);
  /// Adds [lo, hi]; an uncertain term is added as add(0, hi).
  void add(const Rational& lo, const Rational& hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool exact() const { return exact_; }
  std::int64_t grid_bits() const { return grid_bits_; }

  /// Rounds an upper bound the way this accumulator would (identity while exact).
  Rational round_up(const Rational& x) const { return exact_ ? x : ceil_to_grid(x, grid_bits_); }

 private:
  std::int64_t grid_bits_;
  std::size_t exact_limit_bits_;
  bool exact_ = true;
  Rational lo_;
  Rational hi_;
};

}  // namespace tuatara
