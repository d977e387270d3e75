#include "tuatara/egyptian.hpp"

#include "tuatara/errors.hpp"

namespace tuatara {

std::vector<BigInt> EgyptianExpansion::denominators() const {
  std::vector<BigInt> all(harmonic);
  all.insert(all.end(), greedy.begin(), greedy.end());
  return all;
}

EgyptianExpansion egyptian_floor(const Rational& q, const BigInt& floor, std::size_t max_denominator_bits) {
  if (q.sign() <= 0) throw InvalidArgument("egyptian_floor needs q > 0, got " + q.to_string());
  if (floor < 2) throw InvalidArgument("egyptian_floor needs N >= 2");
  EgyptianExpansion out;
  Rational rest = q;
  BigInt m = floor;
  while (rest >= Rational(BigInt(1), m)) {
    rest -= Rational(BigInt(1), m);
    out.harmonic.push_back(m);
    ++m;
  }
  // rest < 1/m now, so every greedy denominator exceeds the harmonic run.
  while (!rest.is_zero()) {
    BigInt d = rest.den();
    const BigInt n = rest.num();
    d = (d + n - 1) / n;
    if (bit_length(d) > max_denominator_bits)
      throw BudgetExhausted("egyptian_floor: greedy denominator exceeds " + std::to_string(max_denominator_bits) +
                            " bits after " + std::to_string(out.greedy.size()) + " greedy terms");
    rest -= Rational(BigInt(1), d);
    out.greedy.push_back(std::move(d));
  }
  return out;
}

Rational unit_sum(std::span<const BigInt> denominators) {
  Rational sum;
  for (const auto& d : denominators) sum += Rational(BigInt(1), d);
  return sum;
}

DyadicDiagonal::DyadicDiagonal(Source source) : source_(std::move(source)) {}

DyadicDiagonal::DyadicDiagonal(std::vector<BigInt> denominators)
    : source_([ds = std::move(denominators), i = std::size_t{0}]() mutable -> std::optional<BigInt> {
        if (i == ds.size()) return std::nullopt;
        return ds[i++];
      }) {}

// Exponent of the next 1 bit of 1/m, or nullopt when the expansion ended.
std::optional<std::uint64_t> DyadicDiagonal::advance(Row& row) {
  if (row.done) return std::nullopt;
  while (true) {
    if (row.remainder == 0) {
      row.done = true;
      return std::nullopt;
    }
    row.remainder *= 2;
    ++row.position;
    if (row.remainder >= row.m) {
      row.remainder -= row.m;
      return row.position;
    }
  }
}

bool DyadicDiagonal::pull_row() {
  if (source_done_) return false;
  auto m = source_();
  if (!m) {
    source_done_ = true;
    return false;
  }
  if (*m < 2) throw InvalidArgument("dyadic grid rows need m >= 2, got " + m->get_str());
  rows_.push_back(Row{*m, 1});
  return true;
}

std::optional<DiagonalTerm> DyadicDiagonal::next() {
  while (true) {
    if (!pass_open_) {
      // Pass d visits rows d, d-1, ..., 0; row d must exist if the source has it.
      if (rows_.size() <= pass_) pull_row();
      bool live = false;
      for (const auto& r : rows_) live = live || !r.done;
      if (!live && source_done_) return std::nullopt;
      cursor_ = std::min(pass_ + 1, rows_.size());
      pass_open_ = true;
    }
    while (cursor_ > 0) {
      const std::size_t i = --cursor_;
      // Column pass_ - i of row i: every row gains one column per pass.
      if (auto e = advance(rows_[i])) return DiagonalTerm{i, *e};
    }
    pass_open_ = false;
    ++pass_;
  }
}

}  // namespace tuatara
