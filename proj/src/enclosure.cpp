#include "tuatara/enclosure.hpp"

#include "tuatara/errors.hpp"

namespace tuatara {

Enclosure Enclosure::between(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw InvalidArgument("enclosure with lo > hi: " + lo.to_string() + " > " + hi.to_string());
  return Enclosure(lo, hi);
}

std::optional<Rational> Enclosure::width() const {
  if (!hi_) return std::nullopt;
  return *hi_ - lo_;
}

Rational Enclosure::midpoint() const {
  if (!hi_) throw InvalidArgument("midpoint of an unbounded enclosure");
  return (lo_ + *hi_) / Rational(2);
}

bool Enclosure::within(const Enclosure& outer) const {
  if (lo_ < outer.lo_) return false;
  if (!outer.hi_) return true;
  return hi_ && *hi_ <= *outer.hi_;
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  std::optional<Rational> hi;
  if (a.hi_ && b.hi_) hi = *a.hi_ + *b.hi_;
  return Enclosure(a.lo_ + b.lo_, std::move(hi));
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  if (a.lo_.sign() < 0 || b.lo_.sign() < 0)
    throw InvalidArgument("enclosure product needs nonnegative operands");
  std::optional<Rational> hi;
  if (a.hi_ && b.hi_)
    hi = *a.hi_ * *b.hi_;
  else if ((a.is_exact() && a.lo_.is_zero()) || (b.is_exact() && b.lo_.is_zero()))
    hi = Rational(0);
  return Enclosure(a.lo_ * b.lo_, std::move(hi));
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (a.lo_.sign() < 0) throw InvalidArgument("enclosure quotient needs a nonnegative dividend");
  if (!b.hi_ || b.lo_.sign() <= 0) throw InvalidArgument("enclosure quotient needs a bounded positive divisor");
  std::optional<Rational> hi;
  if (a.hi_) hi = *a.hi_ / b.lo_;
  return Enclosure(a.lo_ / *b.hi_, std::move(hi));
}

Enclosure Enclosure::rounded(std::int64_t bits) const {
  std::optional<Rational> hi;
  if (hi_) hi = ceil_to_grid(*hi_, bits);
  return Enclosure(floor_to_grid(lo_, bits), std::move(hi));
}

std::string Enclosure::to_string() const {
  return "[" + lo_.to_string() + ", " + (hi_ ? hi_->to_string() : std::string("inf")) + "]";
}

void SumAccumulator::add(const Enclosure& term) {
  if (!term.bounded()) throw InvalidArgument("SumAccumulator needs bounded terms");
  add(term.lo(), *term.hi());
}

void SumAccumulator::add(const Rational& lo, const Rational& hi) {
  if (exact_) {
    lo_ += lo;
    hi_ += hi;
    if (denominator_bits(lo_) > exact_limit_bits_ || denominator_bits(hi_) > exact_limit_bits_) {
      exact_ = false;
      lo_ = floor_to_grid(lo_, grid_bits_);
      hi_ = ceil_to_grid(hi_, grid_bits_);
    }
    return;
  }
  lo_ += floor_to_grid(lo, grid_bits_);
  hi_ += ceil_to_grid(hi, grid_bits_);
}

}  // namespace tuatara
