#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "tuatara/rational.hpp"

namespace tuatara {

/// Finite binary string, possibly empty (the empty string is rendered "eps").
class BitString {
 public:
  BitString() = default;
  /// Raw 0/1 characters; anything else is rejected.
  explicit BitString(std::string_view bits);

  /// Like the raw constructor, but also accepts "eps" for the empty string.
  static BitString parse(std::string_view text);
  static BitString zeros(std::size_t n) { return BitString(std::string(n, '0'), Trusted{}); }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  /// Bit at 0-based position i (0 or 1).
  int bit(std::size_t i) const { return bits_[i] == '1' ? 1 : 0; }

  const std::string& str() const noexcept { return bits_; }
  /// "eps" for the empty string, the raw bits otherwise.
  std::string render() const { return bits_.empty() ? std::string("eps") : bits_; }

  BitString prefix(std::size_t n) const { return BitString(bits_.substr(0, n), Trusted{}); }
  BitString suffix_from(std::size_t pos) const { return BitString(bits_.substr(pos), Trusted{}); }
  bool is_prefix_of(const BitString& other) const;

  BitString& push_back(int bit);
  BitString& operator+=(const BitString& o) {
    bits_ += o.bits_;
    return *this;
  }
  friend BitString operator+(BitString a, const BitString& b) { return a += b; }

  friend bool operator==(const BitString&, const BitString&) = default;
  /// Plain lexicographic order on the characters (not length-lex).
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  struct Trusted {};
  BitString(std::string bits, Trusted) : bits_(std::move(bits)) {}

  std::string bits_;
};

std::ostream& operator<<(std::ostream& os, const BitString& b);

/// Length-then-lexicographic order: the order of bin(1), bin(2), ...
bool lenlex_less(const BitString& a, const BitString& b);
struct LenLexLess {
  bool operator()(const BitString& a, const BitString& b) const { return lenlex_less(a, b); }
};

/// Binary expansion of n >= 1 with the leading 1 removed.
BitString bin(const BigInt& n);
BitString bin(std::uint64_t n);

/// The n with bin(n) = x, i.e. the value of the numeral 1x.
BigInt bin_inv(const BitString& x);

/// 0.y = sum y_i 2^-i.
Rational rational_of_prefix(const BitString& y);

/// True iff no element is a proper prefix of another. Repeated elements make
/// the input a multiset rather than a set and are reported as not prefix-free.
bool is_prefix_free(std::span<const BitString> strings);

std::size_t hamming_weight(const BitString& p);

/// Successor in length-lex order: bin(bin_inv(x) + 1).
BitString lenlex_succ(const BitString& x);

}  // namespace tuatara

template <>
struct std::hash<tuatara::BitString> {
  std::size_t operator()(const tuatara::BitString& b) const noexcept {
    return std::hash<std::string>{}(b.str());
  }
};
