#include "tuatara/bitstring.hpp"

#include <algorithm>
#include <ostream>
#include <vector>

#include "tuatara/errors.hpp"

namespace tuatara {

BitString::BitString(std::string_view bits) : bits_(bits) {
  for (char c : bits_)
    if (c != '0' && c != '1') throw InvalidArgument("not a bit string: '" + std::string(bits) + "'");
}

BitString BitString::parse(std::string_view text) {
  if (text == "eps") return BitString();
  return BitString(text);
}

bool BitString::is_prefix_of(const BitString& other) const {
  return bits_.size() <= other.bits_.size() && other.bits_.compare(0, bits_.size(), bits_) == 0;
}

BitString& BitString::push_back(int bit) {
  bits_.push_back(bit ? '1' : '0');
  return *this;
}

std::ostream& operator<<(std::ostream& os, const BitString& b) { return os << b.render(); }

bool lenlex_less(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.str() < b.str();
}

BitString bin(const BigInt& n) {
  if (n < 1) throw InvalidArgument("bin is defined for n >= 1, got " + n.get_str());
  return BitString(n.get_str(2).substr(1));
}

BitString bin(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("bin is defined for n >= 1, got 0");
  std::string s;
  const int top = 63 - __builtin_clzll(n);
  s.reserve(static_cast<std::size_t>(top));
  for (int i = top - 1; i >= 0; --i) s.push_back(((n >> i) & 1U) ? '1' : '0');
  return BitString(s);
}

BigInt bin_inv(const BitString& x) { return BigInt("1" + x.str(), 2); }

Rational rational_of_prefix(const BitString& y) {
  if (y.empty()) return Rational(0);
  return Rational(BigInt(y.str(), 2), pow2(y.size()));
}

bool is_prefix_free(std::span<const BitString> strings) {
  std::vector<const BitString*> sorted;
  sorted.reserve(strings.size());
  for (const auto& s : strings) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(), [](const BitString* a, const BitString* b) { return *a < *b; });
  // In lexicographic order a string is immediately followed by its extensions.
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i - 1]->is_prefix_of(*sorted[i])) return false;
  return true;
}

std::size_t hamming_weight(const BitString& p) {
  return static_cast<std::size_t>(std::count(p.str().begin(), p.str().end(), '1'));
}

BitString lenlex_succ(const BitString& x) {
  std::string s = x.str();
  auto pos = s.find_last_of('0');
  if (pos == std::string::npos) return BitString::zeros(s.size() + 1);
  s[pos] = '1';
  std::fill(s.begin() + static_cast<std::ptrdiff_t>(pos) + 1, s.end(), '0');
  return BitString(s);
}

}  // namespace tuatara
