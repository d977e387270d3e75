#pragma once

// Seeded generators and small independent oracles shared by the test binaries.

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tuatara/bitstring.hpp"
#include "tuatara/rational.hpp"

namespace testing {

using tuatara::BigInt;
using tuatara::BitString;
using tuatara::Rational;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(gen_);
  }
  bool coin() { return uniform(0, 1) == 1; }
  BitString bits(std::size_t len) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(coin() ? '1' : '0');
    return BitString(s);
  }
  BitString bits_up_to(std::size_t max_len) { return bits(uniform(0, max_len)); }

  /// Leaves of a random full binary tree (grown by splitting random leaves),
  /// then a random nonempty subset. Always prefix-free.
  std::vector<BitString> prefix_free(std::size_t splits, std::size_t max_len) {
    std::vector<std::string> leaves{""};
    for (std::size_t k = 0; k < splits; ++k) {
      const std::size_t i = uniform(0, leaves.size() - 1);
      if (leaves[i].size() >= max_len) continue;
      const std::string base = leaves[i];
      leaves[i] = base + "0";
      leaves.push_back(base + "1");
    }
    std::vector<BitString> out;
    for (const auto& l : leaves)
      if (coin()) out.emplace_back(l);
    if (out.empty()) out.emplace_back(leaves[uniform(0, leaves.size() - 1)]);
    return out;
  }

  /// Distinct random strings (not necessarily prefix-free).
  std::vector<BitString> distinct(std::size_t count, std::size_t max_len) {
    std::set<std::string> seen;
    std::vector<BitString> out;
    for (std::size_t tries = 0; out.size() < count && tries < 100 * count; ++tries) {
      BitString b = bits_up_to(max_len);
      if (seen.insert(b.str()).second) out.push_back(b);
    }
    return out;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// bin(n) the long way: the base-2 numeral without its first character.
inline std::string bin_oracle(std::uint64_t n) {
  std::string s;
  for (; n > 0; n /= 2) s.insert(s.begin(), static_cast<char>('0' + n % 2));
  return s.substr(1);
}

/// Numeral value of "1" + x.
inline BigInt bin_inv_oracle(const std::string& x) {
  BigInt v = 1;
  for (char c : x) v = 2 * v + (c == '1' ? 1 : 0);
  return v;
}

inline Rational omega_oracle(const std::vector<BitString>& dom, long s = 1) {
  Rational sum;
  for (const auto& w : dom) sum += Rational::pow2(-s * static_cast<long>(w.size()));
  return sum;
}

inline Rational zeta_oracle(const std::vector<BitString>& dom, unsigned long s = 1) {
  Rational sum;
  for (const auto& w : dom) {
    BigInt n = bin_inv_oracle(w.str());
    BigInt p = 1;
    for (unsigned long k = 0; k < s; ++k) p *= n;
    sum += Rational(BigInt(1), p);
  }
  return sum;
}

inline bool prefix_free_oracle(const std::vector<BitString>& dom) {
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = 0; j < dom.size(); ++j)
      if (i != j && dom[j].str().compare(0, dom[i].size(), dom[i].str()) == 0 && dom[i].size() <= dom[j].size())
        return false;
  return true;
}

/// C_k from the convolution recurrence.
inline std::vector<BigInt> catalan_table(std::size_t n) {
  std::vector<BigInt> c(n + 1, 0);
  c[0] = 1;
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t i = 0; i < k; ++i) c[k] += c[i] * c[k - 1 - i];
  return c;
}

/// Recursive-descent program check, independent of the library parser.
inline bool iota_oracle(const std::string& s) {
  std::size_t pos = 0;
  bool ok = true;
  auto term = [&](auto&& self) -> void {
    if (!ok) return;
    if (pos >= s.size()) {
      ok = false;
      return;
    }
    if (s[pos++] == '0') return;
    self(self);
    self(self);
  };
  term(term);
  return ok && pos == s.size();
}

/// Newton iteration for w e^w = x in double precision.
inline double lambert_w_oracle(double x) {
  double w = x < 3 ? 0.5 : std::log(x) - std::log(std::log(x));
  for (int i = 0; i < 100; ++i) w -= (w * std::exp(w) - x) / (std::exp(w) * (w + 1));
  return w;
}

}  // namespace testing
