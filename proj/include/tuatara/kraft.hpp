#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "tuatara/bitstring.hpp"
#include "tuatara/rational.hpp"

namespace tuatara {

struct CodeAssignment {
  std::vector<BitString> words;
  std::vector<std::uint64_t> lengths;
  /// sum 2^-length over the assigned words.
  Rational kraft_sum() const;
};

/// Online Kraft-Chaitin allocator. Keeps at most one free node per length;
/// a request takes the free node of exactly that length if there is one, else
/// splits the longest free node that is shorter than the request.
class KraftChaitin {
 public:
  KraftChaitin();

  /// Word of exactly `length` bits, prefix-free with everything assigned so
  /// far. Throws KraftViolation (1-based request index) when the running
  /// sum would exceed 1; the allocator is unchanged in that case.
  BitString assign(std::uint64_t length);

  const CodeAssignment& assignment() const { return out_; }

 private:
  std::map<std::uint64_t, BitString> free_;  // length -> node
  CodeAssignment out_;
};

/// Runs the whole length list through a fresh allocator.
CodeAssignment kraft_chaitin(const std::vector<std::uint64_t>& lengths);

/// Dyadic diagonal of the reciprocals fed into Kraft-Chaitin; stops after
/// `budget` words or when the grid runs out.
CodeAssignment unit_sum_to_prefix_free(std::function<std::optional<BigInt>()> source, std::uint64_t budget);
CodeAssignment unit_sum_to_prefix_free(std::vector<BigInt> denominators, std::uint64_t budget);

}  // namespace tuatara
