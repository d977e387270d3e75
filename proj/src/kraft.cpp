#include "tuatara/kraft.hpp"

#include "tuatara/egyptian.hpp"
#include "tuatara/errors.hpp"

namespace tuatara {

Rational CodeAssignment::kraft_sum() const {
  Rational sum;
  for (auto len : lengths) sum += Rational::pow2(-static_cast<std::int64_t>(len));
  return sum;
}

KraftChaitin::KraftChaitin() { free_.emplace(0, BitString()); }

BitString KraftChaitin::assign(std::uint64_t length) {
  const std::size_t index = out_.words.size() + 1;
  BitString word;
  if (auto exact = free_.find(length); exact != free_.end()) {
    word = exact->second;
    free_.erase(exact);
  } else {
    // Free nodes have distinct lengths and cover exactly 1 - (sum so far), so
    // the request fits iff some free node is shorter than it.
    auto it = free_.lower_bound(length);
    if (it == free_.begin()) throw KraftViolation(index);
    --it;
    const BitString node = it->second;
    const std::uint64_t from = it->first;
    free_.erase(it);
    // node 0^(length-from) is taken; node 0^k 1 becomes free for each k.
    BitString path = node;
    for (std::uint64_t k = from; k < length; ++k) {
      free_.emplace(k + 1, BitString(path).push_back(1));
      path.push_back(0);
    }
    word = path;
  }
  out_.words.push_back(word);
  out_.lengths.push_back(length);
  return word;
}

CodeAssignment kraft_chaitin(const std::vector<std::uint64_t>& lengths) {
  KraftChaitin kc;
  for (auto len : lengths) kc.assign(len);
  return kc.assignment();
}

namespace {

CodeAssignment drain(DyadicDiagonal grid, std::uint64_t budget) {
  KraftChaitin kc;
  for (std::uint64_t i = 0; i < budget; ++i) {
    auto term = grid.next();
    if (!term) break;
    kc.assign(term->exponent);
  }
  return kc.assignment();
}

}  // namespace

CodeAssignment unit_sum_to_prefix_free(std::function<std::optional<BigInt>()> source, std::uint64_t budget) {
  return drain(DyadicDiagonal(std::move(source)), budget);
}

CodeAssignment unit_sum_to_prefix_free(std::vector<BigInt> denominators, std::uint64_t budget) {
  return drain(DyadicDiagonal(std::move(denominators)), budget);
}

}  // namespace tuatara
