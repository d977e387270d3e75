#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tuatara/bitstring.hpp"
#include "tuatara/enclosure.hpp"
#include "tuatara/errors.hpp"

namespace tuatara::iota {

/// Syntax tree of an Iota program: 0 is the combinator, 1 P Q applies P to Q.
class IotaTerm {
 public:
  static IotaTerm leaf();
  static IotaTerm apply(const IotaTerm& f, const IotaTerm& x);

  bool is_leaf() const { return node_->f == nullptr; }
  IotaTerm left() const;   // requires !is_leaf()
  IotaTerm right() const;  // requires !is_leaf()

  BitString unparse() const;
  std::size_t leaves() const;

 private:
  struct Node {
    std::shared_ptr<const Node> f, x;
  };
  explicit IotaTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend class CombTerm;
};

/// Input ended while `open` subterms were still expected.
class Incomplete : public InvalidArgument {
 public:
  explicit Incomplete(std::size_t open)
      : InvalidArgument("incomplete Iota program: " + std::to_string(open) + " subterm(s) still open"), open_(open) {}
  std::size_t open() const noexcept { return open_; }

 private:
  std::size_t open_;
};

/// A complete program ended at `split`, but more bits followed.
class TrailingBits : public InvalidArgument {
 public:
  explicit TrailingBits(std::size_t split)
      : InvalidArgument("trailing bits after complete Iota program at position " + std::to_string(split)),
        split_(split) {}
  std::size_t split() const noexcept { return split_; }

 private:
  std::size_t split_;
};

IotaTerm parse(const BitString& bits);
/// Raw 0/1 text; whitespace is skipped.
IotaTerm parse_text(std::string_view text);
bool is_program(const BitString& bits);

/// Number of programs of exactly `length` bits (0 for even lengths).
BigInt count_programs(std::uint64_t length);

/// Applicative term over S, K, the iota combinator and free variables.
class CombTerm {
 public:
  enum class Kind { S, K, Iota, Var, App };

  static CombTerm s();
  static CombTerm k();
  static CombTerm iota();
  static CombTerm var(std::string name);
  static CombTerm apply(const CombTerm& f, const CombTerm& x);
  static CombTerm from_iota(const IotaTerm& t);
  static CombTerm from_program(const BitString& bits) { return from_iota(parse(bits)); }

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }  // Var only
  CombTerm fun() const;                                       // App only
  CombTerm arg() const;                                       // App only

  /// "S", "K", "i", variable names, "(f x)" for application.
  std::string to_string() const;
  std::size_t size() const;

  friend bool operator==(const CombTerm& a, const CombTerm& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Node> f, x;
  };
  explicit CombTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend class Reducer;
};

struct ReductionOutcome {
  bool normal = false;              ///< false: a budget tripped first
  std::optional<CombTerm> term;     ///< the normal form when normal
  std::uint64_t steps = 0;          ///< rule applications performed
  std::uint64_t max_size = 0;       ///< arena nodes in use at the end
};

inline constexpr std::uint64_t kDefaultSteps = 100000;
inline constexpr std::uint64_t kDefaultNodes = 1000000;

/// Normal-order reduction: head reduction to weak head normal form, then the
/// arguments left to right. S x y z -> x z (y z), K x y -> x, i x -> x S K.
ReductionOutcome reduce(const CombTerm& t, std::uint64_t step_budget = kDefaultSteps,
                        std::uint64_t size_budget = kDefaultNodes);

/// True iff the program reaches normal form within the budgets.
bool halts(const BitString& program, std::uint64_t step_budget, std::uint64_t size_budget = kDefaultNodes);

struct Constants {
  BitString f;                ///< false, behaves as K
  BitString t;                ///< true, behaves as S K
  BitString pair;             ///< P x y z -> z x y
  BitString pair_as_printed;  ///< the published string, P x y z -> z x (x z)
};
const Constants& constants();

struct SelectorResult {
  bool holds = false;
  std::string reason;  ///< empty when holds
};

/// ((P x) y) F must normalize to x and ((P x) y) T to y.
SelectorResult selector_check(const CombTerm& x, const CombTerm& y, std::uint64_t step_budget = 10000,
                              const BitString& pair = constants().pair);

/// Nested pairs <b1, <b2, ... F>>, bit 0 as F and bit 1 as T.
BitString encode_bits(const BitString& x);

class MalformedList : public Error {
 public:
  using Error::Error;
};

/// Reads a list built like encode_bits back. Throws MalformedList or
/// BudgetExhausted.
BitString decode_bits(const BitString& program, std::uint64_t step_budget = kDefaultSteps,
                      std::uint64_t size_budget = kDefaultNodes);

/// Every program in length-lex order: 0, 100, 10100, 11000, ...
class ProgramEnumerator {
 public:
  BitString next();

 private:
  std::string cur_;
};

/// sum over programs of length exactly 2n-1 of 2^-(2n-1), for n = 1..n_max
/// (these are C(n-1) 2^-(2n-1)); the full series sums to 1.
Rational syntactic_omega_partial(std::uint64_t n_max);

/// lo: sum of 1/bin_inv(w) over programs w of length <= 2 n_max - 1.
/// hi: lo plus the remaining syntactic Omega mass, which bounds the rest.
Enclosure iota_zeta_partial(std::uint64_t n_max);

}  // namespace tuatara::iota
