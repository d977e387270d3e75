#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tuatara/bitstring.hpp"
#include "tuatara/enclosure.hpp"
#include "tuatara/rational.hpp"

namespace tuatara {

class MachineSpec;

struct FiniteTable {
  std::vector<BitString> domain;             // length-lex sorted, distinct
  std::map<BitString, BitString> outputs;    // missing entries output eps
};

enum class BuiltinKind { AllStrings, Lukasiewicz, Iota, Geometric };

struct Builtin {
  BuiltinKind kind;
  std::uint64_t steps = 10000;      // Iota: reduction steps that count as halting
  std::uint64_t start = 0;          // Geometric: 0^i 1 for i >= start
  std::vector<BitString> extras;    // Geometric: extra finite strings
};

enum class ConstructionKind { Product, Double, TuatarafOf, UniversalTuatara, UniversalConvergent, PrimeProduct };

struct Construction {
  ConstructionKind kind;
  std::vector<MachineSpec> operands;
  std::vector<Rational> bounds;  // UniversalConvergent: declared zeta bound per member
};

/// Immutable machine description; cheap to copy.
class MachineSpec {
 public:
  using Body = std::variant<FiniteTable, Builtin, Construction>;

  static MachineSpec finite(std::vector<BitString> domain, std::map<BitString, BitString> outputs = {});
  /// Domain is the key set of the map.
  static MachineSpec finite_mapped(const std::vector<std::pair<BitString, BitString>>& table);

  static MachineSpec all_strings();
  static MachineSpec lukasiewicz();
  static MachineSpec iota(std::uint64_t steps = 10000);
  static MachineSpec geometric(std::uint64_t start, std::vector<BitString> extras = {});

  /// Concatenations p1...pn (n >= 0) with bin_inv nondecreasing.
  static MachineSpec product(const MachineSpec& c);
  /// M(xx) = T(x).
  static MachineSpec doubled(const MachineSpec& t);
  /// Union of X(p) over p in dom(C); C must be prefix-free.
  static MachineSpec tuatara_of(const MachineSpec& c);
  /// W(0^i 1 x) = C_i(x), i = 1, 2, ...
  static MachineSpec universal_tuatara(std::vector<MachineSpec> members);
  /// W(0^J(i,M_i) 1 x) = C_i(x) with M_i = ceil(bound_i).
  static MachineSpec universal_convergent(std::vector<MachineSpec> members, std::vector<Rational> bounds);
  /// bin(n) for every n whose prime factors are all p_i with bin(i) in dom(M).
  static MachineSpec prime_product(const MachineSpec& m);

  const Body& body() const { return *body_; }
  std::string describe() const;

  const FiniteTable* as_finite() const { return std::get_if<FiniteTable>(body_.get()); }
  const Builtin* as_builtin() const { return std::get_if<Builtin>(body_.get()); }
  const Construction* as_construction() const { return std::get_if<Construction>(body_.get()); }

 private:
  explicit MachineSpec(Body body) : body_(std::make_shared<const Body>(std::move(body))) {}
  std::shared_ptr<const Body> body_;
};

/// Which sum: 2^(-s|w|) (Omega) or bin_inv(w)^(-s) (zeta).
enum class Weight { Omega, Zeta };

struct DomainEntry {
  BitString word;
  /// False when membership is only possible (an Iota program that did not
  /// reach normal form within its steps); such words count towards upper
  /// bounds only.
  bool certain = true;
};

/// Length-lex enumeration of a machine domain. Single consumer.
class DomainStream {
 public:
  explicit DomainStream(MachineSpec spec) : spec_(std::move(spec)) {}
  virtual ~DomainStream() = default;
  DomainStream(const DomainStream&) = delete;
  DomainStream& operator=(const DomainStream&) = delete;

  virtual std::optional<DomainEntry> next() = 0;

  std::optional<BigInt> count_up_to_length(std::int64_t length) const;
  std::optional<Rational> tail_bound(std::int64_t length, Weight weight, const Rational& s) const;
  const MachineSpec& spec() const { return spec_; }

 private:
  MachineSpec spec_;
};

std::unique_ptr<DomainStream> domain_stream(const MachineSpec& m);

/// Exact number of domain strings of length <= `length`, when known.
std::optional<BigInt> count_up_to_length(const MachineSpec& m, std::int64_t length);

/// Upper bound on the weight of all domain strings longer than `length`
/// (length = -1 covers the whole domain); nullopt when no finite bound is
/// available.
std::optional<Rational> tail_bound(const MachineSpec& m, std::int64_t length, Weight weight, const Rational& s);

/// The whole domain when it is finite and can be listed.
std::optional<std::vector<BitString>> finite_domain(const MachineSpec& m);

/// Prefix-freeness when it can be decided from the description.
std::optional<bool> known_prefix_free(const MachineSpec& m);

/// Certified enclosure of the sum of one weight over the domain, using at
/// most `budget` stream elements. Finite domains are summed exactly.
Enclosure weighted_sum(const MachineSpec& m, Weight weight, const Rational& s, std::uint64_t budget);

Enclosure omega_enclosure(const MachineSpec& m, std::uint64_t budget);
Enclosure zeta_enclosure(const MachineSpec& m, std::uint64_t budget);

/// prod 1/(1 - 2^-|p|) over dom(C) for a product over a finite C.
std::optional<Rational> product_closed_form(const MachineSpec& product);

enum class VerdictClass { Divergent, Convergent, Tuatara, Unknown };
std::string to_string(VerdictClass c);

struct Verdict {
  VerdictClass cls = VerdictClass::Unknown;
  bool certified = false;
  Enclosure witness;
};

struct Classification {
  Verdict zeta;
  Verdict omega;
};

/// Divergence is only ever certified from the description (all strings and
/// machines built to contain them), never from running out of budget.
bool analytically_divergent(const MachineSpec& m);
Classification classify(const MachineSpec& m, std::uint64_t budget);

struct ChainReport {
  Rational omega;
  Rational zeta;
  bool holds = false;          ///< 1 >= Omega >= zeta >= Omega/2 >= 0
  bool strict_expected = false;///< nonempty and no bin_inv is a power of two
  bool strict_holds = false;   ///< 1 > Omega > zeta > Omega/2 > 0
};
ChainReport sanity_chain(const MachineSpec& m);

/// X(p) = {p} and p 0^i for every 1-based position i with p_i = 1.
std::vector<BitString> x_set(const BitString& p);

struct UnitIdentity {
  std::vector<BitString> set;
  Rational sum;  ///< sum of 1/bin_inv over the set; equals 2^-|p|
};
UnitIdentity tuatara_unit_identity(const BitString& p);

bool universal_prefix_identity(std::uint64_t i, const BigInt& n);
BigInt j_pairing(std::uint64_t i, const BigInt& bound);

/// log2(count of domain strings of length <= n) / n.
Enclosure density_enclosure(const MachineSpec& m, std::uint64_t n);
Rational density_statistic(const MachineSpec& m, std::uint64_t n);

/// Enumerates the domain until sum 1/n_i > 0.y, then returns bin(j) for the
/// least j >= 1 not enumerated. Throws BudgetExhausted otherwise.
struct FreshIndex {
  BitString word;
  BigInt index;
  std::vector<BigInt> enumerated;
  Rational sum;
};
FreshIndex fresh_index(const MachineSpec& m, const BitString& y, std::uint64_t budget);

/// Output of the machine on w, or nullopt when w is outside the domain
/// (or, for Iota, when the program does not produce a list in budget).
std::optional<BitString> execute(const MachineSpec& m, const BitString& w);

/// Primes in increasing order, sieved on demand.
class PrimeTable {
 public:
  /// p_i, 1-based (p_1 = 2).
  std::uint64_t nth(std::uint64_t i);
  /// 1-based index of p, or 0 when p is not prime.
  std::uint64_t index_of(std::uint64_t p);

 private:
  void grow(std::uint64_t limit);
  std::vector<std::uint64_t> primes_;
  std::uint64_t limit_ = 1;
};

}  // namespace tuatara
