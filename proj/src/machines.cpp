#include "tuatara/machines.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <unordered_map>

#include "tuatara/errors.hpp"
#include "tuatara/iota.hpp"
#include "tuatara/numerics.hpp"

namespace tuatara {

namespace {

constexpr std::int64_t kPowerBits = 128;

// ---- bounds on powers for rational exponents ----------------------------------

Rational pow2_up(const Rational& e) {
  if (e.is_integer()) return Rational::pow2(e.num().get_si());
  return *power_enclosure(Rational(2), e, kPowerBits).hi();
}

Rational pow2_down(const Rational& e) {
  if (e.is_integer()) return Rational::pow2(e.num().get_si());
  return power_enclosure(Rational(2), e, kPowerBits).lo();
}

// Bounds on n^-s.
Rational inv_pow_up(const BigInt& n, const Rational& s) {
  if (s.is_integer() && s.sign() >= 0) return Rational(1) / pow(Rational(n), s.num().get_ui());
  return *power_enclosure(Rational(n), -s, kPowerBits).hi();
}

Rational inv_pow_down(const BigInt& n, const Rational& s) {
  if (s.is_integer() && s.sign() >= 0) return Rational(1) / pow(Rational(n), s.num().get_ui());
  return power_enclosure(Rational(n), -s, kPowerBits).lo();
}

// Weight of one word, as [lo, hi].
class WeightFn {
 public:
  WeightFn(Weight w, Rational s) : weight_(w), s_(std::move(s)) {}

  std::pair<Rational, Rational> operator()(const BitString& word) {
    if (weight_ == Weight::Omega) {
      auto it = by_length_.find(word.size());
      if (it == by_length_.end()) {
        const Rational e = -s_ * Rational(static_cast<long>(word.size()));
        it = by_length_.emplace(word.size(), std::make_pair(pow2_down(e), pow2_up(e))).first;
      }
      return it->second;
    }
    const BigInt n = bin_inv(word);
    return {inv_pow_down(n, s_), inv_pow_up(n, s_)};
  }

  Rational upper(const BitString& word) { return (*this)(word).second; }

 private:
  Weight weight_;
  Rational s_;
  std::unordered_map<std::size_t, std::pair<Rational, Rational>> by_length_;
};

std::int64_t floor_half(std::int64_t x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

BitString zeros_one(std::uint64_t i) { return BitString::zeros(i) + BitString("1"); }

bool contains_word(const std::vector<BitString>& sorted_lenlex, const BitString& w) {
  return std::binary_search(sorted_lenlex.begin(), sorted_lenlex.end(), w, LenLexLess{});
}

std::uint64_t convergent_prefix(std::size_t index0, const Rational& bound) {
  // index0 is 0-based; members are numbered from 1.
  const BigInt j = j_pairing(index0 + 1, std::max(BigInt(1), bound.ceil()));
  if (!j.fits_ulong_p() || j > BigInt(1) << 20)
    throw InvalidArgument("universal_convergent: prefix length J(i,M) = " + j.get_str() + " is too large");
  return j.get_ui();
}

// ---- streams ---------------------------------------------------------------------

class VectorStream : public DomainStream {
 public:
  VectorStream(MachineSpec spec, std::vector<BitString> words) : DomainStream(std::move(spec)), words_(std::move(words)) {}
  std::optional<DomainEntry> next() override {
    if (pos_ == words_.size()) return std::nullopt;
    return DomainEntry{words_[pos_++], true};
  }

 private:
  std::vector<BitString> words_;
  std::size_t pos_ = 0;
};

class AllStringsStream : public DomainStream {
 public:
  using DomainStream::DomainStream;
  std::optional<DomainEntry> next() override {
    if (!started_) {
      started_ = true;
      return DomainEntry{cur_, true};
    }
    cur_ = lenlex_succ(cur_);
    return DomainEntry{cur_, true};
  }

 private:
  BitString cur_;
  bool started_ = false;
};

class ProgramStream : public DomainStream {
 public:
  ProgramStream(MachineSpec spec, std::optional<std::uint64_t> steps) : DomainStream(std::move(spec)), steps_(steps) {}
  std::optional<DomainEntry> next() override {
    BitString w = programs_.next();
    const bool certain = !steps_ || iota::halts(w, *steps_);
    return DomainEntry{std::move(w), certain};
  }

 private:
  iota::ProgramEnumerator programs_;
  std::optional<std::uint64_t> steps_;
};

class GeometricStream : public DomainStream {
 public:
  GeometricStream(MachineSpec spec, std::uint64_t start, std::vector<BitString> extras)
      : DomainStream(std::move(spec)), i_(start), extras_(std::move(extras)) {
    std::sort(extras_.begin(), extras_.end(), LenLexLess{});
  }
  std::optional<DomainEntry> next() override {
    BitString g = zeros_one(i_);
    if (pos_ < extras_.size() && lenlex_less(extras_[pos_], g)) return DomainEntry{extras_[pos_++], true};
    ++i_;
    return DomainEntry{std::move(g), true};
  }

 private:
  std::uint64_t i_;
  std::vector<BitString> extras_;
  std::size_t pos_ = 0;
};

class Peekable {
 public:
  explicit Peekable(std::unique_ptr<DomainStream> s) : s_(std::move(s)) {}
  const DomainEntry* peek() {
    if (!buf_) buf_ = s_->next();
    return buf_->has_value() ? &**buf_ : nullptr;
  }
  std::optional<DomainEntry> pop() {
    peek();
    auto out = std::move(*buf_);
    buf_.reset();
    return out;
  }

 private:
  std::unique_ptr<DomainStream> s_;
  std::optional<std::optional<DomainEntry>> buf_;
};

struct EntryGreater {
  bool operator()(const DomainEntry& a, const DomainEntry& b) const { return lenlex_less(b.word, a.word); }
};

// Merges the expansions of several operand streams. `min_len(k, L)` must be a
// nondecreasing lower bound on the output lengths produced by an operand-k
// word of length L.
class ExpandMergeStream : public DomainStream {
 public:
  using Expand = std::function<std::vector<DomainEntry>(std::size_t, const DomainEntry&)>;
  using MinLen = std::function<std::uint64_t(std::size_t, std::uint64_t)>;

  ExpandMergeStream(MachineSpec spec, const std::vector<MachineSpec>& operands, Expand expand, MinLen min_len)
      : DomainStream(std::move(spec)), expand_(std::move(expand)), min_len_(std::move(min_len)) {
    for (const auto& op : operands) ops_.emplace_back(domain_stream(op));
  }

  std::optional<DomainEntry> next() override {
    while (true) {
      refill();
      if (heap_.empty()) return std::nullopt;
      DomainEntry top = heap_.top();
      heap_.pop();
      // Equal words from different sources are one domain element.
      while (!heap_.empty() && heap_.top().word == top.word) {
        top.certain = top.certain || heap_.top().certain;
        heap_.pop();
      }
      if (last_ && *last_ == top.word) continue;
      last_ = top.word;
      return top;
    }
  }

 private:
  void refill() {
    for (std::size_t k = 0; k < ops_.size(); ++k) {
      while (const DomainEntry* p = ops_[k].peek()) {
        if (!heap_.empty() && min_len_(k, p->word.size()) > heap_.top().word.size()) break;
        for (auto& e : expand_(k, *ops_[k].pop())) heap_.push(std::move(e));
      }
    }
  }

  std::vector<Peekable> ops_;
  Expand expand_;
  MinLen min_len_;
  std::priority_queue<DomainEntry, std::vector<DomainEntry>, EntryGreater> heap_;
  std::optional<BitString> last_;
};

class ProductStream : public DomainStream {
 public:
  ProductStream(MachineSpec spec, const MachineSpec& operand) : DomainStream(std::move(spec)), op_(domain_stream(operand)) {}

  std::optional<DomainEntry> next() override {
    while (pos_ == level_.size()) {
      if (level_index_ > 0 && words_.empty() && !op_.peek()) return std::nullopt;
      build_level(level_index_++);
    }
    return level_[pos_++];
  }

 private:
  void build_level(std::uint64_t len) {
    while (const DomainEntry* p = op_.peek()) {
      if (p->word.size() > len) break;
      if (p->word.empty()) throw InvalidArgument("product operand contains the empty string");
      words_.push_back(*op_.pop());
    }
    level_.clear();
    pos_ = 0;
    std::string buf;
    collect(0, len, buf, true);
    std::sort(level_.begin(), level_.end(), [](const DomainEntry& a, const DomainEntry& b) { return a.word < b.word; });
    std::vector<DomainEntry> merged;
    for (auto& e : level_) {
      if (!merged.empty() && merged.back().word == e.word)
        merged.back().certain = merged.back().certain || e.certain;
      else
        merged.push_back(std::move(e));
    }
    level_ = std::move(merged);
  }

  // Nondecreasing index sequences (length-lex = bin_inv order) with total length `rest`.
  void collect(std::size_t from, std::uint64_t rest, std::string& buf, bool certain) {
    if (rest == 0) {
      level_.push_back(DomainEntry{BitString(buf), certain});
      return;
    }
    for (std::size_t i = from; i < words_.size(); ++i) {
      const auto& w = words_[i].word;
      if (w.size() > rest) break;
      const std::size_t mark = buf.size();
      buf += w.str();
      collect(i, rest - w.size(), buf, certain && words_[i].certain);
      buf.resize(mark);
    }
  }

  Peekable op_;
  std::vector<DomainEntry> words_;
  std::vector<DomainEntry> level_;
  std::size_t pos_ = 0;
  std::uint64_t level_index_ = 0;
};

constexpr std::uint64_t kMaxPrimeIndex = 50'000'000;

class PrimeProductStream : public DomainStream {
 public:
  PrimeProductStream(MachineSpec spec, const MachineSpec& operand)
      : DomainStream(std::move(spec)), op_(domain_stream(operand)) {
    heap_.push(Item{BigInt(1), Item::Root, 0, 0, true});
  }

  std::optional<DomainEntry> next() override {
    while (true) {
      resolve_primes();
      if (heap_.empty()) return std::nullopt;
      Item it = heap_.top();
      heap_.pop();
      emit_successors(it);
      return DomainEntry{bin(it.value), it.certain};
    }
  }

 private:
  struct Item {
    enum Kind { Root, Chain, Cursor } kind;
    std::size_t a;  // Chain: emitted parent; Cursor: prime index
    std::size_t b;  // Chain: prime index; Cursor: emitted position
    bool certain;
    bool operator>(const Item& o) const { return value > o.value; }
    BigInt value;
    Item(BigInt v, Kind k, std::size_t a_, std::size_t b_, bool c) : kind(k), a(a_), b(b_), certain(c), value(std::move(v)) {}
  };
  struct Emitted {
    BigInt n;
    std::size_t gpf;    // index into primes_, or npos for 1
    std::size_t limit;  // primes known at emission
    bool certain;
  };
  struct Prime {
    std::uint64_t p;
    bool certain;
    std::size_t boundary;  // emitted count at arrival
  };

  void resolve_primes() {
    while (const DomainEntry* e = op_.peek()) {
      const BigInt idx = bin_inv(e->word);
      if (idx > kMaxPrimeIndex) throw BudgetExhausted("prime_product: prime index " + idx.get_str() + " is too large");
      const std::uint64_t p = table_.nth(idx.get_ui());
      if (!heap_.empty() && BigInt(std::to_string(p)) > heap_.top().value) break;
      const bool certain = e->certain;
      op_.pop();
      const std::size_t j = primes_.size();
      primes_.push_back(Prime{p, certain, emitted_.size()});
      if (!emitted_.empty())
        heap_.push(Item(emitted_[0].n * p, Item::Cursor, j, 0, emitted_[0].certain && certain));
    }
  }

  void emit_successors(const Item& it) {
    std::size_t gpf = std::string::npos;
    if (it.kind == Item::Chain) {
      gpf = it.b;
      const Emitted& parent = emitted_[it.a];
      if (it.b + 1 < parent.limit) {
        const auto& q = primes_[it.b + 1];
        heap_.push(Item(parent.n * q.p, Item::Chain, it.a, it.b + 1, parent.certain && q.certain));
      }
    } else if (it.kind == Item::Cursor) {
      gpf = it.a;
      const auto& q = primes_[it.a];
      if (it.b + 1 < q.boundary) {
        const Emitted& m = emitted_[it.b + 1];
        heap_.push(Item(m.n * q.p, Item::Cursor, it.a, it.b + 1, m.certain && q.certain));
      }
    }
    const std::size_t self = emitted_.size();
    emitted_.push_back(Emitted{it.value, gpf, primes_.size(), it.certain});
    const std::size_t first = gpf == std::string::npos ? 0 : gpf;
    if (first < primes_.size()) {
      const auto& q = primes_[first];
      heap_.push(Item(it.value * q.p, Item::Chain, self, first, it.certain && q.certain));
    }
  }

  Peekable op_;
  PrimeTable table_;
  std::vector<Prime> primes_;
  std::vector<Emitted> emitted_;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap_;
};

// ---- helpers over specs ------------------------------------------------------

bool contains_empty(const MachineSpec& m) {
  auto s = domain_stream(m);
  auto e = s->next();
  return e && e->word.empty();
}

bool geometric_prefix_free(const Builtin& b) {
  if (!is_prefix_free(b.extras)) return false;
  for (const auto& e : b.extras) {
    const auto first_one = e.str().find('1');
    if (first_one == std::string::npos) return false;  // 0^j is a prefix of 0^i 1
    if (first_one >= b.start) return false;            // has prefix 0^i 1 with i >= start
  }
  return true;
}

std::vector<std::uint64_t> finite_primes(const std::vector<BitString>& words) {
  PrimeTable table;
  std::vector<std::uint64_t> out;
  for (const auto& w : words) {
    const BigInt idx = bin_inv(w);
    if (idx > kMaxPrimeIndex) throw BudgetExhausted("prime index " + idx.get_str() + " is too large");
    out.push_back(table.nth(idx.get_ui()));
  }
  return out;
}

// sum over j > len of B(j) y^j, where B(j) = prod_p ((j+1)/floor(log2 p) + 1)
// bounds the number of smooth n with |bin(n)| = j, and y >= 2^-s.
std::optional<Rational> smooth_tail(const std::vector<std::uint64_t>& primes, std::int64_t len, const Rational& y) {
  if (y >= Rational(1)) return std::nullopt;
  std::vector<std::uint64_t> logs;
  for (auto p : primes) logs.push_back(63 - static_cast<std::uint64_t>(__builtin_clzll(p)));
  const auto count_bound = [&](std::int64_t j) {
    Rational b(1);
    for (auto lp : logs) b *= Rational(static_cast<long>(j + 1)) / Rational(static_cast<long>(lp)) + Rational(1);
    return b;
  };
  const Rational target = (Rational(1) + y) / (Rational(2) * y);
  std::int64_t j0 = std::max<std::int64_t>(len + 1, 0);
  const auto growth = [&](std::int64_t j) {
    return pow(Rational(static_cast<long>(j + 3)) / Rational(static_cast<long>(j + 2)), logs.size());
  };
  while (growth(j0) > target) j0 = std::max<std::int64_t>(2 * j0, j0 + 1);
  Rational sum;
  for (std::int64_t j = std::max<std::int64_t>(len + 1, 0); j < j0; ++j) sum += count_bound(j) * pow(y, j);
  const Rational rho = growth(j0) * y;
  sum += count_bound(j0) * pow(y, j0) / (Rational(1) - rho);
  return sum;
}

std::optional<Rational> finite_tail(const std::vector<BitString>& words, std::int64_t len, Weight weight,
                                    const Rational& s) {
  WeightFn fn(weight, s);
  Rational sum;
  for (const auto& w : words)
    if (static_cast<std::int64_t>(w.size()) > len) sum += fn.upper(w);
  return sum;
}

Builtin builtin(BuiltinKind kind) {
  Builtin b;
  b.kind = kind;
  return b;
}

Verdict verdict_from(const Enclosure& e, bool divergent) {
  if (divergent) return {VerdictClass::Divergent, true, e};
  if (e.bounded() && *e.hi() <= Rational(1)) return {VerdictClass::Tuatara, true, e};
  if (e.bounded() && e.lo() > Rational(1)) return {VerdictClass::Convergent, true, e};
  return {VerdictClass::Unknown, false, e};
}

}  // namespace

// ---- PrimeTable ----------------------------------------------------------------

void PrimeTable::grow(std::uint64_t limit) {
  if (limit <= limit_) return;
  std::vector<bool> composite(limit + 1, false);
  primes_.clear();
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes_.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  limit_ = limit;
}

std::uint64_t PrimeTable::nth(std::uint64_t i) {
  if (i == 0) throw InvalidArgument("prime indices start at 1");
  while (primes_.size() < i) grow(std::max<std::uint64_t>(64, 2 * limit_));
  return primes_[i - 1];
}

std::uint64_t PrimeTable::index_of(std::uint64_t p) {
  if (p < 2) return 0;
  grow(std::max(p, limit_));
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) return 0;
  return static_cast<std::uint64_t>(it - primes_.begin()) + 1;
}

// ---- MachineSpec ---------------------------------------------------------------

MachineSpec MachineSpec::finite(std::vector<BitString> domain, std::map<BitString, BitString> outputs) {
  std::sort(domain.begin(), domain.end(), LenLexLess{});
  for (std::size_t i = 1; i < domain.size(); ++i)
    if (domain[i] == domain[i - 1]) throw InvalidArgument("duplicate domain string " + domain[i].render());
  for (const auto& [k, v] : outputs)
    if (!contains_word(domain, k)) throw InvalidArgument("output given for " + k.render() + ", which is not in the domain");
  return MachineSpec(FiniteTable{std::move(domain), std::move(outputs)});
}

MachineSpec MachineSpec::finite_mapped(const std::vector<std::pair<BitString, BitString>>& table) {
  std::vector<BitString> domain;
  std::map<BitString, BitString> outputs;
  for (const auto& [k, v] : table) {
    domain.push_back(k);
    if (!outputs.emplace(k, v).second) throw InvalidArgument("duplicate domain string " + k.render());
  }
  return finite(std::move(domain), std::move(outputs));
}

MachineSpec MachineSpec::all_strings() { return MachineSpec(builtin(BuiltinKind::AllStrings)); }
MachineSpec MachineSpec::lukasiewicz() { return MachineSpec(builtin(BuiltinKind::Lukasiewicz)); }

MachineSpec MachineSpec::iota(std::uint64_t steps) {
  if (steps == 0) throw InvalidArgument("iota machine needs a positive step budget");
  Builtin b = builtin(BuiltinKind::Iota);
  b.steps = steps;
  return MachineSpec(b);
}

MachineSpec MachineSpec::geometric(std::uint64_t start, std::vector<BitString> extras) {
  std::sort(extras.begin(), extras.end(), LenLexLess{});
  for (std::size_t i = 0; i < extras.size(); ++i) {
    if (i > 0 && extras[i] == extras[i - 1]) throw InvalidArgument("duplicate domain string " + extras[i].render());
    const auto& s = extras[i].str();
    const auto one = s.find('1');
    if (one != std::string::npos && one + 1 == s.size() && one >= start)
      throw InvalidArgument("extra string " + extras[i].render() + " is already generated");
  }
  Builtin b = builtin(BuiltinKind::Geometric);
  b.start = start;
  b.extras = std::move(extras);
  return MachineSpec(b);
}

MachineSpec MachineSpec::product(const MachineSpec& c) {
  if (contains_empty(c)) throw InvalidArgument("product operand must not contain the empty string");
  return MachineSpec(Construction{ConstructionKind::Product, {c}, {}});
}

MachineSpec MachineSpec::doubled(const MachineSpec& t) { return MachineSpec(Construction{ConstructionKind::Double, {t}, {}}); }

MachineSpec MachineSpec::tuatara_of(const MachineSpec& c) {
  const auto pf = known_prefix_free(c);
  if (!pf || !*pf) throw InvalidArgument("tuatara_of needs a prefix-free operand, got " + c.describe());
  return MachineSpec(Construction{ConstructionKind::TuatarafOf, {c}, {}});
}

MachineSpec MachineSpec::universal_tuatara(std::vector<MachineSpec> members) {
  if (members.empty()) throw InvalidArgument("universal_tuatara needs at least one member");
  return MachineSpec(Construction{ConstructionKind::UniversalTuatara, std::move(members), {}});
}

MachineSpec MachineSpec::universal_convergent(std::vector<MachineSpec> members, std::vector<Rational> bounds) {
  if (members.empty()) throw InvalidArgument("universal_convergent needs at least one member");
  if (members.size() != bounds.size()) throw InvalidArgument("universal_convergent needs one bound per member");
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (bounds[i].sign() <= 0) throw InvalidArgument("declared zeta bounds must be positive");
    convergent_prefix(i, bounds[i]);
    const Enclosure z = zeta_enclosure(members[i], 10000);
    if (z.lo() > bounds[i])
      throw InvalidArgument("member " + std::to_string(i + 1) + " has zeta >= " + z.lo().to_string() +
                            ", above its declared bound " + bounds[i].to_string());
  }
  return MachineSpec(Construction{ConstructionKind::UniversalConvergent, std::move(members), std::move(bounds)});
}

MachineSpec MachineSpec::prime_product(const MachineSpec& m) {
  return MachineSpec(Construction{ConstructionKind::PrimeProduct, {m}, {}});
}

std::string MachineSpec::describe() const {
  if (const auto* f = as_finite()) {
    std::string s = "finite{";
    for (std::size_t i = 0; i < f->domain.size(); ++i) s += (i ? "," : "") + f->domain[i].render();
    return s + "}";
  }
  if (const auto* b = as_builtin()) {
    switch (b->kind) {
      case BuiltinKind::AllStrings: return "all_strings";
      case BuiltinKind::Lukasiewicz: return "lukasiewicz";
      case BuiltinKind::Iota: return "iota(" + std::to_string(b->steps) + ")";
      case BuiltinKind::Geometric: {
        std::string s = "geometric(" + std::to_string(b->start);
        for (const auto& e : b->extras) s += "," + e.render();
        return s + ")";
      }
    }
  }
  const auto* c = as_construction();
  static const char* names[] = {"product", "double", "tuatara_of", "universal_tuatara", "universal_convergent",
                                "prime_product"};
  std::string s = std::string(names[static_cast<int>(c->kind)]) + "(";
  for (std::size_t i = 0; i < c->operands.size(); ++i) {
    s += (i ? ", " : "") + c->operands[i].describe();
    if (!c->bounds.empty()) s += " <= " + c->bounds[i].to_string();
  }
  return s + ")";
}

// ---- streams and counts ------------------------------------------------------------

std::optional<BigInt> DomainStream::count_up_to_length(std::int64_t length) const {
  return tuatara::count_up_to_length(spec_, length);
}

std::optional<Rational> DomainStream::tail_bound(std::int64_t length, Weight weight, const Rational& s) const {
  return tuatara::tail_bound(spec_, length, weight, s);
}

std::unique_ptr<DomainStream> domain_stream(const MachineSpec& m) {
  if (const auto* f = m.as_finite()) return std::make_unique<VectorStream>(m, f->domain);
  if (const auto* b = m.as_builtin()) {
    switch (b->kind) {
      case BuiltinKind::AllStrings: return std::make_unique<AllStringsStream>(m);
      case BuiltinKind::Lukasiewicz: return std::make_unique<ProgramStream>(m, std::nullopt);
      case BuiltinKind::Iota: return std::make_unique<ProgramStream>(m, b->steps);
      case BuiltinKind::Geometric: return std::make_unique<GeometricStream>(m, b->start, b->extras);
    }
  }
  const auto& c = *m.as_construction();
  switch (c.kind) {
    case ConstructionKind::Product: return std::make_unique<ProductStream>(m, c.operands[0]);
    case ConstructionKind::PrimeProduct: return std::make_unique<PrimeProductStream>(m, c.operands[0]);
    case ConstructionKind::Double:
      return std::make_unique<ExpandMergeStream>(
          m, c.operands,
          [](std::size_t, const DomainEntry& e) { return std::vector<DomainEntry>{{e.word + e.word, e.certain}}; },
          [](std::size_t, std::uint64_t len) { return 2 * len; });
    case ConstructionKind::TuatarafOf:
      return std::make_unique<ExpandMergeStream>(
          m, c.operands,
          [](std::size_t, const DomainEntry& e) {
            std::vector<DomainEntry> out;
            for (auto& w : x_set(e.word)) out.push_back({std::move(w), e.certain});
            return out;
          },
          [](std::size_t, std::uint64_t len) { return len; });
    case ConstructionKind::UniversalTuatara:
    case ConstructionKind::UniversalConvergent: {
      std::vector<std::uint64_t> prefix;
      for (std::size_t i = 0; i < c.operands.size(); ++i)
        prefix.push_back(c.kind == ConstructionKind::UniversalTuatara ? i + 1 : convergent_prefix(i, c.bounds[i]));
      return std::make_unique<ExpandMergeStream>(
          m, c.operands,
          [prefix](std::size_t k, const DomainEntry& e) {
            return std::vector<DomainEntry>{{zeros_one(prefix[k]) + e.word, e.certain}};
          },
          [prefix](std::size_t k, std::uint64_t len) { return len + prefix[k] + 1; });
    }
  }
  throw Error("unreachable machine kind");
}

std::optional<std::vector<BitString>> finite_domain(const MachineSpec& m) {
  if (const auto* f = m.as_finite()) return f->domain;
  if (m.as_builtin()) return std::nullopt;
  const auto& c = *m.as_construction();
  if (c.kind == ConstructionKind::Product || c.kind == ConstructionKind::PrimeProduct) {
    auto op = finite_domain(c.operands[0]);
    if (op && op->empty()) return std::vector<BitString>{BitString()};
    return std::nullopt;
  }
  for (const auto& op : c.operands)
    if (!finite_domain(op)) return std::nullopt;
  std::vector<BitString> out;
  auto s = domain_stream(m);
  while (auto e = s->next()) out.push_back(std::move(e->word));
  return out;
}

std::optional<bool> known_prefix_free(const MachineSpec& m) {
  if (const auto* f = m.as_finite()) return is_prefix_free(f->domain);
  if (const auto* b = m.as_builtin()) {
    switch (b->kind) {
      case BuiltinKind::AllStrings: return false;
      case BuiltinKind::Lukasiewicz:
      case BuiltinKind::Iota: return true;
      case BuiltinKind::Geometric: return geometric_prefix_free(*b);
    }
  }
  if (auto dom = finite_domain(m)) return is_prefix_free(*dom);
  const auto& c = *m.as_construction();
  switch (c.kind) {
    case ConstructionKind::Double: {
      auto op = known_prefix_free(c.operands[0]);
      if (op && *op) return true;
      return std::nullopt;
    }
    case ConstructionKind::UniversalTuatara:
    case ConstructionKind::UniversalConvergent: {
      bool all = true;
      for (const auto& op : c.operands) {
        auto pf = known_prefix_free(op);
        if (pf && !*pf) return false;
        all = all && pf.has_value();
      }
      if (all) return true;
      return std::nullopt;
    }
    case ConstructionKind::Product:
    case ConstructionKind::PrimeProduct:
      // eps is in the domain together with other strings.
      return false;
    case ConstructionKind::TuatarafOf:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<BigInt> count_up_to_length(const MachineSpec& m, std::int64_t length) {
  if (length < 0) return BigInt(0);
  if (auto dom = finite_domain(m)) {
    return BigInt(static_cast<unsigned long>(std::count_if(dom->begin(), dom->end(), [&](const BitString& w) {
      return static_cast<std::int64_t>(w.size()) <= length;
    })));
  }
  if (const auto* b = m.as_builtin()) {
    switch (b->kind) {
      case BuiltinKind::AllStrings: return BigInt(pow2(static_cast<std::uint64_t>(length) + 1) - 1);
      case BuiltinKind::Lukasiewicz: {
        BigInt total = 0;
        for (std::uint64_t k = 0; 2 * k + 1 <= static_cast<std::uint64_t>(length); ++k) total += catalan(k);
        return total;
      }
      case BuiltinKind::Iota: return std::nullopt;
      case BuiltinKind::Geometric: {
        const auto len = static_cast<std::uint64_t>(length);
        BigInt total = len >= b->start + 1 ? BigInt(static_cast<unsigned long>(len - b->start)) : BigInt(0);
        for (const auto& e : b->extras)
          if (e.size() <= len) ++total;
        return total;
      }
    }
  }
  return std::nullopt;
}

std::optional<Rational> tail_bound(const MachineSpec& m, std::int64_t length, Weight weight, const Rational& s) {
  if (length < -1) length = -1;
  if (auto dom = finite_domain(m)) return finite_tail(*dom, length, weight, s);
  if (s.sign() <= 0) return std::nullopt;
  if (const auto* b = m.as_builtin()) {
    switch (b->kind) {
      case BuiltinKind::AllStrings: {
        if (s <= Rational(1)) return std::nullopt;
        if (weight == Weight::Omega) {
          const Rational r = pow2_up(Rational(1) - s);
          if (r >= Rational(1)) return std::nullopt;
          return pow2_up((Rational(1) - s) * Rational(length + 1)) / (Rational(1) - r);
        }
        if (length == -1) return s / (s - Rational(1));
        // sum_{n >= N} n^-s <= integral from N-1, N = 2^(length+1).
        const BigInt n0 = pow2(static_cast<std::uint64_t>(length) + 1) - 1;
        return inv_pow_up(n0, s - Rational(1)) / (s - Rational(1));
      }
      case BuiltinKind::Lukasiewicz:
      case BuiltinKind::Iota: {
        // Programs of length 2n-1 > length, n >= n0; 1/bin_inv(w) <= 2^-|w|.
        if (s < Rational(1)) return std::nullopt;
        const auto n0 = static_cast<std::uint64_t>(floor_half(length + 1) + 1);
        const Rational mass = Rational(1) - iota::syntactic_omega_partial(n0 - 1);
        return mass * pow2_up(-(s - Rational(1)) * Rational(static_cast<long>(2 * n0 - 1)));
      }
      case BuiltinKind::Geometric: {
        // bin_inv(0^i 1) = 2^(i+1) + 1, so both weights are <= 2^(-s(i+1)).
        const std::int64_t first = std::max<std::int64_t>(static_cast<std::int64_t>(b->start), length);
        const Rational q = pow2_up(-s);
        if (q >= Rational(1)) return std::nullopt;
        Rational sum = pow2_up(-s * Rational(first + 1)) / (Rational(1) - q);
        return sum + *finite_tail(b->extras, length, weight, s);
      }
    }
  }
  const auto& c = *m.as_construction();
  switch (c.kind) {
    case ConstructionKind::Double:
      // |xx| > length iff |x| > floor(length/2); weight of xx <= 2^(-2s|x|).
      return tail_bound(c.operands[0], floor_half(length), Weight::Omega, s * Rational(2));
    case ConstructionKind::TuatarafOf: {
      // Every x in X(p) has |p| <= |x| <= 2|p|.
      const std::int64_t half = floor_half(length);
      if (weight == Weight::Omega) {
        const Rational q = pow2_up(-s);
        if (q >= Rational(1)) return std::nullopt;
        auto op = tail_bound(c.operands[0], half, Weight::Omega, s);
        if (!op) return std::nullopt;
        return *op / (Rational(1) - q);
      }
      // sum over X(p) of 1/bin_inv(x) is 2^-|p|, and bin_inv(x) >= 2^(length+1).
      if (s < Rational(1)) return std::nullopt;
      auto op = tail_bound(c.operands[0], half, Weight::Omega, Rational(1));
      if (!op) return std::nullopt;
      return *op * pow2_up(-(s - Rational(1)) * Rational(length + 1));
    }
    case ConstructionKind::UniversalTuatara:
    case ConstructionKind::UniversalConvergent: {
      // bin_inv(0^a 1 x) >= (2^a + 1) bin_inv(x).
      Rational sum;
      for (std::size_t i = 0; i < c.operands.size(); ++i) {
        const std::uint64_t a =
            c.kind == ConstructionKind::UniversalTuatara ? i + 1 : convergent_prefix(i, c.bounds[i]);
        const std::int64_t inner = std::max<std::int64_t>(length - static_cast<std::int64_t>(a) - 1, -1);
        auto op = tail_bound(c.operands[i], inner, weight, s);
        if (!op) return std::nullopt;
        const Rational factor = weight == Weight::Omega ? pow2_up(-s * Rational(static_cast<long>(a + 1)))
                                                        : inv_pow_up(pow2(a) + 1, s);
        sum += factor * *op;
      }
      return sum;
    }
    case ConstructionKind::Product: {
      // Cauchy bound on the coefficients of prod 1/(1 - x^|p|) at radius r.
      auto op = finite_domain(c.operands[0]);
      if (!op) return std::nullopt;
      const Rational x = pow2_up(-s);
      if (x >= Rational(1)) return std::nullopt;
      const Rational r = (Rational(1) + x) / Rational(2);
      Rational g(1);
      for (const auto& p : *op) g /= Rational(1) - pow(r, p.size());
      const Rational ratio = x / r;
      return g * pow(ratio, static_cast<std::uint64_t>(length + 1)) / (Rational(1) - ratio);
    }
    case ConstructionKind::PrimeProduct: {
      auto op = finite_domain(c.operands[0]);
      if (!op) return std::nullopt;
      return smooth_tail(finite_primes(*op), length, pow2_up(-s));
    }
  }
  return std::nullopt;
}

// ---- sums ----------------------------------------------------------------------

constexpr std::int64_t kConvergedBits = 256;

Enclosure weighted_sum(const MachineSpec& m, Weight weight, const Rational& s, std::uint64_t budget) {
  if (s.sign() <= 0) throw InvalidArgument("the exponent s must be positive, got " + s.to_string());
  WeightFn fn(weight, s);
  SumAccumulator acc;
  if (auto dom = finite_domain(m)) {
    for (const auto& w : *dom) {
      auto [lo, hi] = fn(w);
      acc.add(lo, hi);
    }
    return Enclosure::between(acc.lo(), acc.hi());
  }
  if (const auto* b = m.as_builtin(); b && b->kind == BuiltinKind::AllStrings && weight == Weight::Omega &&
                                 s > Rational(1)) {
    // 2^n strings of length n: sum is 1/(1 - 2^(1-s)).
    const Rational e = Rational(1) - s;
    return Enclosure::between(Rational(1) / (Rational(1) - pow2_down(e)), Rational(1) / (Rational(1) - pow2_up(e)));
  }
  if (const auto* b = m.as_builtin(); b && b->kind == BuiltinKind::Geometric && weight == Weight::Omega) {
    // sum_{i >= start} 2^(-s(i+1)) = 2^(-s(start+1)) / (1 - 2^-s), plus the extras.
    const Rational first = -s * Rational(static_cast<long>(b->start + 1));
    Rational lo = pow2_down(first) / (Rational(1) - pow2_down(-s));
    Rational hi = pow2_up(first) / (Rational(1) - pow2_up(-s));
    for (const auto& e : b->extras) {
      auto [elo, ehi] = fn(e);
      lo += elo;
      hi += ehi;
    }
    return Enclosure::between(lo, hi);
  }
  auto stream = domain_stream(m);
  // Upper bound: least of (sum over complete shorter levels + tail past them).
  std::optional<Rational> best = tail_bound(m, -1, weight, s);
  auto offer = [&](const std::optional<Rational>& cand) {
    if (cand && (!best || *cand < *best)) best = *cand;
  };
  std::int64_t level = -1;
  bool exhausted = false;
  for (std::uint64_t k = 0; k < budget; ++k) {
    auto e = stream->next();
    if (!e) {
      exhausted = true;
      break;
    }
    const auto len = static_cast<std::int64_t>(e->word.size());
    if (len > level) {
      if (auto t = tail_bound(m, len - 1, weight, s)) offer(acc.round_up(acc.hi() + *t));
      level = len;
      // Past this width more terms cannot sharpen anything a caller asks for.
      if (best && *best - acc.lo() <= Rational::pow2(-kConvergedBits)) break;
    }
    auto [lo, hi] = fn(e->word);
    acc.add(e->certain ? lo : Rational(0), hi);
  }
  if (!exhausted && !stream->next()) exhausted = true;
  if (exhausted) return Enclosure::between(acc.lo(), acc.hi());
  if (!best) return Enclosure::at_least(acc.lo());
  return Enclosure::between(acc.lo(), std::max(*best, acc.lo()));
}

Enclosure omega_enclosure(const MachineSpec& m, std::uint64_t budget) {
  Enclosure e = weighted_sum(m, Weight::Omega, Rational(1), budget);
  if (auto closed = product_closed_form(m); closed && !e.contains(*closed))
    throw Error("product closed form " + closed->to_string() + " lies outside the enumerated enclosure " +
                e.to_string());
  return e;
}

Enclosure zeta_enclosure(const MachineSpec& m, std::uint64_t budget) {
  return weighted_sum(m, Weight::Zeta, Rational(1), budget);
}

std::optional<Rational> product_closed_form(const MachineSpec& product) {
  const auto* c = product.as_construction();
  if (!c || c->kind != ConstructionKind::Product) return std::nullopt;
  auto op = finite_domain(c->operands[0]);
  // Distinct multisets give distinct words only for prefix-free operands.
  if (!op || !is_prefix_free(*op)) return std::nullopt;
  Rational g(1);
  for (const auto& p : *op) g /= Rational(1) - Rational::pow2(-static_cast<std::int64_t>(p.size()));
  return g;
}

// ---- verdicts --------------------------------------------------------------------

std::string to_string(VerdictClass c) {
  switch (c) {
    case VerdictClass::Divergent: return "divergent";
    case VerdictClass::Convergent: return "convergent";
    case VerdictClass::Tuatara: return "tuatara";
    case VerdictClass::Unknown: return "unknown";
  }
  return "?";
}

bool analytically_divergent(const MachineSpec& m) {
  if (const auto* b = m.as_builtin()) return b->kind == BuiltinKind::AllStrings;
  const auto* c = m.as_construction();
  if (!c) return false;
  switch (c->kind) {
    case ConstructionKind::PrimeProduct: {
      // Every index names a prime, so every n is smooth.
      const auto* op = c->operands[0].as_builtin();
      return op && op->kind == BuiltinKind::AllStrings;
    }
    case ConstructionKind::UniversalTuatara:
    case ConstructionKind::UniversalConvergent:
      return std::any_of(c->operands.begin(), c->operands.end(), analytically_divergent);
    default: return false;
  }
}

Classification classify(const MachineSpec& m, std::uint64_t budget) {
  const bool divergent = analytically_divergent(m);
  if (divergent) {
    const Enclosure lo_only = Enclosure::at_least(zeta_enclosure(m, std::min<std::uint64_t>(budget, 1000)).lo());
    const Enclosure omega_lo = Enclosure::at_least(omega_enclosure(m, std::min<std::uint64_t>(budget, 1000)).lo());
    return {verdict_from(lo_only, true), verdict_from(omega_lo, true)};
  }
  return {verdict_from(zeta_enclosure(m, budget), false), verdict_from(omega_enclosure(m, budget), false)};
}

ChainReport sanity_chain(const MachineSpec& m) {
  auto dom = finite_domain(m);
  if (!dom) throw InvalidArgument("sanity_chain needs a finite domain");
  if (!is_prefix_free(*dom)) throw InvalidArgument("sanity_chain needs a prefix-free domain");
  ChainReport r;
  bool power_of_two = false;
  for (const auto& w : *dom) {
    r.omega += Rational::pow2(-static_cast<std::int64_t>(w.size()));
    r.zeta += Rational(BigInt(1), bin_inv(w));
    power_of_two = power_of_two || hamming_weight(w) == 0;
  }
  const Rational half = r.omega / Rational(2);
  r.holds = Rational(1) >= r.omega && r.omega >= r.zeta && r.zeta >= half && half >= Rational(0);
  r.strict_expected = !dom->empty() && !power_of_two;
  r.strict_holds = Rational(1) > r.omega && r.omega > r.zeta && r.zeta > half && half > Rational(0);
  return r;
}

// ---- identities ----------------------------------------------------------------

std::vector<BitString> x_set(const BitString& p) {
  std::vector<BitString> out{p};
  for (std::size_t i = 1; i <= p.size(); ++i)
    if (p.bit(i - 1)) out.push_back(p + BitString::zeros(i));
  return out;
}

UnitIdentity tuatara_unit_identity(const BitString& p) {
  if (p.empty()) throw InvalidArgument("tuatara_unit_identity needs |p| >= 1");
  UnitIdentity u{x_set(p), Rational(0)};
  for (const auto& x : u.set) u.sum += Rational(BigInt(1), bin_inv(x));
  return u;
}

bool universal_prefix_identity(std::uint64_t i, const BigInt& n) {
  if (i < 1 || n < 1) throw InvalidArgument("universal_prefix_identity needs i, n >= 1");
  const std::uint64_t log = bit_length(n) - 1;
  return zeros_one(i) + bin(n) == bin(BigInt(pow2(i + 1 + log) + n));
}

BigInt j_pairing(std::uint64_t i, const BigInt& bound) {
  if (i < 1 || bound < 1) throw InvalidArgument("j_pairing needs i, M >= 1");
  return BigInt(pow2(i) * (2 * bound + 1) - 1);
}

Enclosure density_enclosure(const MachineSpec& m, std::uint64_t n) {
  if (n < 1) throw InvalidArgument("density needs n >= 1");
  auto count = count_up_to_length(m, static_cast<std::int64_t>(n));
  if (!count) throw InvalidArgument("no exact length counts for " + m.describe());
  if (*count < 1) throw InvalidArgument("no domain strings of length <= " + std::to_string(n));
  const Enclosure ln_count = ln_enclosure(Rational(*count), 96);
  const Enclosure ln2 = ln_enclosure(Rational(2), 96);
  const Rational nn(static_cast<long>(n));
  return ln_count / Enclosure::between(ln2.lo() * nn, *ln2.hi() * nn);
}

Rational density_statistic(const MachineSpec& m, std::uint64_t n) { return density_enclosure(m, n).midpoint(); }

FreshIndex fresh_index(const MachineSpec& m, const BitString& y, std::uint64_t budget) {
  const Rational threshold = rational_of_prefix(y);
  FreshIndex out;
  auto stream = domain_stream(m);
  for (std::uint64_t k = 0; k < budget; ++k) {
    auto e = stream->next();
    if (!e) break;
    if (!e->certain) continue;
    const BigInt n = bin_inv(e->word);
    out.enumerated.push_back(n);
    out.sum += Rational(BigInt(1), n);
    if (out.sum > threshold) {
      std::set<BigInt> seen(out.enumerated.begin(), out.enumerated.end());
      BigInt j = 1;
      while (seen.count(j)) ++j;
      out.index = j;
      out.word = bin(j);
      return out;
    }
  }
  throw BudgetExhausted("fresh_index: the enumerated sum " + out.sum.to_string() + " did not exceed 0." + y.str() +
                        " = " + threshold.to_string() + " within the budget");
}

// ---- execution -----------------------------------------------------------------

namespace {

std::optional<BitString> execute_product(const MachineSpec& op, const BitString& w) {
  auto words = finite_domain(op);
  if (!words) throw InvalidArgument("execute on a product needs a finite operand");
  // Depth-first over nondecreasing decompositions, smallest pieces first.
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t pos, std::size_t from) {
    if (pos == w.size()) return true;
    for (std::size_t i = from; i < words->size(); ++i) {
      const auto& p = (*words)[i];
      if (p.size() > w.size() - pos) break;
      if (w.str().compare(pos, p.size(), p.str()) != 0) continue;
      chosen.push_back(i);
      if (search(pos + p.size(), i)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!search(0, 0)) return std::nullopt;
  BitString out;
  for (auto i : chosen) out += *execute(op, (*words)[i]);
  return out;
}

}  // namespace

std::optional<BitString> execute(const MachineSpec& m, const BitString& w) {
  if (const auto* f = m.as_finite()) {
    if (!contains_word(f->domain, w)) return std::nullopt;
    auto it = f->outputs.find(w);
    return it == f->outputs.end() ? BitString() : it->second;
  }
  if (const auto* b = m.as_builtin()) {
    switch (b->kind) {
      case BuiltinKind::AllStrings: return w;
      case BuiltinKind::Lukasiewicz:
        if (iota::is_program(w)) return BitString();
        return std::nullopt;
      case BuiltinKind::Iota:
        if (!iota::is_program(w)) return std::nullopt;
        try {
          return iota::decode_bits(w, b->steps);
        } catch (const Error&) {
          return std::nullopt;
        }
      case BuiltinKind::Geometric: {
        const auto one = w.str().find('1');
        if (one != std::string::npos && one + 1 == w.size() && one >= b->start) return BitString();
        if (std::find(b->extras.begin(), b->extras.end(), w) != b->extras.end()) return BitString();
        return std::nullopt;
      }
    }
  }
  const auto& c = *m.as_construction();
  switch (c.kind) {
    case ConstructionKind::Double: {
      if (w.size() % 2) return std::nullopt;
      const BitString x = w.prefix(w.size() / 2);
      if (w.suffix_from(w.size() / 2) != x) return std::nullopt;
      return execute(c.operands[0], x);
    }
    case ConstructionKind::TuatarafOf: {
      std::size_t core = w.size();
      while (core > 0 && w.bit(core - 1) == 0) --core;
      // w = p 0^i with i = 0 or p_i = 1.
      for (std::size_t plen = w.size(); plen >= core && plen >= 1; --plen) {
        const std::size_t i = w.size() - plen;
        if (i > plen) break;
        if (i > 0 && w.bit(i - 1) == 0) continue;
        if (auto out = execute(c.operands[0], w.prefix(plen))) return out;
      }
      return std::nullopt;
    }
    case ConstructionKind::UniversalTuatara:
    case ConstructionKind::UniversalConvergent: {
      const auto one = w.str().find('1');
      if (one == std::string::npos) return std::nullopt;
      for (std::size_t i = 0; i < c.operands.size(); ++i) {
        const std::uint64_t a =
            c.kind == ConstructionKind::UniversalTuatara ? i + 1 : convergent_prefix(i, c.bounds[i]);
        if (a == one) return execute(c.operands[i], w.suffix_from(one + 1));
      }
      return std::nullopt;
    }
    case ConstructionKind::Product: return execute_product(c.operands[0], w);
    case ConstructionKind::PrimeProduct: {
      BigInt n = bin_inv(w);
      if (!n.fits_ulong_p()) throw InvalidArgument("prime_product execution supports n < 2^64");
      std::uint64_t rest = n.get_ui();
      PrimeTable table;
      for (std::uint64_t q = 2; q * q <= rest || rest > 1; ++q) {
        if (q * q > rest) q = rest;
        if (rest % q) continue;
        while (rest % q == 0) rest /= q;
        const std::uint64_t idx = table.index_of(q);
        if (!execute(c.operands[0], bin(idx))) return std::nullopt;
      }
      return BitString();
    }
  }
  return std::nullopt;
}

}  // namespace tuatara
