#include "tuatara/iota.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "tuatara/numerics.hpp"

namespace tuatara::iota {

// ---- syntax ----------------------------------------------------------------

IotaTerm IotaTerm::leaf() { return IotaTerm(std::make_shared<const Node>()); }

IotaTerm IotaTerm::apply(const IotaTerm& f, const IotaTerm& x) {
  return IotaTerm(std::make_shared<const Node>(Node{f.node_, x.node_}));
}

IotaTerm IotaTerm::left() const {
  if (is_leaf()) throw InvalidArgument("left() of an Iota leaf");
  return IotaTerm(node_->f);
}

IotaTerm IotaTerm::right() const {
  if (is_leaf()) throw InvalidArgument("right() of an Iota leaf");
  return IotaTerm(node_->x);
}

BitString IotaTerm::unparse() const {
  std::string out;
  std::vector<const Node*> todo{node_.get()};
  while (!todo.empty()) {
    const Node* n = todo.back();
    todo.pop_back();
    if (!n->f) {
      out.push_back('0');
    } else {
      out.push_back('1');
      todo.push_back(n->x.get());
      todo.push_back(n->f.get());
    }
  }
  return BitString(out);
}

std::size_t IotaTerm::leaves() const { return (unparse().size() + 1) / 2; }

IotaTerm parse(const BitString& bits) {
  // Pre-order descent with an explicit stack of half-built applications.
  struct Pending {
    std::optional<IotaTerm> f;
  };
  std::vector<Pending> stack;
  std::optional<IotaTerm> done;
  std::size_t pos = 0;
  while (!done) {
    if (pos == bits.size()) throw Incomplete(stack.size() + 1);
    const int b = bits.bit(pos++);
    if (b == 1) {
      stack.push_back({});
      continue;
    }
    IotaTerm t = IotaTerm::leaf();
    while (true) {
      if (stack.empty()) {
        done = t;
        break;
      }
      if (!stack.back().f) {
        stack.back().f = t;
        break;
      }
      t = IotaTerm::apply(*stack.back().f, t);
      stack.pop_back();
    }
  }
  if (pos != bits.size()) throw TrailingBits(pos);
  return *done;
}

IotaTerm parse_text(std::string_view text) {
  std::string bits;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) bits.push_back(c);
  return parse(BitString(bits));
}

bool is_program(const BitString& bits) {
  std::int64_t need = 1;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (need == 0) return false;
    need += bits.bit(i) ? 1 : -1;
  }
  return need == 0;
}

BigInt count_programs(std::uint64_t length) {
  // ways[k]: prefixes that still expect k subterms.
  std::vector<BigInt> ways(length + 2, 0);
  ways[1] = 1;
  for (std::uint64_t i = 0; i < length; ++i) {
    std::vector<BigInt> nxt(length + 2, 0);
    for (std::uint64_t k = 1; k <= length; ++k) {
      if (ways[k] == 0) continue;
      nxt[k - 1] += ways[k];
      nxt[k + 1] += ways[k];
    }
    ways = std::move(nxt);
  }
  return ways[0];
}

// ---- combinator terms --------------------------------------------------------

CombTerm CombTerm::s() { return CombTerm(std::make_shared<const Node>(Node{Kind::S, "", nullptr, nullptr})); }
CombTerm CombTerm::k() { return CombTerm(std::make_shared<const Node>(Node{Kind::K, "", nullptr, nullptr})); }
CombTerm CombTerm::iota() { return CombTerm(std::make_shared<const Node>(Node{Kind::Iota, "", nullptr, nullptr})); }
CombTerm CombTerm::var(std::string name) {
  return CombTerm(std::make_shared<const Node>(Node{Kind::Var, std::move(name), nullptr, nullptr}));
}
CombTerm CombTerm::apply(const CombTerm& f, const CombTerm& x) {
  return CombTerm(std::make_shared<const Node>(Node{Kind::App, "", f.node_, x.node_}));
}

CombTerm CombTerm::from_iota(const IotaTerm& t) {
  if (t.is_leaf()) return iota();
  return apply(from_iota(t.left()), from_iota(t.right()));
}

CombTerm CombTerm::fun() const {
  if (kind() != Kind::App) throw InvalidArgument("fun() of a non-application");
  return CombTerm(node_->f);
}

CombTerm CombTerm::arg() const {
  if (kind() != Kind::App) throw InvalidArgument("arg() of a non-application");
  return CombTerm(node_->x);
}

std::string CombTerm::to_string() const {
  switch (kind()) {
    case Kind::S: return "S";
    case Kind::K: return "K";
    case Kind::Iota: return "i";
    case Kind::Var: return name();
    case Kind::App: return "(" + fun().to_string() + " " + arg().to_string() + ")";
  }
  return "?";
}

std::size_t CombTerm::size() const {
  std::size_t n = 0;
  std::vector<const Node*> todo{node_.get()};
  while (!todo.empty()) {
    const Node* p = todo.back();
    todo.pop_back();
    ++n;
    if (p->kind == Kind::App) {
      todo.push_back(p->f.get());
      todo.push_back(p->x.get());
    }
  }
  return n;
}

bool operator==(const CombTerm& a, const CombTerm& b) {
  std::vector<std::pair<const CombTerm::Node*, const CombTerm::Node*>> todo{{a.node_.get(), b.node_.get()}};
  while (!todo.empty()) {
    auto [p, q] = todo.back();
    todo.pop_back();
    if (p == q) continue;
    if (p->kind != q->kind) return false;
    if (p->kind == CombTerm::Kind::Var && p->name != q->name) return false;
    if (p->kind == CombTerm::Kind::App) {
      todo.emplace_back(p->f.get(), q->f.get());
      todo.emplace_back(p->x.get(), q->x.get());
    }
  }
  return true;
}

// ---- reducer -----------------------------------------------------------------

class Reducer {
 public:
  using Id = std::uint32_t;
  enum Tag : std::uint8_t { S, K, I, Var, App };

  Reducer(std::uint64_t step_budget, std::uint64_t size_budget) : step_budget_(step_budget), size_budget_(size_budget) {
    nodes_.push_back({S, 0, 0});
    nodes_.push_back({K, 0, 0});
    nodes_.push_back({I, 0, 0});
  }

  static constexpr Id kS = 0, kK = 1, kI = 2;

  Id app(Id f, Id x) {
    nodes_.push_back({App, f, x});
    return static_cast<Id>(nodes_.size() - 1);
  }
  Id var(const std::string& name) {
    auto [it, fresh] = var_ids_.try_emplace(name, 0);
    if (fresh) {
      var_names_.push_back(name);
      nodes_.push_back({Var, static_cast<Id>(var_names_.size() - 1), 0});
      it->second = static_cast<Id>(nodes_.size() - 1);
    }
    return it->second;
  }

  Id intern(const CombTerm& t) {
    std::unordered_map<const CombTerm::Node*, Id> memo;
    return intern(t.node_.get(), memo);
  }

  CombTerm extract(Id id) {
    std::unordered_map<Id, CombTerm> memo;
    return extract(id, memo);
  }

  struct Whnf {
    Id head;
    std::vector<Id> args;  // first argument first
  };

  // Head reduction; nullopt when a budget trips.
  std::optional<Whnf> whnf(Id t) {
    std::vector<Id> spine;  // back() is the next argument
    Id cur = t;
    while (true) {
      while (nodes_[cur].tag == App) {
        spine.push_back(nodes_[cur].b);
        cur = nodes_[cur].a;
      }
      const Tag tag = nodes_[cur].tag;
      if (tag == I && !spine.empty()) {
        cur = spine.back();
        spine.pop_back();
        spine.push_back(kK);
        spine.push_back(kS);
      } else if (tag == K && spine.size() >= 2) {
        cur = spine.back();
        spine.pop_back();
        spine.pop_back();
      } else if (tag == S && spine.size() >= 3) {
        const Id x = spine.back();
        spine.pop_back();
        const Id y = spine.back();
        spine.pop_back();
        const Id z = spine.back();
        spine.pop_back();
        spine.push_back(app(y, z));
        spine.push_back(z);
        cur = x;
      } else {
        return Whnf{cur, std::vector<Id>(spine.rbegin(), spine.rend())};
      }
      if (++steps_ > step_budget_ || nodes_.size() > size_budget_) {
        exceeded_ = true;
        return std::nullopt;
      }
    }
  }

  Id rebuild(const Whnf& w) {
    Id r = w.head;
    for (Id a : w.args) r = app(r, a);
    return r;
  }

  std::optional<Id> normalize(Id t) {
    struct Frame {
      Id head;
      std::vector<Id> args;
      std::size_t next = 0;
      std::vector<Id> done;
    };
    std::vector<Frame> stack;
    auto open = [&](Id id) {
      auto w = whnf(id);
      if (!w) return false;
      stack.push_back({w->head, std::move(w->args), 0, {}});
      return true;
    };
    if (!open(t)) return std::nullopt;
    while (true) {
      Frame& top = stack.back();
      if (top.next < top.args.size()) {
        const Id a = top.args[top.next++];
        if (!open(a)) return std::nullopt;
        continue;
      }
      Id r = top.head;
      for (Id d : top.done) r = app(r, d);
      stack.pop_back();
      if (stack.empty()) return r;
      stack.back().done.push_back(r);
    }
  }

  bool is_bare(const Whnf& w, Id atom) const { return w.head == atom && w.args.empty(); }

  std::uint64_t steps() const { return steps_; }
  std::uint64_t size() const { return nodes_.size(); }
  bool exceeded() const { return exceeded_; }

 private:
  struct Node {
    Tag tag;
    Id a, b;
  };

  Id intern(const CombTerm::Node* n, std::unordered_map<const CombTerm::Node*, Id>& memo) {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    Id id = 0;
    switch (n->kind) {
      case CombTerm::Kind::S: id = kS; break;
      case CombTerm::Kind::K: id = kK; break;
      case CombTerm::Kind::Iota: id = kI; break;
      case CombTerm::Kind::Var: id = var(n->name); break;
      case CombTerm::Kind::App: {
        const Id f = intern(n->f.get(), memo);
        const Id x = intern(n->x.get(), memo);
        id = app(f, x);
        break;
      }
    }
    memo.emplace(n, id);
    return id;
  }

  CombTerm extract(Id id, std::unordered_map<Id, CombTerm>& memo) {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Node n = nodes_[id];
    CombTerm out = CombTerm::s();
    switch (n.tag) {
      case S: break;
      case K: out = CombTerm::k(); break;
      case I: out = CombTerm::iota(); break;
      case Var: out = CombTerm::var(var_names_[n.a]); break;
      case App: {
        CombTerm f = extract(n.a, memo);
        CombTerm x = extract(n.b, memo);
        out = CombTerm::apply(f, x);
        break;
      }
    }
    memo.emplace(id, out);
    return out;
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::string, Id> var_ids_;
  std::vector<std::string> var_names_;
  std::uint64_t step_budget_;
  std::uint64_t size_budget_;
  std::uint64_t steps_ = 0;
  bool exceeded_ = false;
};

ReductionOutcome reduce(const CombTerm& t, std::uint64_t step_budget, std::uint64_t size_budget) {
  Reducer r(step_budget, size_budget);
  const auto nf = r.normalize(r.intern(t));
  ReductionOutcome out;
  out.normal = nf.has_value();
  out.steps = std::min(r.steps(), step_budget);
  out.max_size = r.size();
  if (nf) out.term = r.extract(*nf);
  return out;
}

bool halts(const BitString& program, std::uint64_t step_budget, std::uint64_t size_budget) {
  Reducer r(step_budget, size_budget);
  return r.normalize(r.intern(CombTerm::from_program(program))).has_value();
}

// ---- constants, pairs and lists ------------------------------------------------

const Constants& constants() {
  static const Constants c{
      BitString("1010100"),
      BitString("10100"),
      BitString("1110101010011101010100110101001010101001110101010011010100101"
                "0100111010101001101010010101010011101010100110101001101010100"
                "1001110101010011010100101010010011101010010110101001010100100"),
      BitString("1110101010011101010100110101001010101001110101010011010100101"
                "0100111010101001101010010101010011101010100110101001101010100"
                "1001110101010011010100101010010011101010100110101001010100100"),
  };
  return c;
}

SelectorResult selector_check(const CombTerm& x, const CombTerm& y, std::uint64_t step_budget, const BitString& pair) {
  const CombTerm p = CombTerm::from_program(pair);
  const CombTerm cell = CombTerm::apply(CombTerm::apply(p, x), y);
  const auto run = [&](const CombTerm& t) { return reduce(t, step_budget); };
  const auto want_x = run(x);
  const auto want_y = run(y);
  if (!want_x.normal || !want_y.normal) return {false, "x or y has no normal form within the step budget"};
  const auto got_x = run(CombTerm::apply(cell, CombTerm::from_program(constants().f)));
  if (!got_x.normal) return {false, "pair applied to F exceeded the step budget"};
  if (!(*got_x.term == *want_x.term))
    return {false, "pair applied to F gave " + got_x.term->to_string() + ", expected " + want_x.term->to_string()};
  const auto got_y = run(CombTerm::apply(cell, CombTerm::from_program(constants().t)));
  if (!got_y.normal) return {false, "pair applied to T exceeded the step budget"};
  if (!(*got_y.term == *want_y.term))
    return {false, "pair applied to T gave " + got_y.term->to_string() + ", expected " + want_y.term->to_string()};
  return {true, ""};
}

BitString encode_bits(const BitString& x) {
  const Constants& c = constants();
  BitString out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out += BitString("11");
    out += c.pair;
    out += x.bit(i) ? c.t : c.f;
  }
  return out + c.f;
}

BitString decode_bits(const BitString& program, std::uint64_t step_budget, std::uint64_t size_budget) {
  Reducer r(step_budget, size_budget);
  const Constants& c = constants();
  const auto f = r.intern(CombTerm::from_program(c.f));
  const auto t = r.intern(CombTerm::from_program(c.t));
  const auto a = r.var("a");
  const auto b = r.var("b");
  auto whnf = [&](Reducer::Id id) {
    auto w = r.whnf(id);
    if (!w)
      throw BudgetExhausted("decode_bits: budget exceeded after " + std::to_string(r.steps()) + " steps");
    return *w;
  };
  Reducer::Id list = r.intern(CombTerm::from_program(program));
  BitString out;
  while (true) {
    // F a b -> a, while a pair applied to a selector hands it two arguments.
    if (r.is_bare(whnf(r.app(r.app(list, a), b)), a)) return out;
    const Reducer::Id head = r.rebuild(whnf(r.app(list, f)));
    const auto probe = whnf(r.app(r.app(head, a), b));
    if (r.is_bare(probe, a))
      out.push_back(0);
    else if (r.is_bare(probe, b))
      out.push_back(1);
    else
      throw MalformedList("decode_bits: element " + std::to_string(out.size() + 1) + " is not a Boolean");
    list = r.rebuild(whnf(r.app(list, t)));
  }
}

// ---- enumeration and sums ------------------------------------------------------

namespace {

// Smallest completion of `s` up to `length` bits given `need` open subterms.
void complete(std::string& s, std::size_t length, std::int64_t need) {
  while (s.size() < length) {
    const auto after = static_cast<std::int64_t>(length - s.size() - 1);
    const std::int64_t down = need - 1;
    if ((down >= 1 && down <= after) || (down == 0 && after == 0)) {
      s.push_back('0');
      need = down;
    } else {
      s.push_back('1');
      ++need;
    }
  }
}

}  // namespace

BitString ProgramEnumerator::next() {
  if (cur_.empty()) {
    cur_ = "0";
    return BitString(cur_);
  }
  const std::size_t len = cur_.size();
  std::vector<std::int64_t> need(len + 1);
  need[0] = 1;
  for (std::size_t i = 0; i < len; ++i) need[i + 1] = need[i] + (cur_[i] == '1' ? 1 : -1);
  for (std::size_t i = len; i-- > 0;) {
    if (cur_[i] != '0') continue;
    const std::int64_t up = need[i] + 1;
    if (up <= static_cast<std::int64_t>(len - i - 1)) {
      cur_.resize(i);
      cur_.push_back('1');
      complete(cur_, len, up);
      return BitString(cur_);
    }
  }
  cur_.clear();
  complete(cur_, len + 2, 1);
  return BitString(cur_);
}

Rational syntactic_omega_partial(std::uint64_t n_max) {
  Rational sum;
  for (std::uint64_t n = 1; n <= n_max; ++n)
    sum += Rational(catalan(n - 1), pow2(2 * n - 1));
  return sum;
}

Enclosure iota_zeta_partial(std::uint64_t n_max) {
  if (n_max < 1) throw InvalidArgument("iota_zeta_partial needs n_max >= 1");
  SumAccumulator acc;
  ProgramEnumerator programs;
  const std::size_t max_len = 2 * n_max - 1;
  for (BitString w = programs.next(); w.size() <= max_len; w = programs.next())
    acc.add(Rational(BigInt(1), bin_inv(w)));
  // 1/bin_inv(w) <= 2^-|w|, and the syntactic Omega series sums to 1.
  const Rational rest = Rational(1) - syntactic_omega_partial(n_max);
  return Enclosure::between(acc.lo(), acc.round_up(acc.hi() + rest));
}

}  // namespace tuatara::iota
