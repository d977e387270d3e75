// Acceptance run: one PASS/FAIL line per criterion, each with its time limit.
// With --expect-fail LIST the exit code is 0 exactly when the failing
// criteria are the listed ones.

#include <CLI11.hpp>

#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "tuatara/complexity.hpp"
#include "tuatara/egyptian.hpp"
#include "tuatara/errors.hpp"
#include "tuatara/iota.hpp"
#include "tuatara/kraft.hpp"
#include "tuatara/machines.hpp"
#include "tuatara/numerics.hpp"
#include "tuatara/spectral.hpp"

using namespace tuatara;

namespace {

Rational frac(long a, long b) { return Rational(BigInt(a), BigInt(b)); }

MachineSpec fin(std::initializer_list<const char*> words) {
  std::vector<BitString> dom;
  for (const char* w : words) dom.push_back(BitString::parse(w));
  return MachineSpec::finite(dom);
}

bool is_power_of_two(const BigInt& n) { return n > 0 && mpz_popcount(n.get_mpz_t()) == 1; }

/// Collects failed requirements; the first few are reported.
class Outcome {
 public:
  bool require(bool cond, const std::string& what) {
    if (!cond) {
      ++failures_;
      if (failures_ <= 3) failed_.push_back(what);
    }
    return cond;
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < notes_.size(); ++i) out << (i ? "; " : "") << notes_[i];
    if (failures_) {
      out << (notes_.empty() ? "" : "; ") << failures_ << " failed check(s):";
      for (const auto& f : failed_) out << " [" << f << "]";
    }
    return out.str();
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> failed_;
  std::vector<std::string> notes_;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

// ---------------------------------------------------------------------------

void bin_bijection(Outcome& o) {
  o.require(bin(1u).empty() && bin(2u).str() == "0" && bin(3u).str() == "1" && bin(4u).str() == "00",
            "table rows 1..4");
  std::uint64_t bad = 0;
  for (std::uint64_t n = 1; n <= 1000000; ++n) {
    const BitString b = bin(n);
    if (bin_inv(b) != n || b.size() + 1 != static_cast<std::size_t>(std::bit_width(n))) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " round-trip failures");
  o.note("n <= 10^6 round trip");
}

void unit_identity(Outcome& o) {
  testing::Rng rng(1001);
  for (int t = 0; t < 1000; ++t) {
    const BitString p = rng.bits(rng.uniform(1, 24));
    const auto id = tuatara_unit_identity(p);
    const Rational want = Rational::pow2(-static_cast<std::int64_t>(p.size()));
    o.require(id.sum == want && testing::zeta_oracle(id.set) == want, "p = " + p.str());
    o.require(id.set.size() == hamming_weight(p) + 1, "|X(p)| for p = " + p.str());
  }
  const auto f = tuatara_unit_identity(BitString("1011"));
  std::vector<std::string> words;
  for (const auto& w : f.set) words.push_back(w.str());
  o.require(words == std::vector<std::string>{"1011", "10110", "1011000", "10110000"}, "X(1011)");
  o.require(frac(1, 27) + frac(1, 54) + frac(1, 216) + frac(1, 432) == frac(1, 16) && f.sum == frac(1, 16),
            "1/27+1/54+1/216+1/432 = 1/16");
  o.note("1000 random p, |p| <= 24");
}

void inequality_chain(Outcome& o) {
  testing::Rng rng(1002);
  int strict = 0;
  for (int t = 0; t < 100; ++t) {
    const auto dom = rng.prefix_free(rng.uniform(0, 14), 14);
    const auto rep = sanity_chain(MachineSpec::finite(dom));
    // Independent recomputation of the chain.
    const Rational om = testing::omega_oracle(dom), ze = testing::zeta_oracle(dom);
    const Rational half = om / Rational(2);
    o.require(rep.omega == om && rep.zeta == ze, "sums");
    o.require(Rational(1) >= om && om >= ze && ze >= half && half >= Rational(0), "chain");
    bool any_pow2 = false;
    for (const auto& w : dom) any_pow2 = any_pow2 || is_power_of_two(bin_inv(w));
    if (!any_pow2) {
      ++strict;
      o.require(Rational(1) > om && om > ze && ze > half && half > Rational(0), "strict chain");
    }
    o.require(rep.holds && rep.strict_expected == !any_pow2 && (!rep.strict_expected || rep.strict_holds),
              "report flags");
  }
  o.note("100 domains, " + std::to_string(strict) + " strict");
}

void tuatara_of_identity(Outcome& o) {
  testing::Rng rng(1003);
  int done = 0;
  while (done < 100) {
    const auto dom = rng.prefix_free(rng.uniform(1, 12), 12);
    if (dom.size() == 1 && dom[0].empty()) continue;
    ++done;
    const auto tm = MachineSpec::tuatara_of(MachineSpec::finite(dom));
    o.require(zeta_enclosure(tm, 1000000) == Enclosure::exact(testing::omega_oracle(dom)), "zeta = Omega");
    std::set<BitString> seen;
    std::size_t total = 0;
    for (const auto& p : dom) {
      const auto x = x_set(p);
      total += x.size();
      seen.insert(x.begin(), x.end());
    }
    o.require(seen.size() == total, "X sets disjoint");
  }
  o.note("100 prefix-free C");
}

void egyptian(Outcome& o) {
  const auto e = egyptian_floor(frac(4, 5), 2);
  o.require(e.denominators() == std::vector<BigInt>{BigInt(2), BigInt(4), BigInt(20)}, "(4/5, 2)");
  testing::Rng rng(1005);
  int ok = 0, blew = 0;
  for (int t = 0; t < 500; ++t) {
    const long den = static_cast<long>(rng.uniform(1, 100));
    const long num = static_cast<long>(rng.uniform(1, 3 * den - 1));
    const Rational q = frac(num, den);
    const BigInt n(static_cast<unsigned long>(rng.uniform(2, 50)));
    try {
      const auto r = egyptian_floor(q, n);
      const auto all = r.denominators();
      bool good = std::set<BigInt>(all.begin(), all.end()).size() == all.size() && unit_sum(all) == q;
      for (const auto& d : all) good = good && d >= n;
      for (std::size_t i = 1; i < r.greedy.size(); ++i) good = good && r.greedy[i - 1] < r.greedy[i];
      o.require(good, "q = " + q.to_string() + ", N = " + n.get_str());
      ok += good;
    } catch (const BudgetExhausted&) {
      ++blew;
      o.require(false, "q = " + q.to_string() + ", N = " + n.get_str() + " exceeded 65536-bit denominators");
    }
  }
  o.note(std::to_string(ok) + "/500 expanded, " + std::to_string(blew) +
         " greedy tails passed 65536-bit denominators");
}

void kraft(Outcome& o) {
  testing::Rng rng(1006);
  for (int t = 0; t < 500; ++t) {
    std::vector<std::uint64_t> lengths;
    Rational sum;
    const std::size_t want = rng.uniform(1, 200);
    for (int tries = 0; lengths.size() < want && tries < 2000; ++tries) {
      const std::uint64_t l = rng.uniform(1, 24);
      const Rational next = sum + Rational::pow2(-static_cast<std::int64_t>(l));
      if (next > Rational(1)) continue;
      sum = next;
      lengths.push_back(l);
    }
    KraftChaitin alloc;
    bool online = true;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      const BitString w = alloc.assign(lengths[i]);
      online = online && w.size() == lengths[i];
      for (std::size_t j = 0; j < i; ++j) {
        const BitString& v = alloc.assignment().words[j];
        online = online && !v.is_prefix_of(w) && !w.is_prefix_of(v);
      }
    }
    o.require(online && is_prefix_free(alloc.assignment().words), "stream " + std::to_string(t));
  }
  try {
    kraft_chaitin({1, 1, 1});
    o.require(false, "[1,1,1] accepted");
  } catch (const KraftViolation& v) {
    o.require(v.index() == 3, "violation index " + std::to_string(v.index()));
  }
  o.note("500 streams");
}

void dyadic_grid(Outcome& o) {
  DyadicDiagonal grid(std::vector<BigInt>{2, 3, 4, 5, 6});
  std::vector<Rational> got;
  for (int k = 0; k < 9; ++k) got.push_back(grid.next().value().value());
  const std::vector<Rational> want{frac(1, 2),  frac(1, 4), frac(1, 4),  frac(1, 16), frac(1, 8),
                                    frac(1, 64), frac(1, 8), frac(1, 16), frac(1, 256)};
  o.require(got == want, "first nine diagonal terms");
  std::size_t reached = 0;
  for (std::uint64_t k = 1; k <= 20 && !reached; ++k) {
    const auto code = unit_sum_to_prefix_free(std::vector<BigInt>{3}, k);
    const Rational lo = code.kraft_sum();
    o.require(lo <= frac(1, 3) && is_prefix_free(code.words), "partial code");
    if (frac(1, 3) - lo < Rational::pow2(-20)) reached = k;
  }
  o.require(reached > 0, "width 2^-20 not reached in 20 words");
  o.note("1/3 within 2^-20 after " + std::to_string(reached) + " words");
}

void universal(Outcome& o) {
  for (std::uint64_t i = 1; i <= 8; ++i)
    for (unsigned long n = 1; n <= 1024; ++n) {
      const BitString lhs = BitString::zeros(i) + BitString("1") + bin(BigInt(n));
      const BigInt idx = pow2(i + 1 + bit_length(BigInt(n)) - 1) + n;
      o.require(lhs == bin(idx) && universal_prefix_identity(i, BigInt(n)), "prefix identity");
    }
  testing::Rng rng(1008);
  Rational worst;
  for (int t = 0; t < 20; ++t) {
    std::vector<MachineSpec> members;
    const std::size_t count = rng.uniform(1, 6);
    for (std::size_t k = 0; k < count; ++k) members.push_back(MachineSpec::finite(rng.prefix_free(rng.uniform(0, 8), 8)));
    const Enclosure z = zeta_enclosure(MachineSpec::universal_tuatara(members), 100000);
    o.require(z.bounded() && *z.hi() <= Rational(1), "zeta_W <= 1");
    if (z.bounded() && *z.hi() > worst) worst = *z.hi();
  }
  std::set<BigInt> seen;
  for (std::uint64_t i = 1; i <= 16; ++i)
    for (unsigned long m = 1; m <= 16; ++m) o.require(seen.insert(j_pairing(i, BigInt(m))).second, "J collision");
  std::ostringstream s;
  s << "largest zeta_W upper bound " << std::setprecision(6) << worst.to_double();
  o.note(s.str());
}

void spectral(Outcome& o) {
  o.require(omega_s(MachineSpec::all_strings(), Rational(2), 100) == Enclosure::exact(Rational(2)),
            "omega_s(all, 2) = 2");
  for (std::uint64_t l = 1; l <= 30; ++l)
    o.require(dyadic_weight_sum(l) == Rational(2) - Rational::pow2(1 - static_cast<std::int64_t>(l)),
              "dyadic weight sum L = " + std::to_string(l));
  testing::Rng rng(1009);
  for (int t = 0; t < 100; ++t) {
    const auto dom = rng.distinct(rng.uniform(0, 12), 10);
    const auto c = MachineSpec::finite(dom);
    const Enclosure d = omega_enclosure(MachineSpec::doubled(c), 100);
    o.require(d == omega_s(c, Rational(2), 100) && d == Enclosure::exact(testing::omega_oracle(dom, 2)),
              "Omega(double C) = Omega_2(C)");
  }
  const Enclosure pp = zeta_s(MachineSpec::prime_product(fin({"eps", "0"})), Rational(2), 100000);
  o.require(pp.contains(frac(3, 2)) && *pp.width() < Rational::parse("0.000001"), "zeta_R(2) for P = {2,3}");
  const Enclosure z2 = riemann_zeta(Rational(2), 10000);
  o.require(z2.contains(Rational::parse("1.6449340668")) && *z2.width() < Rational::parse("0.0001"),
            "riemann_zeta(2)");
  std::ostringstream s;
  s << "zeta_R(2) width " << std::setprecision(3) << pp.width()->to_double() << ", zeta(2) width "
    << z2.width()->to_double();
  o.note(s.str());
}

void iota_checks(Outcome& o) {
  using namespace tuatara::iota;
  const auto cat = testing::catalan_table(8);
  std::vector<BigInt> counts(18, 0);
  std::vector<BitString> upto13;
  // Exhaustive: every bit string of length <= 17 checked for being a program.
  BitString x;
  for (std::uint64_t k = 0; k + 1 < (std::uint64_t{1} << 18); ++k, x = lenlex_succ(x)) {
    if (!is_program(x)) continue;
    ++counts[x.size()];
    if (x.size() <= 13) upto13.push_back(x);
  }
  for (std::size_t n = 1; n <= 9; ++n) o.require(counts[2 * n - 1] == cat[n - 1], "count at length " + std::to_string(2 * n - 1));
  o.require(is_prefix_free(upto13), "programs up to 13 bits prefix-free");

  const auto& c = constants();
  o.require(is_program(c.f) && is_program(c.t) && is_program(c.pair), "F/T/P parse");

  testing::Rng rng(1010);
  std::function<CombTerm(int)> random_term = [&](int depth) {
    if (depth == 0 || rng.uniform(0, 2) == 0) return rng.coin() ? CombTerm::s() : CombTerm::k();
    return CombTerm::apply(random_term(depth - 1), random_term(depth - 1));
  };
  for (int pairs = 0; pairs < 20;) {
    const auto a = reduce(random_term(4), 1000), b = reduce(random_term(4), 1000);
    if (!a.normal || !b.normal) continue;
    ++pairs;
    const auto r = selector_check(*a.term, *b.term, 10000);
    o.require(r.holds, "selector: " + r.reason);
  }

  std::size_t longest = 0;
  auto round_trip = [&](const BitString& y) {
    const BitString e = encode_bits(y);
    o.require(e.size() <= 193 * y.size() + 7, "length bound for " + y.render());
    o.require(decode_bits(e) == y, "round trip " + y.render());
    longest = std::max(longest, e.size());
  };
  BitString y;
  for (std::uint64_t k = 0; k + 1 < (std::uint64_t{1} << 11); ++k, y = lenlex_succ(y)) round_trip(y);
  for (int t = 0; t < 50; ++t) round_trip(rng.bits(rng.uniform(11, 64)));

  Enclosure prev = iota_zeta_partial(1);
  for (std::uint64_t n = 2; n <= 9; ++n) {
    const Enclosure cur = iota_zeta_partial(n);
    o.require(cur.within(prev) && *cur.hi() <= Rational(1), "nested partial enclosures");
    prev = cur;
  }
  // S(N) + binom(2N,N)/4^N = 1 exactly, and the remainder is at most 1/sqrt(3N+1).
  for (std::uint64_t n = 1; n <= 64; ++n) {
    const Rational rest(catalan(n) * BigInt(static_cast<unsigned long>(n + 1)), pow2(2 * n));
    o.require(syntactic_omega_partial(n) + rest == Rational(1), "tail identity N = " + std::to_string(n));
    o.require(rest * rest * Rational(static_cast<long>(3 * n + 1)) <= Rational(1), "tail bound");
  }
  std::ostringstream s;
  s << "P has " << c.pair.size() << " bits; longest encoding " << longest << " bits; tail at N = 64 is "
    << std::setprecision(3) << (Rational(1) - syntactic_omega_partial(64)).to_double();
  o.note(s.str());
}

void fresh(Outcome& o) {
  const auto w = fresh_index(fin({"0", "11"}), BitString("1"), 100);
  o.require(w.word.empty() && w.sum == frac(9, 14), "{0,11}, y = 1");
  testing::Rng rng(1011);
  for (int t = 0; t < 50;) {
    const auto dom = rng.distinct(rng.uniform(1, 10), 6);
    const Rational zeta = testing::zeta_oracle(dom);
    const BitString y = rng.bits(rng.uniform(0, 8));
    const Rational threshold = rational_of_prefix(y);
    if (threshold >= zeta) continue;
    ++t;
    // Oracle: walk the domain in bin order until the sum passes 0.y.
    std::vector<BitString> sorted = dom;
    std::sort(sorted.begin(), sorted.end(), LenLexLess{});
    std::set<BigInt> used;
    Rational sum;
    for (const auto& v : sorted) {
      used.insert(bin_inv(v));
      sum += Rational(BigInt(1), bin_inv(v));
      if (sum > threshold) break;
    }
    BigInt j = 1;
    while (used.count(j)) ++j;
    const auto r = fresh_index(MachineSpec::finite(dom), y, 1000);
    o.require(r.index == j && r.word == bin(j) && used.count(r.index) == 0, "fresh index");
    o.require(std::set<BigInt>(r.enumerated.begin(), r.enumerated.end()) == used, "enumerated set");
  }
  o.note("50 machines");
}

void complexity(Outcome& o) {
  testing::Rng rng(1012);
  std::size_t pairs = 0;
  for (int t = 0; t < 100; ++t) {
    const auto dom = rng.distinct(rng.uniform(1, 12), 7);
    std::vector<std::pair<BitString, BitString>> table;
    for (const auto& w : dom) table.emplace_back(w, rng.bits_up_to(3));
    const auto m = MachineSpec::finite_mapped(table);
    for (const auto& [w, x] : table) {
      const auto k = plain_k(m, x, 10000), n = nabla(m, x, 10000);
      o.require(k.value && n.value && *k.value == BigInt(static_cast<unsigned long>(bit_length(*n.value) - 1)),
                "K = floor(log2 nabla)");
      ++pairs;
    }
  }

  // nabla_W(x) <= 2^(i+1) nabla_{C_i}(x) for each slot i over the member's range.
  std::size_t checked = 0, over = 0, over_corrected = 0;
  Rational worst_excess;
  for (int t = 0; t < 20; ++t) {
    std::vector<MachineSpec> members;
    for (int k = 0; k < 3; ++k) {
      const auto dom = rng.prefix_free(rng.uniform(0, 6), 6);
      std::vector<std::pair<BitString, BitString>> table;
      for (const auto& w : dom) table.emplace_back(w, rng.bits_up_to(3));
      members.push_back(MachineSpec::finite_mapped(table));
    }
    const auto w = MachineSpec::universal_tuatara(members);
    for (std::size_t i = 1; i <= members.size(); ++i) {
      std::vector<BitString> range;
      for (const auto& [k, v] : members[i - 1].as_finite()->outputs) range.push_back(v);
      for (const auto& word : members[i - 1].as_finite()->domain)
        if (!members[i - 1].as_finite()->outputs.count(word)) range.push_back(BitString());
      const auto f = universality_factor(w, members[i - 1], range, 100000);
      if (!f) {
        o.require(false, "universality factor missing");
        continue;
      }
      ++checked;
      const Rational stated(pow2(i + 1));
      if (*f > stated) {
        ++over;
        if (*f - stated > worst_excess) worst_excess = *f - stated;
      }
      if (*f > stated + Rational(1)) ++over_corrected;
    }
  }
  o.require(over == 0, std::to_string(over) + "/" + std::to_string(checked) + " slots exceed 2^(i+1)");

  // A concrete instance: V = {eps -> 1}, slot 1.
  const auto v = MachineSpec::finite_mapped({{BitString(), BitString("1")}});
  const std::vector<BitString> one{BitString("1")};
  const auto f1 = universality_factor(MachineSpec::universal_tuatara({v}), v, one, 100);
  o.require(f1 && *f1 <= Rational(4), "V = {eps -> 1} at slot 1: factor " + (f1 ? f1->to_string() : "-"));

  for (int t = 0; t < 20; ++t) {
    const auto dom = rng.prefix_free(rng.uniform(1, 8), 8);
    std::vector<std::pair<BitString, BitString>> table;
    for (const auto& w : dom) table.emplace_back(w, rng.bits_up_to(2));
    const auto m = MachineSpec::finite_mapped(table);
    const BitString digits = rng.bits(rng.uniform(1, 8));
    const Rational s(BigInt(static_cast<unsigned long>(rng.uniform(2, 9))), BigInt(2));
    const auto rep = deficiency(digits, s, Measure::Plain, m, 10000);
    std::optional<Rational> worst;
    bool rows_ok = true;
    for (const auto& row : rep.rows) {
      rows_ok = rows_ok && row.threshold == Rational(static_cast<long>(row.m)) / s;
      if (!row.complexity) continue;
      const Rational slack = Rational(*row.complexity) - row.threshold;
      rows_ok = rows_ok && row.slack == slack;
      if (!worst || slack < *worst) worst = slack;
    }
    o.require(rows_ok && worst == rep.worst_slack, "deficiency recomputation");
  }

  const Enclosure d = density_enclosure(MachineSpec::lukasiewicz(), 41);
  o.require(d.lo() > Rational::parse("0.8") && *d.hi() < Rational(1), "density(lukasiewicz, 41)");

  std::ostringstream s;
  s << pairs << " range elements; universality factor above 2^(i+1) on " << over << "/" << checked
    << " slots (largest excess " << worst_excess.to_string() << "), above 2^(i+1)+1 on " << over_corrected
    << "; {eps -> 1} slot 1 factor " << (f1 ? f1->to_string() : "-") << "; density "
    << std::setprecision(5) << d.midpoint().to_double();
  o.note(s.str());
}

void lambert(Outcome& o) {
  const Rational tol = Rational::pow2(-40);
  o.require(lambert_w(e_bounds(30), tol).contains(Rational(1)), "W(e) contains 1");
  const Enclosure w1 = lambert_w(Rational(1), tol);
  o.require(w1.lo() >= Rational::parse("0.5671432894") && *w1.hi() <= Rational::parse("0.5671432914"),
            "W(1) within 1e-9 of 0.5671432904");
  Enclosure prev;
  bool first = true;
  for (std::uint64_t m = 8; m <= 1024; m *= 2) {
    const Enclosure r = w_ratio(m, tol);
    // Nondecreasing: the next enclosure cannot lie wholly below the previous one.
    if (!first) o.require(*r.hi() >= prev.lo(), "w_ratio monotone at m = " + std::to_string(m));
    prev = r;
    first = false;
  }
  o.require(prev.lo() > Rational::parse("0.98") && *prev.hi() < Rational(1), "w_ratio(1024) in (0.98, 1)");
  const auto v = pnt_check(10000);
  o.require(v.empty(), std::to_string(v.size()) + " violations of i ln i < p_i");
  std::ostringstream s;
  s << "w_ratio(1024) = " << std::setprecision(6) << prev.midpoint().to_double();
  o.note(s.str());
}

void discrepancies(Outcome& o) {
  const auto fact = MachineSpec::geometric(0, {BitString("10")});
  const Enclosure om = omega_enclosure(fact, 10000);
  o.require(om == Enclosure::exact(frac(5, 4)), "Omega(geometric(0,10)) = 5/4, got " + om.to_string());
  o.require(om != Enclosure::exact(frac(3, 2)), "Omega differs from 3/2");
  const Enclosure z = zeta_enclosure(fact, 10000);
  o.require(z.bounded() && *z.hi() < Rational(1), "zeta < 1");

  testing::Rng rng(1014);
  int done = 0;
  Rational widest;
  while (done < 20) {
    const auto dom = rng.prefix_free(rng.uniform(1, 5), 5);
    bool has_empty = false;
    for (const auto& w : dom) has_empty = has_empty || w.empty();
    if (has_empty) continue;
    ++done;
    const auto prod = MachineSpec::product(MachineSpec::finite(dom));
    const auto closed = product_closed_form(prod);
    Rational direct_closed(1);
    for (const auto& p : dom) direct_closed /= Rational(1) - Rational::pow2(-static_cast<std::int64_t>(p.size()));
    const Enclosure e = omega_enclosure(prod, 20000);
    o.require(closed && *closed == direct_closed && e.contains(direct_closed), "closed form vs enumeration");
    if (e.bounded() && *e.width() > widest) widest = *e.width();
    // Enumeration of words up to 10 bits equals the count of sorted multisets.
    auto stream = domain_stream(prod);
    std::size_t words = 0;
    for (auto entry = stream->next(); entry && entry->word.size() <= 10; entry = stream->next()) ++words;
    std::vector<std::size_t> ways(11, 0);
    ways[0] = 1;
    for (const auto& p : dom)
      for (std::size_t l = p.size(); l <= 10; ++l) ways[l] += ways[l - p.size()];
    std::size_t multisets = 0;
    for (auto k : ways) multisets += k;
    o.require(words == multisets, "word count vs multiset count");
  }
  const auto p00 = MachineSpec::product(fin({"00"}));
  o.require(product_closed_form(p00) == frac(4, 3) && omega_enclosure(p00, 10000).contains(frac(4, 3)),
            "product({00}) = 4/3");
  o.require(frac(4, 3) > Rational(1), "the <= 1 claim fails for {00}");
  std::ostringstream s;
  s << "Omega(geometric(0,10)) = 5/4 (3/2 claimed); product({00}) = 4/3 > 1 (<= 1 claimed); widest product enclosure "
    << std::setprecision(3) << widest.to_double();
  o.note(s.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string expect;
  app.add_option("--expect-fail", expect, "comma-separated criteria expected to fail");
  CLI11_PARSE(app, argc, argv);
  std::set<int> expected;
  {
    std::istringstream in(expect);
    for (std::string tok; std::getline(in, tok, ',');)
      if (!tok.empty()) expected.insert(std::stoi(tok));
  }

  const std::vector<Criterion> criteria{
      {1, "bin bijection", 5, bin_bijection},
      {2, "X(p) unit identity", 5, unit_identity},
      {3, "inequality chain", 5, inequality_chain},
      {4, "zeta(tuatara_of C) = Omega(C)", 10, tuatara_of_identity},
      {5, "Egyptian floor", 10, egyptian},
      {6, "Kraft-Chaitin", 10, kraft},
      {7, "dyadic grid", 5, dyadic_grid},
      {8, "universal tuatara", 10, universal},
      {9, "spectral identities", 30, spectral},
      {10, "Iota", 60, iota_checks},
      {11, "fresh index", 5, fresh},
      {12, "complexity", 10, complexity},
      {13, "Lambert W", 30, lambert},
      {14, "documented discrepancies", 5, discrepancies},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    if (!in_time) o.require(false, "over the time limit");
    const bool pass = o.ok();
    if (!pass) failed.insert(c.id);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << std::setw(2) << c.id << " " << c.name << " ("
              << std::fixed << std::setprecision(2) << secs << " s of " << std::setprecision(0) << c.limit_seconds
              << " s): " << o.summary() << "\n"
              << std::defaultfloat << std::flush;
  }

  std::cout << failed.size() << " of " << criteria.size() << " criteria failed\n";
  if (expect.empty()) return failed.empty() ? 0 : 1;
  if (failed == expected) {
    std::cout << "failing set matches --expect-fail " << expect << "\n";
    return 0;
  }
  std::cout << "failing set differs from --expect-fail " << expect << "\n";
  return 1;
}
