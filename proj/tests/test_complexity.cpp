#include <doctest.h>

#include "support.hpp"
#include "tuatara/complexity.hpp"
#include "tuatara/errors.hpp"

using namespace tuatara;

namespace {

MachineSpec mapped(std::initializer_list<std::pair<const char*, const char*>> rows) {
  std::vector<std::pair<BitString, BitString>> table;
  for (const auto& [k, v] : rows) table.emplace_back(BitString::parse(k), BitString::parse(v));
  return MachineSpec::finite_mapped(table);
}

MachineSpec random_mapped(testing::Rng& rng, bool prefix_free) {
  const auto dom = prefix_free ? rng.prefix_free(rng.uniform(1, 8), 8) : rng.distinct(rng.uniform(1, 12), 7);
  std::vector<std::pair<BitString, BitString>> table;
  for (const auto& w : dom) table.emplace_back(w, rng.bits_up_to(2));
  return MachineSpec::finite_mapped(table);
}

}  // namespace

TEST_CASE("plain and prefix complexity") {
  const auto id = MachineSpec::all_strings();
  CHECK(plain_k(id, BitString("0110"), 1000).value == BigInt(4));
  CHECK(plain_k(id, BitString(), 1000).value == BigInt(0));
  const auto m = mapped({{"00", "1"}, {"1", "1"}});
  CHECK(plain_k(m, BitString("1"), 100).value == BigInt(1));
  const auto none = plain_k(m, BitString("0"), 100);
  CHECK(!none.value);
  CHECK(none.exact);

  CHECK(program_size_h(mapped({{"0", "eps"}}), BitString(), 10).value == BigInt(1));
  CHECK(program_size_h(mapped({{"10", "1"}, {"11", "1"}}), BitString("1"), 10).value == BigInt(2));
  CHECK(program_size_h(mapped({{"0", "1"}, {"10", "1"}}), BitString("1"), 10).value == BigInt(1));
  CHECK_THROWS_AS(program_size_h(mapped({{"0", "1"}, {"01", "1"}}), BitString("1"), 10), InvalidArgument);

  // Budget exhaustion leaves the value open.
  const auto cut = plain_k(id, BitString("111111"), 10);
  CHECK(!cut.value);
  CHECK(!cut.exact);

  testing::Rng rng(73);
  for (int t = 0; t < 50; ++t) {
    const auto c = random_mapped(rng, true);
    for (const auto& x : {BitString(), BitString("0"), BitString("1"), BitString("01")}) {
      const auto k = plain_k(c, x, 1000), h = program_size_h(c, x, 1000);
      CHECK(k.value == h.value);
    }
  }
}

TEST_CASE("natural complexity") {
  CHECK(nabla(mapped({{"0", "eps"}}), BitString(), 10).value == BigInt(2));
  CHECK(nabla(mapped({{"eps", "1"}}), BitString("1"), 10).value == BigInt(1));

  // K = floor(log2 nabla) for every element of the range.
  testing::Rng rng(79);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_mapped(rng, false);
    const auto& table = *m.as_finite();
    for (const auto& w : table.domain) {
      const BitString x = execute(m, w).value();
      const auto k = plain_k(m, x, 1000);
      const auto n = nabla(m, x, 1000);
      REQUIRE(n.value);
      CHECK(*k.value == BigInt(static_cast<unsigned long>(bit_length(*n.value) - 1)));
      CHECK(measure(Measure::NablaLog, m, x, 1000).value == k.value);
      CHECK(measure(Measure::Nabla, m, x, 1000).value == n.value);
    }
  }
}

TEST_CASE("universality factor") {
  const auto v = mapped({{"eps", "1"}, {"0", "00"}, {"11", "0"}});
  const std::vector<BitString> sample{BitString("1"), BitString("00"), BitString("0")};
  CHECK(universality_factor(v, v, sample, 100) == Rational(1));
  const auto other = mapped({{"0", "111"}});
  CHECK(!universality_factor(other, v, sample, 100));

  // W(0^i 1 bin(n)) has index 2^(i+1+floor(log2 n)) + n, so the ratio is at most 2^(i+1) + 1.
  const auto w = MachineSpec::universal_tuatara({v});
  const auto f = universality_factor(w, v, sample, 1000);
  REQUIRE(f);
  CHECK(*f <= Rational(5));
  CHECK(*f == Rational(5));  // attained at x = "1", where nabla_V = 1
  const std::vector<BitString> off_powers{BitString("0")};
  CHECK(*universality_factor(w, v, off_powers, 1000) <= Rational(4));
}

TEST_CASE("deficiency report") {
  const auto id = MachineSpec::all_strings();
  const BitString zeros = BitString::zeros(16);
  const auto r = deficiency(zeros, Rational(1), Measure::Plain, id, 100000);
  CHECK(r.rows.size() == 16);
  CHECK(r.complete);
  CHECK(r.worst_slack == Rational(0));
  for (const auto& row : r.rows) {
    CHECK(row.complexity == BigInt(static_cast<unsigned long>(row.m)));
    CHECK(row.slack == Rational(0));
  }

  const auto big = deficiency(BitString("0110"), Rational(1000000), Measure::Plain, id, 1000);
  for (const auto& row : big.rows) CHECK(*row.slack >= Rational(0));

  testing::Rng rng(83);
  for (int t = 0; t < 20; ++t) {
    const auto m = random_mapped(rng, true);
    const BitString digits = rng.bits(rng.uniform(1, 6));
    const Rational s(BigInt(static_cast<unsigned long>(rng.uniform(2, 9))), BigInt(2));
    for (Measure kind : {Measure::Plain, Measure::Nabla, Measure::NablaLog}) {
      const auto rep = deficiency(digits, s, kind, m, 1000);
      std::optional<Rational> worst;
      for (const auto& row : rep.rows) {
        CHECK(row.threshold == Rational(static_cast<long>(row.m)) / s);
        if (!row.complexity) {
          CHECK(!row.slack);
          continue;
        }
        CHECK(*row.slack == Rational(*row.complexity) - row.threshold);
        if (!worst || *row.slack < *worst) worst = row.slack;
      }
      CHECK(worst == rep.worst_slack);
    }
  }
  CHECK_THROWS_AS(deficiency(BitString(), Rational(1), Measure::Plain, id, 10), InvalidArgument);
  CHECK_THROWS_AS(deficiency(zeros, Rational::parse("1/2"), Measure::Plain, id, 10), InvalidArgument);
}

TEST_CASE("liminf proxy") {
  const auto id = MachineSpec::all_strings();
  CHECK(liminf_proxy(BitString("0110101"), Measure::Plain, id, 10000) == Rational(1));
  const auto shortcut = mapped({{"0", "11111111"}, {"1", "1"}});
  CHECK(*liminf_proxy(BitString("11111111"), Measure::Plain, shortcut, 100) < Rational(1));
  const BitString digits("0010111");
  const auto small = liminf_proxy(digits, Measure::Plain, id, 20), large = liminf_proxy(digits, Measure::Plain, id, 2000);
  REQUIRE(small);
  CHECK(*large <= *small);
}
