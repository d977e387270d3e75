from fractions import Fraction

import pytest

import tuatara as t


def test_bin_round_trip():
    assert [t.bin(n) for n in (1, 2, 3, 4)] == ["", "0", "1", "00"]
    assert t.bin_inv("1011") == 27
    assert all(t.bin_inv(t.bin(n)) == n for n in range(1, 2000))
    assert t.bin(2**100 + 5) == "0" * 97 + "101"


def test_finite_sums_are_exact():
    m = t.Machine.finite(["0", "11"])
    z = t.zeta(m)
    assert z.lo == z.hi == Fraction(9, 14)
    assert t.omega(t.Machine.finite(["0", "10", "11"])).hi == 1
    assert t.zeta_s(t.Machine.finite(["1011"]), 2).lo == Fraction(1, 729)
    assert t.x_set("1011") == ["1011", "10110", "1011000", "10110000"]


def test_infinite_domains():
    fact = t.Machine.geometric(0, ["10"])
    assert t.omega(fact).lo == Fraction(5, 4)
    z = t.zeta(fact, 1000)
    assert z.hi < 1 and abs(z.lo - Fraction("0.931166")) < Fraction(1, 10**6)
    assert t.classify(t.Machine.all_strings(), 100) == ("divergent", "divergent")
    assert t.omega_s(t.Machine.all_strings(), 2).lo == 2
    assert t.riemann_zeta(2).contains("1.6449340668")
    pp = t.zeta_s(t.Machine.prime_product(t.Machine.finite(["", "0"])), 2)
    assert pp.contains(Fraction(3, 2))


def test_unit_fractions_and_codes():
    assert t.egyptian_floor(Fraction(4, 5), 2) == [2, 4, 20]
    assert t.kraft_chaitin([1, 2, 3, 3]) == ["0", "10", "110", "111"]
    with pytest.raises(t.KraftViolation) as info:
        t.kraft_chaitin([1, 1, 1])
    assert info.value.args[1] == 3
    assert t.dyadic_diagonal([2, 3, 4, 5, 6], 9) == [
        Fraction(1, d) for d in (2, 4, 4, 16, 8, 64, 8, 16, 256)
    ]


def test_errors_map_to_exceptions():
    with pytest.raises(t.InvalidArgument):
        t.bin(0)
    with pytest.raises(t.BudgetExhausted):
        t.fresh_index(t.Machine.finite(["0", "11"]), "11")
    with pytest.raises(t.ParseError):
        t.Machine.parse("machine a\nkind finite\ndomain 012\n")
    with pytest.raises(t.InvalidArgument):
        t.zeta_s(t.Machine.finite(["0"]), 1.5)
    assert issubclass(t.ParseError, t.Error)


def test_machine_text_round_trip():
    m = t.Machine.tuatara_of(t.Machine.mapped({"0": "1", "10": ""}))
    back = t.Machine.parse(m.to_text())
    assert back.describe() == m.describe()
    assert back.words(3) == ["0", "10", "100"]


def test_iota_and_complexity():
    assert t.iota.count_programs(7) == 5
    f, tt, p = t.iota.constants()
    assert (len(f), len(tt)) == (7, 5)
    assert t.iota.decode(t.iota.encode("0110")) == "0110"
    assert t.iota.run("100") == "((S K) (K K))"
    c = t.complexity(t.Machine.all_strings(), "0110")
    assert c["value"] == 4 and c["exact"] and c["witness"] == "0110"
    assert t.complexity(t.Machine.mapped({"": "1"}), "1", "nabla")["value"] == 1


def test_numerics_and_cli():
    w1 = t.lambert_w(1)
    assert abs((w1.lo + w1.hi) / 2 - Fraction("0.5671432904")) < Fraction(1, 10**9)
    assert t.lambert_w(t.e_bounds().lo).lo < 1
    assert t.harmonic_segment(1, 4) == Fraction(25, 12)
    assert t.zeta(t.Machine.finite(["0" * 5000])).lo == Fraction(1, 2**5000)
    assert Fraction("0.98") < t.w_ratio(1024).lo
    assert t.dyadic_weight_sum(3) == Fraction(7, 4)
    code, out, _ = t.run_cli(["egyptian", "4/5", "--floor", "2"])
    assert (code, out) == (0, "1/2 + 1/4 + 1/20\n")
