import random
from fractions import Fraction

import pytest

from k3lab.fields import (FactoredRational, FiniteFieldModel, SUnitModel,
                          dlog, ff_from_q, ff_make, one_minus,
                          parse_field_spec, qstar_factor)
from k3lab.intlin import ResourceLimitError

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64]


def test_ff_make_basic():
    F3 = ff_make(3)
    assert F3.q == 3
    assert len(F3.units()) == 2
    F4 = ff_make(2, 2)
    assert F4.q == 4
    assert len(F4.units()) == 3    # cyclic of order 3


def test_ff_make_f7_dlog_table():
    F7 = ff_make(7)
    assert F7.code_of(F7.gen()) == 3
    expected = {3: 1, 2: 2, 6: 3, 4: 4, 5: 5, 1: 0}
    got = {code: F7.dlog_table[code] for code in expected}
    assert got == expected


def test_ff_make_errors():
    with pytest.raises(ValueError):
        ff_make(4)
    with pytest.raises(ResourceLimitError):
        ff_make(2, 11)
    with pytest.raises(ValueError):
        ff_make(2, 2, poly=(0, 0, 1))   # x^2 is reducible


def test_dlog_is_isomorphism():
    rng = random.Random(11)
    for q in SMALL_Q:
        F = ff_from_q(q)
        for _ in range(100):
            a = F.from_exp(rng.randrange(q - 1)) if q > 2 else F.one()
            b = F.from_exp(rng.randrange(q - 1)) if q > 2 else F.one()
            assert dlog(F, a * b) == (dlog(F, a) + dlog(F, b)) % (q - 1)
    with pytest.raises(ValueError):
        dlog(ff_make(5), ff_make(5).zero())


def test_dlog_examples():
    F7 = ff_make(7)
    assert dlog(F7, F7.from_code(6)) == 3
    assert dlog(F7, F7.gen()) == 1
    assert dlog(F7, F7.one()) == 0


def test_one_minus_exhaustive():
    """a + (1 - a) = 1 for every element of every field with q <= 64."""
    for q in SMALL_Q:
        F = ff_from_q(q)
        for a in F.elements():
            m = one_minus(a)
            s = F._add_codes(F.code_of(a), F.code_of(m))
            assert s == 1


def test_one_minus_examples():
    F5 = ff_make(5)
    assert F5.code_of(one_minus(F5.from_code(2))) == 4
    F7 = ff_make(7)
    assert one_minus(F7.one()).is_zero
    F4 = ff_make(2, 2)
    w = F4.gen()
    assert one_minus(w) == w * w


def test_field_arithmetic_consistency():
    """dlog-based products agree with polynomial arithmetic."""
    for q in (8, 9, 16, 27):
        F = ff_from_q(q)
        for a in F.units():
            for b in F.units():
                assert F.code_of(a * b) == F._mul_codes(F.code_of(a), F.code_of(b))


def test_least_modulus_is_deterministic():
    F8a = ff_make(2, 3)
    F8b = ff_make(2, 3)
    assert F8a.modulus == F8b.modulus
    # x^3 + x + 1 encodes lower than x^3 + x^2 + 1
    assert F8a.modulus == (1, 1, 0, 1)


def test_qstar_factor():
    f = qstar_factor(Fraction(-8, 9), [2, 3])
    assert f.sign == -1
    assert f.exps == {2: 3, 3: -2}
    assert qstar_factor(1, [2, 3]).exps == {}
    assert qstar_factor(1, [2, 3]).sign == 1
    with pytest.raises(ValueError):
        qstar_factor(10, [2, 3])
    with pytest.raises(ValueError):
        qstar_factor(0, [2, 3])


def test_factored_rational_arithmetic_matches_fractions():
    rng = random.Random(23)
    S = [2, 3, 5]
    for _ in range(1000):
        exps_a = {p: rng.randint(-4, 4) for p in S}
        exps_b = {p: rng.randint(-4, 4) for p in S}
        a = FactoredRational(rng.choice([1, -1]), exps_a)
        b = FactoredRational(rng.choice([1, -1]), exps_b)
        assert (a * b).value() == a.value() * b.value()
        assert a.inv().value() == 1 / a.value()
        assert (a ** 3).value() == a.value() ** 3


def test_sunit_model_coords_and_relations():
    M = SUnitModel([2, 3])
    f = M.from_rational(Fraction(-8, 9))
    assert M.unit_coords(f) == (1, 3, -2)
    assert M.unit_relation_rows() == [(2, 0, 0)]


def test_sunit_steinberg_pairs():
    M = SUnitModel([2, 3], steinberg_exp_bound=4)
    pairs = M.steinberg_pairs()
    assert pairs
    vals = {(a.value(), b.value()) for a, b in pairs}
    for a, b in vals:
        assert a + b == 1
        assert a not in (0, 1)
    # the classical S-unit solutions for S = {2, 3} show up
    for a in (Fraction(2), Fraction(-1, 3), Fraction(3, 4), Fraction(-8)):
        assert any(x == a for x, _ in vals)


def test_parse_field_spec():
    assert parse_field_spec("q=9").q == 9
    F = parse_field_spec("p=3,d=2,poly=1,0,1")
    assert F.q == 9 and F.modulus == (1, 0, 1)
    M = parse_field_spec("S=2,3,5")
    assert M.primes == (2, 3, 5)
    with pytest.raises(ValueError):
        parse_field_spec("nonsense")
    with pytest.raises(ValueError):
        parse_field_spec("q=6")
