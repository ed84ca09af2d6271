import random
from fractions import Fraction

import pytest

from k3lab.fields import SUnitModel, ff_from_q, ff_make, one_minus
from k3lab.intlin import ResourceLimitError
from k3lab.milnor import (k2q_decompose, kernel_gen_check, legendre,
                          local_symbol, milnor_pres,
                          milnor_pres_last_slot_only, product_map,
                          tame_symbol, unit_group_pres)


def test_k1_is_the_unit_group():
    for q in (3, 4, 5, 7, 8, 9):
        F = ff_from_q(q)
        assert milnor_pres(F, 1).classify() == (0, (q - 1,))


def test_k2_finite_fields_trivial():
    for q in (3, 4, 5, 7, 8, 9, 11, 13, 16):
        F = ff_from_q(q)
        assert milnor_pres(F, 2).classify() == (0, ()), q


def test_k3_finite_fields_trivial():
    for q in (3, 4, 5, 7, 9):
        F = ff_from_q(q)
        assert milnor_pres(F, 3).classify() == (0, ()), q


def test_weight_cap():
    with pytest.raises(ResourceLimitError):
        milnor_pres(ff_make(5), 4)


def test_last_slot_variant_matches():
    """Steinberg pinned to the last two slots plus swaps classifies the
    same group as Steinberg at every adjacent pair."""
    for q in (3, 4, 5, 7, 9, 11, 13):
        F = ff_from_q(q)
        for n in (2, 3):
            a = milnor_pres(F, n).classify()
            b = milnor_pres_last_slot_only(F, n).classify()
            assert a == b, (q, n)
    M = SUnitModel([2, 3])
    assert (milnor_pres(M, 3).classify()
            == milnor_pres_last_slot_only(M, 3).classify())


def test_encoder_multilinearity():
    rng = random.Random(5)
    for q in (5, 7, 9):
        F = ff_from_q(q)
        k2 = milnor_pres(F, 2)
        for _ in range(200):
            a, a2, b = (F.from_exp(rng.randrange(q - 1)) for _ in range(3))
            lhs = k2.encode(a * a2, b)
            rhs = k2.encode(a, b) + k2.encode(a2, b)
            assert k2.pres.elem_eq(lhs, rhs)


def test_steinberg_relation_encodes_to_zero():
    for q in (5, 7, 8, 9):
        F = ff_from_q(q)
        k2 = milnor_pres(F, 2)
        for a, b in F.steinberg_pairs():
            assert k2.pres.is_zero_elem(k2.encode(a, b))


def test_sunit_k2_matches_tame_targets():
    """For S = {2, 3} the truncated K2 sees the 2-adic {-1,-1} class and
    the tame symbols at 3."""
    M = SUnitModel([2, 3])
    assert milnor_pres(M, 2).classify() == (0, (2, 2))


def test_product_map_well_defined_and_examples():
    M = SUnitModel([2])
    f, dom, k2, k3 = product_map(M)
    m1 = M.from_rational(-1)
    # (-1) (x) {-1,-1} -> {-1,-1,-1}
    va = M.unit_coords(m1)
    from k3lab.milnor import _tensor_coords
    coords_dom = [0] * dom.n_gens
    vbc = _tensor_coords(M, [m1, m1])
    m = M.n_unit_gens
    for i, ai in enumerate(va):
        if ai:
            for jk, v in enumerate(vbc):
                coords_dom[i * m * m + jk] += ai * v
    img = f.apply(dom.elem(coords_dom))
    assert k3.pres.elem_eq(img, k3.encode(m1, m1, m1))


def test_product_map_doubles_die_mod2():
    M = SUnitModel([2, 3])
    f2, dom2, k2, k3m2 = product_map(M, mod2=True)
    rng = random.Random(1)
    for _ in range(10):
        d, e, g = M.sample_units(rng, 3, exp_bound=2)
        img = f2.apply(dom2.elem([2 * v for v in _dom_coords(M, dom2, d, e, g)]))
        assert k3m2.pres.is_zero_elem(img)


def _dom_coords(M, dom, a, b, c):
    from k3lab.milnor import _tensor_coords
    m = M.n_unit_gens
    va = M.unit_coords(a)
    vbc = _tensor_coords(M, [b, c])
    out = [0] * dom.n_gens
    for i, ai in enumerate(va):
        if ai:
            for jk, v in enumerate(vbc):
                out[i * m * m + jk] += ai * v
    return out


def test_kernel_gen_check_finite_field_trivial():
    F = ff_make(5)
    rep = kernel_gen_check(F, random.Random(0))
    assert rep["k1_contained"]
    assert rep["k2_contained"]


def test_kernel_gen_check_sunits():
    M = SUnitModel([2, 3])
    rep = kernel_gen_check(M, random.Random(0), sample_bound=8)
    assert rep["k1_contained"]
    assert rep["k2_contained"]
    assert rep["k1_index"] >= 1
    assert rep["k2_index"] >= 1


# -- local symbols ------------------------------------------------------------

def test_tame_symbol_example():
    assert local_symbol(3, 6, 5).value == 2


def test_tame_symbol_steinberg():
    rng = random.Random(8)
    count = 0
    for _ in range(1000):
        num = rng.randint(-40, 40)
        den = rng.randint(1, 40)
        if num in (0, den):
            continue
        a = Fraction(num, den)
        b = 1 - a
        for p in (3, 5, 7, 11, 13):
            assert tame_symbol(p, a, b) == 1
        count += 1
    assert count > 900


def test_real_and_two_adic_values():
    assert local_symbol("real", -1, -1).value == -1
    assert local_symbol("real", -1, 2).value == 1
    assert local_symbol("2", -1, -1).value == -1
    assert local_symbol("2", 2, 3).value == -1
    with pytest.raises(ValueError):
        local_symbol(3, 0, 1)


def test_local_symbol_bimultiplicative():
    rng = random.Random(12)
    places = ["real", "2", 3, 5, 7]
    for _ in range(300):
        a = Fraction(rng.choice([1, -1]) * rng.randint(1, 30),
                     rng.randint(1, 30))
        a2 = Fraction(rng.choice([1, -1]) * rng.randint(1, 30),
                      rng.randint(1, 30))
        b = Fraction(rng.choice([1, -1]) * rng.randint(1, 30),
                     rng.randint(1, 30))
        for pl in places:
            lhs = local_symbol(pl, a * a2, b).value
            if pl in ("real", "2"):
                rhs = local_symbol(pl, a, b).value * local_symbol(pl, a2, b).value
            else:
                rhs = (local_symbol(pl, a, b).value
                       * local_symbol(pl, a2, b).value) % pl
            assert lhs == rhs, (pl, a, a2, b)


def test_k2q_decompose_examples():
    syms = {s.place: s.value for s in k2q_decompose(2, 3)}
    assert syms[3] == 2
    assert syms["real"] == 1
    assert all(v == 1 for p, v in syms.items() if p not in (3, "2"))

    syms = {s.place: s.value for s in k2q_decompose(1, 7)}
    assert all(v == 1 for v in syms.values())

    syms = {s.place: s.value for s in k2q_decompose(-1, -1)}
    assert syms["real"] == -1 and syms["2"] == -1
    assert all(v == 1 for p, v in syms.items() if p not in ("real", "2"))


def test_k2q_reciprocity_many():
    """The +1 product over all places, rechecked here on seeded pairs."""
    rng = random.Random(31415)
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    for _ in range(1000):
        a = Fraction(rng.choice([1, -1]))
        b = Fraction(rng.choice([1, -1]))
        for p in rng.sample(primes, 3):
            a *= Fraction(p) ** rng.randint(-2, 2)
        for p in rng.sample(primes, 3):
            b *= Fraction(p) ** rng.randint(-2, 2)
        syms = k2q_decompose(a, b)     # raises if reciprocity fails
        prod_ = 1
        for s in syms:
            prod_ *= s.value if s.place in ("real", "2") else legendre(s.value, s.place)
        assert prod_ == 1


def test_k2q_prime_bound():
    with pytest.raises(ValueError):
        k2q_decompose(53, 2, prime_bound=50)
