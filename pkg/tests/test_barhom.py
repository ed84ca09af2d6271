import random
from itertools import product

import pytest

from k3lab.barhom import (BarChain, CycleClass, GroupHom, GroupTable,
                          TorusContext, bar_boundary, c_cycle, degree_tuples,
                          homology_groups, map_chain, shuffle_cup, torus_class)
from k3lab.fields import ff_make
from k3lab.intlin import ResourceLimitError

from oracles import cyclic_homology_list, kunneth_homology, canonical_factors


def test_group_table_axioms():
    G = GroupTable.cyclic_product([5])
    assert G.order == 5
    assert G.abelian
    assert G.inverse[1] == 4
    with pytest.raises(ValueError):
        GroupTable([[0, 1], [0, 1]], ["e", "g"])   # not a group


def test_group_table_product():
    A = GroupTable.cyclic_product([2])
    B = GroupTable.cyclic_product([3])
    P = GroupTable.product(A, B)
    assert P.order == 6
    assert P.cyclic_orders == (2, 3)
    assert P.abelian


def test_boundary_formula_cyclic5():
    """d[t|t] = [t] - [t^2] + [t] over Z/5."""
    G = GroupTable.cyclic_product([5])
    chain = BarChain(G, 2, {(1, 1): 1})
    b = chain.boundary()
    assert b.terms == {(1,): 2, (2,): -1}


def test_boundary_degree_one_is_zero():
    G = GroupTable.cyclic_product([6])
    for g in G.non_identity():
        assert BarChain(G, 1, {(g,): 1}).boundary().is_zero()
    M = bar_boundary(G, 1)
    assert M.triplets == ()


def test_boundary_normalization_z2_cube_of_g():
    """All faces of [g|g|g] in Z/2 hit the identity, so d is zero."""
    G = GroupTable.cyclic_product([2])
    b = BarChain(G, 3, {(1, 1, 1): 1}).boundary()
    assert b.is_zero()
    M = bar_boundary(G, 3)
    assert M.triplets == ()


def test_boundary_squares_to_zero():
    for orders in ([4], [5], [2, 2], [2, 4], [3, 3]):
        G = GroupTable.cyclic_product(orders)
        for n in (2, 3):
            for tup in degree_tuples(G, n):
                c = BarChain(G, n, {tup: 1})
                assert c.boundary().boundary().is_zero()


def test_bar_boundary_matrix_matches_chain_boundary():
    G = GroupTable.cyclic_product([3, 2])
    M = bar_boundary(G, 2)
    cols = degree_tuples(G, 2)
    rows = degree_tuples(G, 1)
    by_col = {}
    for r, c, v in M.triplets:
        by_col.setdefault(c, {})[r] = v
    for j, tup in enumerate(cols):
        chain = BarChain(G, 2, {tup: 1}).boundary()
        expect = {rows.index(t): v for t, v in chain.terms.items()}
        assert by_col.get(j, {}) == expect


def test_bar_boundary_cap():
    G = GroupTable.cyclic_product([6])
    with pytest.raises(ResourceLimitError):
        bar_boundary(G, 3, max_cols=10)


def test_c_cycle_basic():
    G = GroupTable.cyclic_product([7])
    c1 = c_cycle(G, [3])
    assert c1.chain.terms == {(3,): 1}
    c2 = c_cycle(G, [2, 5])
    assert c2.chain.terms == {(2, 5): 1, (5, 2): -1}
    assert c2.chain.is_cycle()


def test_c_cycle_repeated_entry_vanishes():
    G = GroupTable.cyclic_product([5])
    assert c_cycle(G, [2, 2]).chain.is_zero()
    assert c_cycle(G, [3, 3, 3]).chain.is_zero()


def test_c_cycle_requires_commuting():
    F3 = ff_make(3)
    GL2 = GroupTable.from_gl2(F3)
    # find a non-commuting pair
    pair = None
    for a in range(GL2.order):
        for b in range(GL2.order):
            if GL2.mult[a][b] != GL2.mult[b][a]:
                pair = (a, b)
                break
        if pair:
            break
    with pytest.raises(ValueError):
        c_cycle(GL2, list(pair))


def test_c_cycle_arity_cap():
    G = GroupTable.cyclic_product([3])
    with pytest.raises(ResourceLimitError):
        c_cycle(G, [1, 1, 1, 1, 1])


def test_c_cycles_are_cycles_everywhere():
    rng = random.Random(14)
    for orders in ([4], [2, 2], [6], [2, 4], [3, 3]):
        G = GroupTable.cyclic_product(orders)
        for n in (1, 2, 3):
            for _ in range(20):
                elems = [rng.randrange(G.order) for _ in range(n)]
                assert c_cycle(G, elems).chain.is_cycle()


def test_permutation_sign_at_chain_level():
    """c(g_sigma) = sign(sigma) c(g), exactly as chains."""
    from itertools import permutations
    G = GroupTable.cyclic_product([3, 4])
    rng = random.Random(2)
    for _ in range(30):
        elems = [rng.randrange(G.order) for _ in range(3)]
        base = c_cycle(G, elems).chain
        for perm in permutations(range(3)):
            sign = 1
            for i in range(3):
                for j in range(i):
                    if perm[j] > perm[i]:
                        sign = -sign
            permuted = c_cycle(G, [elems[k] for k in perm]).chain
            assert permuted == base.scale(sign)


def test_shuffle_cup_equals_c_of_pairs():
    """The cross product of c-cycles is the c-cycle of the juxtaposed
    elements, on the nose."""
    rng = random.Random(77)
    A = GroupTable.cyclic_product([4])
    B = GroupTable.cyclic_product([2, 2])
    for p, q in ((1, 1), (1, 2), (2, 1)):
        for _ in range(15):
            xs = [rng.randrange(A.order) for _ in range(p)]
            ys = [rng.randrange(B.order) for _ in range(q)]
            GH, cup = shuffle_cup(c_cycle(A, xs), c_cycle(B, ys))
            pairs = [x * B.order + B.identity for x in xs] + \
                    [A.identity * B.order + y for y in ys]
            direct = c_cycle(GH, pairs)
            assert cup.chain == direct.chain


def test_shuffle_cup_term_count():
    """Degree (1,2) shuffles: C(3,1) = 3 interleavings per term pair."""
    A = GroupTable.cyclic_product([5])
    B = GroupTable.cyclic_product([5])
    x = CycleClass(BarChain(A, 1, {(2,): 1}))
    GH, cup = shuffle_cup(x, c_cycle(B, [1, 3]))
    # c(1,3) has 2 terms; each pairs with [2] into 3 interleavings
    assert len(cup.chain.terms) == 6


def test_shuffle_cup_zero():
    A = GroupTable.cyclic_product([3])
    zero = CycleClass(BarChain(A, 1, {}))
    _, cup = shuffle_cup(zero, c_cycle(A, [1]))
    assert cup.chain.is_zero()


def test_map_chain_identity_and_normalization():
    G = GroupTable.cyclic_product([4])
    ident = GroupHom(G, G, range(G.order))
    ch = c_cycle(G, [1, 2]).chain
    assert map_chain(ident, ch) == ch
    # quotient Z/4 -> Z/2 sends 2 to identity: tuples through it die
    H = GroupTable.cyclic_product([2])
    quo = GroupHom(G, H, [0, 1, 0, 1])
    img = map_chain(quo, BarChain(G, 2, {(2, 1): 1, (1, 1): 1}))
    assert img.terms == {(1, 1): 1}


def test_group_hom_validation():
    G = GroupTable.cyclic_product([4])
    H = GroupTable.cyclic_product([2])
    with pytest.raises(ValueError):
        GroupHom(G, H, [0, 1, 1, 0])    # not a homomorphism


def test_homology_of_cyclic_groups():
    """H_n(Z/m) follows the classical odd/even pattern, n <= 4, m <= 6."""
    for m in range(1, 7):
        G = GroupTable.cyclic_product([m])
        expect = cyclic_homology_list(m, 4)
        for n in range(5):
            rank, factors = homology_groups(G, n)
            exp = expect[n]
            exp_rank = sum(1 for d in exp if d == 0)
            exp_factors = tuple(d for d in exp if d > 1)
            assert (rank, factors) == (exp_rank, exp_factors), (m, n)


def test_homology_klein_four_matches_kunneth():
    G = GroupTable.cyclic_product([2, 2])
    h2 = cyclic_homology_list(2, 3)
    expect = kunneth_homology(h2, h2, 3)
    for n in range(4):
        rank, factors = homology_groups(G, n)
        exp = expect[n]
        assert rank == sum(1 for d in exp if d == 0)
        assert list(factors) == [d for d in exp if d > 1]


def test_homology_h0():
    G = GroupTable.cyclic_product([4])
    assert homology_groups(G, 0) == (1, ())


def test_torus_classes():
    F5 = ff_make(5)
    ctx = TorusContext(F5)
    a, b, c = F5.from_code(2), F5.from_code(3), F5.from_code(2)
    T, k = torus_class("k", F5, a, b, c, ctx=ctx)
    assert T is ctx.t2
    assert len(k.chain.terms) == 6
    _, s = torus_class("s", F5, a, b, c, ctx=ctx)
    assert s.chain.is_cycle()
    T3, psi = torus_class("psi", F5, a, b, c, ctx=ctx)
    assert T3 is ctx.t3
    assert psi.chain.is_cycle()
    _, phi = torus_class("phi", F5, a, b, c, ctx=ctx)
    assert phi.chain.is_cycle()
    _, io = torus_class("iota", F5, a, b, ctx=ctx)
    assert io.chain.is_cycle()
    with pytest.raises(ValueError):
        torus_class("nope", F5, a, b, c, ctx=ctx)
    with pytest.raises(ValueError):
        torus_class("k", F5, a, b, ctx=ctx)


def test_torus_class_k_structure():
    """k over F_5 at distinct units is a 6-term signed permutation sum;
    over F_3 the repeated diagonal entries cancel the whole sum."""
    F5 = ff_make(5)
    T, k = torus_class("k", F5, F5.from_code(2), F5.from_code(3), F5.from_code(4))
    assert len(k.chain.terms) == 6
    assert sorted(k.chain.terms.values()) == [-1, -1, -1, 1, 1, 1]
    F3 = ff_make(3)
    m = F3.from_code(2)
    _, k3 = torus_class("k", F3, m, m, m)
    assert k3.chain.is_zero()


def test_conj_w_inverts_diagonal():
    """Conjugating s_{a,b,c} by the Weyl flip gives s of the inverses,
    exactly at the chain level."""
    F5 = ff_make(5)
    ctx = TorusContext(F5)
    a, b, c = F5.from_code(2), F5.from_code(3), F5.from_code(4)
    _, s = torus_class("s", F5, a, b, c, ctx=ctx)
    _, s_inv = torus_class("s", F5, a.inv(), b.inv(), c.inv(), ctx=ctx)
    flipped = map_chain(ctx.conj_w(), s.chain)
    assert flipped == s_inv.chain


def test_chain_serialization_round_trip():
    F5 = ff_make(5)
    ctx = TorusContext(F5)
    _, k = torus_class("k", F5, F5.from_code(2), F5.from_code(3), F5.from_code(4), ctx=ctx)
    lines = k.chain.to_lines()
    back = BarChain.from_lines(ctx.t2, 3, lines)
    assert back == k.chain


def test_subgroup_closure():
    G = GroupTable.cyclic_product([12])
    assert G.subgroup_closure([4]) == (0, 4, 8)
    assert G.subgroup_closure([3, 4]) == tuple(range(12))
