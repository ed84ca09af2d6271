"""Deciding equality of homology classes: is a cycle a boundary?

Exact mode answers over the integers with an explicit witness chain.  The
solver first restricts to the bar complex of the subgroup generated by the
cycle's support (a witness found there pushes forward along the inclusion),
then escalates to the ambient complex while streaming boundary columns into
an incremental echelon, stopping as soon as the cycle reduces to zero.

Modular mode certifies membership mod p.  For an abelian group given as a
product of cyclic factors this needs no matrices at all: a cycle z is a
boundary mod p exactly when it pairs to zero against a basis of mod-p
cohomology classes (the pairing is perfect over a field), and for a product
of cyclic groups such a basis is explicit: cross products of linear
characters and carry 2-cocycles of the factors.  Groups without a recorded
cyclic decomposition fall back to a mod-p echelon of the boundary matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlin import (DEFAULT_MAX_BITS, DEFAULT_MAX_COLS, Echelon,
                     MODULAR_PRIMES, ResourceLimitError)
from .barhom import BarChain, CycleClass, GroupTable, degree_tuples

_BATCH = 2048


@dataclass
class HomologyVerdict:
    status: str                   # homologous-exact | not-homologous | homologous-mod-p
    witness: BarChain | None = None
    moduli: tuple = ()
    obstruction: str | None = None

    @property
    def positive(self):
        return self.status in ("homologous-exact", "homologous-mod-p")


def _subgroup_table(G: GroupTable, elems):
    idx = {g: i for i, g in enumerate(elems)}
    mult = [[idx[G.mult[a][b]] for b in elems] for a in elems]
    labels = [G.labels[g] for g in elems]
    return GroupTable(mult, labels, identity=idx[G.identity],
                      abelian=G.abelian if G.abelian else None, check=False)


class _ExactBoundarySolver:
    """Streaming exact membership in the image of d_{n+1} over one group."""

    def __init__(self, G: GroupTable, n, max_bits=DEFAULT_MAX_BITS):
        self.G = G
        self.n = n
        self.cols = degree_tuples(G, n + 1)
        self.pos = 0
        self.ech = Echelon(provenance=True, max_bits=max_bits)

    def _insert_upto(self, k):
        G, n = self.G, self.n
        while self.pos < k:
            tup = self.cols[self.pos]
            self.pos += 1
            col = BarChain(G, n + 1, {tup: 1}).boundary().terms
            if col:
                self.ech.insert(col, tag=tup)

    def membership(self, z_terms):
        """(True, witness dict tuple->coeff) or (False, None); complete."""
        total = len(self.cols)
        while True:
            wit = self.ech.witness(dict(z_terms))
            if wit is not None:
                return True, wit
            if self.pos >= total:
                return False, None
            self._insert_upto(min(total, self.pos + _BATCH))


def _exact_solver(G, n, max_bits):
    key = ("exact", n)
    s = G._solver_cache.get(key)
    if s is None:
        s = _ExactBoundarySolver(G, n, max_bits=max_bits)
        G._solver_cache[key] = s
    return s


def _sub_solver(G, n, elems, max_bits):
    key = ("sub", n, elems)
    hit = G._solver_cache.get(key)
    if hit is None:
        H = _subgroup_table(G, elems)
        hit = (H, _ExactBoundarySolver(H, n, max_bits=max_bits))
        G._solver_cache[key] = hit
    return hit


def _exact_decision(G, z: BarChain, max_cols, max_bits):
    """Integer boundary membership with the subgroup-ladder strategy."""
    n = z.degree
    sub = G.subgroup_closure(z.support_elements())
    full_cols = G.tuple_count(n + 1)
    if len(sub) < G.order:
        sub_cols = (len(sub) - 1) ** (n + 1)
        if sub_cols <= max_cols:
            H, solver = _sub_solver(G, n, sub, max_bits)
            to_sub = {g: i for i, g in enumerate(sub)}
            z_sub = {tuple(to_sub[g] for g in tup): c for tup, c in z.terms.items()}
            ok, wit = solver.membership(z_sub)
            if ok:
                chain = BarChain(H, n + 1, wit).map_elements(
                    lambda i: sub[i], G, degree=n + 1)
                return True, chain
            # not a boundary inside the subgroup: inconclusive, escalate
    if full_cols > max_cols:
        raise ResourceLimitError(
            f"exact solve needs {full_cols} columns, cap {max_cols}")
    solver = _exact_solver(G, n, max_bits)
    ok, wit = solver.membership(z.terms)
    if ok:
        return True, BarChain(G, n + 1, wit)
    return False, None


# -- mod-p decision by cohomology pairing ------------------------------------

def _compositions(total, k):
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def cocycle_basis(orders, degree, p):
    """Compositions indexing a basis of H^degree(prod Z/d_i, F_p).

    A factor with p | d contributes one class in every degree (carry-cocycle
    powers, times a character in odd degree); factors with p coprime to d
    contribute only in degree zero.  Cross products over all compositions of
    the degree give a basis, by the field-coefficient Kunneth formula.
    """
    out = []
    for comp in _compositions(degree, len(orders)):
        if all(m == 0 or orders[i] % p == 0 for i, m in enumerate(comp)):
            out.append(comp)
    return out


def _eval_cross_cocycle(coords, orders, comp, tup, p):
    """Value of the cross-product cocycle on one bar tuple, in F_p.

    Per factor i with block degree m: odd m contributes the character
    coordinate of the first block entry; the remaining consecutive pairs
    each contribute an addition carry in Z/d_i.
    """
    val = 1
    pos = 0
    for i, m in enumerate(comp):
        if m == 0:
            continue
        d = orders[i]
        xs = [coords[g][i] for g in tup[pos:pos + m]]
        pos += m
        if m % 2:
            val = (val * xs[0]) % p
            xs = xs[1:]
        for j in range(0, len(xs), 2):
            if xs[j] + xs[j + 1] < d:
                return 0
        if val == 0:
            return 0
    return val % p


def pair_with_basis(G: GroupTable, z: BarChain, p):
    """Pairings of z against the cohomology basis; None if no chart."""
    if G.coords is None or G.cyclic_orders is None:
        return None
    orders = G.cyclic_orders
    comps = cocycle_basis(orders, z.degree, p)
    out = []
    for comp in comps:
        s = 0
        for tup, c in z.terms.items():
            v = _eval_cross_cocycle(G.coords, orders, comp, tup, p)
            if v:
                s = (s + c * v) % p
        out.append((comp, s % p))
    return out


def _modp_echelon_decision(G, z: BarChain, p, max_cols, max_bits):
    n = z.degree
    if G.tuple_count(n + 1) > max_cols:
        raise ResourceLimitError("mod-p echelon exceeds column cap")
    key = ("modp", n, p)
    ech = G._solver_cache.get(key)
    if ech is None:
        ech = Echelon(modulus=p, max_bits=max_bits)
        for tup in degree_tuples(G, n + 1):
            col = BarChain(G, n + 1, {tup: 1}).boundary().terms
            if col:
                ech.insert(col)
        G._solver_cache[key] = ech
    return ech.contains(dict(z.terms))


def boundary_mod_p(G: GroupTable, z: BarChain, p, max_cols=DEFAULT_MAX_COLS,
                   max_bits=DEFAULT_MAX_BITS):
    """Is the integral cycle z a boundary mod p?  Sound and complete.

    For p coprime to |G| every positive-degree cycle is a boundary mod p,
    so the answer is yes without further work.
    """
    if z.degree < 1:
        raise ValueError("degree must be positive")
    if G.order % p:
        return True, None
    pairings = pair_with_basis(G, z, p)
    if pairings is not None:
        for comp, v in pairings:
            if v:
                return False, f"pairs to {v} mod {p} with class {comp}"
        return True, None
    ok = _modp_echelon_decision(G, z, p, max_cols, max_bits)
    return ok, (None if ok else f"not in boundary image mod {p}")


def homologous(x: CycleClass, y: CycleClass, mode="auto",
               primes=MODULAR_PRIMES, max_cols=DEFAULT_MAX_COLS,
               max_bits=DEFAULT_MAX_BITS):
    """Decide whether two cycles represent the same homology class.

    exact:   integer decision; positive answers carry a verified witness w
             with dw = x - y, negative answers are definitive.
    modular: certificате mod each prime in `primes`; a failure mod a single
             prime is an exact refutation.
    auto:    exact when the ambient complex fits the column cap, else modular.
    """
    if x.group is not y.group:
        raise ValueError("cycles over different groups")
    if x.degree != y.degree:
        raise ValueError("cycles of different degrees")
    G = x.group
    z = x.chain - y.chain
    if z.is_zero():
        return HomologyVerdict("homologous-exact",
                               witness=BarChain(G, z.degree + 1, {}))
    if mode == "auto":
        mode = "exact" if G.tuple_count(z.degree + 1) <= max_cols else "modular"
    if mode == "exact":
        ok, wit = _exact_decision(G, z, max_cols, max_bits)
        if ok:
            if not (wit.boundary() - z).is_zero():
                raise AssertionError("witness failed boundary verification")
            return HomologyVerdict("homologous-exact", witness=wit)
        return HomologyVerdict("not-homologous",
                               obstruction="not in the integer boundary lattice")
    if mode == "modular":
        for p in primes:
            ok, obs = boundary_mod_p(G, z, p, max_cols=max_cols,
                                     max_bits=max_bits)
            if not ok:
                return HomologyVerdict("not-homologous", moduli=(p,),
                                       obstruction=obs)
        return HomologyVerdict("homologous-mod-p", moduli=tuple(primes))
    raise ValueError(f"unknown mode {mode!r}")


def class_vector_mod_p(G: GroupTable, z: BarChain, p):
    """Pairing vector of a cycle against the mod-p cohomology basis.

    Reporting helper: all-zero means the class dies mod p.
    """
    pairings = pair_with_basis(G, z, p)
    if pairings is None:
        raise ValueError("group has no cyclic coordinate chart")
    return pairings
