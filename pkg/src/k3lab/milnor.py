"""Milnor K-group presentations over finite fields and S-unit-truncated Q,
local (tame and Hilbert) symbols on Q, and the product-map kernel report.

The weight-n group is presented on the n-fold tensor power of the unit
group: relations are the unit-group relations in each slot, the Steinberg
relations a (x) (1-a) at every adjacent slot pair (enumerated over actual
unit pairs, since they are not bilinear), and the adjacent-swap sums (which
are bilinear, so generator-level rows suffice).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .abpres import AbMap, AbPres, map_kernel, subgroup_compare, tensor
from .fields import FactoredRational, is_prime
from .intlin import ResourceLimitError


def unit_group_pres(model):
    """The unit group of a field model as a presented abelian group."""
    return AbPres(model.n_unit_gens, model.unit_relation_rows())


def _tensor_coords(model, elems):
    """Coordinates of a1 (x) ... (x) an in the tensor-power basis."""
    vecs = [model.unit_coords(a) for a in elems]
    m = model.n_unit_gens
    n = len(elems)
    out = [0] * (m ** n)
    for idx in product(range(m), repeat=n):
        v = 1
        for slot, i in enumerate(idx):
            v *= vecs[slot][i]
            if v == 0:
                break
        if v:
            flat = 0
            for i in idx:
                flat = flat * m + i
            out[flat] = v
    return out


@dataclass
class MilnorPres:
    """Presentation of a Milnor K-group of one weight over a unit model."""
    model: object
    weight: int
    mod2: bool
    pres: AbPres

    def encode(self, *elems):
        """The symbol {a1, ..., an} as an element of the presentation."""
        if len(elems) != self.weight:
            raise ValueError(f"need {self.weight} entries")
        return self.pres.elem(_tensor_coords(self.model, elems))

    def classify(self):
        return self.pres.classify()


def milnor_pres(model, n, mod2=False, max_weight=3):
    """Weight-n Milnor presentation; n is capped at 3."""
    if n < 1 or n > max_weight:
        raise ResourceLimitError(f"weight {n} outside supported range 1..{max_weight}")
    m = model.n_unit_gens
    gens = m ** n
    rels = []
    # unit-group relations in every slot, bilinear in the others
    for row in model.unit_relation_rows():
        for slot in range(n):
            others = [range(m)] * (n - 1)
            for rest in product(*others):
                r = [0] * gens
                for i, v in enumerate(row):
                    if v:
                        idx = rest[:slot] + (i,) + rest[slot:]
                        flat = 0
                        for k in idx:
                            flat = flat * m + k
                        r[flat] += v
                rels.append(r)
    # Steinberg relations a (x) (1-a) at every adjacent slot pair
    if n >= 2:
        for a, b in model.steinberg_pairs():
            ca = model.unit_coords(a)
            cb = model.unit_coords(b)
            for slot in range(n - 1):
                others = [range(m)] * (n - 2)
                for rest in product(*others):
                    r = [0] * gens
                    for i, va in enumerate(ca):
                        if not va:
                            continue
                        for j, vb in enumerate(cb):
                            if not vb:
                                continue
                            idx = rest[:slot] + (i, j) + rest[slot:]
                            flat = 0
                            for k in idx:
                                flat = flat * m + k
                            r[flat] += va * vb
                    rels.append(r)
        # adjacent swap sums
        for slot in range(n - 1):
            for idx in product(range(m), repeat=n):
                jdx = idx[:slot] + (idx[slot + 1], idx[slot]) + idx[slot + 2:]
                r = [0] * gens
                flat_i = 0
                for k in idx:
                    flat_i = flat_i * m + k
                flat_j = 0
                for k in jdx:
                    flat_j = flat_j * m + k
                r[flat_i] += 1
                r[flat_j] += 1
                rels.append(r)
    if mod2:
        for g in range(gens):
            r = [0] * gens
            r[g] = 2
            rels.append(r)
    return MilnorPres(model, n, mod2, AbPres(gens, rels))


def milnor_pres_last_slot_only(model, n, mod2=False):
    """Variant with the Steinberg family pinned to the last two slots only,
    plus the swap relations.  Used as a regression cross-check: together with
    the swaps it presents the same group."""
    if n < 2:
        return milnor_pres(model, n, mod2)
    m = model.n_unit_gens
    gens = m ** n
    full = milnor_pres(model, n, mod2)
    rels = []
    for row in model.unit_relation_rows():
        for slot in range(n):
            for rest in product(*[range(m)] * (n - 1)):
                r = [0] * gens
                for i, v in enumerate(row):
                    if v:
                        idx = rest[:slot] + (i,) + rest[slot:]
                        flat = 0
                        for k in idx:
                            flat = flat * m + k
                        r[flat] += v
                rels.append(r)
    for a, b in model.steinberg_pairs():
        ca, cb = model.unit_coords(a), model.unit_coords(b)
        for rest in product(*[range(m)] * (n - 2)):
            r = [0] * gens
            for i, va in enumerate(ca):
                if not va:
                    continue
                for j, vb in enumerate(cb):
                    if not vb:
                        continue
                    idx = rest + (i, j)
                    flat = 0
                    for k in idx:
                        flat = flat * m + k
                    r[flat] += va * vb
            rels.append(r)
    for slot in range(n - 1):
        for idx in product(range(m), repeat=n):
            jdx = idx[:slot] + (idx[slot + 1], idx[slot]) + idx[slot + 2:]
            r = [0] * gens
            flat_i = flat_j = 0
            for k in idx:
                flat_i = flat_i * m + k
            for k in jdx:
                flat_j = flat_j * m + k
            r[flat_i] += 1
            r[flat_j] += 1
            rels.append(r)
    if mod2:
        for g in range(gens):
            r = [0] * gens
            r[g] = 2
            rels.append(r)
    return MilnorPres(model, n, mod2, AbPres(gens, rels))


def product_map(model, mod2=False, k2=None, k3=None):
    """The multiplication map (units) (x) K2 -> K3, a (x) {b,c} -> {a,b,c}."""
    if k2 is None:
        k2 = milnor_pres(model, 2)
    if k3 is None:
        k3 = milnor_pres(model, 3, mod2=mod2)
    units = unit_group_pres(model)
    dom = tensor(units, k2.pres)
    m = model.n_unit_gens
    # generator i (x) (j,k) -> generator (i,j,k); both flat in base m
    mat = [[0] * dom.n_gens for _ in range(k3.pres.n_gens)]
    for i in range(m):
        for jk in range(m * m):
            mat[i * m * m + jk][i * m * m + jk] = 1
    f = AbMap(dom, k3.pres, mat)
    return f, dom, k2, k3


def _sample_elements(model, rng, bound):
    """Deterministic small unit sample used for kernel generators."""
    if hasattr(model, "units"):
        return model.units()
    base = [FactoredRational(-1, {})]
    for p in model.primes:
        base.append(FactoredRational(1, {p: 1}))
        base.append(FactoredRational(1, {p: -1}))
    extra = model.sample_units(rng, bound, exp_bound=1)
    return base + extra


def kernel_gen_check(model, rng, sample_bound=16):
    """Compare the span of a (x) {b,c} + b (x) {a,c} (and 2d (x) {e,f})
    against the kernels of the product maps into K3 and K3/2.

    Containment of the generated subgroup in the kernel is a hard
    expectation; the equality index is reported, not asserted, since the
    truncated model can inflate it.
    """
    f, dom, k2, k3 = product_map(model, mod2=False)
    f2, dom2, _, k3m2 = product_map(model, mod2=True, k2=k2)
    elems = _sample_elements(model, rng, sample_bound)

    def swap_gen(a, b, c):
        # a (x) {b,c} + b (x) {a,c} in the tensor(units, K2) coordinates
        m = model.n_unit_gens
        va = model.unit_coords(a)
        vb = model.unit_coords(b)
        vbc = _tensor_coords(model, [b, c])
        vac = _tensor_coords(model, [a, c])
        out = [0] * (m * m * m)
        for i, ai in enumerate(va):
            if ai:
                for jk, v in enumerate(vbc):
                    if v:
                        out[i * m * m + jk] += ai * v
        for i, bi in enumerate(vb):
            if bi:
                for jk, v in enumerate(vac):
                    if v:
                        out[i * m * m + jk] += bi * v
        return dom.elem(out)

    def double_gen(d, e, f_):
        m = model.n_unit_gens
        vd = model.unit_coords(d)
        vef = _tensor_coords(model, [e, f_])
        out = [0] * (m * m * m)
        for i, di in enumerate(vd):
            if di:
                for jk, v in enumerate(vef):
                    if v:
                        out[i * m * m + jk] += 2 * di * v
        return dom.elem(out)

    gens_a = []
    triples = [(a, b, c) for a in elems for b in elems for c in elems]
    if len(triples) > 4096:
        triples = [triples[rng.randrange(len(triples))] for _ in range(4096)]
    for a, b, c in triples:
        gens_a.append(swap_gen(a, b, c))

    ker1, embed1 = map_kernel(f)
    ker1_gens = [dom.elem(embed1.data[i]) for i in range(embed1.rows)]
    status1, index1 = subgroup_compare(dom, gens_a, ker1_gens)

    gens_b = list(gens_a)
    for d, e, f_ in triples[: min(len(triples), 512)]:
        gens_b.append(double_gen(d, e, f_))
    ker2, embed2 = map_kernel(f2)
    ker2_gens = [dom2.elem(embed2.data[i]) for i in range(embed2.rows)]
    gens_b2 = [dom2.elem(g.coords) for g in gens_b]
    status2, index2 = subgroup_compare(dom2, gens_b2, ker2_gens)

    return {
        "k1_status": status1, "k1_index": index1,
        "k1_contained": status1 in ("equal", "A<B"),
        "k2_status": status2, "k2_index": index2,
        "k2_contained": status2 in ("equal", "A<B"),
        "sampled_triples": len(triples),
        "k3_class": list(k3.classify()),
        "k3_mod2_class": list(k3m2.classify()),
    }


# -- local symbols on Q -------------------------------------------------------

@dataclass(frozen=True)
class LocalSymbolValue:
    place: object          # odd prime p, "2", or "real"
    value: int             # element of F_p* for odd p; +1/-1 at 2 and real


def _val(r: Fraction, p):
    """p-adic valuation of a nonzero rational."""
    v = 0
    num, den = r.numerator, r.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _unit_mod_p(r: Fraction, p):
    num, den = r.numerator % p, r.denominator % p
    return (num * pow(den, -1, p)) % p


def tame_symbol(p, a: Fraction, b: Fraction):
    """(-1)^(v(a)v(b)) a^v(b) / b^v(a) reduced mod p, an element of F_p*."""
    va, vb = _val(a, p), _val(b, p)
    u = Fraction((-1) ** (va * vb)) * a ** vb / b ** va
    return _unit_mod_p(u, p)


def _hilbert2(a: Fraction, b: Fraction):
    """Hilbert symbol at the place 2 via the epsilon/omega exponent formula."""
    alpha, beta = _val(a, 2), _val(b, 2)
    u = a / Fraction(2) ** alpha
    v = b / Fraction(2) ** beta
    un = (u.numerator * u.denominator)    # odd integer with the right class mod 8
    vn = (v.numerator * v.denominator)
    eps_u = ((un - 1) // 2) % 2
    eps_v = ((vn - 1) // 2) % 2
    om_u = ((un * un - 1) // 8) % 2
    om_v = ((vn * vn - 1) // 8) % 2
    e = eps_u * eps_v + alpha * om_v + beta * om_u
    return -1 if e % 2 else 1


def local_symbol(place, a, b):
    """Local symbol of the pair {a, b} at one place of Q.

    Odd prime p: the tame symbol, valued in F_p*.  Place "2": the 2-adic
    Hilbert symbol.  Place "real": -1 iff both arguments are negative.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("local symbols need nonzero arguments")
    if place == "real":
        return LocalSymbolValue("real", -1 if (a < 0 and b < 0) else 1)
    if place == "2" or place == 2:
        return LocalSymbolValue("2", _hilbert2(a, b))
    p = int(place)
    if not is_prime(p) or p == 2:
        raise ValueError(f"bad place {place!r}")
    return LocalSymbolValue(p, tame_symbol(p, a, b))


def legendre(u, p):
    s = pow(u % p, (p - 1) // 2, p)
    return -1 if s == p - 1 else 1


def k2q_decompose(a, b, prime_bound=50):
    """All local symbols of {a, b} up to the prime bound, plus 2 and real.

    Every prime of a and b must lie below the bound; the Hilbert reciprocity
    product over the listed places (odd tame values reduced through the
    Legendre symbol) must be +1, and is recomputed here as a self-check.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("nonzero arguments required")
    support = set()
    for r in (a, b):
        for n in (abs(r.numerator), r.denominator):
            d = 2
            while d * d <= n:
                if n % d == 0:
                    support.add(d)
                    while n % d == 0:
                        n //= d
                d += 1
            if n > 1:
                support.add(n)
    if any(p > prime_bound for p in support):
        raise ValueError(f"prime support {sorted(support)} exceeds bound {prime_bound}")
    out = [local_symbol("real", a, b), local_symbol("2", a, b)]
    p = 3
    while p <= prime_bound:
        if is_prime(p):
            out.append(local_symbol(p, a, b))
        p += 2
    prod_ = 1
    for sym in out:
        if sym.place in ("real", "2"):
            prod_ *= sym.value
        else:
            prod_ *= legendre(sym.value, sym.place)
    if prod_ != 1:
        raise AssertionError("Hilbert reciprocity failed; symbol bug")
    return out
