"""Normalized bar-resolution chains over finite group tables.

Chains of degree n are integer combinations of tuples [g1|...|gn] of
non-identity elements.  The boundary is

    d[g1|...|gn] = [g2|...|gn]
                 + sum_{i=1..n-1} (-1)^i [g1|..|g_i g_{i+1}|..|gn]
                 + (-1)^n [g1|...|g_{n-1}]

with tuples containing the identity dropped (normalized complex).

The signed permutation sums c(g1,...,gn) of pairwise commuting elements,
their shuffle products, and the specific diagonal-torus classes built from
field units all live here; deciding homology-class equality is delegated to
``homsolve``.
"""

from __future__ import annotations

from itertools import permutations, combinations, product

from .intlin import (DEFAULT_MAX_COLS, ResourceLimitError, SparseIntMatrix)

AXIOM_CHECK_CAP = 256


class GroupTable:
    """Finite group as an explicit multiplication table.

    ``cyclic_orders``/``coords`` are set by the product-of-cyclic-groups
    constructors and record the decomposition used by the fast mod-p
    homology pairing; generic tables leave them as None.
    """

    def __init__(self, mult, labels, identity=0, abelian=None,
                 cyclic_orders=None, coords=None, check=True):
        n = len(mult)
        self.order = n
        self.mult = tuple(tuple(r) for r in mult)
        self.labels = tuple(labels)
        self.identity = identity
        if check and n <= AXIOM_CHECK_CAP:
            self._verify_axioms()
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.mult[a][b] == identity:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise ValueError(f"element {a} has no inverse")
        self.inverse = tuple(inv)
        if abelian is None:
            abelian = all(self.mult[a][b] == self.mult[b][a]
                          for a in range(n) for b in range(a))
        self.abelian = abelian
        self.cyclic_orders = tuple(cyclic_orders) if cyclic_orders else None
        self.coords = tuple(tuple(c) for c in coords) if coords else None
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        self._solver_cache = {}
        self._tuple_cache = {}

    def _verify_axioms(self):
        n = self.order
        e = self.identity
        for a in range(n):
            if self.mult[e][a] != a or self.mult[a][e] != a:
                raise ValueError("identity axiom fails")
        for a in range(n):
            for b in range(n):
                ab = self.mult[a][b]
                for c in range(n):
                    if self.mult[ab][c] != self.mult[a][self.mult[b][c]]:
                        raise ValueError("associativity fails")

    @classmethod
    def cyclic_product(cls, orders, labels=None):
        """Direct product of cyclic groups Z/d1 x ... x Z/dk."""
        orders = tuple(int(d) for d in orders)
        if any(d < 1 for d in orders):
            raise ValueError("orders must be positive")
        coords = list(product(*[range(d) for d in orders]))
        index = {c: i for i, c in enumerate(coords)}
        n = len(coords)
        mult = [[index[tuple((x + y) % d for x, y, d in zip(a, b, orders))]
                 for b in coords] for a in coords]
        if labels is None:
            labels = ["(" + ",".join(str(x) for x in c) + ")" for c in coords]
        return cls(mult, labels, identity=index[tuple([0] * len(orders))],
                   abelian=True, cyclic_orders=orders, coords=coords)

    @classmethod
    def torus(cls, field, arity):
        """(F*)^arity in discrete-log coordinates, labels from field elements."""
        d = field.q - 1
        T = cls.cyclic_product([d] * arity)
        labels = []
        for c in T.coords:
            labels.append("(" + ",".join(field.label_of(field.from_exp(k))
                                         for k in c) + ")")
        return cls(T.mult, labels, identity=T.identity, abelian=True,
                   cyclic_orders=T.cyclic_orders, coords=T.coords, check=False)

    @classmethod
    def product(cls, G, H):
        n, m = G.order, H.order
        mult = [[(G.mult[a][c]) * m + H.mult[b][d]
                 for c in range(n) for d in range(m)]
                for a in range(n) for b in range(m)]
        labels = [f"({G.labels[a]},{H.labels[b]})"
                  for a in range(n) for b in range(m)]
        orders = None
        coords = None
        if G.cyclic_orders and H.cyclic_orders:
            orders = G.cyclic_orders + H.cyclic_orders
            coords = [G.coords[a] + H.coords[b]
                      for a in range(n) for b in range(m)]
        return cls(mult, labels, identity=G.identity * m + H.identity,
                   abelian=G.abelian and H.abelian, cyclic_orders=orders,
                   coords=coords, check=False)

    @classmethod
    def from_gl2(cls, field):
        """GL2 over a small field, elements as 2x2 matrices (a,b;c,d)."""
        elems = []
        codes = range(field.q)
        for a, b, c, d in product(codes, repeat=4):
            ea, eb = field.from_code(a), field.from_code(b)
            ec, ed = field.from_code(c), field.from_code(d)
            det = field._sub_codes(field.code_of(ea * ed),
                                   field.code_of(eb * ec))
            if det:
                elems.append((a, b, c, d))
        index = {m: i for i, m in enumerate(elems)}
        f = field

        def mul(m1, m2):
            a1, b1, c1, d1 = (f.from_code(x) for x in m1)
            a2, b2, c2, d2 = (f.from_code(x) for x in m2)
            return (f.code_of(_ff_add(f, _ff_mul(a1, a2), _ff_mul(b1, c2))),
                    f.code_of(_ff_add(f, _ff_mul(a1, b2), _ff_mul(b1, d2))),
                    f.code_of(_ff_add(f, _ff_mul(c1, a2), _ff_mul(d1, c2))),
                    f.code_of(_ff_add(f, _ff_mul(c1, b2), _ff_mul(d1, d2))))

        mult = [[index[mul(m1, m2)] for m2 in elems] for m1 in elems]
        labels = [";".join(f.label_of(f.from_code(x)) for x in m) for m in elems]
        ident = index[(1, 0, 0, 1)]
        return cls(mult, labels, identity=ident, abelian=False, check=False)

    def subgroup_closure(self, elems):
        """Sorted element indices of the subgroup generated by elems."""
        seen = {self.identity}
        frontier = [self.identity]
        for g in elems:
            if g not in seen:
                seen.add(g)
                frontier.append(g)
        while frontier:
            nxt = []
            for a in frontier:
                for g in list(seen):
                    for prod_ in (self.mult[a][g], self.mult[g][a]):
                        if prod_ not in seen:
                            seen.add(prod_)
                            nxt.append(prod_)
                inv = self.inverse[a]
                if inv not in seen:
                    seen.add(inv)
                    nxt.append(inv)
            frontier = nxt
        return tuple(sorted(seen))

    def non_identity(self):
        return tuple(i for i in range(self.order) if i != self.identity)

    def tuple_count(self, n):
        return (self.order - 1) ** n

    def commute(self, a, b):
        return self.mult[a][b] == self.mult[b][a]

    def index_of_label(self, lab):
        return self._label_index[lab]

    def elem_from_coords(self, c):
        if self.coords is None:
            raise ValueError("group has no coordinate chart")
        return self.coords.index(tuple(x % d for x, d in zip(c, self.cyclic_orders)))

    def __repr__(self):
        return f"GroupTable(order={self.order})"


def _ff_mul(a, b):
    return a * b


def _ff_add(field, a, b):
    return field.from_code(field._add_codes(field.code_of(a), field.code_of(b)))


class BarChain:
    """Formal integer combination of normalized bar tuples of one degree."""

    __slots__ = ("group", "degree", "terms")

    def __init__(self, group, degree, terms=()):
        self.group = group
        self.degree = degree
        tt = {}
        items = terms.items() if isinstance(terms, dict) else terms
        e = group.identity
        for tup, coeff in items:
            tup = tuple(tup)
            if len(tup) != degree:
                raise ValueError("tuple of wrong degree")
            if coeff == 0 or e in tup:
                continue
            nv = tt.get(tup, 0) + coeff
            if nv:
                tt[tup] = nv
            else:
                del tt[tup]
        self.terms = tt

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._compat(other)
        t = dict(self.terms)
        for tup, c in other.terms.items():
            nv = t.get(tup, 0) + c
            if nv:
                t[tup] = nv
            else:
                del t[tup]
        return BarChain(self.group, self.degree, t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        if k == 0:
            return BarChain(self.group, self.degree, {})
        return BarChain(self.group, self.degree,
                        {t: k * c for t, c in self.terms.items()})

    def __neg__(self):
        return self.scale(-1)

    def _compat(self, other):
        if self.group is not other.group or self.degree != other.degree:
            raise ValueError("chains from different complexes")

    def boundary(self):
        G = self.group
        n = self.degree
        out = {}
        if n == 0:
            return BarChain(G, 0, {})
        e = G.identity

        def put(tup, c):
            if e in tup:
                return
            nv = out.get(tup, 0) + c
            if nv:
                out[tup] = nv
            else:
                del out[tup]

        for tup, c in self.terms.items():
            if n == 1:
                continue    # leading and trailing faces cancel in degree 1
            put(tup[1:], c)
            sign = 1
            for i in range(n - 1):
                sign = -sign
                put(tup[:i] + (G.mult[tup[i]][tup[i + 1]],) + tup[i + 2:], sign * c)
            put(tup[:-1], c if n % 2 == 0 else -c)
        return BarChain(G, n - 1, out)

    def is_cycle(self):
        return self.boundary().is_zero()

    def support_elements(self):
        out = set()
        for tup in self.terms:
            out.update(tup)
        return sorted(out)

    def map_elements(self, fn, target, degree=None):
        """Apply an element map tuple-wise, dropping identity entries."""
        deg = self.degree if degree is None else degree
        e = target.identity
        out = {}
        for tup, c in self.terms.items():
            img = tuple(fn(g) for g in tup)
            if e in img:
                continue
            nv = out.get(img, 0) + c
            if nv:
                out[img] = nv
            else:
                del out[img]
        return BarChain(target, deg, out)

    def to_lines(self):
        """Serialize as "coeff: g1|g2|...|gn" lines using element labels."""
        lab = self.group.labels
        lines = []
        for tup in sorted(self.terms):
            lines.append(f"{self.terms[tup]}: " + "|".join(lab[g] for g in tup))
        return lines

    @classmethod
    def from_lines(cls, group, degree, lines):
        terms = {}
        for ln in lines:
            if not ln.strip():
                continue
            coeff_s, _, tup_s = ln.partition(":")
            tup = tuple(group.index_of_label(t.strip())
                        for t in tup_s.strip().split("|"))
            terms[tup] = terms.get(tup, 0) + int(coeff_s)
        return cls(group, degree, terms)

    def __eq__(self, other):
        return (isinstance(other, BarChain) and self.group is other.group
                and self.degree == other.degree and self.terms == other.terms)

    def __repr__(self):
        return f"BarChain(deg={self.degree}, terms={len(self.terms)})"


class CycleClass:
    """A bar chain whose boundary has been checked to vanish."""

    __slots__ = ("chain",)

    def __init__(self, chain: BarChain):
        if not chain.is_cycle():
            raise ValueError("chain is not a cycle")
        self.chain = chain

    @property
    def group(self):
        return self.chain.group

    @property
    def degree(self):
        return self.chain.degree

    def __repr__(self):
        return f"CycleClass(deg={self.degree}, terms={len(self.chain.terms)})"


def degree_tuples(G: GroupTable, n):
    """All degree-n normalized tuples in lexicographic element-index order."""
    key = ("tuples", n)
    hit = G._tuple_cache.get(key)
    if hit is None:
        hit = tuple(product(G.non_identity(), repeat=n))
        G._tuple_cache[key] = hit
    return hit


def bar_boundary(G: GroupTable, n, max_cols=DEFAULT_MAX_COLS):
    """Matrix of d_n from degree-n to degree-(n-1) normalized chains.

    Columns are indexed by degree-n tuples in lexicographic order, rows by
    degree-(n-1) tuples likewise.
    """
    if G.tuple_count(n) > max_cols:
        raise ResourceLimitError(
            f"degree-{n} complex has {G.tuple_count(n)} columns, cap {max_cols}")
    cols = degree_tuples(G, n)
    rows = degree_tuples(G, n - 1)
    row_index = {t: i for i, t in enumerate(rows)}
    trips = []
    for j, tup in enumerate(cols):
        b = BarChain(G, n, {tup: 1}).boundary()
        for t, c in b.terms.items():
            trips.append((row_index[t], j, c))
    return SparseIntMatrix(len(rows), len(cols), trips)


def c_cycle(G: GroupTable, elems, max_arity=4):
    """Signed sum over all permutations of a pairwise commuting tuple."""
    elems = tuple(elems)
    n = len(elems)
    if n > max_arity:
        raise ResourceLimitError(f"c() arity {n} exceeds cap {max_arity}")
    for i in range(n):
        for j in range(i):
            if not G.commute(elems[i], elems[j]):
                raise ValueError("elements do not pairwise commute")
    terms = {}
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        tup = tuple(elems[k] for k in perm)
        terms[tup] = terms.get(tup, 0) + sign
    return CycleClass(BarChain(G, n, terms))


def _perm_sign(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i):
            if perm[j] > perm[i]:
                sign = -sign
    return sign


def shuffle_cup(x: CycleClass, y: CycleClass, GH: GroupTable | None = None):
    """Chain-level cross product into G x H via the Eilenberg-Zilber shuffles.

    Each pair of terms contributes C(p+q, p) interleavings; the sign of a
    shuffle is the parity of the number of transpositions needed to unshuffle
    it.  Returns (product table, cycle).
    """
    G, H = x.group, y.group
    if GH is None:
        GH = GroupTable.product(G, H)
    p, q = x.degree, y.degree
    m = H.order
    eH = H.identity
    eG = G.identity
    terms = {}
    for gt, cg in x.chain.terms.items():
        for ht, ch in y.chain.terms.items():
            base = cg * ch
            for pos in combinations(range(p + q), p):
                inv = sum(pos[k] - k for k in range(p))
                sign = -1 if inv % 2 else 1
                tup = [None] * (p + q)
                for k, s in enumerate(pos):
                    tup[s] = gt[k] * m + eH
                it = iter(ht)
                for s in range(p + q):
                    if tup[s] is None:
                        tup[s] = eG * m + next(it)
                key = tuple(tup)
                nv = terms.get(key, 0) + base * sign
                if nv:
                    terms[key] = nv
                else:
                    del terms[key]
    return GH, CycleClass(BarChain(GH, p + q, terms))


class GroupHom:
    """Verified homomorphism between group tables, as an index map."""

    def __init__(self, src: GroupTable, dst: GroupTable, mapping):
        mapping = tuple(mapping)
        if len(mapping) != src.order:
            raise ValueError("mapping must cover the source group")
        if mapping[src.identity] != dst.identity:
            raise ValueError("identity is not preserved")
        for a in range(src.order):
            for b in range(src.order):
                if mapping[src.mult[a][b]] != dst.mult[mapping[a]][mapping[b]]:
                    raise ValueError("not a homomorphism")
        self.src = src
        self.dst = dst
        self.mapping = mapping

    def __call__(self, g):
        return self.mapping[g]


def map_chain(f: GroupHom, x: BarChain):
    """Tuple-wise image of a chain, renormalized in the target complex."""
    if x.group is not f.src:
        raise ValueError("chain not over the source group")
    return x.map_elements(f, f.dst)


# -- torus classes -----------------------------------------------------------

class TorusContext:
    """The diagonal tori (F*)^2 and (F*)^3 of one field, with the standard
    embeddings and automorphisms used by the verification drivers."""

    def __init__(self, field):
        self.field = field
        self.t2 = GroupTable.torus(field, 2)
        self.t3 = GroupTable.torus(field, 3)

    def elem2(self, a, b):
        return self.t2.elem_from_coords((_exp(a), _exp(b)))

    def elem3(self, a, b, c):
        return self.t3.elem_from_coords((_exp(a), _exp(b), _exp(c)))

    def inc1(self):
        """diag(a,b) -> diag(a,b,1)."""
        d = self.field.q - 1
        mapping = [self.t3.elem_from_coords(self.t2.coords[i] + (0,))
                   for i in range(self.t2.order)]
        return GroupHom(self.t2, self.t3, mapping)

    def conj_w(self):
        """Conjugation by (0,-1;1,0) swaps the two diagonal entries."""
        mapping = [self.t2.elem_from_coords((self.t2.coords[i][1],
                                             self.t2.coords[i][0]))
                   for i in range(self.t2.order)]
        return GroupHom(self.t2, self.t2, mapping)

    def inversion(self, T):
        mapping = [T.inverse[i] for i in range(T.order)]
        return GroupHom(T, T, mapping)


def _exp(a):
    if a.is_zero:
        raise ValueError("torus entries must be units")
    return a.exp


def torus_class(kind, field, a, b, c=None, ctx: TorusContext | None = None):
    """The named diagonal-torus cycles.

    kind "k":    c(diag(a,1), diag(1,b), diag(1,c))          over (F*)^2
    kind "s":    c(diag(a,1/a), diag(b,1/b), diag(c,1/c))    over (F*)^2
    kind "phi":  c(diag(a,a), diag(b,1), diag(c,1/c))        over (F*)^2
    kind "psi":  c(diag(a,1,1), diag(1,b,1), diag(1,c,1/c))  over (F*)^3
    kind "iota": c(diag(a,1), diag(b,1/b))                   over (F*)^2
    """
    if ctx is None:
        ctx = TorusContext(field)
    one = field.one()
    if kind == "iota":
        if c is not None:
            raise ValueError("iota takes two units")
        T = ctx.t2
        elems = (ctx.elem2(a, one), ctx.elem2(b, b.inv()))
        return T, c_cycle(T, elems)
    if c is None:
        raise ValueError(f"kind {kind!r} takes three units")
    if kind == "k":
        T = ctx.t2
        elems = (ctx.elem2(a, one), ctx.elem2(one, b), ctx.elem2(one, c))
    elif kind == "s":
        T = ctx.t2
        elems = (ctx.elem2(a, a.inv()), ctx.elem2(b, b.inv()),
                 ctx.elem2(c, c.inv()))
    elif kind == "phi":
        T = ctx.t2
        elems = (ctx.elem2(a, a), ctx.elem2(b, one), ctx.elem2(c, c.inv()))
    elif kind == "psi":
        T = ctx.t3
        elems = (ctx.elem3(a, one, one), ctx.elem3(one, b, one),
                 ctx.elem3(one, c, c.inv()))
    else:
        raise ValueError(f"unknown torus class kind {kind!r}")
    return T, c_cycle(T, elems)


# -- homology classification -------------------------------------------------

def homology_groups(G: GroupTable, n, max_cols=DEFAULT_MAX_COLS):
    """H_n(G) as (free rank, invariant factors), by Smith reduction.

    Uses the standard bookkeeping for complexes of free modules: the free
    rank is c_n - rank(d_n) - rank(d_{n+1}) and the torsion is read off the
    invariant factors of d_{n+1}, which is valid because ker(d_n) is a
    saturated sublattice of the chain module.
    """
    from .intlin import Echelon, snf_diagonal
    if n == 0:
        return (1, ())
    if G.tuple_count(n + 1) > max_cols:
        raise ResourceLimitError("homology computation exceeds column cap")
    c_n = G.tuple_count(n)
    ech = Echelon(provenance=False)
    for tup in degree_tuples(G, n):
        col = BarChain(G, n, {tup: 1}).boundary().terms
        if col:
            ech.insert(dict(col))
    rank_dn = ech.rank()
    rows = (BarChain(G, n + 1, {tup: 1}).boundary().terms
            for tup in degree_tuples(G, n + 1))
    diag = snf_diagonal((dict(r) for r in rows if r), c_n)
    rank_dn1 = len(diag)
    free_rank = c_n - rank_dn - rank_dn1
    factors = tuple(d for d in diag if d > 1)
    return (free_rank, factors)
