"""Finitely presented abelian groups: classification, element equality,
tensor products, the sign-swap quotient, kernels of maps, and comparison of
generated subgroups.

Relations are stored as rows and presentations are never minimized, so
generator labels stay stable for reporting; classification through Smith
normal form is the only canonicalization point.
"""

from __future__ import annotations

from .intlin import (DEFAULT_MAX_BITS, Echelon, IntMatrix, hnf, kernel_basis,
                     snf, snf_diagonal)


class AbPres:
    """Abelian group Z^n / (row lattice of the relation matrix)."""

    def __init__(self, n_gens, relations=(), labels=None, tensor_factors=None):
        rel = [tuple(r) for r in relations]
        for r in rel:
            if len(r) != n_gens:
                raise ValueError("relation length does not match generator count")
        self.n_gens = n_gens
        self.relations = tuple(rel)
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n_gens:
            raise ValueError("one label per generator required")
        self.tensor_factors = tensor_factors
        self._rel_echelon = None
        self._classification = None

    # -- internals ---------------------------------------------------------
    def relation_echelon(self):
        if self._rel_echelon is None:
            ech = Echelon(provenance=False)
            for r in self.relations:
                row = {i: v for i, v in enumerate(r) if v}
                if row:
                    ech.insert(row)
            self._rel_echelon = ech
        return self._rel_echelon

    # -- operations ----------------------------------------------------------
    def classify(self):
        """Isomorphism type as (free rank, invariant factors)."""
        if self._classification is None:
            rows = ({i: v for i, v in enumerate(r) if v} for r in self.relations)
            diag = snf_diagonal(rows, self.n_gens)
            factors = tuple(d for d in diag if d > 1)
            self._classification = (self.n_gens - len(diag), factors)
        return self._classification

    def is_trivial(self):
        rank, factors = self.classify()
        return rank == 0 and not factors

    def order(self):
        rank, factors = self.classify()
        if rank:
            return 0
        n = 1
        for d in factors:
            n *= d
        return n

    def elem(self, coords):
        return AbElem(self, coords)

    def zero(self):
        return AbElem(self, [0] * self.n_gens)

    def elem_eq(self, x, y):
        if x.pres is not self or y.pres is not self:
            raise ValueError("elements of a different presentation")
        diff = {i: a - b for i, (a, b) in enumerate(zip(x.coords, y.coords)) if a != b}
        return self.relation_echelon().contains(diff)

    def is_zero_elem(self, x):
        return self.elem_eq(x, self.zero())

    def describe(self):
        rank, factors = self.classify()
        return {"generators": self.n_gens, "relations": len(self.relations),
                "free_rank": rank, "invariant_factors": list(factors)}

    def to_text(self):
        """Sparse relation matrix text followed by one label per line."""
        from .intlin import SparseIntMatrix
        trips = [(i, j, v) for i, r in enumerate(self.relations)
                 for j, v in enumerate(r) if v]
        m = SparseIntMatrix(len(self.relations), self.n_gens, trips)
        labels = self.labels or tuple(f"e{i}" for i in range(self.n_gens))
        return m.to_text() + "\n".join(labels) + "\n"

    @classmethod
    def from_text(cls, text):
        from .intlin import SparseIntMatrix
        lines = text.split("\n")
        nnz = int(lines[0].split()[2])
        m = SparseIntMatrix.from_text("\n".join(lines[:nnz + 1]))
        labels = [ln for ln in lines[nnz + 1:] if ln.strip()]
        dense = m.to_dense()
        return cls(m.cols, [dense.row(i) for i in range(m.rows)],
                   labels=labels or None)

    def __repr__(self):
        rank, factors = self.classify()
        parts = ["Z"] * rank + [f"Z/{d}" for d in factors]
        return "AbPres(" + (" + ".join(parts) if parts else "0") + ")"


class AbElem:
    __slots__ = ("pres", "coords")

    def __init__(self, pres, coords):
        coords = tuple(int(v) for v in coords)
        if len(coords) != pres.n_gens:
            raise ValueError("coordinate length mismatch")
        self.pres = pres
        self.coords = coords

    def __add__(self, other):
        if self.pres is not other.pres:
            raise ValueError("presentation mismatch")
        return AbElem(self.pres, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        if self.pres is not other.pres:
            raise ValueError("presentation mismatch")
        return AbElem(self.pres, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return AbElem(self.pres, [-a for a in self.coords])

    def scale(self, k):
        return AbElem(self.pres, [k * a for a in self.coords])

    def __eq__(self, other):
        return (isinstance(other, AbElem) and self.pres is other.pres
                and self.pres.elem_eq(self, other))

    def __hash__(self):
        raise TypeError("AbElem equality is modulo relations; not hashable")

    def __repr__(self):
        return f"AbElem{self.coords}"


def tensor(P: AbPres, Q: AbPres):
    """Tensor product presentation, generator (i, j) at flat index i*nQ + j."""
    n = P.n_gens * Q.n_gens
    rels = []
    for r in P.relations:
        for j in range(Q.n_gens):
            row = [0] * n
            for i, v in enumerate(r):
                if v:
                    row[i * Q.n_gens + j] = v
            rels.append(row)
    for r in Q.relations:
        for i in range(P.n_gens):
            row = [0] * n
            for j, v in enumerate(r):
                if v:
                    row[i * Q.n_gens + j] = v
            rels.append(row)
    labels = None
    if P.labels and Q.labels:
        labels = [f"{a}(x){b}" for a in P.labels for b in Q.labels]
    return AbPres(n, rels, labels=labels, tensor_factors=(P, Q))


def tensor_index(P: AbPres, Q: AbPres, i, j):
    return i * Q.n_gens + j


def sigma_quotient(T: AbPres):
    """Quotient of a tensor square by the relations e_i(x)e_j + e_j(x)e_i."""
    if T.tensor_factors is None or T.tensor_factors[0] is not T.tensor_factors[1]:
        raise ValueError("sigma quotient needs a tensor square")
    U = T.tensor_factors[0]
    m = U.n_gens
    rels = [list(r) for r in T.relations]
    for i in range(m):
        for j in range(i, m):
            row = [0] * T.n_gens
            row[i * m + j] += 1
            row[j * m + i] += 1
            rels.append(row)
    return AbPres(T.n_gens, rels, labels=T.labels, tensor_factors=T.tensor_factors)


class AbMap:
    """Homomorphism between presented groups, given on generators.

    The matrix has one column per domain generator and one row per codomain
    generator.  Construction verifies well-definedness: the image of every
    domain relation must lie in the codomain relation lattice.
    """

    def __init__(self, dom: AbPres, cod: AbPres, matrix):
        M = IntMatrix(matrix, cod.n_gens, dom.n_gens) if not isinstance(matrix, IntMatrix) else matrix
        if M.rows != cod.n_gens or M.cols != dom.n_gens:
            raise ValueError("map matrix has wrong shape")
        self.dom = dom
        self.cod = cod
        self.matrix = M
        ech = cod.relation_echelon()
        for r in dom.relations:
            img = M.mul_vec(list(r))
            if not ech.contains({i: v for i, v in enumerate(img) if v}):
                raise ValueError("map is not well defined on a domain relation")

    def apply(self, x: AbElem):
        if x.pres is not self.dom:
            raise ValueError("element not in the domain")
        return AbElem(self.cod, self.matrix.mul_vec(list(x.coords)))

    def __call__(self, x):
        return self.apply(x)


def _lattice_rows_reduce(vectors, n):
    """HNF-reduce a list of integer vectors to a clean basis (as rows)."""
    if not vectors:
        return []
    H, _ = hnf(IntMatrix(vectors, len(vectors), n))
    return [list(H.data[i]) for i in range(H.rows)
            if any(H.data[i][j] for j in range(n))]


def map_kernel(f: AbMap):
    """Kernel of f as (presentation, embedding matrix).

    The embedding matrix holds the domain coordinates of the kernel
    generators (one row per generator).  Generators map to zero by
    construction; completeness comes from computing the full preimage
    lattice of the codomain relation lattice.
    """
    s = f.dom.n_gens
    t = f.cod.n_gens
    cod_rel = [list(r) for r in f.cod.relations]
    # columns: s images of domain generators, then codomain relations
    block = [[f.matrix.data[i][j] for j in range(s)]
             + [r[i] for r in cod_rel] for i in range(t)]
    B = IntMatrix(block, t, s + len(cod_rel)) if t else IntMatrix.zero(0, s + len(cod_rel))
    if t:
        ker = kernel_basis(B)
        gens = [v[:s] for v in ker]
    else:
        gens = [[1 if i == j else 0 for j in range(s)] for i in range(s)]
    gens = _lattice_rows_reduce(gens, s)
    k = len(gens)
    # relations among the kernel generators, inside the domain group
    dom_rel = [list(r) for r in f.dom.relations]
    if k:
        block2 = [[gens[j][i] for j in range(k)] + [r[i] for r in dom_rel]
                  for i in range(s)]
        ker2 = kernel_basis(IntMatrix(block2, s, k + len(dom_rel)))
        rels = _lattice_rows_reduce([v[:k] for v in ker2], k) if ker2 else []
    else:
        rels = []
    pres = AbPres(k, rels)
    embed = IntMatrix(gens, k, s) if k else IntMatrix.zero(0, s)
    return pres, embed


def _span_echelon(P: AbPres, gens):
    ech = Echelon(provenance=False)
    for g in gens:
        if g.pres is not P:
            raise ValueError("generator from a different presentation")
        row = {i: v for i, v in enumerate(g.coords) if v}
        if row:
            ech.insert(row)
    for r in P.relations:
        row = {i: v for i, v in enumerate(r) if v}
        if row:
            ech.insert(row)
    return ech


def subgroup_compare(P: AbPres, gens_a, gens_b):
    """Compare the subgroups of P generated by two element lists.

    Returns (status, index) with status one of "equal", "A<B", "B<A",
    "incomparable"; for strict containment the index of the smaller subgroup
    in the larger is returned (0 encodes infinite index).
    """
    from .intlin import _quotient_index
    ech_a = _span_echelon(P, gens_a)
    ech_b = _span_echelon(P, gens_b)
    a_in_b = all(ech_b.contains({i: v for i, v in enumerate(g.coords) if v})
                 for g in gens_a)
    b_in_a = all(ech_a.contains({i: v for i, v in enumerate(g.coords) if v})
                 for g in gens_b)
    if a_in_b and b_in_a:
        return "equal", 1
    if a_in_b:
        return "A<B", _quotient_index(ech_b, ech_a, DEFAULT_MAX_BITS)
    if b_in_a:
        return "B<A", _quotient_index(ech_a, ech_b, DEFAULT_MAX_BITS)
    return "incomparable", None
