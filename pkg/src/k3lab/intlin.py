"""Exact integer linear algebra: Hermite and Smith normal forms, lattice
membership and lattice comparison.

Everything here runs on Python ints, so there is no rounding anywhere and
no coefficient overflow, only (capped) coefficient growth.  Two kinds of
object appear:

* small dense matrices (``IntMatrix``) that carry unimodular transforms,
  used for normal forms and kernels of presentation-sized problems;
* wide sparse column collections (``SparseIntMatrix`` or lazily generated
  columns) whose only interesting question is "is this vector in the
  column lattice?", answered by the incremental :class:`Echelon`.

Caps are explicit: exceeding ``max_cols`` in exact membership or growing an
entry past ``max_bits`` bits raises :class:`ResourceLimitError` rather than
silently degrading.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from math import gcd

DEFAULT_MAX_COLS = 1 << 17
DEFAULT_MAX_BITS = 1 << 16

MODULAR_PRIMES = (2, 3, 5, 7, 11, 13)


class ResourceLimitError(RuntimeError):
    """A configured cap (column count, entry bit length, table size) was hit."""


def xgcd(a, b):
    """Return (g, s, t) with g = gcd(a, b) = s*a + t*b, g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class IntMatrix:
    """Dense integer matrix, row-major entries, immutable by convention."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, rows=None, cols=None):
        data = [list(r) for r in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("ragged or mis-sized matrix data")
        for r in data:
            for v in r:
                if not isinstance(v, int):
                    raise ValueError("entries must be Python ints")
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    def entry(self, i, j):
        return self.data[i][j]

    def row(self, i):
        return tuple(self.data[i])

    def column(self, j):
        return tuple(self.data[i][j] for i in range(self.rows))

    def transpose(self):
        return IntMatrix([[self.data[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], self.cols, self.rows)

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            ri = self.data[i]
            oi = out[i]
            for k, v in enumerate(ri):
                if v:
                    rk = other.data[k]
                    for j in range(other.cols):
                        if rk[j]:
                            oi[j] += v * rk[j]
        return IntMatrix(out, self.rows, other.cols)

    def mul_vec(self, x):
        if len(x) != self.cols:
            raise ValueError("length mismatch")
        return [sum(self.data[i][j] * x[j] for j in range(self.cols))
                for i in range(self.rows)]

    def is_zero(self):
        return all(v == 0 for r in self.data for v in r)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols})"


class SparseIntMatrix:
    """Sparse integer matrix as (row, col, value) triplets.

    At most one triplet per position, values nonzero, indices in range.
    """

    __slots__ = ("rows", "cols", "triplets")

    def __init__(self, rows, cols, triplets):
        seen = set()
        trips = []
        for r, c, v in triplets:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"index out of range: ({r},{c})")
            if v == 0:
                raise ValueError("zero value in triplet")
            if (r, c) in seen:
                raise ValueError(f"duplicate triplet at ({r},{c})")
            seen.add((r, c))
            trips.append((r, c, v))
        trips.sort()
        self.rows = rows
        self.cols = cols
        self.triplets = tuple(trips)

    @classmethod
    def from_dense(cls, m: IntMatrix):
        trips = [(i, j, m.data[i][j]) for i in range(m.rows)
                 for j in range(m.cols) if m.data[i][j]]
        return cls(m.rows, m.cols, trips)

    def to_dense(self):
        d = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.triplets:
            d[r][c] = v
        return IntMatrix(d, self.rows, self.cols)

    def columns(self):
        """Yield (col index, {row: value}) for every column, in index order.

        Columns with no entries are yielded as empty dicts.
        """
        by_col = {}
        for r, c, v in self.triplets:
            by_col.setdefault(c, {})[r] = v
        for c in range(self.cols):
            yield c, dict(by_col.get(c, ()))

    def mul_vec(self, x):
        if len(x) != self.cols:
            raise ValueError("length mismatch")
        out = [0] * self.rows
        for r, c, v in self.triplets:
            if x[c]:
                out[r] += v * x[c]
        return out

    def to_text(self):
        """Serialize to the plain text exchange format.

        First line "R C NNZ", then one "r c v" line per triplet (0-based,
        decimal).  Round-trips bit-exactly through :meth:`from_text`.
        """
        lines = [f"{self.rows} {self.cols} {len(self.triplets)}"]
        lines.extend(f"{r} {c} {v}" for r, c, v in self.triplets)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln for ln in text.split("\n") if ln.strip()]
        if not lines:
            raise ValueError("empty sparse matrix text")
        rows, cols, nnz = (int(t) for t in lines[0].split())
        if len(lines) != nnz + 1:
            raise ValueError("triplet count mismatch")
        trips = []
        for ln in lines[1:]:
            r, c, v = (int(t) for t in ln.split())
            trips.append((r, c, v))
        return cls(rows, cols, trips)

    def __eq__(self, other):
        return (isinstance(other, SparseIntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.triplets == other.triplets)

    def __repr__(self):
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={len(self.triplets)})"


@dataclass(frozen=True)
class SNFResult:
    """Smith normal form U*A*V = S.

    ``invariant_factors`` are the diagonal entries not in {0, 1}, in
    divisibility order; ``free_rank`` counts the zero diagonal entries.
    """
    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    invariant_factors: tuple
    free_rank: int


@dataclass(frozen=True)
class MembershipVerdict:
    status: str                      # member-exact | non-member | member-mod-p
    witness: list | None = None      # x with A*x = b when member-exact
    moduli: tuple = ()
    obstruction: str | None = None


@dataclass
class LatticeComparison:
    equal: bool
    relation: str         # "equal" | "A>B" | "B>A" | "incomparable"
    index: int | None     # order of the quotient, 0 for infinite index


def _bits_ok(v, max_bits):
    return v.bit_length() <= max_bits


def hnf(A: IntMatrix, max_bits=DEFAULT_MAX_BITS):
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular, U*A = H, pivots positive, and every
    entry above a pivot reduced into [0, pivot).  Rows of zeros sink to the
    bottom.  Deterministic: pivot selection is minimal |value|, lowest row
    index on ties.
    """
    nr, nc = A.rows, A.cols
    H = [list(r) for r in A.data]
    U = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    r = 0
    for c in range(nc):
        if r == nr:
            break
        while True:
            piv, pv = -1, 0
            for i in range(r, nr):
                v = H[i][c]
                if v and (piv < 0 or abs(v) < abs(pv)):
                    piv, pv = i, v
            if piv < 0:
                break
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                U[r], U[piv] = U[piv], U[r]
            clean = True
            hr, ur = H[r], U[r]
            for i in range(r + 1, nr):
                if H[i][c]:
                    q = H[i][c] // hr[c]
                    hi, ui = H[i], U[i]
                    for j in range(nc):
                        hi[j] -= q * hr[j]
                    for j in range(nr):
                        ui[j] -= q * ur[j]
                    if hi[c]:
                        clean = False
            if clean:
                break
        if piv < 0:
            continue
        if H[r][c] < 0:
            H[r] = [-v for v in H[r]]
            U[r] = [-v for v in U[r]]
        hr, ur = H[r], U[r]
        for i in range(r):
            if H[i][c]:
                q = H[i][c] // hr[c]
                if q:
                    hi, ui = H[i], U[i]
                    for j in range(nc):
                        hi[j] -= q * hr[j]
                    for j in range(nr):
                        ui[j] -= q * ur[j]
        for v in hr:
            if not _bits_ok(v, max_bits):
                raise ResourceLimitError("hnf entry exceeded bit cap")
        r += 1
    return IntMatrix(H, nr, nc), IntMatrix(U, nr, nr)


def snf(A: IntMatrix, max_bits=DEFAULT_MAX_BITS):
    """Smith normal form with transforms.

    Pivoting is on minimal absolute value (row-major tie break), which keeps
    coefficient growth tame.  The divisibility chain d1 | d2 | ... is
    enforced by the usual fix-up: whenever an entry of the trailing block is
    not divisible by the current pivot, its row is added to the pivot row and
    elimination resumes.
    """
    nr, nc = A.rows, A.cols
    S = [list(r) for r in A.data]
    U = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    V = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]
    t = 0
    while t < min(nr, nc):
        piv, pv = None, 0
        for i in range(t, nr):
            for j in range(t, nc):
                v = S[i][j]
                if v and (piv is None or abs(v) < abs(pv)):
                    piv, pv = (i, j), v
        if piv is None:
            break
        i0, j0 = piv
        if i0 != t:
            S[t], S[i0] = S[i0], S[t]
            U[t], U[i0] = U[i0], U[t]
        if j0 != t:
            for row in S:
                row[t], row[j0] = row[j0], row[t]
            for row in V:
                row[t], row[j0] = row[j0], row[t]
        while True:
            # clear column t, re-pivoting on the smallest remainder
            changed = True
            while changed:
                changed = False
                for i in range(t + 1, nr):
                    if S[i][t]:
                        q = S[i][t] // S[t][t]
                        si, st = S[i], S[t]
                        ui, ut = U[i], U[t]
                        for j in range(nc):
                            si[j] -= q * st[j]
                        for j in range(nr):
                            ui[j] -= q * ut[j]
                        if si[t]:
                            S[t], S[i] = S[i], S[t]
                            U[t], U[i] = U[i], U[t]
                            changed = True
            changed = True
            while changed:
                changed = False
                for j in range(t + 1, nc):
                    if S[t][j]:
                        q = S[t][j] // S[t][t]
                        for row in S:
                            row[j] -= q * row[t]
                        for row in V:
                            row[j] -= q * row[t]
                        if S[t][j]:
                            for row in S:
                                row[t], row[j] = row[j], row[t]
                            for row in V:
                                row[t], row[j] = row[j], row[t]
                            changed = True
            if any(S[i][t] for i in range(t + 1, nr)):
                continue
            # divisibility fix-up against the trailing block
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if S[i][j] % S[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            si, st = S[bad], S[t]
            ui, ut = U[bad], U[t]
            for j in range(nc):
                st[j] += si[j]
            for j in range(nr):
                ut[j] += ui[j]
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]
        for row in (S[t], U[t]):
            for v in row:
                if not _bits_ok(v, max_bits):
                    raise ResourceLimitError("snf entry exceeded bit cap")
        t += 1
    diag = [S[i][i] for i in range(min(nr, nc))]
    factors = tuple(d for d in diag if d not in (0, 1))
    free_rank = sum(1 for d in diag if d == 0)
    return SNFResult(IntMatrix(S, nr, nc), IntMatrix(U, nr, nr),
                     IntMatrix(V, nc, nc), factors, free_rank)


def snf_diagonal(rows_iter, n_cols, max_bits=DEFAULT_MAX_BITS):
    """Invariant factors of a (possibly very tall) sparse matrix, no transforms.

    The rows are first crushed into an integer echelon, then the small pivot
    block goes through a unit-peeling Smith reduction: entries of absolute
    value 1 are eliminated outright and only the residual block needs the
    full pivoting loop.  Returns the sorted-by-divisibility diagonal, zeros
    excluded.
    """
    ech = Echelon(provenance=False, max_bits=max_bits)
    for row in rows_iter:
        ech.insert(dict(row))
    if not ech.pivots:
        return []
    keys = sorted({k for row, _ in ech.pivots.values() for k in row})
    col_of = {c: k for k, c in enumerate(keys)}
    dense = []
    for c in sorted(ech.pivots):
        row, _ = ech.pivots[c]
        dr = [0] * len(keys)
        for cc, v in row.items():
            dr[col_of[cc]] = v
        dense.append(dr)
    res = snf(IntMatrix(dense, len(dense), len(keys)), max_bits=max_bits)
    diag = [res.S.data[i][i] for i in range(min(len(dense), len(keys)))]
    return [d for d in diag if d]


class Echelon:
    """Incremental row echelon over sparse integer rows, optionally mod m.

    Rows are dicts key -> value where keys are any totally ordered hashables
    (ints for matrix columns, tuples for bar-chain supports).  Each inserted
    row is reduced against the stored pivot rows; new information becomes a
    pivot, possibly after gcd-combination steps.  Every row has its tail
    floor-reduced against the pivots once, at birth: without that discipline
    the gcd cascades blow entries up exponentially.

    With a modulus m (prime or not) all values live in [0, m); pivot leads
    are normalized to divisors of m and the annihilator multiple of every
    zero-divisor pivot is re-inserted, so the stored rows span the full
    image lattice mod m (Howell closure).  With ``provenance=True`` every
    pivot row remembers itself as an exact combination of inserted rows, so
    membership queries can produce witnesses.
    """

    __slots__ = ("pivots", "modulus", "provenance", "max_bits", "n_inserted")

    def __init__(self, modulus=None, provenance=False, max_bits=DEFAULT_MAX_BITS):
        self.pivots = {}          # lead key -> (row dict, prov dict | None)
        self.modulus = modulus
        self.provenance = provenance
        self.max_bits = max_bits
        self.n_inserted = 0

    @staticmethod
    def _axpy(dst, src, c):
        if not c:
            return
        for k, v in src.items():
            nv = dst.get(k, 0) + c * v
            if nv:
                dst[k] = nv
            else:
                dst.pop(k, None)

    def _modded(self, row):
        p = self.modulus
        if p is None:
            return row
        return {k: v % p for k, v in row.items() if v % p}

    def _check_bits(self, row):
        if self.modulus is None:
            for v in row.values():
                if not _bits_ok(v, self.max_bits):
                    raise ResourceLimitError("echelon entry exceeded bit cap")

    def insert(self, row, tag=None):
        """Insert one row; returns the tag under which it was recorded."""
        if tag is None:
            tag = self.n_inserted
        self.n_inserted += 1
        row = self._modded(dict(row))
        prov = {tag: 1} if self.provenance else None
        self._insert_reduced(row, prov)
        return tag

    def _insert_reduced(self, row, prov):
        while row:
            lead = min(row)
            if lead not in self.pivots:
                self._reduce_tail(row, prov)
                self._place(lead, row, prov)
                return
            prow, pprov = self.pivots[lead]
            a, b = prow[lead], row[lead]
            if b % a == 0:
                self._combine(row, prov, prow, pprov, -(b // a))
            else:
                g, s, t = xgcd(a, b)
                new_row, new_prov = self._linear(prow, pprov, s, row, prov, t)
                rem, rem_prov = self._linear(row, prov, a // g, prow, pprov, -(b // g))
                del self.pivots[lead]
                self._reduce_tail(new_row, new_prov)
                self._place(lead, new_row, new_prov)
                row, prov = rem, rem_prov

    def _combine(self, row, prov, prow, pprov, c):
        self._axpy(row, prow, c)
        if self.modulus is not None:
            p = self.modulus
            for k in list(row):
                row[k] %= p
                if not row[k]:
                    del row[k]
        if prov is not None and pprov is not None:
            self._axpy(prov, pprov, c)

    def _linear(self, r1, p1, c1, r2, p2, c2):
        row = {}
        self._axpy(row, r1, c1)
        self._axpy(row, r2, c2)
        row = self._modded(row)
        prov = None
        if self.provenance:
            prov = {}
            if p1 is not None:
                self._axpy(prov, p1, c1)
            if p2 is not None:
                self._axpy(prov, p2, c2)
        return row, prov

    def _reduce_tail(self, row, prov):
        """One ascending pass floor-reducing tail entries on pivot columns.

        A reduction at key k only touches keys >= k (pivot rows lead at
        their minimal key), so a single ascending sweep suffices.
        """
        if not row:
            return
        lead = min(row)
        heap = [k for k in row if k != lead and k in self.pivots]
        heapify(heap)
        queued = set(heap)
        while heap:
            k = heappop(heap)
            queued.discard(k)
            v = row.get(k, 0)
            if not v:
                continue
            prow, pprov = self.pivots[k]
            q = v // prow[k]
            if q:
                self._combine(row, prov, prow, pprov, -q)
                for kk in prow:
                    if kk > k and kk in row and kk in self.pivots and kk not in queued:
                        heappush(heap, kk)
                        queued.add(kk)

    @staticmethod
    def _unit_scaling(lv, p):
        """A unit u mod p with u*lv == gcd(lv, p) mod p."""
        g = gcd(lv, p)
        v = lv // g
        w = pow(v % (p // g), -1, p // g) if p != g else 1
        while gcd(w, p) != 1:
            w += p // g
        return w

    def _place(self, lead, row, prov):
        p = self.modulus
        lv = row[lead]
        if p is not None:
            inv = self._unit_scaling(lv, p)
            row = {k: (v * inv) % p for k, v in row.items()}
            row = {k: v for k, v in row.items() if v}
            if prov is not None:
                prov = {k: (v * inv) % p for k, v in prov.items()}
                prov = {k: v for k, v in prov.items() if v}
        elif lv < 0:
            row = {k: -v for k, v in row.items()}
            if prov is not None:
                prov = {k: -v for k, v in prov.items()}
        self._check_bits(row)
        self.pivots[lead] = (row, prov)
        if p is not None:
            lv = row[lead]
            if lv > 1:
                # Howell closure: the annihilator multiple of a zero-divisor
                # pivot still carries information in later columns
                extra, eprov = self._linear(row, prov, p // lv, {}, None, 0)
                extra.pop(lead, None)
                if extra:
                    self._insert_reduced(extra, eprov)

    def reduce(self, vec):
        """Reduce vec against the pivots without modifying them.

        Returns (residue, combo) where combo maps pivot lead -> multiplier
        and  vec = residue + sum(combo[lead] * pivot_row[lead]).  Membership
        in the span of the stored rows means an empty residue; reduction
        stops at the first non-divisible lead, which stays in the residue.
        """
        vec = self._modded(dict(vec))
        combo = {}
        while vec:
            lead = min(vec)
            if lead not in self.pivots:
                return vec, combo
            prow, _ = self.pivots[lead]
            if vec[lead] % prow[lead]:
                return vec, combo
            q = vec[lead] // prow[lead]
            self._combine(vec, None, prow, None, -q)
            combo[lead] = combo.get(lead, 0) + q
        return {}, combo

    def contains(self, vec):
        residue, _ = self.reduce(vec)
        return not residue

    def witness(self, vec):
        """Express vec over the inserted rows, or None.

        Requires provenance.  Returns {tag: coefficient} with
        vec = sum(coeff * inserted_row[tag])   (mod m when a modulus is set).
        """
        if not self.provenance:
            raise ValueError("echelon built without provenance")
        residue, combo = self.reduce(vec)
        if residue:
            return None
        out = {}
        for lead, q in combo.items():
            _, pprov = self.pivots[lead]
            self._axpy(out, pprov, q)
        return self._modded(out) if self.modulus is not None else out

    def rank(self):
        return len(self.pivots)

    def basis_rows(self):
        return [dict(row) for _, (row, _) in sorted(self.pivots.items())]


def in_image(A: SparseIntMatrix, b, mode="exact", primes=MODULAR_PRIMES,
             max_cols=DEFAULT_MAX_COLS, max_bits=DEFAULT_MAX_BITS):
    """Decide whether b lies in the integer column lattice of A.

    Exact mode returns a verified witness x with A*x = b, or a non-member
    verdict with the echelon obstruction.  Modular mode decides membership
    of b in the image of A mod each prime; failure mod any single prime is
    an exact refutation, success everywhere is only the certificate
    ``member-mod-p``.
    """
    if len(b) != A.rows:
        raise ValueError("b has wrong length")
    bvec = {i: v for i, v in enumerate(b) if v}
    if mode == "exact":
        if A.cols > max_cols:
            raise ResourceLimitError(
                f"exact membership over {A.cols} columns exceeds cap {max_cols}")
        ech = Echelon(provenance=True, max_bits=max_bits)
        for c, col in A.columns():
            if col:
                ech.insert(col, tag=c)
        wit = ech.witness(bvec)
        if wit is None:
            residue, _ = ech.reduce(bvec)
            lead = min(residue) if residue else None
            obs = f"residue at row {lead}" if lead is not None else "empty residue"
            return MembershipVerdict("non-member", obstruction=obs)
        x = [0] * A.cols
        for c, v in wit.items():
            x[c] = v
        if A.mul_vec(x) != list(b):
            raise AssertionError("membership witness failed verification")
        return MembershipVerdict("member-exact", witness=x)
    if mode == "modular":
        for p in primes:
            ech = Echelon(modulus=p)
            for c, col in A.columns():
                if col:
                    ech.insert(col)
            if not ech.contains(bvec):
                return MembershipVerdict("non-member", moduli=(p,),
                                         obstruction=f"not in image mod {p}")
        return MembershipVerdict("member-mod-p", moduli=tuple(primes))
    raise ValueError(f"unknown mode {mode!r}")


def _echelon_of_columns(M: IntMatrix, max_bits):
    ech = Echelon(provenance=False, max_bits=max_bits)
    for j in range(M.cols):
        col = {i: M.data[i][j] for i in range(M.rows) if M.data[i][j]}
        if col:
            ech.insert(col)
    return ech


def _quotient_index(sup: Echelon, sub: Echelon, max_bits):
    """Index of sub's lattice inside sup's lattice (0 when infinite).

    Assumes sub is contained in sup.  Each basis row of sub is written over
    sup's pivot rows; the invariant factors of that coordinate matrix give
    the quotient order.
    """
    if sup.rank() != sub.rank():
        return 0
    leads = sorted(sup.pivots)
    pos = {c: k for k, c in enumerate(leads)}
    rows = []
    for row in sub.basis_rows():
        residue, combo = sup.reduce(row)
        if residue:
            raise ValueError("claimed sublattice is not contained")
        rows.append({pos[c]: q for c, q in combo.items() if q})
    diag = snf_diagonal(rows, len(leads), max_bits=max_bits)
    if len(diag) < sup.rank():
        return 0
    idx = 1
    for d in diag:
        idx *= abs(d)
    return idx


def lattice_equal(A: IntMatrix, B: IntMatrix, max_bits=DEFAULT_MAX_BITS):
    """Compare the column lattices of A and B (same row count).

    Returns a LatticeComparison; when one lattice contains the other the
    index of the smaller in the larger is reported (0 for infinite index).
    """
    if A.rows != B.rows:
        raise ValueError("row count mismatch")
    ech_a = _echelon_of_columns(A, max_bits)
    ech_b = _echelon_of_columns(B, max_bits)
    a_in_b = all(ech_b.contains({i: A.data[i][j] for i in range(A.rows) if A.data[i][j]})
                 for j in range(A.cols))
    b_in_a = all(ech_a.contains({i: B.data[i][j] for i in range(B.rows) if B.data[i][j]})
                 for j in range(B.cols))
    if a_in_b and b_in_a:
        return LatticeComparison(True, "equal", 1)
    if b_in_a:
        return LatticeComparison(False, "A>B", _quotient_index(ech_a, ech_b, max_bits))
    if a_in_b:
        return LatticeComparison(False, "B>A", _quotient_index(ech_b, ech_a, max_bits))
    return LatticeComparison(False, "incomparable", None)


def kernel_basis(A: IntMatrix, max_bits=DEFAULT_MAX_BITS):
    """Basis of the integer kernel lattice {x : A*x = 0}.

    Computed from the HNF transform of the transpose: the transform rows
    that map to zero rows form a complete basis because the transform is
    unimodular.
    """
    H, U = hnf(A.transpose(), max_bits=max_bits)
    out = []
    for i in range(H.rows):
        if all(v == 0 for v in H.data[i]):
            out.append(list(U.data[i]))
    return out
