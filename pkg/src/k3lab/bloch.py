"""The pre-Bloch group, the maps into the tensor square, the Bloch group,
and the four-term exactness report, all over small finite fields.

Symbols [a] are indexed by a in F - {0, 1}; the quotient is by the
five-term relations

    [a] - [b] + [b/a] - [(1-1/a)/(1-1/b)] + [(1-a)/(1-b)]

over all ordered pairs a != b.  Duplicated relation rows are kept:
presentations are never minimized, so row indices stay meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abpres import AbMap, AbPres, map_kernel, sigma_quotient, tensor
from .fields import FieldElem, FiniteFieldModel, one_minus
from .intlin import IntMatrix, ResourceLimitError, lattice_equal
from .milnor import milnor_pres, unit_group_pres


class PreBlochPres:
    """Free group Q(F) on the symbols plus the five-term relation rows."""

    def __init__(self, field: FiniteFieldModel):
        self.field = field
        # symbols [a] for a in F - {0,1}: unit exponents 1 .. q-2
        self.symbol_exps = tuple(k for k in range(1, field.q - 1))
        self.index_of_exp = {k: i for i, k in enumerate(self.symbol_exps)}
        labels = tuple(f"[{field.label_of(field.from_exp(k))}]"
                       for k in self.symbol_exps)
        n = len(self.symbol_exps)
        rows = []
        units = [field.from_exp(k) for k in self.symbol_exps]
        for a in units:
            for b in units:
                if a == b:
                    continue
                rows.append(self._five_term_row(a, b))
        self.free = AbPres(n, (), labels=labels)
        self.pres = AbPres(n, rows, labels=labels)
        expected = (field.q - 2) * (field.q - 3)
        if len(rows) != max(expected, 0):
            raise AssertionError("five-term relation count is off")

    def symbol_index(self, a: FieldElem):
        if a.is_zero or a.is_one:
            raise ValueError("symbols are indexed by F - {0, 1}")
        return self.index_of_exp[a.exp]

    def _five_term_row(self, a, b):
        row = [0] * len(self.symbol_exps)
        for coeff, arg in five_term_args(a, b):
            row[self.symbol_index(arg)] += coeff
        return row


def five_term_args(a: FieldElem, b: FieldElem):
    """The five (sign, argument) pairs of the relation attached to (a, b).

    All five arguments are verified to stay inside F - {0, 1}; for a != b,
    both outside {0, 1}, that is automatic, but it is part of the contract.
    """
    if a.is_zero or a.is_one or b.is_zero or b.is_one:
        raise ValueError("arguments must avoid 0 and 1")
    if a == b:
        raise ValueError("the five-term relation needs a != b")
    args = [
        (1, a),
        (-1, b),
        (1, b / a),
        (-1, _nonzero(one_minus(a.inv())) / _nonzero(one_minus(b.inv()))),
        (1, _nonzero(one_minus(a)) / _nonzero(one_minus(b))),
    ]
    for _, arg in args:
        if arg.is_zero or arg.is_one:
            raise AssertionError("five-term argument escaped F - {0, 1}")
    return args


def _nonzero(x: FieldElem):
    if x.is_zero:
        raise ValueError("unexpected zero in five-term arithmetic")
    return x


def fiveterm(pb: PreBlochPres, a: FieldElem, b: FieldElem):
    """The five-term element of Q(F) attached to an ordered pair."""
    row = pb._five_term_row(a, b)
    return pb.free.elem(row)


class TensorSquare:
    """F* (x) F* and its sign-swap quotient, with the symbol encoders."""

    def __init__(self, field: FiniteFieldModel):
        self.field = field
        units = unit_group_pres(field)
        self.plain = tensor(units, units)
        self.sigma = sigma_quotient(self.plain)

    def encode(self, a: FieldElem, b: FieldElem, sigma=False):
        if a.is_zero or b.is_zero:
            raise ValueError("tensor entries must be units")
        target = self.sigma if sigma else self.plain
        return target.elem([a.exp * b.exp])


def lambda_prime(pb: PreBlochPres, ts: TensorSquare, x):
    """Linear extension of [a] -> a (x) (1-a), landing in F* (x) F*."""
    total = 0
    for i, c in enumerate(x.coords):
        if not c:
            continue
        k = pb.symbol_exps[i]
        m = pb.field.one_minus_exp(k)
        if m is None:
            raise ValueError("[1] is not a symbol")
        total += c * k * m
    return ts.plain.elem([total])


def lambda_map(pb: PreBlochPres, ts: TensorSquare):
    """The map P(F) -> (F* (x) F*)_sigma as a verified homomorphism.

    Constructing this AbMap checks that every five-term relation maps into
    the relation lattice of the sigma quotient, i.e. well-definedness.
    """
    cols = []
    for k in pb.symbol_exps:
        m = pb.field.one_minus_exp(k)
        cols.append(k * m)
    return AbMap(pb.pres, ts.sigma, [cols])


@dataclass
class BlochGroup:
    pres: AbPres
    embedding: IntMatrix       # rows = kernel generators, in symbol coords
    classification: tuple


def bloch_group(field: FiniteFieldModel, pb=None, ts=None):
    """B(F) = ker(lambda) with its embedding into the pre-Bloch group."""
    if pb is None:
        pb = PreBlochPres(field)
    if ts is None:
        ts = TensorSquare(field)
    lam = lambda_map(pb, ts)
    ker, embed = map_kernel(lam)
    return BlochGroup(ker, embed, ker.classify())


def k2_from_tensor(field: FiniteFieldModel, ts: TensorSquare, k2=None):
    """The projection (F* (x) F*)_sigma -> K2^M(F)."""
    if k2 is None:
        k2 = milnor_pres(field, 2)
    n = ts.sigma.n_gens
    mat = [[1 if i == j else 0 for j in range(n)] for i in range(k2.pres.n_gens)]
    return AbMap(ts.sigma, k2.pres, mat), k2


def exact_seq_report(field: FiniteFieldModel):
    """Verdicts for 0 -> B -> P -> (F* (x) F*)_sigma -> K2 -> 0.

    E1: the embedded Bloch generators die under lambda, exactly.
    E2: im(lambda) equals ker(sigma-quotient -> K2) as lattices.
    E3: the projection to K2 is onto.
    """
    pb = PreBlochPres(field)
    ts = TensorSquare(field)
    lam = lambda_map(pb, ts)
    B = bloch_group(field, pb, ts)
    proj, k2 = k2_from_tensor(field, ts)

    e1 = all(ts.sigma.is_zero_elem(lam.apply(pb.pres.elem(B.embedding.data[i])))
             for i in range(B.embedding.rows))

    # image of lambda and kernel of the projection, as lattices in the
    # sigma-quotient coordinates (relations included on both sides)
    n = ts.sigma.n_gens
    rel_cols = [list(r) for r in ts.sigma.relations]
    lam_cols = [lam.matrix.column(j) for j in range(pb.pres.n_gens)]
    im_lattice = IntMatrix([list(col) + [r[i] for r in rel_cols]
                            for i, col in enumerate(zip(*lam_cols))]
                           if lam_cols else [[r[i] for r in rel_cols]
                                             for i in range(n)],
                           n, len(lam_cols) + len(rel_cols))
    kpres, kembed = map_kernel(proj)
    ker_cols = [kembed.data[i] for i in range(kembed.rows)]
    ker_lattice = IntMatrix([[col[i] for col in ker_cols] + [r[i] for r in rel_cols]
                             for i in range(n)], n, len(ker_cols) + len(rel_cols))
    e2 = lattice_equal(im_lattice, ker_lattice).equal

    coker = AbPres(k2.pres.n_gens,
                   list(k2.pres.relations)
                   + [proj.matrix.column(j) for j in range(n)])
    e3 = coker.is_trivial()

    return {
        "field": field.describe(),
        "prebloch_class": list(pb.pres.classify()),
        "bloch_class": list(B.classification),
        "tensor_sigma_class": list(ts.sigma.classify()),
        "k2_class": list(k2.classify()),
        "E1_bloch_maps_to_zero": e1,
        "E2_image_equals_kernel": e2,
        "E3_projection_onto": e3,
    }
