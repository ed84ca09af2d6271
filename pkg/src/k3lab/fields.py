"""Unit-group models: small finite fields F_q with full discrete-log tables,
and the S-unit subgroup of Q*.

Units of F_q are stored as exponents of a fixed generator once the model is
built, because every downstream presentation is a Z/(q-1) coordinate
computation.  The Q* model is explicitly truncated to a finite prime set S:
asking it to represent anything outside the S-unit span is a hard error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .intlin import ResourceLimitError

DEFAULT_FIELD_CAP = 1 << 10


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_mul_mod(a, b, modulus, p):
    d = len(modulus) - 1
    prod_ = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod_[i + j] = (prod_[i + j] + ai * bj) % p
    for k in range(len(prod_) - 1, d - 1, -1):
        c = prod_[k]
        if c:
            prod_[k] = 0
            for i in range(d):
                prod_[k - d + i] = (prod_[k - d + i] - c * modulus[i]) % p
    return prod_[:d] + [0] * (d - len(prod_))


def _poly_is_irreducible(coeffs, p):
    """Trial division by all monic polynomials of degree <= deg/2."""
    d = len(coeffs) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for e in range(1, d // 2 + 1):
        for tail in product(range(p), repeat=e):
            divisor = list(tail) + [1]
            if _poly_remainder_is_zero(coeffs, divisor, p):
                return False
    return True


def _poly_remainder_is_zero(num, den, p):
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], -1, p)
    for k in range(len(num) - 1, dd - 1, -1):
        c = (num[k] * inv_lead) % p
        if c:
            for i in range(dd + 1):
                num[k - dd + i] = (num[k - dd + i] - c * den[i]) % p
    return all(v == 0 for v in num[:dd])


def _least_irreducible(p, d):
    """Monic irreducible of degree d with the least base-p code of its
    low-to-high coefficient vector."""
    for code in range(p ** d):
        tail = []
        c = code
        for _ in range(d):
            tail.append(c % p)
            c //= p
        coeffs = tail + [1]
        if _poly_is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError(f"no irreducible of degree {d} over F_{p}")


class FieldElem:
    """Element of a FiniteFieldModel: zero, or an exponent of the generator."""

    __slots__ = ("field", "exp")

    def __init__(self, field, exp):
        self.field = field
        self.exp = exp          # None encodes zero

    @property
    def is_zero(self):
        return self.exp is None

    @property
    def is_one(self):
        return self.exp == 0

    def __mul__(self, other):
        self._same(other)
        if self.is_zero or other.is_zero:
            return FieldElem(self.field, None)
        return FieldElem(self.field, (self.exp + other.exp) % (self.field.q - 1))

    def inv(self):
        if self.is_zero:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElem(self.field, (-self.exp) % (self.field.q - 1))

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, k):
        if self.is_zero:
            if k <= 0:
                raise ZeroDivisionError("0 ** nonpositive")
            return self
        return FieldElem(self.field, (self.exp * k) % (self.field.q - 1))

    def _same(self, other):
        if self.field is not other.field:
            raise ValueError("elements from different fields")

    def __eq__(self, other):
        return (isinstance(other, FieldElem) and self.field is other.field
                and self.exp == other.exp)

    def __hash__(self):
        return hash((id(self.field), self.exp))

    def label(self):
        return self.field.label_of(self)

    def __repr__(self):
        return f"FieldElem({self.label()})"


class FiniteFieldModel:
    """F_q = F_p[x]/(modulus), q = p^d, with dlog tables for the unit group.

    Element codes are integers in [0, q): the base-p digits of a code are
    the coefficients (low to high) of the residue polynomial.
    """

    def __init__(self, p, d, modulus, cap=DEFAULT_FIELD_CAP):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        q = p ** d
        if q > cap:
            raise ResourceLimitError(f"q = {q} exceeds field cap {cap}")
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree d")
        if d > 1 and not _poly_is_irreducible(list(modulus), p):
            raise ValueError("modulus is reducible")
        self.p = p
        self.d = d
        self.q = q
        self.modulus = tuple(v % p for v in modulus[:-1]) + (1,)
        self._mul_cache = {}
        g_code = self._find_generator()
        self.gen_code = g_code
        exp_table = [1]        # code of g^k
        code = 1
        for _ in range(q - 2):
            code = self._mul_codes(code, g_code)
            exp_table.append(code)
        self.exp_table = tuple(exp_table)
        self.dlog_table = {c: k for k, c in enumerate(exp_table)}
        if len(self.dlog_table) != q - 1:
            raise AssertionError("generator does not generate")
        # 1 - a for every unit a, as exponent (None when a = 1)
        one_minus = []
        for k in range(q - 1):
            c = self._sub_codes(1, exp_table[k])
            one_minus.append(None if c == 0 else self.dlog_table[c])
        self._one_minus = tuple(one_minus)

    # -- code arithmetic -------------------------------------------------
    def _digits(self, code):
        out = []
        for _ in range(self.d):
            out.append(code % self.p)
            code //= self.p
        return out

    def _code(self, digits):
        c = 0
        for v in reversed(digits):
            c = c * self.p + (v % self.p)
        return c

    def _add_codes(self, a, b):
        da, db = self._digits(a), self._digits(b)
        return self._code([(x + y) % self.p for x, y in zip(da, db)])

    def _sub_codes(self, a, b):
        da, db = self._digits(a), self._digits(b)
        return self._code([(x - y) % self.p for x, y in zip(da, db)])

    def _mul_codes(self, a, b):
        key = (a, b) if a <= b else (b, a)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        res = self._code(_poly_mul_mod(self._digits(a), self._digits(b),
                                       list(self.modulus), self.p))
        self._mul_cache[key] = res
        return res

    def _find_generator(self):
        n = self.q - 1
        pf = prime_factors(n)
        for code in range(1, self.q):
            if all(self._pow_code(code, n // f) != 1 for f in pf):
                return code
        raise AssertionError("no generator found")

    def _pow_code(self, code, k):
        r = 1
        b = code
        while k:
            if k & 1:
                r = self._mul_codes(r, b)
            b = self._mul_codes(b, b)
            k >>= 1
        return r

    # -- public ----------------------------------------------------------
    def zero(self):
        return FieldElem(self, None)

    def one(self):
        return FieldElem(self, 0)

    def gen(self):
        return FieldElem(self, 1 % (self.q - 1) if self.q > 2 else 0)

    def from_exp(self, k):
        return FieldElem(self, k % (self.q - 1))

    def from_code(self, code):
        if code == 0:
            return self.zero()
        return FieldElem(self, self.dlog_table[code])

    def from_int(self, n):
        """Element of the prime subfield from an integer."""
        return self.from_code(n % self.p)

    def code_of(self, a):
        return 0 if a.is_zero else self.exp_table[a.exp]

    def units(self):
        return [FieldElem(self, k) for k in range(self.q - 1)]

    def elements(self):
        return [self.from_code(c) for c in range(self.q)]

    def one_minus_exp(self, k):
        return self._one_minus[k]

    def label_of(self, a):
        if a.is_zero:
            return "0"
        code = self.exp_table[a.exp]
        if self.d == 1:
            return str(code)
        if code == 1:
            return "1"
        return f"g^{a.exp}"

    # unit-group presentation hooks (single cyclic generator)
    @property
    def n_unit_gens(self):
        return 1

    def unit_relation_rows(self):
        return [(self.q - 1,)]

    def unit_coords(self, a):
        if a.is_zero:
            raise ValueError("zero is not a unit")
        return (a.exp,)

    def steinberg_pairs(self):
        """All (a, 1-a) with both a and 1-a units, i.e. a not in {0, 1}."""
        out = []
        for k in range(1, self.q - 1):
            m = self._one_minus[k]
            if m is not None:
                out.append((FieldElem(self, k), FieldElem(self, m)))
        return out

    def sample_units(self, rng, n):
        return [FieldElem(self, rng.randrange(self.q - 1)) for _ in range(n)]

    def describe(self):
        return {"p": self.p, "d": self.d, "q": self.q,
                "modulus_low_to_high": list(self.modulus),
                "generator": self.label_of(self.gen())
                if self.q > 2 else "1"}

    def __repr__(self):
        return f"FiniteFieldModel(q={self.q})"


def ff_make(p, d=1, poly=None, cap=DEFAULT_FIELD_CAP):
    """Build the field model F_{p^d}, choosing the least irreducible modulus
    when none is supplied."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if d < 1:
        raise ValueError("degree must be >= 1")
    if p ** d > cap:
        raise ResourceLimitError(f"q = {p ** d} exceeds field cap {cap}")
    if poly is None:
        poly = (0, 1) if d == 1 else _least_irreducible(p, d)
    return FiniteFieldModel(p, d, tuple(poly), cap=cap)


def ff_from_q(q, cap=DEFAULT_FIELD_CAP):
    pf = prime_factors(q)
    if len(pf) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = pf[0]
    d = 0
    n = q
    while n > 1:
        n //= p
        d += 1
    return ff_make(p, d, cap=cap)


def one_minus(a: FieldElem):
    """1 - a, flagged as zero when a = 1."""
    F = a.field
    if a.is_zero:
        return F.one()
    m = F.one_minus_exp(a.exp)
    return F.zero() if m is None else FieldElem(F, m)


def dlog(F: FiniteFieldModel, a: FieldElem):
    if a.is_zero:
        raise ValueError("dlog of zero")
    return a.exp


class FactoredRational:
    """Nonzero rational as sign * prod p^e over a finite prime support."""

    __slots__ = ("sign", "exps")

    def __init__(self, sign, exps):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.sign = sign
        self.exps = {p: e for p, e in exps.items() if e}

    def value(self):
        v = Fraction(self.sign)
        for p, e in self.exps.items():
            v *= Fraction(p) ** e
        return v

    def __mul__(self, other):
        exps = dict(self.exps)
        for p, e in other.exps.items():
            exps[p] = exps.get(p, 0) + e
        return FactoredRational(self.sign * other.sign, exps)

    def inv(self):
        return FactoredRational(self.sign, {p: -e for p, e in self.exps.items()})

    def __pow__(self, k):
        return FactoredRational(self.sign if k % 2 else 1,
                                {p: e * k for p, e in self.exps.items()})

    def __eq__(self, other):
        return (isinstance(other, FactoredRational) and self.sign == other.sign
                and self.exps == other.exps)

    def __hash__(self):
        return hash((self.sign, tuple(sorted(self.exps.items()))))

    def label(self):
        return str(self.value())

    def __repr__(self):
        return f"FactoredRational({self.value()})"


def qstar_factor(r, S):
    """Factor a nonzero rational over the primes of S; error outside the model."""
    r = Fraction(r)
    if r == 0:
        raise ValueError("cannot factor zero")
    sign = 1 if r > 0 else -1
    num, den = abs(r.numerator), abs(r.denominator)
    exps = {}
    for p in sorted(S):
        while num % p == 0:
            num //= p
            exps[p] = exps.get(p, 0) + 1
        while den % p == 0:
            den //= p
            exps[p] = exps.get(p, 0) - 1
    if num != 1 or den != 1:
        raise ValueError(f"{r} has a prime factor outside S={sorted(S)}")
    return FactoredRational(sign, exps)


class SUnitModel:
    """The S-unit subgroup of Q*: {-1} x free on the primes of S.

    Coordinates are (sign exponent, e_p for p in S sorted); the only unit
    relation is 2 * (sign generator).
    """

    def __init__(self, primes, steinberg_exp_bound=6):
        primes = tuple(sorted(set(primes)))
        if not all(is_prime(p) for p in primes):
            raise ValueError("S must consist of primes")
        self.primes = primes
        self.steinberg_exp_bound = steinberg_exp_bound
        self._steinberg = None

    @property
    def n_unit_gens(self):
        return 1 + len(self.primes)

    def unit_relation_rows(self):
        row = [0] * self.n_unit_gens
        row[0] = 2
        return [tuple(row)]

    def unit_coords(self, a: FactoredRational):
        for p in a.exps:
            if p not in self.primes:
                raise ValueError(f"prime {p} outside the model")
        return tuple([0 if a.sign == 1 else 1]
                     + [a.exps.get(p, 0) for p in self.primes])

    def from_rational(self, r):
        return qstar_factor(r, self.primes)

    def element_label(self, a):
        return a.label()

    def steinberg_pairs(self):
        """All (a, 1-a) with both S-units, exponents within the search bound.

        The bound is a model parameter reported in output; it is a search
        truncation, not a mathematical boundary.
        """
        if self._steinberg is not None:
            return self._steinberg
        B = self.steinberg_exp_bound
        found = []
        ranges = [range(-B, B + 1)] * len(self.primes)
        for sign in (1, -1):
            for exps in product(*ranges):
                a = Fraction(sign)
                for p, e in zip(self.primes, exps):
                    a *= Fraction(p) ** e
                if a == 1:
                    continue
                b = 1 - a
                try:
                    fb = qstar_factor(b, self.primes)
                except ValueError:
                    continue
                fa = FactoredRational(sign, dict(zip(self.primes, exps)))
                found.append((fa, fb))
        self._steinberg = found
        return found

    def sample_units(self, rng, n, exp_bound=2):
        out = []
        for _ in range(n):
            sign = 1 if rng.random() < 0.5 else -1
            exps = {p: rng.randint(-exp_bound, exp_bound) for p in self.primes}
            out.append(FactoredRational(sign, exps))
        return out

    def describe(self):
        return {"model": "S-units of Q*", "primes": list(self.primes),
                "steinberg_exp_bound": self.steinberg_exp_bound}

    def __repr__(self):
        return f"SUnitModel(S={list(self.primes)})"


def parse_field_spec(spec, cap=DEFAULT_FIELD_CAP):
    """Parse a CLI field spec.

    Accepted forms: "q=9", "p=3,d=2,poly=1,0,1" (coefficients low to high)
    and "S=2,3,5" for the truncated-Q model.
    """
    spec = spec.strip()
    if spec.startswith("q="):
        return ff_from_q(int(spec[2:]), cap=cap)
    if spec.startswith("S="):
        return SUnitModel(tuple(int(t) for t in spec[2:].split(",") if t))
    if spec.startswith("p="):
        parts = spec.split(",")
        p = int(parts[0][2:])
        d = 1
        poly = None
        i = 1
        while i < len(parts):
            if parts[i].startswith("d="):
                d = int(parts[i][2:])
                i += 1
            elif parts[i].startswith("poly="):
                coeffs = [int(parts[i][5:])]
                i += 1
                while i < len(parts):
                    coeffs.append(int(parts[i]))
                    i += 1
                poly = tuple(coeffs)
            else:
                raise ValueError(f"bad field spec component {parts[i]!r}")
        return ff_make(p, d, poly, cap=cap)
    raise ValueError(f"cannot parse field spec {spec!r}")
