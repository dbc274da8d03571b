"""Exact scalars and linear algebra over Q, prime fields and Q(t).

Matrices are plain tuples of row tuples.  Every algorithm here is generic
over a small ring/field protocol: a ring object exposes ``zero``, ``one``
and ``of(int)`` and its elements support ``+ - * ==`` (fields also ``/``).
``fractions.Fraction`` plays that role for Q; ``GFElement``, ``Poly`` and
``RatFunc`` implement it for F_q, Q[t] and Q(t).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, Singular, ZeroVector

NEG_INFINITY = float("-inf")


class _Rationals:
    """The field Q, carried by fractions.Fraction."""

    zero = Fraction(0)
    one = Fraction(1)
    name = "QQ"

    @staticmethod
    def of(x) -> Fraction:
        return Fraction(x)


QQ = _Rationals()


@dataclass(frozen=True)
class GFElement:
    value: int
    p: int

    def _coerce(self, other: "GFElement") -> None:
        if not isinstance(other, GFElement) or other.p != self.p:
            raise TypeError(f"incompatible field element: {other!r}")

    def __add__(self, other: "GFElement") -> "GFElement":
        self._coerce(other)
        return GFElement((self.value + other.value) % self.p, self.p)

    def __sub__(self, other: "GFElement") -> "GFElement":
        self._coerce(other)
        return GFElement((self.value - other.value) % self.p, self.p)

    def __mul__(self, other: "GFElement") -> "GFElement":
        self._coerce(other)
        return GFElement((self.value * other.value) % self.p, self.p)

    def __truediv__(self, other: "GFElement") -> "GFElement":
        self._coerce(other)
        if other.value == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return GFElement((self.value * pow(other.value, -1, self.p)) % self.p, self.p)

    def __neg__(self) -> "GFElement":
        return GFElement((-self.value) % self.p, self.p)

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"


class PrimeField:
    """The prime field F_p for small prime p."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = GFElement(0, p)
        self.one = GFElement(1, p)
        self.name = f"GF({p})"

    def of(self, x) -> GFElement:
        return GFElement(int(x) % self.p, self.p)

    def elements(self) -> list[GFElement]:
        return [GFElement(v, self.p) for v in range(self.p)]


class Poly:
    """Univariate polynomial in t with Fraction coefficients, dense form.

    Coefficients are stored ascending; trailing zeros are stripped, so the
    zero polynomial has an empty coefficient tuple and degree -inf.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Fraction | int] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("Poly is immutable")

    @staticmethod
    def const(c) -> "Poly":
        return Poly([Fraction(c)])

    @staticmethod
    def t(power: int = 1, coeff=1) -> "Poly":
        return Poly([0] * power + [Fraction(coeff)])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    def coeff(self, d: int) -> Fraction:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return Fraction(0)

    @property
    def leading_coeff(self) -> Fraction:
        if not self.coeffs:
            raise ZeroVector("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly([c * a for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k."""
        if not self.coeffs:
            return self
        return Poly([Fraction(0)] * k + list(self.coeffs))

    def __call__(self, x):
        """Evaluate at x (Fraction/int for exact, float for numeric work)."""
        numeric = isinstance(x, float)
        acc = 0.0 if numeric else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + (float(c) if numeric else c)
        return acc

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for i in range(dq, -1, -1):
            c = rem[i + len(other.coeffs) - 1] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Poly(quot), Poly(rem)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading_coeff)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if d == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                parts.append(f"{head}t" + (f"^{d}" if d > 1 else ""))
        return " + ".join(parts).replace("+ -", "- ")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


class _PolyRing:
    zero = Poly()
    one = Poly([1])
    name = "QQ[t]"

    @staticmethod
    def of(x) -> Poly:
        return Poly.const(x)


POLY_RING = _PolyRing()


class RatFunc:
    """Element of Q(t): a quotient of polynomials in lowest terms.

    The denominator is kept monic and nonzero, and gcd(num, den) = 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = Poly([1])):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree not in (0, NEG_INFINITY):
                num, den = num.divmod(g)[0], den.divmod(g)[0]
            lead = den.leading_coeff
            if lead != 1:
                num = num.scale(1 / lead)
                den = den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def of_poly(p: Poly) -> "RatFunc":
        return RatFunc(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0 or self.is_zero()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError(f"{self!r} is not a polynomial")
        return self.num  # den is the constant 1 once reduced

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(t)")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __repr__(self) -> str:
        if self.is_polynomial():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


class _FunctionField:
    zero = RatFunc(Poly())
    one = RatFunc(Poly([1]))
    name = "QQ(t)"

    @staticmethod
    def of(x) -> RatFunc:
        return RatFunc(Poly.const(x))


FUNCTION_FIELD = _FunctionField()


Matrix = tuple  # tuple of row tuples; informal alias used in signatures


def mat_from_rows(rows) -> Matrix:
    return tuple(tuple(row) for row in rows)


def mat_cols(m: Matrix) -> list[list]:
    n_rows = len(m)
    return [[m[r][j] for r in range(n_rows)] for j in range(len(m[0]))]


def mat_from_cols(cols) -> Matrix:
    n_rows = len(cols[0])
    return tuple(tuple(col[r] for col in cols) for r in range(n_rows))


def mat_mul(a: Matrix, b: Matrix, ring=QQ) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"{len(a[0])} columns vs {len(b)} rows")
    out = []
    for r in range(len(a)):
        row = []
        for j in range(len(b[0])):
            acc = ring.zero
            for k in range(len(b)):
                acc = acc + a[r][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def identity_matrix(n: int, ring=QQ) -> Matrix:
    return tuple(
        tuple(ring.one if r == j else ring.zero for j in range(n)) for r in range(n)
    )


class SpanBasis:
    """Incrementally built span of vectors with exact membership tests."""

    def __init__(self, ring=QQ):
        self.ring = ring
        self.echelon: list[tuple[int, list]] = []

    def residual(self, vec: Sequence) -> list:
        """vec minus its projection onto the span; linear in vec."""
        v = list(vec)
        for piv, basis_vec in self.echelon:
            c = v[piv]
            if c != self.ring.zero:
                v = [a - c * b for a, b in zip(v, basis_vec)]
        return v

    def contains(self, vec: Sequence) -> bool:
        return all(a == self.ring.zero for a in self.residual(vec))

    def add(self, vec: Sequence) -> bool:
        """Add vec to the span; True if it enlarged the span."""
        res = self.residual(vec)
        piv = next((i for i, a in enumerate(res) if a != self.ring.zero), None)
        if piv is None:
            return False
        inv = self.ring.one / res[piv]
        self.echelon.append((piv, [inv * x for x in res]))
        self.echelon.sort(key=lambda t: t[0])
        return True

    @property
    def rank(self) -> int:
        return len(self.echelon)


def solve_linear_system(a_rows: Sequence[Sequence], b: Sequence, ring=QQ):
    """Solve A x = b over a field; (particular, nullspace basis) or None.

    A is given by rows; the nullspace basis has one vector per free column.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    aug = [list(row) + [bv] for row, bv in zip(a_rows, b)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c] != ring.zero), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = ring.one / aug[r][c]
        aug[r] = [inv * x for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != ring.zero:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != ring.zero:
            return None
    particular = [ring.zero] * n
    for pr, pc in pivots:
        particular[pc] = aug[pr][n]
    pivot_cols = {pc for _, pc in pivots}
    null_basis = []
    for fc in range(n):
        if fc in pivot_cols:
            continue
        vec = [ring.zero] * n
        vec[fc] = ring.one
        for pr, pc in pivots:
            vec[pc] = ring.zero - aug[pr][fc]
        null_basis.append(vec)
    return particular, null_basis


def rank(vectors: Sequence[Sequence], ring=QQ) -> int:
    basis = SpanBasis(ring)
    for v in vectors:
        basis.add(v)
    return basis.rank


def in_span(vector: Sequence, basis_vectors: Sequence[Sequence], ring=QQ) -> bool:
    """Exact membership of a vector in the span of the given vectors."""
    sizes = {len(v) for v in basis_vectors} | {len(vector)}
    if len(sizes) > 1:
        raise DimensionMismatch(f"mixed vector lengths {sorted(sizes)}")
    basis = SpanBasis(ring)
    for v in basis_vectors:
        basis.add(v)
    return basis.contains(vector)


def canonical_reduce(g: Matrix, ring=QQ) -> Matrix:
    """The unique coset representative of gB with pivots 1, zeros below
    and to the right of every pivot.  Column-prefix spans are preserved.

    Raises Singular if g is not invertible.
    """
    n = len(g)
    if any(len(row) != n for row in g):
        raise DimensionMismatch("canonical form needs a square matrix")
    cols = mat_cols(g)
    done: list[tuple[int, list]] = []  # (pivot row, canonical column)
    out_cols: list[list] = []
    for j in range(n):
        col = list(cols[j])
        for piv, prev in done:
            c = col[piv]
            if c != ring.zero:
                col = [a - c * b for a, b in zip(col, prev)]
        piv = None
        for r in range(n - 1, -1, -1):
            if col[r] != ring.zero:
                piv = r
                break
        if piv is None:
            raise Singular(f"column {j + 1} is dependent on earlier columns")
        inv = ring.one / col[piv]
        col = [inv * a for a in col]
        done.append((piv, col))
        out_cols.append(col)
    return mat_from_cols(out_cols)


def pivot_pattern(g: Matrix, ring=QQ) -> tuple[int, ...]:
    """Row index (1-based) of the lowest nonzero entry of each column."""
    n = len(g)
    pattern = []
    for j in range(len(g[0])):
        piv = None
        for r in range(n - 1, -1, -1):
            if g[r][j] != ring.zero:
                piv = r + 1
                break
        if piv is None:
            raise Singular(f"column {j + 1} is zero")
        pattern.append(piv)
    return tuple(pattern)


def row_subsets(n: int, i: int) -> list[tuple[int, ...]]:
    """Size-i subsets of {1..n} in lexicographic order; fixes minor order."""
    return [tuple(x + 1 for x in c) for c in itertools.combinations(range(n), i)]


def minor_vector(g: Matrix, i: int, ring=QQ) -> list:
    """All i x i minors of the first i columns, by lexicographic row subset.

    Works over any commutative ring (Q, F_q, Q[t]): the minors are
    accumulated as a wedge product of the columns, one column at a time.
    """
    n_rows = len(g)
    if len(g[0]) < i:
        raise DimensionMismatch(f"need at least {i} columns, got {len(g[0])}")
    if i == 0:
        return [ring.one]
    wedge: dict[tuple[int, ...], object] = {(): ring.one}
    for j in range(i):
        nxt: dict[tuple[int, ...], object] = {}
        for subset, val in wedge.items():
            for r in range(n_rows):
                entry = g[r][j]
                if entry == ring.zero or r in subset:
                    continue
                swaps = sum(1 for s in subset if s > r)
                term = val * entry
                if swaps % 2:
                    term = ring.zero - term
                key = tuple(sorted(subset + (r,)))
                if key in nxt:
                    nxt[key] = nxt[key] + term
                else:
                    nxt[key] = term
        wedge = nxt
    zero = ring.zero
    return [
        wedge.get(tuple(x - 1 for x in subset), zero)
        for subset in row_subsets(n_rows, i)
    ]


def leading_direction(vec: Sequence[Poly]) -> tuple[Fraction, ...]:
    """Top-degree coefficient vector of a polynomial vector, normalized so
    the first nonzero entry is 1.  This is the projective limit as t -> oo.
    """
    degrees = [p.degree for p in vec]
    top = max(degrees)
    if top == NEG_INFINITY:
        raise ZeroVector("identically zero vector has no direction")
    raw = [p.coeff(int(top)) for p in vec]
    lead = next(c for c in raw if c != 0)
    return tuple(c / lead for c in raw)


def normalize_direction(vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale an exact vector so its first nonzero entry is 1."""
    lead = next((c for c in vec if c != 0), None)
    if lead is None:
        raise ZeroVector("cannot normalize the zero vector")
    return tuple(c / lead for c in vec)
