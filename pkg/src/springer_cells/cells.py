"""Symbolic cell matrices for Springer Schubert cells and their checks.

Each standard noncrossing matching M with at most min(n, N-n) arcs indexes
a cell.  The cell is the image of a polynomial map from C^{|M|}: start from
the pivot permutation matrix of M and, in the column of each arc start, lay
down the variables of the arc's ancestor chain (the arc itself first) in
consecutive rows just below the top-block pivots already used to the left.
Instantiating the template at any parameter vector gives the canonical
coset representative of a flag fixed by the nilpotent, and distinct
parameters give distinct flags.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import DimensionMismatch, MissingParameter, Singular
from .exact import QQ, Matrix, SpanBasis, in_span, mat_from_rows
from .matchings import (
    Arc,
    JordanType,
    Matching,
    T,
    ancestors,
    matching_permutation,
)

#: Returned by prefix_span_basis when V_i is not a span of basis vectors.
NOT_COORDINATE = object()


@dataclass(frozen=True)
class FlagMatrix:
    """Square exact matrix whose column-prefix spans are the flag."""

    rows: Matrix

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise DimensionMismatch("flag matrix must be square")

    @property
    def N(self) -> int:
        return len(self.rows)

    def col(self, j: int) -> tuple:
        """Column j, 1-based."""
        return tuple(self.rows[r][j - 1] for r in range(self.N))

    def cols(self) -> list[tuple]:
        return [self.col(j) for j in range(1, self.N + 1)]

    def __getitem__(self, rc: tuple[int, int]):
        r, c = rc
        return self.rows[r - 1][c - 1]


@dataclass(frozen=True)
class CellTemplate:
    """Pivot pattern plus variable slots of one cell.

    ``slots`` maps (row, column), 1-based, to the arc whose variable sits
    there; ``top_offset`` gives, per arc, the number of top-block pivots
    strictly left of the arc's start column (the variables of the arc's
    chain occupy the rows just below that offset).
    """

    jt: JordanType
    matching: Matching
    w: tuple[int, ...]
    word: str
    slots: Mapping[tuple[int, int], Arc]
    top_offset: Mapping[Arc, int]

    @property
    def dimension(self) -> int:
        return len(self.matching)

    def slot_items(self) -> list[tuple[int, int, Arc]]:
        return sorted((r, c, a) for (r, c), a in self.slots.items())


def build_template(m: Matching, jt: JordanType) -> CellTemplate:
    if not (m.is_noncrossing and m.is_standard):
        raise ValueError("cell templates require a standard noncrossing matching")
    prof = matching_permutation(m, jt)
    word = prof.word
    assert word is not None and prof.w is not None
    slots: dict[tuple[int, int], Arc] = {}
    offsets: dict[Arc, int] = {}
    for arc in m.arcs:
        r0 = word[: arc.init - 1].count(T)
        offsets[arc] = r0
        chain = ancestors(m, arc)
        for j, anc in enumerate(chain, start=1):
            row = r0 + j
            assert row <= jt.n, "variable slots stay inside the top block"
            slots[(row, arc.init)] = anc
    return CellTemplate(jt, m, prof.w, word, slots, offsets)


def instantiate(ct: CellTemplate, params: Mapping[Arc, object], ring=QQ) -> FlagMatrix:
    """Fill the template's slots; the result is always in canonical form."""
    missing = [a for a in ct.matching.arcs if a not in params]
    if missing:
        raise MissingParameter(f"no value for arcs {missing}")
    n = ct.jt.N
    rows = [[ring.zero] * n for _ in range(n)]
    for col, piv in enumerate(ct.w, start=1):
        rows[piv - 1][col - 1] = ring.one
    for (r, c), arc in ct.slots.items():
        rows[r - 1][c - 1] = params[arc]
    return FlagMatrix(mat_from_rows(rows))


def cell_matrix(m: Matching, jt: JordanType, params: Mapping[Arc, object], ring=QQ) -> FlagMatrix:
    return instantiate(build_template(m, jt), params, ring)


def verify_canonical(g: FlagMatrix, ring=QQ) -> bool:
    """Unique pivot 1 per row and column, zeros below and right of pivots."""
    n = g.N
    pivot_rows = []
    for j in range(1, n + 1):
        col = g.col(j)
        piv = None
        for r in range(n, 0, -1):
            if col[r - 1] != ring.zero:
                piv = r
                break
        if piv is None or col[piv - 1] != ring.one:
            return False
        if any(g[piv, j2] != ring.zero for j2 in range(j + 1, n + 1)):
            return False
        pivot_rows.append(piv)
    return len(set(pivot_rows)) == n


def apply_nilpotent(jt: JordanType, vec, ring=QQ) -> tuple:
    """Image of a coordinate vector under the two-block shift."""
    if len(vec) != jt.N:
        raise DimensionMismatch(f"vector length {len(vec)} vs N={jt.N}")
    out = [ring.zero] * jt.N
    for row in range(1, jt.N + 1):
        target = jt.x_image_row(row)
        if target is not None:
            out[target - 1] = out[target - 1] + vec[row - 1]
    return tuple(out)


def verify_springer(g: FlagMatrix, jt: JordanType, ring=QQ) -> bool:
    """Each column's image under the nilpotent stays in the flag subspace
    spanned by the columns up to and including it.
    """
    cols = g.cols()
    span = SpanBasis(ring)
    full_rank = SpanBasis(ring)
    for c in cols:
        if not full_rank.add(c):
            raise Singular("columns are linearly dependent")
    for j, c in enumerate(cols, start=1):
        span.add(c)
        if not span.contains(apply_nilpotent(jt, c, ring)):
            return False
    return True


def prefix_span_basis(g: FlagMatrix, i: int, ring=QQ):
    """Sorted indices {r: e_r in V_i} when V_i is a coordinate subspace,
    else NOT_COORDINATE.
    """
    if not (0 <= i <= g.N):
        raise DimensionMismatch(f"index {i} outside 0..{g.N}")
    cols = g.cols()[:i]
    basis = SpanBasis(ring)
    for c in cols:
        basis.add(c)
    members = []
    for r in range(1, g.N + 1):
        e_r = tuple(ring.one if s == r else ring.zero for s in range(1, g.N + 1))
        if basis.contains(e_r):
            members.append(r)
    if len(members) == i:
        return tuple(members)
    return NOT_COORDINATE


def springer_column_diagnostics(g: FlagMatrix, jt: JordanType, ring=QQ) -> list[str]:
    """Structural facts every canonical Springer matrix satisfies, checked
    column by column; returns human-readable violations (empty when clean).

    For a column with pivot in the top block the column is a pure basis
    vector and all smaller top rows are pivoted earlier; with pivot in the
    bottom block the earlier bottom pivots fill the rows above it; and for
    bottom pivots past row n+1 the nilpotent image minus the previous
    bottom-pivot column lies in the top block intersected with the prefix
    span.
    """
    issues: list[str] = []
    n, N = jt.n, jt.N
    cols = g.cols()
    piv = []
    for j, c in enumerate(cols, start=1):
        pr = max(r for r in range(1, N + 1) if c[r - 1] != ring.zero)
        piv.append(pr)
    for j, c in enumerate(cols, start=1):
        pr = piv[j - 1]
        if pr <= n:
            if any(c[r] != ring.zero for r in range(N) if r != pr - 1):
                issues.append(f"column {j}: top-block pivot but extra entries")
            earlier = set(piv[: j - 1])
            if not all(r in earlier for r in range(1, pr)):
                issues.append(f"column {j}: rows 1..{pr - 1} not pivoted earlier")
        else:
            earlier = set(piv[: j - 1])
            if not all(r in earlier for r in range(n + 1, pr)):
                issues.append(f"column {j}: bottom rows n+1..{pr - 1} not pivoted earlier")
            if pr >= n + 2:
                k2 = piv.index(pr - 1) + 1
                diff = tuple(
                    a - b
                    for a, b in zip(apply_nilpotent(jt, c, ring), cols[k2 - 1])
                )
                if any(diff[r] != ring.zero for r in range(n, N)):
                    issues.append(f"column {j}: shifted column minus column {k2} leaves top block")
                if not in_span(diff, cols[: j - 1], ring):
                    issues.append(f"column {j}: shifted column minus column {k2} outside prefix span")
    return issues
