"""Closure decompositions of cells, structure maps, and exact certification.

The closure of the cell of a matching M is the disjoint union, over subsets
A of M, of the labeled pieces cut(cell, A).  Two independent certifiers
back this up:

* exact polynomial limit curves: a curve v(t) inside the cell whose flag
  converges, projectively and per subspace, to a chosen point of a piece,
  checked with leading terms of minor vectors and no tolerance at all;
* a numeric infimum oracle (see ``numeric``) that minimizes a projector
  distance to the target flag.

Curves are synthesized recursively.  When the matching has an index with no
arc over it, the flag splits into two independent blocks and the curves
concatenate.  When the outermost arc spans everything, the flag fibers over
the line V_1; a finite first coordinate freezes that arc's variable and the
rest recurses, while cutting the outermost arc sends V_1 to its limit line,
which twists the inner coordinates by an explicit polynomial frame change.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cells import (
    FlagMatrix,
    NOT_COORDINATE,
    apply_nilpotent,
    build_template,
    instantiate,
    prefix_span_basis,
)
from .cutting import LabeledPiece, ZERO, labeled_cut, piece_matrix
from .errors import (
    CurveNotFound,
    DegenerateCurve,
    DimensionMismatch,
    InvalidSplitIndex,
    MissingParameter,
    OddN,
    TooManyArcs,
)
from .exact import (
    FUNCTION_FIELD,
    POLY_RING,
    QQ,
    Poly,
    RatFunc,
    SpanBasis,
    canonical_reduce,
    leading_direction,
    mat_from_rows,
    minor_vector,
    normalize_direction,
    pivot_pattern,
)
from .matchings import (
    Arc,
    JordanType,
    Matching,
    T,
    bt_word,
    parent,
)


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"


#: Point at infinity of the parameter line used by phi_embed.
INFINITY = _Infinity()

PolyCurve = dict  # Arc -> Poly in t


# ---------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True)
class ClosureDecomposition:
    matching: Matching
    jt: JordanType
    pieces: Mapping[frozenset[Arc], LabeledPiece]

    def subsets(self) -> list[frozenset[Arc]]:
        return sorted(self.pieces, key=lambda s: (len(s), sorted(s)))

    def piece(self, arcs: Iterable[Arc]) -> LabeledPiece:
        return self.pieces[frozenset(arcs)]


def closure_decomposition(m: Matching, jt: JordanType) -> ClosureDecomposition:
    """One labeled piece for every subset of arcs; 2^|M| in total."""
    k = len(m)
    if k > min(jt.n, jt.bottom):
        raise TooManyArcs(f"{k} arcs exceed min({jt.n}, {jt.bottom})")
    pieces = {}
    for r in range(k + 1):
        for combo in itertools.combinations(m.arcs, r):
            pieces[frozenset(combo)] = labeled_cut(m, combo, jt)
    return ClosureDecomposition(m, jt, pieces)


def swap_candidates(m: Matching, jt: JordanType) -> set[str]:
    """Words reachable by flipping the endpoint letters of arc subsets;
    only these cells can meet the closure of the cell of m.
    """
    word = bt_word(m, jt)
    out = set()
    for r in range(len(m) + 1):
        for combo in itertools.combinations(m.arcs, r):
            letters = list(word)
            for a in combo:
                i, j = a.init - 1, a.term - 1
                letters[i], letters[j] = letters[j], letters[i]
            out.add("".join(letters))
    return out


# ---------------------------------------------------------------------------
# necessary conditions satisfied by every flag in the closure


def _power_image_contained(
    jt: JordanType, cols: Sequence, upto: int, power: int, bound: int, ring
) -> bool:
    """X^power (span of cols[:upto]) inside span of cols[:bound]?"""
    target = SpanBasis(ring)
    for c in cols[:bound]:
        target.add(c)
    for c in cols[:upto]:
        img = c
        for _ in range(power):
            img = apply_nilpotent(jt, img, ring)
        if not target.contains(img):
            return False
    return True


def flag_necessary_conditions(
    m: Matching, jt: JordanType, g: FlagMatrix, ring=QQ
) -> list[str]:
    """Violations of the closure conditions of the cell of m by the flag g.

    Checks, exactly: the frozen coordinate subspace at every index not
    under an arc; for each arc spanning k arcs, the k-fold shift maps the
    subspace at its end inside the subspace before its start; and for each
    parented arc the corresponding condition between the two end indices.
    """
    word = bt_word(m, jt)
    cols = g.cols()
    issues: list[str] = []
    for i in range(1, m.N + 1):
        if any(a.init <= i < a.term for a in m.arcs):
            continue
        t = word[:i].count(T)
        expected = tuple(range(1, t + 1)) + tuple(range(jt.n + 1, jt.n + (i - t) + 1))
        got = prefix_span_basis(g, i, ring)
        if got is NOT_COORDINATE or got != expected:
            issues.append(f"split {i}: prefix span is not the frozen coordinate subspace")
    for a in m.arcs:
        k = sum(1 for b in m.arcs if a.init <= b.init and b.term <= a.term)
        if not _power_image_contained(jt, cols, a.term, k, a.init - 1, ring):
            issues.append(f"arc {a}: {k}-fold shift image escapes the prefix span")
    for a in m.arcs:
        par = parent(m, a)
        if par is None:
            continue
        k = (par.term - a.term) // 2
        if not _power_image_contained(jt, cols, par.term, k + 1, a.term, ring):
            issues.append(f"arc {a} under {par}: shift condition between arc ends fails")
    return issues


@dataclass(frozen=True)
class ConditionReport:
    entries: tuple[tuple[str, bool, str], ...]

    @property
    def all_pass(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def failures(self) -> list[tuple[str, bool, str]]:
        return [e for e in self.entries if not e[1]]


def check_necessary_conditions(
    dec: ClosureDecomposition, rng, samples: int = 10
) -> ConditionReport:
    """Exact closure-condition checks on every piece at random parameters."""
    from .sampling import random_params

    entries = []
    for subset in dec.subsets():
        piece = dec.pieces[subset]
        uncut = [a for a in dec.matching.arcs if a not in subset]
        for s in range(samples):
            values = random_params(uncut, rng)
            g = piece_matrix(piece, values)
            issues = flag_necessary_conditions(dec.matching, dec.jt, g)
            label = f"cut {sorted(subset)} sample {s}"
            if issues:
                entries.append((label, False, "; ".join(issues)))
            else:
                entries.append((label, True, ""))
    return ConditionReport(tuple(entries))


# ---------------------------------------------------------------------------
# structure maps


@dataclass(frozen=True)
class SplitData:
    i: int
    mL: Matching
    mR: Matching
    jtL: JordanType
    jtR: JordanType


def valid_split_indices(m: Matching) -> list[int]:
    """Indices 1..N-1 with no arc over them: arc-free points and ends of
    parentless arcs.
    """
    return [
        i
        for i in range(1, m.N)
        if not any(a.init <= i < a.term for a in m.arcs)
    ]


def chi_split(m: Matching, jt: JordanType, i: int) -> SplitData:
    if not (1 <= i <= m.N):
        raise InvalidSplitIndex(f"index {i} outside 1..{m.N}")
    if any(a.init <= i < a.term for a in m.arcs):
        raise InvalidSplitIndex(f"an arc spans index {i}")
    word = bt_word(m, jt)
    t = word[:i].count(T)
    left = tuple(a for a in m.arcs if a.term <= i)
    right = tuple(Arc(a.init - i, a.term - i) for a in m.arcs if a.init > i)
    return SplitData(
        i,
        Matching(i, left),
        Matching(m.N - i, right),
        JordanType(t, i),
        JordanType(jt.n - t, m.N - i),
    )


def chi_embed(gL: FlagMatrix, gR: FlagMatrix, split: SplitData, ring=QQ) -> FlagMatrix:
    """Interleave two flags into the block flag: top rows of the left flag,
    then top rows of the right, then the bottom rows of each.  Canonical
    inputs give a canonical output.
    """
    i, nL = split.i, split.jtL.n
    if gL.N != i or gR.N != split.mR.N:
        raise DimensionMismatch(
            f"expected sizes {i} and {split.mR.N}, got {gL.N} and {gR.N}"
        )
    N = i + gR.N
    n = split.jtL.n + split.jtR.n
    b = i - nL
    rows = [[ring.zero] * N for _ in range(N)]

    def paste(src: FlagMatrix, src_rows: range, dst_row: int, dst_col: int):
        for offset, r in enumerate(src_rows):
            for c in range(src.N):
                rows[dst_row + offset][dst_col + c] = src.rows[r][c]

    paste(gL, range(0, nL), 0, 0)
    paste(gR, range(0, split.jtR.n), nL, i)
    paste(gL, range(nL, i), n, 0)
    paste(gR, range(split.jtR.n, gR.N), n + b, i)
    return FlagMatrix(mat_from_rows(rows))


def phi_embed(a, g: FlagMatrix, jt: JordanType, ring=QQ) -> FlagMatrix:
    """Embed an (N-2)-flag over the parameter line of V_1 inside ker X.

    For finite a, the columns are arranged around pivots at rows N/2+1 and
    N/2 and then sheared by adding a times the bottom block to the top
    block; a = INFINITY gives the block-diagonal arrangement.  The result
    is put in canonical form.
    """
    N = jt.N
    if N % 2:
        raise OddN(f"N={N} must be even")
    half = N // 2
    if jt.n != half:
        raise DimensionMismatch(f"Jordan type must be ({half},{half})")
    if g.N != N - 2:
        raise DimensionMismatch(f"inner flag must have size {N - 2}, got {g.N}")
    rows = [[ring.zero] * N for _ in range(N)]
    if a is INFINITY:
        rows[0][0] = ring.one
        rows[N - 1][N - 1] = ring.one
        for r in range(N - 2):
            for c in range(N - 2):
                rows[r + 1][c + 1] = g.rows[r][c]
        return FlagMatrix(canonical_reduce(mat_from_rows(rows), ring))
    a = ring.of(a) if isinstance(a, int) else a
    # place inner rows around the two pinned pivot columns
    for c in range(N - 2):
        for r in range(half - 1):
            rows[r][c + 1] = g.rows[r][c]
        for r in range(half - 1, N - 2):
            rows[r + 2][c + 1] = g.rows[r][c]
    rows[half][0] = ring.one
    rows[half - 1][N - 1] = ring.one
    # shear: add a times each bottom-block row to the matching top row
    for r in range(half):
        for c in range(N):
            rows[r][c] = rows[r][c] + a * rows[half + r][c]
    return FlagMatrix(canonical_reduce(mat_from_rows(rows), ring))


# ---------------------------------------------------------------------------
# exact limit curves


def verify_limit_curve(
    m: Matching,
    jt: JordanType,
    curve: Mapping[Arc, Poly],
    piece: LabeledPiece,
    target: Mapping[Arc, Fraction],
) -> bool:
    """Exact, tolerance-free check that the curve's flag converges to the
    labeled piece at the target values: for every i, the leading direction
    of the minor vector of the first i columns matches projectively.
    """
    missing = [a for a in m.arcs if a not in curve]
    if missing:
        raise MissingParameter(f"curve misses arcs {missing}")
    template = build_template(m, jt)
    moving = instantiate(template, dict(curve), POLY_RING)
    fixed = piece_matrix(piece, target)
    for i in range(1, m.N + 1):
        mv = minor_vector(moving.rows, i, POLY_RING)
        if all(p.is_zero() for p in mv):
            raise DegenerateCurve(f"minor vector at i={i} vanishes identically")
        if leading_direction(mv) != normalize_direction(minor_vector(fixed.rows, i, QQ)):
            return False
    return True


def _shift_arc(a: Arc, offset: int) -> Arc:
    return Arc(a.init + offset, a.term + offset)


def _inner_matching(m: Matching) -> Matching:
    outer = Arc(1, m.N)
    return Matching(m.N - 2, tuple(_shift_arc(a, -1) for a in m.arcs if a != outer))


def _twisted_inner_coords(
    inner_m: Matching, inner_jt: JordanType, inner_curve: Mapping[Arc, Poly]
) -> dict[Arc, Poly] | None:
    """Inner cell coordinates after the frame change at the outer cut.

    When the outermost arc is cut, its variable runs off to infinity and
    V_1 tends to the basis line; reading the limit in the chart around that
    line multiplies the inner flag by an explicit polynomial frame.  Here
    the twisted matrix is reduced to canonical form over Q(t) and the cell
    coordinates are read back off; None signals that the twisted flag left
    the inner cell (no polynomial certificate of this shape exists).
    """
    h = inner_m.N
    if h == 0:
        return {}
    half = h // 2
    template = build_template(inner_m, inner_jt)
    w_rows = instantiate(template, dict(inner_curve), POLY_RING).rows
    t2 = Poly.t(2)
    t1 = Poly.t(1)
    twisted = [[Poly()] * h for _ in range(h)]
    for c in range(h):
        for r in range(half):
            twisted[r][c] = -(t2 * w_rows[half + r][c])
        for s in range(half):
            val = w_rows[s][c]
            if s + 1 < half:
                val = val + t1 * w_rows[half + s + 1][c]
            twisted[half + s][c] = val
    as_rf = tuple(tuple(RatFunc(p) for p in row) for row in twisted)
    try:
        reduced = canonical_reduce(as_rf, FUNCTION_FIELD)
        pattern = pivot_pattern(reduced, FUNCTION_FIELD)
    except Exception:
        return None
    if pattern != template.w:
        return None
    coords: dict[Arc, Poly] = {}
    for arc in inner_m.arcs:
        entry = reduced[template.top_offset[arc]][arc.init - 1]
        if not entry.is_polynomial():
            return None
        coords[arc] = entry.as_poly()
    # the reduced matrix must be exactly the template at these coordinates
    check = instantiate(template, coords, POLY_RING)
    for r in range(h):
        for c in range(h):
            if RatFunc(check.rows[r][c]) != reduced[r][c]:
                return None
    return coords


def _extract_inner_target(
    m: Matching,
    jt: JordanType,
    cut_arcs: frozenset[Arc],
    target: Mapping[Arc, Fraction],
    inner_m: Matching,
    inner_jt: JordanType,
    inner_cut: frozenset[Arc],
) -> dict[Arc, Fraction] | None:
    """Inner label values whose embedded piece point is the outer target.

    The outer piece point is a flag over the line V_1 in the kernel; undoing
    the shear by the outer arc's value (or stripping the border blocks when
    that arc is cut) exposes the inner piece matrix, and the inner label
    values are read off its variable slots.  Returns None when the outer
    point does not have the embedded shape, which fails the synthesis
    loudly rather than guessing.
    """
    N = jt.N
    half = N // 2
    outer = Arc(1, N)
    outer_piece = labeled_cut(m, cut_arcs, jt)
    P = piece_matrix(outer_piece, target)
    rows = [list(r) for r in P.rows]
    if outer in cut_arcs:
        # block-diagonal frame: pinned pivots in the corners
        first_piv, last_piv = 0, N - 1
        border_rows = (0, N - 1)
        inner_row_ids = list(range(1, N - 1))
    else:
        # undo the shear by the outer arc's value, then recanonicalize
        a0 = target[outer]
        for r in range(half):
            rows[r] = [x - a0 * y for x, y in zip(rows[r], rows[half + r])]
        try:
            rows = [list(r) for r in canonical_reduce(mat_from_rows(rows), QQ)]
        except Exception:
            return None
        first_piv, last_piv = half, half - 1
        border_rows = (half - 1, half)
        inner_row_ids = list(range(half - 1)) + list(range(half + 1, N))
    for r in range(N):
        want_first = QQ.one if r == first_piv else QQ.zero
        want_last = QQ.one if r == last_piv else QQ.zero
        if rows[r][0] != want_first or rows[r][N - 1] != want_last:
            return None
    for r in border_rows:
        if any(rows[r][c] != QQ.zero for c in range(1, N - 1)):
            return None
    inner_rows = mat_from_rows([rows[r][1 : N - 1] for r in inner_row_ids])
    inner_piece = labeled_cut(inner_m, inner_cut, inner_jt)
    template = build_template(inner_piece.base, inner_jt)
    values: dict[Arc, Fraction] = {}
    for gamma in inner_piece.base.arcs:
        lab = inner_piece.labels[gamma]
        val = inner_rows[template.top_offset[gamma]][gamma.init - 1]
        if lab is ZERO:
            if val != QQ.zero:
                return None
        elif lab in values:
            if values[lab] != val:
                return None
        else:
            values[lab] = val
    uncut_inner = {a for a in inner_m.arcs if a not in inner_cut}
    if set(values) != uncut_inner:
        return None
    if piece_matrix(inner_piece, values).rows != inner_rows:
        return None
    return values


def _synthesize(
    m: Matching,
    jt: JordanType,
    cut_arcs: frozenset[Arc],
    target: Mapping[Arc, Fraction],
) -> dict[Arc, Poly]:
    if not cut_arcs:
        return {a: Poly.const(target[a]) for a in m.arcs}
    splits = valid_split_indices(m)
    if splits:
        i = splits[0]
        split = chi_split(m, jt, i)
        left_cut = frozenset(a for a in cut_arcs if a.term <= i)
        right_cut = frozenset(_shift_arc(a, -i) for a in cut_arcs if a.init > i)
        left_target = {a: v for a, v in target.items() if a.term <= i}
        right_target = {_shift_arc(a, -i): v for a, v in target.items() if a.init > i}
        left = _synthesize(split.mL, split.jtL, left_cut, left_target)
        right = _synthesize(split.mR, split.jtR, right_cut, right_target)
        out = dict(left)
        out.update({_shift_arc(a, i): p for a, p in right.items()})
        return out
    # no split: the arc (1, N) is present and the matching is perfect
    outer = Arc(1, m.N)
    assert outer in m, "a matching without split indices carries the full arc"
    inner_m = _inner_matching(m)
    inner_jt = JordanType(jt.n - 1, jt.N - 2)
    inner_cut = frozenset(_shift_arc(a, -1) for a in cut_arcs if a != outer)
    inner_target = _extract_inner_target(
        m, jt, cut_arcs, target, inner_m, inner_jt, inner_cut
    )
    if inner_target is None:
        raise CurveNotFound(
            f"outer target is not an embedded inner point for {m.arcs}"
            f" cutting {sorted(cut_arcs)}"
        )
    inner = _synthesize(inner_m, inner_jt, inner_cut, inner_target)
    if outer not in cut_arcs:
        out = {outer: Poly.const(target[outer])}
        out.update({_shift_arc(a, 1): p for a, p in inner.items()})
        return out
    twisted = _twisted_inner_coords(inner_m, inner_jt, inner)
    if twisted is None:
        raise CurveNotFound(
            f"frame change left the inner cell for {m.arcs} cutting {sorted(cut_arcs)}"
        )
    out = {outer: Poly.t(1)}
    out.update({_shift_arc(a, 1): p for a, p in twisted.items()})
    return out


def _ansatz_search(
    m: Matching,
    jt: JordanType,
    cut_arcs: frozenset[Arc],
    target: Mapping[Arc, Fraction],
    piece: LabeledPiece,
    max_degree: int,
    budget: int = 4096,
) -> dict[Arc, Poly] | None:
    """Bounded fallback: monomial ansatz per cut arc, uncut arcs constant."""
    cut_list = sorted(cut_arcs)
    options = []
    for d in range(1, max_degree + 1):
        options.append(Poly.t(d))
        options.append(Poly.t(d, -1))
    tried = 0
    for combo in itertools.product(options, repeat=len(cut_list)):
        tried += 1
        if tried > budget:
            return None
        curve = {a: Poly.const(target[a]) for a in target}
        curve.update(dict(zip(cut_list, combo)))
        try:
            if verify_limit_curve(m, jt, curve, piece, target):
                return curve
        except DegenerateCurve:
            continue
    return None


def synthesize_limit_curve(
    m: Matching,
    jt: JordanType,
    cut_arcs: Iterable[Arc],
    target: Mapping[Arc, Fraction],
) -> dict[Arc, Poly]:
    """A polynomial curve in the cell of m whose flag limit is the piece
    cut(cell, A) at the target values, certified by verify_limit_curve.

    Raises CurveNotFound when neither the recursive construction nor the
    bounded monomial search produces a verified curve; the failure is
    surfaced, never silently absorbed.
    """
    cut_set_ = frozenset(cut_arcs)
    for a in cut_set_:
        if a not in m:
            raise MissingParameter(f"cut arc {a} not in the matching")
    uncut = [a for a in m.arcs if a not in cut_set_]
    missing = [a for a in uncut if a not in target]
    if missing:
        raise MissingParameter(f"no target value for {missing}")
    target = {a: Fraction(target[a]) for a in uncut}
    piece = labeled_cut(m, cut_set_, jt)
    try:
        curve = _synthesize(m, jt, cut_set_, target)
        if verify_limit_curve(m, jt, curve, piece, target):
            return curve
    except CurveNotFound:
        pass
    found = _ansatz_search(m, jt, cut_set_, target, piece, max_degree=2 * max(len(m), 1))
    if found is None:
        raise CurveNotFound(
            f"no certified curve for {m.arcs} cutting {sorted(cut_set_)} at {target}"
        )
    return found
