"""Brute-force ground truth over small prime fields.

Enumerates every canonical coset representative fixed by the nilpotent,
bucketed by pivot pattern, by depth-first extension one column at a time.
A partial prefix survives only if the shifted image of each new column
already lies in the span of the previous columns, which is exactly the
flag-stability condition, so the procedure enumerates precisely the
canonical matrices of Springer flags while skipping dead subtrees early.

The oracle shares only scalars and the flag-matrix wrapper with the main
path; in particular it never builds cell templates, so agreement between
its buckets and the matching enumeration is a genuine cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cells import FlagMatrix, apply_nilpotent
from .errors import Infeasible
from .exact import PrimeField, SpanBasis, mat_from_cols, solve_linear_system
from .matchings import JordanType

#: Hard cap on the nominal enumeration size (canonical matrices of the
#: ambient flag variety); the pruned search visits far fewer states.
MAX_NOMINAL_CANDIDATES = 10**9


@dataclass(frozen=True)
class FqConfig:
    q: int
    jt: JordanType

    def __post_init__(self):
        if self.q not in (2, 3, 5):
            raise ValueError(f"q={self.q} not in {{2,3,5}}")


def full_flag_count(q: int, N: int) -> int:
    """Number of complete flags over F_q, as a sum of q^inversions over all
    permutations (an independent enumeration, not a closed formula).
    """
    total = 0
    for perm in itertools.permutations(range(N)):
        inv = sum(
            1
            for a, b in itertools.combinations(range(N), 2)
            if perm[a] > perm[b]
        )
        total += q**inv
    return total


def _feasible(cfg: FqConfig) -> None:
    if cfg.jt.N > 7:
        raise Infeasible(f"N={cfg.jt.N} too large for brute force")
    if full_flag_count(cfg.q, cfg.jt.N) > MAX_NOMINAL_CANDIDATES:
        raise Infeasible(f"nominal candidate count exceeds {MAX_NOMINAL_CANDIDATES}")


def enumerate_springer_flags(cfg: FqConfig) -> dict[tuple[int, ...], list[FlagMatrix]]:
    """All canonical representatives over F_q whose flags are fixed by the
    nilpotent, bucketed by pivot pattern.
    """
    _feasible(cfg)
    field = PrimeField(cfg.q)
    jt = cfg.jt
    N = jt.N
    elements = field.elements()
    buckets: dict[tuple[int, ...], list[FlagMatrix]] = {}

    def extend(cols: list[tuple], pivots: tuple[int, ...], span: SpanBasis):
        j = len(cols)
        if j == N:
            buckets.setdefault(pivots, []).append(FlagMatrix(mat_from_cols(cols)))
            return
        used = set(pivots)
        for piv in range(1, N + 1):
            if piv in used:
                continue
            free_rows = [r for r in range(1, piv) if r not in used]
            base = [field.zero] * N
            base[piv - 1] = field.one
            # the shift image of the new column must fall in the prefix
            # span; that is affine-linear in the free entries, so solve a
            # linear system instead of enumerating all fillings
            base_res = span.residual(apply_nilpotent(jt, tuple(base), field))
            a_cols = []
            for r in free_rows:
                e_r = tuple(field.one if s == r else field.zero for s in range(1, N + 1))
                a_cols.append(span.residual(apply_nilpotent(jt, e_r, field)))
            a_rows = [[a_cols[c][r] for c in range(len(free_rows))] for r in range(N)]
            rhs = [field.zero - v for v in base_res]
            solution = solve_linear_system(a_rows, rhs, field)
            if solution is None:
                continue
            particular, null_basis = solution
            for coeffs in itertools.product(elements, repeat=len(null_basis)):
                values = list(particular)
                for c, nb in zip(coeffs, null_basis):
                    if c != field.zero:
                        values = [v + c * x for v, x in zip(values, nb)]
                col = list(base)
                for r, v in zip(free_rows, values):
                    col[r - 1] = v
                col_t = tuple(col)
                sub_span = SpanBasis(field)
                for c in cols:
                    sub_span.add(c)
                sub_span.add(col_t)
                extend(cols + [col_t], pivots + (piv,), sub_span)

    extend([], (), SpanBasis(field))
    return buckets


@dataclass(frozen=True)
class FqReport:
    q: int
    jt: JordanType
    total: int
    bucket_sizes: dict[tuple[int, ...], int]
    patterns_match: bool
    sizes_match: bool
    instantiation_match: bool
    sum_matches: bool

    @property
    def all_pass(self) -> bool:
        return (
            self.patterns_match
            and self.sizes_match
            and self.instantiation_match
            and self.sum_matches
        )


def cross_check_cells(cfg: FqConfig) -> FqReport:
    """Compare the brute-force buckets with the matching parameterization:
    same nonempty pivot patterns, bucket sizes q^{arcs}, templates filling
    each bucket exactly, and totals adding up.
    """
    from .cells import build_template, instantiate
    from .matchings import enumerate_matchings, matching_permutation

    buckets = enumerate_springer_flags(cfg)
    field = PrimeField(cfg.q)
    jt = cfg.jt
    matchings = enumerate_matchings(jt)
    expected_patterns = {}
    for m in matchings:
        prof = matching_permutation(m, jt)
        expected_patterns[prof.w] = m
    patterns_match = set(buckets) == set(expected_patterns)
    sizes_match = True
    instantiation_match = True
    for w, m in expected_patterns.items():
        bucket = buckets.get(w, [])
        if len(bucket) != cfg.q ** len(m):
            sizes_match = False
        template = build_template(m, jt)
        generated = set()
        for values in itertools.product(field.elements(), repeat=len(m)):
            params = dict(zip(m.arcs, values))
            generated.add(instantiate(template, params, field).rows)
        if generated != {g.rows for g in bucket}:
            instantiation_match = False
    total = sum(len(v) for v in buckets.values())
    sum_matches = total == sum(cfg.q ** len(m) for m in matchings)
    return FqReport(
        cfg.q,
        jt,
        total,
        {w: len(v) for w, v in buckets.items()},
        patterns_match,
        sizes_match,
        instantiation_match,
        sum_matches,
    )
