"""Property-suite runner behind the ``verify`` CLI command.

Each check exercises one documented invariant of the library at a size cap
and returns a count of instances checked.  Checks are independent; the
runner can fan them out over a thread pool capped by the
SPRINGER_CELLS_THREADS environment variable and merges results in check-id
order, so output is deterministic for a fixed seed.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .cells import (
    NOT_COORDINATE,
    apply_nilpotent,
    build_template,
    instantiate,
    prefix_span_basis,
    verify_canonical,
    verify_springer,
)
from .closure import (
    INFINITY,
    chi_embed,
    chi_split,
    closure_decomposition,
    phi_embed,
    swap_candidates,
    synthesize_limit_curve,
    valid_split_indices,
    verify_limit_curve,
)
from .cutting import ZERO, cut, cut_set, labeled_cut, piece_matrix
from .exact import (
    POLY_RING,
    QQ,
    Poly,
    canonical_reduce,
    leading_direction,
    minor_vector,
    pivot_pattern,
    rank,
)
from .fqoracle import FqConfig, cross_check_cells
from .matchings import (
    Arc,
    JordanType,
    T,
    ancestors,
    bt_word,
    enumerate_matchings,
    enumerate_words,
    j_functions,
    matching_permutation,
    parent,
    word_to_matching,
)
from .sampling import random_invertible_matrix, random_params, random_rational


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    passed: bool
    count: int
    detail: str = ""


def max_workers() -> int:
    env = os.environ.get("SPRINGER_CELLS_THREADS")
    if env:
        return max(1, int(env))
    return 1


def _jordan_types(max_n: int):
    for N in range(1, max_n + 1):
        for n in range(0, N + 1):
            yield JordanType(n, N)


def _proper_jordan_types(max_n: int):
    for N in range(2, max_n + 1):
        for n in range(1, N):
            yield JordanType(n, N)


# --- combinatorics ---------------------------------------------------------


def check_word_roundtrip(max_n: int, rng) -> CheckResult:
    count = 0
    for jt in _jordan_types(max_n):
        for word in enumerate_words(jt.N, jt.n):
            count += 1
            m = word_to_matching(word)
            if bt_word(m, jt) != word:
                return CheckResult("combinatorics.word_roundtrip", False, count, word)
    return CheckResult("combinatorics.word_roundtrip", True, count)


def check_matching_roundtrip(max_n: int, rng) -> CheckResult:
    count = 0
    for jt in _jordan_types(max_n):
        for m in enumerate_matchings(jt):
            count += 1
            if word_to_matching(bt_word(m, jt)).arcs != m.arcs:
                return CheckResult(
                    "combinatorics.matching_roundtrip", False, count, str(m.arcs)
                )
    return CheckResult("combinatorics.matching_roundtrip", True, count)


def check_counts(max_n: int, rng) -> CheckResult:
    count = 0
    for jt in _jordan_types(max_n):
        count += 1
        found = enumerate_matchings(jt)
        if len(found) != comb(jt.N, jt.n) or len(set(m.arcs for m in found)) != len(found):
            return CheckResult("combinatorics.count", False, count, str(jt))
    return CheckResult("combinatorics.count", True, count)


def check_ancestor_counts(max_n: int, rng) -> CheckResult:
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            prof = j_functions(m)
            for arc in m.arcs:
                count += 1
                starts = prof.jbeg[arc.init] + 1  # the arc itself starts here
                ends = prof.jend[arc.init]
                if len(ancestors(m, arc)) != starts - ends:
                    return CheckResult(
                        "combinatorics.ancestor_count", False, count, f"{m.arcs} {arc}"
                    )
    return CheckResult("combinatorics.ancestor_count", True, count)


def check_ancestor_shift(max_n: int, rng) -> CheckResult:
    """Consecutive arcs share ancestor chains after an offset of the gap
    between their start points minus two.
    """
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            for prev, arc in zip(m.arcs, m.arcs[1:]):
                if parent(m, arc) is None:
                    continue
                r = arc.init - prev.init - 2
                chain_prev = ancestors(m, prev)
                chain_cur = ancestors(m, arc)
                count += 1
                for j in range(1, len(chain_cur)):
                    if j + r >= len(chain_prev) or chain_cur[j] != chain_prev[j + r]:
                        return CheckResult(
                            "combinatorics.ancestor_shift",
                            False,
                            count,
                            f"{m.arcs} {arc}",
                        )
    return CheckResult("combinatorics.ancestor_shift", True, count)


def check_pivot_blocks_increase(max_n: int, rng) -> CheckResult:
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            count += 1
            w = matching_permutation(m, jt).w
            inv = {row: col for col, row in enumerate(w, start=1)}
            tops = [inv[r] for r in range(1, jt.n + 1)]
            bots = [inv[r] for r in range(jt.n + 1, jt.N + 1)]
            if tops != sorted(tops) or bots != sorted(bots):
                return CheckResult(
                    "combinatorics.pivot_blocks", False, count, str(m.arcs)
                )
    return CheckResult("combinatorics.pivot_blocks", True, count)


# --- geometry --------------------------------------------------------------


def check_canonical_reduce(max_n: int, rng) -> CheckResult:
    count = 0
    for _ in range(200):
        n = rng.randint(1, min(max_n, 8))
        g = random_invertible_matrix(n, rng)
        reduced = canonical_reduce(g, QQ)
        count += 1
        if canonical_reduce(reduced, QQ) != reduced:
            return CheckResult("geometry.canonical_idempotent", False, count, str(g))
        for i in range(1, n + 1):
            cols_g = [[g[r][j] for r in range(n)] for j in range(i)]
            cols_h = [[reduced[r][j] for r in range(n)] for j in range(i)]
            if rank(cols_g + cols_h, QQ) != i:
                return CheckResult(
                    "geometry.canonical_spans", False, count, f"n={n} i={i}"
                )
    return CheckResult("geometry.canonical_reduce", True, count)


def check_cell_membership(max_n: int, rng) -> CheckResult:
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            template = build_template(m, jt)
            for _ in range(20):
                g = instantiate(template, random_params(m.arcs, rng, nonzero=False))
                count += 1
                if not verify_canonical(g) or not verify_springer(g, jt):
                    return CheckResult(
                        "geometry.cell_membership", False, count, str(m.arcs)
                    )
    return CheckResult("geometry.cell_membership", True, count)


def check_cell_injectivity(max_n: int, rng) -> CheckResult:
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            if not m.arcs:
                continue
            template = build_template(m, jt)
            for _ in range(5):
                u = random_params(m.arcs, rng, nonzero=False)
                v = random_params(m.arcs, rng, nonzero=False)
                count += 1
                if u != v and instantiate(template, u).rows == instantiate(template, v).rows:
                    return CheckResult(
                        "geometry.cell_injectivity", False, count, str(m.arcs)
                    )
    return CheckResult("geometry.cell_injectivity", True, count)


def check_template_support(max_n: int, rng) -> CheckResult:
    """Lowest structurally nonzero row of an arc's column is the top offset
    plus the ancestor-chain length.
    """
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            template = build_template(m, jt)
            for arc in m.arcs:
                count += 1
                expected = template.top_offset[arc] + len(ancestors(m, arc))
                got = max(
                    (r for (r, c), _ in template.slots.items() if c == arc.init),
                    default=0,
                )
                if got != expected:
                    return CheckResult(
                        "geometry.template_support", False, count, f"{m.arcs} {arc}"
                    )
    return CheckResult("geometry.template_support", True, count)


def check_coordinate_prefixes(max_n: int, rng) -> CheckResult:
    """At indices with no arc overhead, the prefix span is a coordinate
    subspace independent of the parameters, with top part counted by T's.
    """
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            template = build_template(m, jt)
            word = bt_word(m, jt)
            indices = [i for i in valid_split_indices(m)] + [m.N]
            sets = {}
            for _ in range(10):
                g = instantiate(template, random_params(m.arcs, rng))
                for i in indices:
                    count += 1
                    got = prefix_span_basis(g, i)
                    if got is NOT_COORDINATE:
                        return CheckResult(
                            "geometry.coordinate_prefix", False, count, f"{m.arcs} i={i}"
                        )
                    top = sum(1 for r in got if r <= jt.n)
                    if top != word[:i].count(T) or sets.setdefault(i, got) != got:
                        return CheckResult(
                            "geometry.coordinate_prefix", False, count, f"{m.arcs} i={i}"
                        )
    return CheckResult("geometry.coordinate_prefix", True, count)


def check_nested_column_shift(max_n: int, rng) -> CheckResult:
    """For the j-th arc nested under a given arc, the j-fold shift of its
    column differs from the outer arc's column by something supported in
    the rows above the outer arc's variable block.
    """
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            template = build_template(m, jt)
            g = instantiate(template, random_params(m.arcs, rng))
            for arc in m.arcs:
                under = [b for b in m.arcs if arc.init < b.init and b.term < arc.term]
                under.sort(key=lambda b: b.init)
                r0 = template.top_offset[arc]
                for j, b in enumerate(under, start=1):
                    col = g.col(b.init)
                    for _ in range(j):
                        col = apply_nilpotent(jt, col)
                    diff = [x - y for x, y in zip(col, g.col(arc.init))]
                    count += 1
                    if any(diff[r] != 0 for r in range(r0, jt.N)):
                        return CheckResult(
                            "geometry.nested_shift", False, count, f"{m.arcs} {arc} {b}"
                        )
    return CheckResult("geometry.nested_shift", True, count)


def check_leading_direction_numeric(max_n: int, rng) -> CheckResult:
    """Exact leading directions agree with numeric evaluation at t = 1e6."""
    count = 0
    for jt in _proper_jordan_types(min(max_n, 6)):
        for m in enumerate_matchings(jt):
            if not m.arcs:
                continue
            template = build_template(m, jt)
            curve = {
                a: Poly([random_rational(rng), random_rational(rng), random_rational(rng)])
                for a in m.arcs
            }
            g = instantiate(template, curve, POLY_RING)
            for i in range(1, jt.N + 1):
                mv = minor_vector(g.rows, i, POLY_RING)
                exact = [float(x) for x in leading_direction(mv)]
                numeric = [p(1e6) for p in mv]
                lead = next(x for x in numeric if abs(x) > 0)
                numeric = [x / lead for x in numeric]
                count += 1
                err = max(
                    abs(a - b) / max(1.0, abs(a)) for a, b in zip(exact, numeric)
                )
                if err > 1e-6:
                    return CheckResult(
                        "geometry.leading_direction", False, count, f"{m.arcs} i={i}"
                    )
    return CheckResult("geometry.leading_direction", True, count)


# --- cutting ---------------------------------------------------------------


def check_cut_order_independence(max_n: int, rng) -> CheckResult:
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            arcs = list(m.arcs)
            for r in range(len(arcs) + 1):
                for combo in itertools.combinations(arcs, r):
                    base = cut_set(m, combo, jt)
                    orders = list(itertools.permutations(combo)) if r <= 3 else [
                        tuple(rng.sample(combo, r)) for _ in range(6)
                    ]
                    for order in orders:
                        count += 1
                        word = bt_word(m, jt)
                        letters = list(word)
                        for a in order:
                            i, j = a.init - 1, a.term - 1
                            letters[i], letters[j] = letters[j], letters[i]
                        if word_to_matching("".join(letters)).arcs != base.arcs:
                            return CheckResult(
                                "cutting.order_independence", False, count, str(m.arcs)
                            )
    return CheckResult("cutting.order_independence", True, count)


def check_unnesting(max_n: int, rng) -> CheckResult:
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            for arc in m.arcs:
                par = parent(m, arc)
                if par is None:
                    continue
                count += 1
                expected = set(m.arcs) - {arc, par}
                expected |= {Arc(par.init, arc.init), Arc(arc.term, par.term)}
                if set(cut(m, arc, jt).arcs) != expected:
                    return CheckResult("cutting.unnesting", False, count, f"{m.arcs} {arc}")
    return CheckResult("cutting.unnesting", True, count)


def check_cut_distinctness(max_n: int, rng) -> CheckResult:
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            seen = set()
            for r in range(len(m.arcs) + 1):
                for combo in itertools.combinations(m.arcs, r):
                    seen.add(cut_set(m, combo, jt).arcs)
            count += 1
            if len(seen) != 2 ** len(m.arcs):
                return CheckResult("cutting.distinctness", False, count, str(m.arcs))
    return CheckResult("cutting.distinctness", True, count)


def check_label_properties(max_n: int, rng) -> CheckResult:
    """Non-ZERO labels are exactly the uncut arcs; dimension is the number
    of uncut arcs; only a cut arc's parent repeats; any top-down order
    gives the same labels.
    """
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            for r in range(len(m.arcs) + 1):
                for combo in itertools.combinations(m.arcs, r):
                    piece = labeled_cut(m, combo, jt)
                    count += 1
                    nonzero = [l for l in piece.labels.values() if l is not ZERO]
                    if set(nonzero) != set(m.arcs) - set(combo):
                        return CheckResult(
                            "cutting.label_image", False, count, f"{m.arcs} {combo}"
                        )
                    if piece.dimension != len(m.arcs) - r:
                        return CheckResult(
                            "cutting.label_dimension", False, count, f"{m.arcs} {combo}"
                        )
                    repeats = {l for l in nonzero if nonzero.count(l) > 1}
                    # a label duplicates only when its arc was the parent of
                    # some cut arc at cut time: an uncut ancestor of the cut
                    allowed = set()
                    for a in combo:
                        allowed.update(
                            b for b in ancestors(m, a)[1:] if b not in combo
                        )
                    if not repeats <= allowed:
                        return CheckResult(
                            "cutting.label_multiplicity", False, count, f"{m.arcs} {combo}"
                        )
                    if r <= 3:
                        for order in itertools.permutations(combo):
                            try:
                                alt = labeled_cut(m, combo, jt, order=list(order))
                            except ValueError:
                                continue  # not a top-down order
                            if alt.labels != piece.labels:
                                return CheckResult(
                                    "cutting.label_order", False, count, f"{m.arcs} {combo}"
                                )
    return CheckResult("cutting.labels", True, count)


# --- closure ---------------------------------------------------------------


def check_swap_candidate_bijection(max_n: int, rng) -> CheckResult:
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            count += 1
            dec = closure_decomposition(m, jt)
            piece_words = {
                bt_word(dec.pieces[s].base, jt) for s in dec.subsets()
            }
            if piece_words != swap_candidates(m, jt):
                return CheckResult("closure.swap_bijection", False, count, str(m.arcs))
            bases = [dec.pieces[s].base.arcs for s in dec.subsets()]
            if len(set(bases)) != len(bases):
                return CheckResult("closure.disjointness", False, count, str(m.arcs))
    return CheckResult("closure.swap_bijection", True, count)


def check_chi_compatibility(max_n: int, rng) -> CheckResult:
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            word = bt_word(m, jt)
            for i in valid_split_indices(m):
                split = chi_split(m, jt, i)
                if bt_word(split.mL, split.jtL) != word[:i]:
                    return CheckResult("closure.chi_word", False, count, f"{m.arcs} i={i}")
                if bt_word(split.mR, split.jtR) != word[i:]:
                    return CheckResult("closure.chi_word", False, count, f"{m.arcs} i={i}")
                wL = matching_permutation(split.mL, split.jtL).w
                wR = matching_permutation(split.mR, split.jtR).w
                gL = instantiate(
                    build_template(split.mL, split.jtL),
                    random_params(split.mL.arcs, rng),
                )
                gR = instantiate(
                    build_template(split.mR, split.jtR),
                    random_params(split.mR.arcs, rng),
                )
                emb = chi_embed(gL, gR, split)
                count += 1
                if not verify_canonical(emb):
                    return CheckResult("closure.chi_canonical", False, count, f"{m.arcs}")
                # permutation part and full matrix both commute with pasting
                perm_emb = chi_embed(
                    instantiate(build_template(split.mL, split.jtL), {a: Fraction(0) for a in split.mL.arcs}),
                    instantiate(build_template(split.mR, split.jtR), {a: Fraction(0) for a in split.mR.arcs}),
                    split,
                )
                w_full = matching_permutation(m, jt).w
                if pivot_pattern(perm_emb.rows) != w_full:
                    return CheckResult("closure.chi_perm", False, count, f"{m.arcs} i={i}")
                params = {}
                for a in split.mL.arcs:
                    params[a] = gL[
                        build_template(split.mL, split.jtL).top_offset[a] + 1, a.init
                    ]
                full_params = {}
                for a in m.arcs:
                    if a.term <= i:
                        full_params[a] = params[a]
                    else:
                        shifted = Arc(a.init - i, a.term - i)
                        full_params[a] = gR[
                            build_template(split.mR, split.jtR).top_offset[shifted] + 1,
                            shifted.init,
                        ]
                direct = instantiate(build_template(m, jt), full_params)
                if direct.rows != emb.rows:
                    return CheckResult("closure.chi_square", False, count, f"{m.arcs} i={i}")
    return CheckResult("closure.chi_compatibility", True, count)


def check_phi_cell_law(max_n: int, rng) -> CheckResult:
    count = 0
    for N in range(4, max_n + 1, 2):
        jt = JordanType(N // 2, N)
        inner_jt = JordanType(N // 2 - 1, N - 2)
        for inner in enumerate_matchings(inner_jt):
            inner_word = bt_word(inner, inner_jt)
            g = instantiate(build_template(inner, inner_jt), random_params(inner.arcs, rng))
            for a in (random_rational(rng), INFINITY):
                out = phi_embed(a, g, jt)
                expected_word = (
                    "T" + inner_word + "B" if a is INFINITY else "B" + inner_word + "T"
                )
                expected_w = matching_permutation(
                    word_to_matching(expected_word), jt
                ).w
                count += 1
                if pivot_pattern(out.rows) != expected_w:
                    return CheckResult(
                        "closure.phi_cell_law", False, count, f"{inner.arcs} a={a}"
                    )
    return CheckResult("closure.phi_cell_law", True, count)


def check_certification(max_n: int, rng, targets_per_piece: int = 2) -> CheckResult:
    count = 0
    for jt in _proper_jordan_types(max_n):
        for m in enumerate_matchings(jt):
            for r in range(len(m.arcs) + 1):
                for combo in itertools.combinations(m.arcs, r):
                    piece = labeled_cut(m, combo, jt)
                    uncut = [a for a in m.arcs if a not in combo]
                    for _ in range(targets_per_piece if r else 1):
                        target = random_params(uncut, rng)
                        count += 1
                        curve = synthesize_limit_curve(m, jt, combo, target)
                        if not verify_limit_curve(m, jt, curve, piece, target):
                            return CheckResult(
                                "closure.certification", False, count, f"{m.arcs} {combo}"
                            )
    return CheckResult("closure.certification", True, count)


def check_numeric_agreement(max_n: int, rng) -> CheckResult:
    """Certified curves drive the numeric oracle below the membership
    threshold at their own evaluations.
    """
    import numpy as np

    from .numeric import MEMBERSHIP_THRESHOLD, curve_seed_points, numeric_infimum

    count = 0
    jt = JordanType(2, 4)
    for m in enumerate_matchings(jt):
        if not m.arcs:
            continue
        for r in range(1, len(m.arcs) + 1):
            for combo in itertools.combinations(m.arcs, r):
                piece = labeled_cut(m, combo, jt)
                uncut = [a for a in m.arcs if a not in combo]
                target = random_params(uncut, rng)
                curve = synthesize_limit_curve(m, jt, combo, target)
                flag = piece_matrix(piece, target)
                value = numeric_infimum(
                    m,
                    jt,
                    flag,
                    budget=8,
                    rng=np.random.default_rng(count),
                    seeds=curve_seed_points(curve, m.arcs),
                )
                count += 1
                if value >= MEMBERSHIP_THRESHOLD:
                    return CheckResult(
                        "closure.numeric_agreement", False, count, f"{m.arcs} {combo}"
                    )
    return CheckResult("closure.numeric_agreement", True, count)


def check_necessary_condition_suite(max_n: int, rng) -> CheckResult:
    from .closure import check_necessary_conditions

    count = 0
    for jt in _proper_jordan_types(min(max_n, 5)):
        for m in enumerate_matchings(jt):
            dec = closure_decomposition(m, jt)
            report = check_necessary_conditions(dec, rng, samples=3)
            count += len(report.entries)
            if not report.all_pass:
                return CheckResult(
                    "closure.necessary_conditions",
                    False,
                    count,
                    str(report.failures()[:1]),
                )
    return CheckResult("closure.necessary_conditions", True, count)


# --- finite-field oracle ---------------------------------------------------


def check_fq_oracle(max_n: int, rng) -> CheckResult:
    count = 0
    configs = [
        (q, JordanType(n, N))
        for q in (2, 3)
        for N in range(2, min(max_n, 5) + 1)
        for n in range(1, N)
    ]
    configs += [
        (2, JordanType(2, 4)),
        (2, JordanType(3, 6)),
        (2, JordanType(2, 6)),
        (3, JordanType(3, 6)),
    ]
    seen = set()
    for q, jt in configs:
        if (q, jt) in seen:
            continue
        seen.add((q, jt))
        count += 1
        report = cross_check_cells(FqConfig(q, jt))
        if not report.all_pass:
            return CheckResult("oracle.fq_cross_check", False, count, f"q={q} {jt}")
    return CheckResult("oracle.fq_cross_check", True, count)


SUITES: dict[str, list] = {
    "combinatorics": [
        check_word_roundtrip,
        check_matching_roundtrip,
        check_counts,
        check_ancestor_counts,
        check_ancestor_shift,
        check_pivot_blocks_increase,
    ],
    "geometry": [
        check_canonical_reduce,
        check_cell_membership,
        check_cell_injectivity,
        check_template_support,
        check_coordinate_prefixes,
        check_nested_column_shift,
        check_leading_direction_numeric,
    ],
    "cutting": [
        check_cut_order_independence,
        check_unnesting,
        check_cut_distinctness,
        check_label_properties,
    ],
    "closure": [
        check_swap_candidate_bijection,
        check_chi_compatibility,
        check_phi_cell_law,
        check_certification,
        check_necessary_condition_suite,
        check_numeric_agreement,
    ],
    "oracle": [
        check_fq_oracle,
    ],
}

DEFAULT_MAX_N = {
    "combinatorics": 12,
    "geometry": 8,
    "cutting": 10,
    "closure": 6,
    "oracle": 6,
}


def verify_suite(
    suite: str, max_n: int | None = None, seed: int = 0
) -> list[CheckResult]:
    names = list(SUITES) if suite == "all" else [suite]
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; options: {sorted(SUITES)} or all")
    results: list[CheckResult] = []
    jobs = []
    for name in names:
        cap = max_n if max_n is not None else DEFAULT_MAX_N[name]
        for check in SUITES[name]:
            jobs.append((check, cap))
    workers = max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(check, cap, random.Random(seed)) for check, cap in jobs
            ]
            results = [f.result() for f in futures]
    else:
        results = [check(cap, random.Random(seed)) for check, cap in jobs]
    return sorted(results, key=lambda r: r.check_id)
