"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import functools
import itertools
import random
import time
from fractions import Fraction

import numpy as np

from springer_cells.cells import build_template, cell_matrix, instantiate, verify_canonical, verify_springer
from springer_cells.closure import (
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
from springer_cells.cutting import ZERO, cut, cut_set, labeled_cut, piece_matrix
from springer_cells.errors import CurveNotFound
from springer_cells.fqoracle import FqConfig, cross_check_cells
from springer_cells.matchings import (
    Arc,
    JordanType,
    ancestor_function,
    bt_word,
    enumerate_matchings,
    enumerate_words,
    j_functions,
    matching,
    matching_permutation,
    word_to_matching,
)
from springer_cells.numeric import curve_seed_points, numeric_infimum
from springer_cells.sampling import random_params

from springer_cells.exact import pivot_pattern

from helpers import Q

JT8 = JordanType(4, 8)
JT4 = JordanType(2, 4)
M1 = matching(8, [(1, 8), (2, 3), (4, 7), (5, 6)])
M2 = matching(8, [(1, 2), (3, 4), (5, 6), (7, 8)])
M3 = matching(8, [(1, 4), (2, 3), (7, 8)])
NESTED4 = matching(4, [(1, 4), (2, 3)])
ROW4 = matching(4, [(1, 2), (3, 4)])


def criterion(number, description):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            try:
                fn()
            except BaseException:
                print(f"[criterion {number}] FAIL - {description}")
                raise
            print(f"[criterion {number}] PASS - {description}")

        return run

    return wrap


def perm_matrix(w):
    n = len(w)
    return Q([[1 if w[c] == r + 1 else 0 for c in range(n)] for r in range(n)])


@criterion(1, "paper-example golden values, exact, under one second")
def test_criterion_1_golden_examples():
    start = time.perf_counter()
    # pivot permutation matrices of the three displayed matchings
    assert perm_matrix(matching_permutation(M1, JT8).w) == Q(
        [
            [0, 0, 1, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0, 0, 0, 1],
            [1, 0, 0, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
        ]
    )
    assert perm_matrix(matching_permutation(M2, JT8).w) == Q(
        [
            [0, 1, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 1],
            [1, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 1, 0],
        ]
    )
    assert perm_matrix(matching_permutation(M3, JT8).w) == Q(
        [
            [0, 0, 1, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 1],
            [1, 0, 0, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 0, 1, 0],
        ]
    )
    # symbolic cell matrices at probe values a=2, b=3, c=5, d=7
    a, b, c, d = Fraction(2), Fraction(3), Fraction(5), Fraction(7)
    assert cell_matrix(M1, JT8, dict(zip(M1.arcs, (a, b, c, d)))).rows == Q(
        [
            [a, b, 1, 0, 0, 0, 0, 0],
            [0, a, 0, c, d, 1, 0, 0],
            [0, 0, 0, a, c, 0, 1, 0],
            [0, 0, 0, 0, a, 0, 0, 1],
            [1, 0, 0, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
        ]
    )
    assert cell_matrix(M2, JT8, dict(zip(M2.arcs, (a, b, c, d)))).rows == Q(
        [
            [a, 1, 0, 0, 0, 0, 0, 0],
            [0, 0, b, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, c, 1, 0, 0],
            [0, 0, 0, 0, 0, 0, d, 1],
            [1, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 1, 0],
        ]
    )
    # the third matching forces a pure pivot in column six
    g3 = cell_matrix(M3, JT8, dict(zip(M3.arcs, (a, b, c))))
    assert g3.rows == Q(
        [
            [a, b, 1, 0, 0, 0, 0, 0],
            [0, a, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, c, 1],
            [1, 0, 0, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 0, 1, 0],
        ]
    )
    assert g3.col(6) == tuple(Fraction(x) for x in (0, 0, 0, 0, 0, 0, 1, 0))

    # all eight matrices of the two small closures, at probe values
    left = closure_decomposition(ROW4, JT4)
    av, bv = Fraction(2), Fraction(3)
    vals = {Arc(1, 2): av, Arc(3, 4): bv}
    assert piece_matrix(left.piece([]), vals).rows == Q(
        [[av, 1, 0, 0], [0, 0, bv, 1], [1, 0, 0, 0], [0, 0, 1, 0]]
    )
    assert piece_matrix(left.piece([Arc(1, 2)]), vals).rows == Q(
        [[1, 0, 0, 0], [0, 0, bv, 1], [0, 1, 0, 0], [0, 0, 1, 0]]
    )
    assert piece_matrix(left.piece([Arc(3, 4)]), vals).rows == Q(
        [[av, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0], [0, 0, 0, 1]]
    )
    assert piece_matrix(left.piece(ROW4.arcs), vals).rows == Q(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    )
    right = closure_decomposition(NESTED4, JT4)
    vals2 = {Arc(1, 4): av, Arc(2, 3): bv}
    assert piece_matrix(right.piece([]), vals2).rows == Q(
        [[av, bv, 1, 0], [0, av, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    )
    assert piece_matrix(right.piece([Arc(1, 4)]), vals2).rows == Q(
        [[1, 0, 0, 0], [0, bv, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    )
    assert piece_matrix(right.piece([Arc(2, 3)]), vals2).rows == Q(
        [[av, 1, 0, 0], [0, 0, av, 1], [1, 0, 0, 0], [0, 0, 1, 0]]
    )
    assert piece_matrix(right.piece(NESTED4.arcs), vals2).rows == Q(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    )

    # count tables left of each position
    prof1 = j_functions(M1)
    assert prof1.jbeg[1:] == (0, 1, 2, 2, 3, 4, 4, 4)
    assert prof1.jend[1:] == (0, 0, 0, 1, 1, 1, 2, 3)
    assert prof1.jnot[1:] == (0,) * 8
    prof2 = j_functions(M2)
    assert prof2.jbeg[1:] == (0, 1, 1, 2, 2, 3, 3, 4)
    assert prof2.jend[1:] == (0, 0, 1, 1, 2, 2, 3, 3)
    assert prof2.jnot[1:] == (0,) * 8
    prof3 = j_functions(M3)
    assert prof3.jbeg[1:] == (0, 1, 2, 2, 2, 2, 2, 3)
    assert prof3.jend[1:] == (0, 0, 0, 1, 2, 2, 2, 2)
    assert prof3.jnot[1:] == (0, 0, 0, 0, 0, 1, 2, 2)

    # ancestor tables in position form
    assert ancestor_function(M1)[1:] == (0, 1, 1, 1, 4, 4, 1, 0)
    assert ancestor_function(M2)[1:] == (0,) * 8
    assert ancestor_function(M3)[1:] == (0, 1, 1, 0, 0, 0, 0, 0)

    # cutting examples
    assert cut(M1, Arc(4, 7), JT8).arcs == matching(8, [(1, 4), (2, 3), (5, 6), (7, 8)]).arcs
    assert cut(M1, Arc(5, 6), JT8).arcs == matching(8, [(1, 8), (2, 3), (4, 5), (6, 7)]).arcs
    assert cut_set(M1, [Arc(4, 7), Arc(5, 6)], JT8).arcs == matching(8, [(1, 4), (2, 3), (7, 8)]).arcs

    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"golden examples took {elapsed:.2f}s"


@criterion(2, "word/matching bijection and counts for all N up to 12, under 10 s")
def test_criterion_2_bijection_suite():
    from math import comb

    start = time.perf_counter()
    for N in range(2, 13):
        for n in range(1, N):
            jt = JordanType(n, N)
            words = enumerate_words(N, n)
            assert len(words) == comb(N, n)
            seen = set()
            for word in words:
                m = word_to_matching(word)
                assert bt_word(m, jt) == word
                seen.add(m.arcs)
            assert len(seen) == comb(N, n)
            for m in enumerate_matchings(jt):
                assert word_to_matching(bt_word(m, jt)).arcs == m.arcs
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"bijection suite took {elapsed:.2f}s"


@criterion(3, "20 random points of every cell with N up to 8 are canonical Springer flags")
def test_criterion_3_cell_membership():
    rng = random.Random(2024)
    failures = 0
    for N in range(2, 9):
        for n in range(1, N):
            jt = JordanType(n, N)
            for m in enumerate_matchings(jt):
                template = build_template(m, jt)
                for _ in range(20):
                    g = instantiate(template, random_params(m.arcs, rng, nonzero=False))
                    if not (verify_canonical(g) and verify_springer(g, jt)):
                        failures += 1
    assert failures == 0


@criterion(4, "the two Jordan-type-(2,2) closures decompose into the expected labeled pieces")
def test_criterion_4_small_closure_decompositions():
    left = closure_decomposition(ROW4, JT4)
    assert [left.pieces[s].dimension for s in left.subsets()] == [2, 1, 1, 0]
    assert left.piece([Arc(1, 2)]).base.arcs == (Arc(3, 4),)
    assert left.piece([Arc(1, 2)]).labels == {Arc(3, 4): Arc(3, 4)}
    assert left.piece([Arc(3, 4)]).base.arcs == (Arc(1, 2),)
    assert left.piece([Arc(3, 4)]).labels == {Arc(1, 2): Arc(1, 2)}
    bottom_left = left.piece(ROW4.arcs)
    assert bottom_left.base.arcs == (Arc(2, 3),)
    assert bottom_left.labels == {Arc(2, 3): ZERO}

    right = closure_decomposition(NESTED4, JT4)
    assert [right.pieces[s].dimension for s in right.subsets()] == [2, 1, 1, 0]
    assert right.piece([Arc(1, 4)]).base.arcs == (Arc(2, 3),)
    assert right.piece([Arc(1, 4)]).labels == {Arc(2, 3): Arc(2, 3)}
    diagonal = right.piece([Arc(2, 3)])
    assert diagonal.base.arcs == (Arc(1, 2), Arc(3, 4))
    assert diagonal.labels == {Arc(1, 2): Arc(1, 4), Arc(3, 4): Arc(1, 4)}
    assert right.piece(NESTED4.arcs).base.arcs == ()


@criterion(5, "cut algebra: order independence, unnesting, distinctness, dimension, N up to 10")
def test_criterion_5_cut_algebra():
    rng = random.Random(77)
    for N in range(2, 11):
        for n in range(1, N):
            jt = JordanType(n, N)
            for m in enumerate_matchings(jt):
                word = bt_word(m, jt)
                from springer_cells.matchings import parent

                for arc in m.arcs:
                    par = parent(m, arc)
                    if par is not None:
                        expected = set(m.arcs) - {arc, par}
                        expected |= {Arc(par.init, arc.init), Arc(arc.term, par.term)}
                        assert set(cut(m, arc, jt).arcs) == expected
                k = len(m.arcs)
                subsets = [
                    combo
                    for r in range(k + 1)
                    for combo in itertools.combinations(m.arcs, r)
                ]
                if len(subsets) > 64:
                    subsets = rng.sample(subsets, 64)
                seen_all = {
                    cut_set(m, combo, jt).arcs
                    for r in range(k + 1)
                    for combo in itertools.combinations(m.arcs, r)
                }
                assert len(seen_all) == 2**k
                for combo in subsets:
                    piece = labeled_cut(m, combo, jt)
                    assert piece.dimension == k - len(combo)
                    orders = (
                        list(itertools.permutations(combo))
                        if len(combo) <= 3
                        else [tuple(rng.sample(combo, len(combo))) for _ in range(6)]
                    )
                    for order in orders:
                        letters = list(word)
                        for a in order:
                            i, j = a.init - 1, a.term - 1
                            letters[i], letters[j] = letters[j], letters[i]
                        assert word_to_matching("".join(letters)).arcs == piece.base.arcs


@criterion(6, "every piece of every cell with N up to 6 certified by an exact limit curve")
def test_criterion_6_closure_certification():
    start = time.perf_counter()
    rng = random.Random(123)
    certified = 0
    for N in range(2, 7):
        for n in range(1, N):
            jt = JordanType(n, N)
            for m in enumerate_matchings(jt):
                for r in range(len(m.arcs) + 1):
                    for combo in itertools.combinations(m.arcs, r):
                        piece = labeled_cut(m, combo, jt)
                        uncut = [a for a in m.arcs if a not in combo]
                        for _ in range(5 if r else 1):
                            target = random_params(uncut, rng)
                            try:
                                curve = synthesize_limit_curve(m, jt, combo, target)
                            except CurveNotFound as exc:
                                raise AssertionError(f"no curve: {exc}") from exc
                            assert verify_limit_curve(m, jt, curve, piece, target)
                            certified += 1
    elapsed = time.perf_counter() - start
    assert certified >= 1149
    assert elapsed < 300.0, f"certification took {elapsed:.1f}s"


def _member_pairs():
    """(matching, jt, target flag, seeds) with the target certified reachable."""
    rng = random.Random(5)
    pairs = []
    configs = [
        (NESTED4, JT4, 2),
        (ROW4, JT4, 2),
        (matching(3, [(2, 3)]), JordanType(1, 3), 1),
        (matching(3, [(1, 2)]), JordanType(2, 3), 1),
    ]
    for m, jt, targets in configs:
        for r in range(len(m.arcs) + 1):
            for combo in itertools.combinations(m.arcs, r):
                piece = labeled_cut(m, combo, jt)
                uncut = [a for a in m.arcs if a not in combo]
                for _ in range(targets):
                    target = random_params(uncut, rng)
                    curve = synthesize_limit_curve(m, jt, combo, target)
                    assert verify_limit_curve(m, jt, curve, piece, target)
                    flag = piece_matrix(piece, target)
                    seeds = curve_seed_points(curve, m.arcs)
                    pairs.append((m, jt, flag, seeds))
    return pairs


def _non_member_pairs():
    """(matching, jt, excluded-cell point): word outside the swap candidates."""
    cases = [
        (ROW4, JT4, "TTBB"),
        (ROW4, JT4, "BBTT"),
        (NESTED4, JT4, "TBBT"),
        (NESTED4, JT4, "BTTB"),
        (matching(4, [(1, 2)]), JT4, "TTBB"),
        (matching(4, [(1, 2)]), JT4, "BBTT"),
        (matching(4, [(2, 3)]), JT4, "BTBT"),
        (matching(4, [(3, 4)]), JT4, "BTBT"),
        (matching(3, [(1, 2)]), JordanType(2, 3), "TTB"),
        (matching(3, [(2, 3)]), JordanType(2, 3), "BTT"),
    ]
    out = []
    for m, jt, word in cases:
        assert word not in swap_candidates(m, jt)
        flag = cell_matrix(
            word_to_matching(word), jt, {a: Fraction(1) for a in word_to_matching(word).arcs}
        )
        out.append((m, jt, flag))
    return out


@criterion(7, "numeric oracle: certified pairs below 1e-4, excluded pairs above 1e-1")
def test_criterion_7_numeric_cross_oracle():
    start = time.perf_counter()
    members = _member_pairs()
    assert len(members) >= 20
    for idx, (m, jt, flag, seeds) in enumerate(members[:20]):
        value = numeric_infimum(
            m, jt, flag, budget=50, rng=np.random.default_rng(idx), seeds=seeds
        )
        assert value < 1e-4, f"member pair {idx} stuck at {value}"
    for idx, (m, jt, flag) in enumerate(_non_member_pairs()):
        value = numeric_infimum(m, jt, flag, budget=50, rng=np.random.default_rng(100 + idx))
        assert value > 1e-1, f"non-member pair {idx} got too close: {value}"
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0, f"numeric oracle took {elapsed:.1f}s"


@criterion(8, "finite-field oracle: patterns, bucket sizes and totals for all listed types")
def test_criterion_8_fq_oracle():
    configs = [
        (q, n, N)
        for q in (2, 3)
        for n, N in [(1, 2), (2, 3), (2, 4), (3, 5), (3, 6)]
    ] + [(2, 2, 6)]
    for q, n, N in configs:
        jt = JordanType(n, N)
        report = cross_check_cells(FqConfig(q, jt))
        assert report.patterns_match, (q, n, N)
        assert report.sizes_match, (q, n, N)
        assert report.instantiation_match, (q, n, N)
        assert report.sum_matches, (q, n, N)
        if (n, N) == (2, 4):
            assert report.total == {2: 15, 3: 28}[q]


@criterion(9, "structure maps: splitting words and permutations, pasted cells, line embedding")
def test_criterion_9_structure_maps():
    rng = random.Random(31)
    for N in range(2, 9):
        for n in range(1, N):
            jt = JordanType(n, N)
            for m in enumerate_matchings(jt):
                word = bt_word(m, jt)
                w_full = matching_permutation(m, jt).w
                for i in valid_split_indices(m) + [m.N]:
                    split = chi_split(m, jt, i)
                    assert bt_word(split.mL, split.jtL) == word[:i]
                    assert bt_word(split.mR, split.jtR) == word[i:]
                    zeroL = {a: Fraction(0) for a in split.mL.arcs}
                    zeroR = {a: Fraction(0) for a in split.mR.arcs}
                    pasted = chi_embed(
                        cell_matrix(split.mL, split.jtL, zeroL),
                        cell_matrix(split.mR, split.jtR, zeroR),
                        split,
                    )
                    assert pivot_pattern(pasted.rows) == w_full
                    uL = random_params(split.mL.arcs, rng)
                    uR = random_params(split.mR.arcs, rng)
                    u = dict(uL)
                    u.update({Arc(a.init + i, a.term + i): v for a, v in uR.items()})
                    assert (
                        chi_embed(
                            cell_matrix(split.mL, split.jtL, uL),
                            cell_matrix(split.mR, split.jtR, uR),
                            split,
                        ).rows
                        == cell_matrix(m, jt, u).rows
                    )
    for N in (4, 6):
        jt = JordanType(N // 2, N)
        inner_jt = JordanType(N // 2 - 1, N - 2)
        for inner in enumerate_matchings(inner_jt):
            word = bt_word(inner, inner_jt)
            g = cell_matrix(inner, inner_jt, random_params(inner.arcs, rng))
            for a, expected in (
                (Fraction(5, 2), "B" + word + "T"),
                (INFINITY, "T" + word + "B"),
            ):
                out = phi_embed(a, g, jt)
                assert pivot_pattern(out.rows) == matching_permutation(
                    word_to_matching(expected), jt
                ).w
