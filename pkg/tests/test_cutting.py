"""Cutting arcs, label propagation and cut-cell matrices."""

import itertools
import random
from fractions import Fraction

import pytest

from springer_cells.cutting import (
    ZERO,
    contravariant_order,
    cut,
    cut_set,
    labeled_cut,
    piece_matrix,
)
from springer_cells.errors import ArcNotInMatching, MissingParameter
from springer_cells.matchings import (
    Arc,
    JordanType,
    ancestors,
    bt_word,
    enumerate_matchings,
    matching,
    parent,
    word_to_matching,
)

from helpers import Q

JT8 = JordanType(4, 8)
JT4 = JordanType(2, 4)
M1 = matching(8, [(1, 8), (2, 3), (4, 7), (5, 6)])
NESTED4 = matching(4, [(1, 4), (2, 3)])
ROW4 = matching(4, [(1, 2), (3, 4)])


def test_cut_examples():
    assert cut(M1, Arc(4, 7), JT8).arcs == matching(8, [(1, 4), (2, 3), (5, 6), (7, 8)]).arcs
    assert cut(M1, Arc(5, 6), JT8).arcs == matching(8, [(1, 8), (2, 3), (4, 5), (6, 7)]).arcs
    assert cut(matching(2, [(1, 2)]), Arc(1, 2), JordanType(1, 2)).arcs == ()
    with pytest.raises(ArcNotInMatching):
        cut(M1, Arc(2, 5), JT8)


def test_cut_set_examples():
    assert cut_set(M1, [Arc(4, 7), Arc(5, 6)], JT8).arcs == matching(8, [(1, 4), (2, 3), (7, 8)]).arcs
    assert cut_set(M1, [], JT8).arcs == M1.arcs
    assert cut_set(NESTED4, NESTED4.arcs, JT4).arcs == ()


def test_labeled_cut_examples():
    piece = labeled_cut(NESTED4, [Arc(2, 3)], JT4)
    assert piece.base.arcs == (Arc(1, 2), Arc(3, 4))
    assert piece.labels == {Arc(1, 2): Arc(1, 4), Arc(3, 4): Arc(1, 4)}

    point = labeled_cut(ROW4, ROW4.arcs, JT4)
    assert point.base.arcs == (Arc(2, 3),)
    assert point.labels == {Arc(2, 3): ZERO}

    same = labeled_cut(M1, [], JT8)
    assert same.base.arcs == M1.arcs
    assert same.labels == {a: a for a in M1.arcs}


def test_piece_matrix_examples():
    piece = labeled_cut(NESTED4, [Arc(2, 3)], JT4)
    g = piece_matrix(piece, {Arc(1, 4): Fraction(5)})
    assert g.rows == Q([[5, 1, 0, 0], [0, 0, 5, 1], [1, 0, 0, 0], [0, 0, 1, 0]])

    point = labeled_cut(ROW4, ROW4.arcs, JT4)
    assert piece_matrix(point, {}).rows == Q(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    )

    whole = labeled_cut(NESTED4, [], JT4)
    vals = {Arc(1, 4): Fraction(2), Arc(2, 3): Fraction(7)}
    assert piece_matrix(whole, vals).rows == Q(
        [[2, 7, 1, 0], [0, 2, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    )
    with pytest.raises(MissingParameter):
        piece_matrix(whole, {Arc(1, 4): Fraction(2)})


def _all_matchings(max_n):
    for N in range(2, max_n + 1):
        for n in range(1, N):
            jt = JordanType(n, N)
            for m in enumerate_matchings(jt):
                yield jt, m


def test_order_independence_of_letter_cuts():
    for jt, m in _all_matchings(7):
        word = bt_word(m, jt)
        for r in range(len(m.arcs) + 1):
            for combo in itertools.combinations(m.arcs, r):
                expected = cut_set(m, combo, jt).arcs
                for order in itertools.permutations(combo):
                    letters = list(word)
                    for a in order:
                        i, j = a.init - 1, a.term - 1
                        letters[i], letters[j] = letters[j], letters[i]
                    assert word_to_matching("".join(letters)).arcs == expected


def test_unnesting_identity():
    for jt, m in _all_matchings(8):
        for arc in m.arcs:
            par = parent(m, arc)
            if par is None:
                continue
            expected = set(m.arcs) - {arc, par}
            expected |= {Arc(par.init, arc.init), Arc(arc.term, par.term)}
            assert set(cut(m, arc, jt).arcs) == expected


def test_cut_subsets_distinct():
    for jt, m in _all_matchings(8):
        seen = {
            cut_set(m, combo, jt).arcs
            for r in range(len(m.arcs) + 1)
            for combo in itertools.combinations(m.arcs, r)
        }
        assert len(seen) == 2 ** len(m.arcs)


def test_label_image_and_dimension():
    for jt, m in _all_matchings(7):
        for r in range(len(m.arcs) + 1):
            for combo in itertools.combinations(m.arcs, r):
                piece = labeled_cut(m, combo, jt)
                nonzero = [l for l in piece.labels.values() if l is not ZERO]
                assert set(nonzero) == set(m.arcs) - set(combo)
                assert piece.dimension == len(m.arcs) - r
                repeats = {l for l in nonzero if nonzero.count(l) > 1}
                allowed = set()
                for a in combo:
                    allowed.update(b for b in ancestors(m, a)[1:] if b not in combo)
                assert repeats <= allowed


def test_labels_agree_across_topdown_orders():
    rng = random.Random(1)
    for jt, m in _all_matchings(6):
        for r in range(len(m.arcs) + 1):
            for combo in itertools.combinations(m.arcs, r):
                piece = labeled_cut(m, combo, jt)
                for order in itertools.permutations(combo):
                    try:
                        alt = labeled_cut(m, combo, jt, order=list(order))
                    except ValueError:
                        continue  # not top-down
                    assert alt.labels == piece.labels
                    assert alt.base.arcs == piece.base.arcs


def test_contravariant_order_rejects_bottom_up():
    with pytest.raises(ValueError):
        labeled_cut(NESTED4, NESTED4.arcs, JT4, order=[Arc(2, 3), Arc(1, 4)])
    order = contravariant_order(NESTED4, NESTED4.arcs)
    assert order == [Arc(1, 4), Arc(2, 3)]
