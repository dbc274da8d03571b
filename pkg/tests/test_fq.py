"""Finite-field brute-force oracle and its cross-checks."""

import pytest

from springer_cells.errors import Infeasible
from springer_cells.fqoracle import (
    FqConfig,
    cross_check_cells,
    enumerate_springer_flags,
    full_flag_count,
)
from springer_cells.matchings import (
    JordanType,
    enumerate_matchings,
    matching,
    matching_permutation,
)


def test_full_flag_counts():
    assert full_flag_count(2, 4) == 315
    assert full_flag_count(2, 1) == 1
    assert full_flag_count(3, 3) == 52  # 1 * 4 * 13


def test_springer_count_q2_type_2_4():
    buckets = enumerate_springer_flags(FqConfig(2, JordanType(2, 4)))
    assert sum(len(v) for v in buckets.values()) == 15
    assert sorted(len(v) for v in buckets.values()) == [1, 2, 2, 2, 4, 4]
    # the fully nested cell has q^2 points
    w = matching_permutation(matching(4, [(1, 4), (2, 3)]), JordanType(2, 4)).w
    assert len(buckets[w]) == 4


def test_springer_count_q3_type_2_4():
    rep = cross_check_cells(FqConfig(3, JordanType(2, 4)))
    assert rep.total == 28  # 1 + 3*3 + 2*9
    assert rep.all_pass


def test_projective_line_type():
    # with two size-one blocks the nilpotent is zero and every flag counts
    buckets = enumerate_springer_flags(FqConfig(2, JordanType(1, 2)))
    assert sum(len(v) for v in buckets.values()) == 3
    assert sorted(len(v) for v in buckets.values()) == [1, 2]


def test_single_point_fiber():
    buckets = enumerate_springer_flags(FqConfig(2, JordanType(0, 2)))
    assert sum(len(v) for v in buckets.values()) == 1


def test_cross_checks_small_types():
    for q in (2, 3):
        for n, N in [(1, 2), (2, 3), (1, 3), (2, 4)]:
            rep = cross_check_cells(FqConfig(q, JordanType(n, N)))
            assert rep.all_pass, (q, n, N)
            assert rep.total == sum(
                q ** len(m) for m in enumerate_matchings(JordanType(n, N))
            )


def test_feasibility_guard():
    with pytest.raises(Infeasible):
        enumerate_springer_flags(FqConfig(2, JordanType(4, 8)))
    with pytest.raises(ValueError):
        FqConfig(7, JordanType(2, 4))
