"""Cutting arcs: the unnesting operation and its label bookkeeping.

Cutting an arc swaps the letters at its two endpoints in the {B,T}-word and
rereads the word as a matching.  An arc with a parent gets unnested from it;
the two replacement arcs share an endpoint with the parent and inherit the
parent's label, so a cut remembers which variable used to sit on top.  Arcs
created against free points (or against remnants of fully cut arcs) are
labeled ZERO.  Cutting a subset A of M this way carves out a subspace of
dimension |M| - |A| inside the cell of the cut matching.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .cells import FlagMatrix, build_template, instantiate
from .errors import ArcNotInMatching, MissingParameter
from .exact import QQ
from .matchings import (
    Arc,
    JordanType,
    Matching,
    bt_word,
    nesting_depth,
    parent,
    word_to_matching,
)


class _ZeroLabel:
    """Distinguished label for arcs carrying the constant 0."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO"


ZERO = _ZeroLabel()

Label = object  # Arc | ZERO


@dataclass(frozen=True)
class LabeledPiece:
    """A cut matching together with the label of each of its arcs.

    Labels land in the uncut arcs of the original matching, plus ZERO; the
    non-ZERO labels hit exactly the uncut arcs, so the piece parameterizes
    an (|M| - |A|)-dimensional affine subspace of the cut matching's cell.
    """

    base: Matching
    labels: Mapping[Arc, Label]
    origin: Matching
    cut_arcs: frozenset[Arc]
    jt: JordanType

    @property
    def dimension(self) -> int:
        return len({l for l in self.labels.values() if l is not ZERO})


def _swap_letters(word: str, arcs: Iterable[Arc]) -> str:
    letters = list(word)
    for a in arcs:
        i, j = a.init - 1, a.term - 1
        letters[i], letters[j] = letters[j], letters[i]
    return "".join(letters)


def cut(m: Matching, arc: Arc, jt: JordanType) -> Matching:
    if arc not in m:
        raise ArcNotInMatching(f"{arc} not in {m.arcs}")
    return word_to_matching(_swap_letters(bt_word(m, jt), [arc]))


def cut_set(m: Matching, arcs: Iterable[Arc], jt: JordanType) -> Matching:
    """Swap every endpoint pair at once; order cannot matter because the
    endpoint pairs are disjoint.
    """
    arcs = list(arcs)
    for a in arcs:
        if a not in m:
            raise ArcNotInMatching(f"{a} not in {m.arcs}")
    return word_to_matching(_swap_letters(bt_word(m, jt), arcs))


def contravariant_order(m: Matching, arcs: Iterable[Arc]) -> list[Arc]:
    """Deterministic top-down order: descending nesting depth, then start.

    Any order that never cuts an arc before one nested above it yields the
    same labels; fixing this one makes label maps reproducible.
    """
    return sorted(arcs, key=lambda a: (nesting_depth(m, a), a.init))


def is_contravariant(m: Matching, order: Sequence[Arc]) -> bool:
    for i, a in enumerate(order):
        for b in order[i + 1 :]:
            # b cut after a must not be nested above a
            if b.init < a.init and a.term < b.term:
                return False
    return True


def labeled_cut(
    m: Matching,
    arcs: Iterable[Arc],
    jt: JordanType,
    order: Sequence[Arc] | None = None,
) -> LabeledPiece:
    """Cut the arcs one at a time, top down, propagating labels.

    After each single cut, surviving arcs keep their labels; the two arcs
    replacing a cut arc and its parent inherit the parent's label; any arc
    created by cutting a parentless arc is labeled ZERO.
    """
    cut_arcs = frozenset(arcs)
    for a in cut_arcs:
        if a not in m:
            raise ArcNotInMatching(f"{a} not in {m.arcs}")
    if order is None:
        order = contravariant_order(m, cut_arcs)
    else:
        order = list(order)
        if set(order) != set(cut_arcs) or not is_contravariant(m, order):
            raise ValueError("order must list the cut arcs top-down")
    current = m
    labels: dict[Arc, Label] = {a: a for a in m.arcs}
    for arc in order:
        assert arc in current, "top-down cutting keeps the next arc intact"
        par = parent(current, arc)
        nxt = cut(current, arc, jt)
        new_labels: dict[Arc, Label] = {}
        for b in nxt.arcs:
            if b in current:
                new_labels[b] = labels[b]
            elif par is not None and (b.init == par.init or b.term == par.term):
                new_labels[b] = labels[par]
            else:
                new_labels[b] = ZERO
        current, labels = nxt, new_labels
    return LabeledPiece(current, labels, m, cut_arcs, jt)


def piece_params(piece: LabeledPiece, values: Mapping[Arc, object], ring=QQ) -> dict[Arc, object]:
    """Parameter vector for the cut matching: label values, ZERO -> 0."""
    uncut = [a for a in piece.origin.arcs if a not in piece.cut_arcs]
    missing = [a for a in uncut if a not in values]
    if missing:
        raise MissingParameter(f"no value for uncut arcs {missing}")
    out: dict[Arc, object] = {}
    for b in piece.base.arcs:
        lab = piece.labels[b]
        out[b] = ring.zero if lab is ZERO else values[lab]
    return out


def piece_matrix(piece: LabeledPiece, values: Mapping[Arc, object], ring=QQ) -> FlagMatrix:
    """Instantiate the cut matching's template at the labeled values."""
    template = build_template(piece.base, piece.jt)
    return instantiate(template, piece_params(piece, values, ring), ring)
