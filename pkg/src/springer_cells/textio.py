"""Literal, JSON, LaTeX and DOT renderings of the core objects.

The matching literal is "(1,8)(2,3)(4,7)(5,6)": 1-based, sorted by start.
Matrices serialize as JSON arrays of strings like "5" or "-3/2";
polynomials as ascending coefficient arrays.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Mapping

from .cells import CellTemplate, FlagMatrix
from .closure import ClosureDecomposition
from .cutting import LabeledPiece, ZERO
from .exact import Poly
from .matchings import Arc, JordanType, Matching, matching_permutation

_ARC_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def format_matching(m: Matching) -> str:
    return "".join(f"({a.init},{a.term})" for a in m.arcs)


def parse_matching(text: str, N: int | None = None) -> Matching:
    text = text.strip()
    pairs = [(int(a), int(b)) for a, b in _ARC_RE.findall(text)]
    leftover = _ARC_RE.sub("", text).strip()
    if leftover:
        raise ValueError(f"unparsed matching text: {leftover!r}")
    top = max((b for _, b in pairs), default=0)
    if N is None:
        N = top
    elif N < top:
        raise ValueError(f"N={N} smaller than largest endpoint {top}")
    return Matching(N, tuple(Arc(a, b) for a, b in pairs))


def parse_arcs(text: str) -> list[tuple[int, int]]:
    return [(int(a), int(b)) for a, b in _ARC_RE.findall(text)]


def format_scalar(x) -> str:
    return str(x)


def parse_scalar(text: str) -> Fraction:
    return Fraction(text)


def matrix_json(g: FlagMatrix) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in g.rows]


def poly_json(p: Poly) -> list[str]:
    return [format_scalar(c) for c in p.coeffs]


def matching_json(m: Matching, jt: JordanType) -> dict:
    prof = matching_permutation(m, jt)
    return {
        "N": jt.N,
        "n": jt.n,
        "arcs": [[a.init, a.term] for a in m.arcs],
        "word": prof.word,
        "perm": list(prof.w),
    }


def template_json(ct: CellTemplate) -> dict:
    arc_index = {a: i for i, a in enumerate(ct.matching.arcs)}
    return {
        "N": ct.jt.N,
        "n": ct.jt.n,
        "matching": format_matching(ct.matching),
        "word": ct.word,
        "pivots": list(ct.w),
        "slots": [[r, c, arc_index[a]] for r, c, a in ct.slot_items()],
    }


def arc_letters(m: Matching) -> dict[Arc, str]:
    """Letters a, b, c, ... by start order; the labels used in diagrams."""
    names = "abcdefghijklmnopqrstuvwxyz"
    return {arc: names[i] for i, arc in enumerate(m.arcs)}


def piece_json(piece: LabeledPiece) -> dict:
    return {
        "cut": [[a.init, a.term] for a in sorted(piece.cut_arcs)],
        "base": format_matching(piece.base),
        "labels": {
            repr(arc): (None if lab is ZERO else repr(lab))
            for arc, lab in sorted(piece.labels.items())
        },
        "dimension": piece.dimension,
    }


def decomposition_json(dec: ClosureDecomposition) -> dict:
    return {
        "matching": format_matching(dec.matching),
        "N": dec.jt.N,
        "n": dec.jt.n,
        "pieces": [piece_json(dec.pieces[s]) for s in dec.subsets()],
    }


def piece_label_text(piece: LabeledPiece, letters: Mapping[Arc, str]) -> str:
    if not piece.base.arcs:
        return "point"
    parts = []
    for arc in piece.base.arcs:
        lab = piece.labels[arc]
        name = "0" if lab is ZERO else letters[lab]
        parts.append(f"{arc!r}↦{name}")
    return ", ".join(parts)


def decomposition_dot(dec: ClosureDecomposition) -> str:
    """Hasse-style DOT graph: nodes are pieces, edges single extra cuts."""
    letters = arc_letters(dec.matching)
    subsets = dec.subsets()
    ids = {s: f"p{i}" for i, s in enumerate(subsets)}
    lines = ["digraph closure {", '  rankdir="TB";', '  node [shape=box];']
    for s in subsets:
        piece = dec.pieces[s]
        base = format_matching(piece.base) or "(no arcs)"
        label = piece_label_text(piece, letters)
        lines.append(f'  {ids[s]} [label="{base}\\n{label}"];')
    for s in subsets:
        for arc in dec.matching.arcs:
            if arc in s:
                continue
            bigger = frozenset(s | {arc})
            lines.append(f'  {ids[s]} -> {ids[bigger]} [label="cut {letters[arc]}"];')
    lines.append("}")
    return "\n".join(lines)


def matrix_latex(g: FlagMatrix) -> str:
    body = " \\\\\n".join(" & ".join(format_scalar(x) for x in row) for row in g.rows)
    cols = "c" * g.N
    return f"\\left(\\begin{{array}}{{{cols}}}\n{body}\n\\end{{array}}\\right)"


def template_latex(ct: CellTemplate) -> str:
    letters = arc_letters(ct.matching)
    n = ct.jt.N
    cells = [["0"] * n for _ in range(n)]
    for col, piv in enumerate(ct.w, start=1):
        cells[piv - 1][col - 1] = "1"
    for (r, c), arc in ct.slots.items():
        cells[r - 1][c - 1] = letters[arc]
    body = " \\\\\n".join(" & ".join(row) for row in cells)
    return f"\\left(\\begin{{array}}{{{'c' * n}}}\n{body}\n\\end{{array}}\\right)"


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)
