"""Arcs, standard noncrossing matchings, {B,T}-words and pivot permutations.

A matching on {1..N} is a set of arcs with distinct endpoints, drawn above
the axis.  Standard noncrossing matchings with at most min(n, N-n) arcs are
in bijection with length-N words over {B, T} carrying exactly n letters T,
and with the permutations whose pivots increase within the top n rows and
within the bottom N-n rows.  Those permutations are the pivot patterns of
the nonempty Springer Schubert cells of the two-block nilpotent of Jordan
type (n, N-n).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb

from .errors import ArcNotInMatching, TooManyArcs

B = "B"
T = "T"


@dataclass(frozen=True, order=True)
class Arc:
    init: int
    term: int

    def __post_init__(self):
        if not (1 <= self.init < self.term):
            raise ValueError(f"arc needs 1 <= init < term, got ({self.init},{self.term})")

    def __repr__(self) -> str:
        return f"({self.init},{self.term})"


@dataclass(frozen=True)
class JordanType:
    """Two nilpotent Jordan blocks: top block size n, total dimension N.

    The nilpotent sends basis vector e_i to e_{i-1} except e_1 and e_{n+1},
    which it kills.
    """

    n: int
    N: int

    def __post_init__(self):
        if not (0 <= self.n <= self.N):
            raise ValueError(f"need 0 <= n <= N, got ({self.n},{self.N})")

    @property
    def bottom(self) -> int:
        return self.N - self.n

    def x_image_row(self, row: int) -> int | None:
        """Row index of X e_row, or None when X kills e_row."""
        if row in (1, self.n + 1):
            return None
        return row - 1


@dataclass(frozen=True)
class Matching:
    """Arcs on {1..N}, stored sorted by start point, endpoints disjoint."""

    N: int
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        arcs = tuple(sorted(self.arcs, key=lambda a: a.init))
        object.__setattr__(self, "arcs", arcs)
        ends: set[int] = set()
        for a in arcs:
            if a.term > self.N:
                raise ValueError(f"arc {a} exceeds ground set of size {self.N}")
            if a.init in ends or a.term in ends:
                raise ValueError(f"arc {a} reuses an endpoint")
            ends.update((a.init, a.term))

    def __len__(self) -> int:
        return len(self.arcs)

    def __iter__(self):
        return iter(self.arcs)

    def __contains__(self, arc: Arc) -> bool:
        return arc in self.arcs

    @cached_property
    def endpoint_map(self) -> dict[int, Arc]:
        out: dict[int, Arc] = {}
        for a in self.arcs:
            out[a.init] = a
            out[a.term] = a
        return out

    @cached_property
    def is_noncrossing(self) -> bool:
        for a, b in itertools.combinations(self.arcs, 2):
            # sorted by init, so a.init < b.init; crossing means b starts
            # under a and ends outside it
            if a.init < b.init < a.term < b.term:
                return False
        return True

    @cached_property
    def is_standard(self) -> bool:
        on_arc = set(self.endpoint_map)
        for a in self.arcs:
            for i in range(a.init + 1, a.term):
                if i not in on_arc:
                    return False
        return True

    def free_points(self) -> list[int]:
        on_arc = set(self.endpoint_map)
        return [i for i in range(1, self.N + 1) if i not in on_arc]


def matching(N: int, pairs) -> Matching:
    return Matching(N, tuple(Arc(i, j) for i, j in pairs))


def is_noncrossing(m: Matching) -> bool:
    return m.is_noncrossing


def is_standard(m: Matching) -> bool:
    return m.is_standard


def parent(m: Matching, arc: Arc) -> Arc | None:
    """The arc nested immediately above, if any."""
    if arc not in m:
        raise ArcNotInMatching(f"{arc} not in {m.arcs}")
    best = None
    for other in m.arcs:
        if other.init < arc.init and arc.term < other.term:
            if best is None or other.init > best.init:
                best = other
    return best


def ancestors(m: Matching, arc: Arc) -> list[Arc]:
    """The chain [arc, parent(arc), parent(parent(arc)), ...]."""
    chain = [arc]
    if arc not in m:
        raise ArcNotInMatching(f"{arc} not in {m.arcs}")
    current = arc
    while (p := parent(m, current)) is not None:
        chain.append(p)
        current = p
    return chain


def nesting_depth(m: Matching, arc: Arc) -> int:
    """Number of arcs strictly above: len(ancestors) - 1."""
    return len(ancestors(m, arc)) - 1


def ancestor_function(m: Matching) -> tuple[int, ...]:
    """Position form of the ancestor map: entry i is the start point of the
    arc immediately above position i, or 0.  Index 0 is padding.
    """
    anc = [0] * (m.N + 1)
    for i in range(1, m.N + 1):
        best = 0
        for a in m.arcs:
            if a.init < i < a.term and a.init > best:
                best = a.init
        anc[i] = best
    return tuple(anc)


@dataclass(frozen=True)
class PivotProfile:
    """Start/end/free counts to the left of each position, with the pivot
    permutation and {B,T}-word when a Jordan type is in play.

    The count tables are indexed 1..N (entry 0 unused).  At each i they
    count positions strictly before i, so they sum to i-1.
    """

    jbeg: tuple[int, ...]
    jend: tuple[int, ...]
    jnot: tuple[int, ...]
    w: tuple[int, ...] | None = None
    word: str | None = None


def j_functions(m: Matching) -> PivotProfile:
    jbeg = [0] * (m.N + 1)
    jend = [0] * (m.N + 1)
    jnot = [0] * (m.N + 1)
    starts = {a.init for a in m.arcs}
    ends = {a.term for a in m.arcs}
    for i in range(2, m.N + 1):
        p = i - 1
        jbeg[i] = jbeg[p] + (p in starts)
        jend[i] = jend[p] + (p in ends)
        jnot[i] = jnot[p] + (p not in starts and p not in ends)
    return PivotProfile(tuple(jbeg), tuple(jend), tuple(jnot))


def bt_word(m: Matching, jt: JordanType) -> str:
    """Arc starts map to B, arc ends to T; of the positions on no arc the
    first n-k get T and the rest B.
    """
    if m.N != jt.N:
        raise ValueError(f"matching on {m.N} points vs N={jt.N}")
    k = len(m)
    if k > jt.n or k > jt.bottom:
        raise TooManyArcs(f"{k} arcs exceed min({jt.n}, {jt.bottom})")
    letters = [""] * (m.N + 1)
    for a in m.arcs:
        letters[a.init] = B
        letters[a.term] = T
    free = m.free_points()
    for idx, i in enumerate(free):
        letters[i] = T if idx < jt.n - k else B
    return "".join(letters[1:])


def word_permutation(word: str, n: int) -> tuple[int, ...]:
    """Pivot rows by running count: the j-th T goes to row j, the j-th B to
    row n+j.  This reproduces the permutation matrices of the cells.
    """
    seen_t = seen_b = 0
    out = []
    for letter in word:
        if letter == T:
            seen_t += 1
            out.append(seen_t)
        else:
            seen_b += 1
            out.append(n + seen_b)
    if seen_t != n:
        raise ValueError(f"word {word!r} has {seen_t} T letters, expected {n}")
    return tuple(out)


def matching_permutation(m: Matching, jt: JordanType) -> PivotProfile:
    word = bt_word(m, jt)
    prof = j_functions(m)
    return PivotProfile(prof.jbeg, prof.jend, prof.jnot, word_permutation(word, jt.n), word)


def word_to_matching(word: str) -> Matching:
    """Inverse of bt_word: repeatedly pair adjacent BT and erase.

    Pairing each T with the nearest unmatched B to its left realizes the
    recursion in one stack scan; leftover letters are the free points and
    always read as T's followed by B's.
    """
    if set(word) - {B, T}:
        raise ValueError(f"word {word!r} has letters outside {{B,T}}")
    stack: list[int] = []
    arcs = []
    for pos, letter in enumerate(word, start=1):
        if letter == B:
            stack.append(pos)
        elif stack:
            arcs.append(Arc(stack.pop(), pos))
    return Matching(len(word), tuple(arcs))


def enumerate_words(N: int, n: int) -> list[str]:
    """All C(N,n) words with n T letters, lexicographically (B < T)."""
    words = []
    for t_positions in itertools.combinations(range(N), n):
        letters = [B] * N
        for p in t_positions:
            letters[p] = T
        words.append("".join(letters))
    return sorted(words)


def enumerate_matchings(jt: JordanType) -> list[Matching]:
    """Images of all C(N,n) words, in word-lexicographic order.

    The word map is a bijection, so the list has no repeats; these are
    exactly the matchings indexing nonempty cells for the Jordan type.
    """
    return [word_to_matching(w) for w in enumerate_words(jt.N, jt.n)]


def matching_count(jt: JordanType) -> int:
    return comb(jt.N, jt.n)
