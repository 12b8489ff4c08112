"""Roots of Q, Weyl reflections and ADE classification of root configurations.

All pairings use the (negative definite on Q) intersection form, so a root
``r`` has ``r.r = -2`` and two simple roots joined in a Dynkin diagram have
``r.s = +1``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .piclattice import PicLattice, Vector, pairing

FAMILIES = ("A", "D", "E")


class NotSimplyLacedError(ValueError):
    """The configuration is not a disjoint union of ADE Dynkin diagrams."""


def reflect(x: Sequence[int], r: Sequence[int]) -> Vector:
    """Reflection in the root ``r``: ``x + (x.r) r``."""
    c = pairing(x, r)
    if c == 0:
        return tuple(x)
    return tuple(a + c * b for a, b in zip(x, r))


def reflect_word(x: Sequence[int], word: Iterable[Sequence[int]]) -> Vector:
    """Apply reflections in ``word`` left to right."""
    v = tuple(x)
    for r in word:
        v = reflect(v, r)
    return v


def all_roots(L: PicLattice) -> tuple[Vector, ...]:
    """All ``v`` in Q with ``v.v = -2``, sorted by coordinate tuple."""
    return _all_roots(L.n)


@lru_cache(maxsize=None)
def _all_roots(n: int) -> tuple[Vector, ...]:
    simple = PicLattice(n).simple_roots
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for x in frontier:
            for r in simple:
                y = reflect(x, r)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


# ---------------------------------------------------------------------------
# Dynkin types


def _normalize_term(family: str, rank: int) -> list[tuple[str, int]]:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if rank < 1:
        raise ValueError(f"rank must be positive, got {family}{rank}")
    if family == "D" and rank == 2:
        return [("A", 1), ("A", 1)]
    if family == "D" and rank == 3:
        return [("A", 3)]
    if family == "D" and rank < 2:
        raise ValueError(f"invalid label D{rank}")
    if family == "E" and rank not in (6, 7, 8):
        raise ValueError(f"invalid label E{rank}")
    return [(family, rank)]


def _term_order(term: tuple[str, int]) -> tuple[int, str]:
    family, rank = term
    return rank, family


@dataclass(frozen=True)
class DynkinType:
    """A multiset of irreducible ADE components, e.g. ``2A1+A3``."""

    components: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        terms = []
        for family, rank in self.components:
            terms.extend(_normalize_term(family, int(rank)))
        object.__setattr__(self, "components", tuple(sorted(terms, key=_term_order)))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    @property
    def is_empty(self) -> bool:
        return not self.components

    def counts(self) -> list[tuple[int, str, int]]:
        """``(multiplicity, family, rank)`` in canonical order."""
        c = Counter(self.components)
        return [(c[t], t[0], t[1]) for t in sorted(c, key=_term_order)]

    def __str__(self) -> str:
        if not self.components:
            return "0"
        return "+".join(f"{m if m > 1 else ''}{f}{r}" for m, f, r in self.counts())

    def __add__(self, other: DynkinType) -> DynkinType:
        return DynkinType(self.components + other.components)


# ---------------------------------------------------------------------------
# components and shape recognition


def components(S: Sequence[Sequence[int]]) -> list[tuple[Vector, ...]]:
    """Connected components of the graph on ``S`` with an edge when ``r.s = 1``.

    Components keep the order of ``S`` and are listed by first appearance.
    """
    roots = [tuple(r) for r in S]
    parent = list(range(len(roots)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if pairing(roots[i], roots[j]) != 0:
                parent[find(i)] = find(j)
    groups: dict[int, list[Vector]] = {}
    for i, r in enumerate(roots):
        groups.setdefault(find(i), []).append(r)
    return [tuple(g) for g in groups.values()]


def _adjacency(C: Sequence[Sequence[int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in C]
    for i in range(len(C)):
        if pairing(C[i], C[i]) != -2:
            raise NotSimplyLacedError("member is not a (-2)-class")
        for j in range(i + 1, len(C)):
            p = pairing(C[i], C[j])
            if p == 1:
                adj[i].append(j)
                adj[j].append(i)
            elif p != 0:
                raise NotSimplyLacedError(f"pairing {p} between members")
    return adj


def _shape(adj: list[list[int]]) -> tuple[str, int]:
    """Classify a connected graph given by adjacency lists."""
    n = len(adj)
    edges = sum(len(a) for a in adj) // 2
    if edges != n - 1:
        raise NotSimplyLacedError("Dynkin graph contains a cycle")
    degrees = [len(a) for a in adj]
    branch = [v for v, d in enumerate(degrees) if d >= 3]
    if not branch:
        return "A", n
    if len(branch) > 1 or degrees[branch[0]] > 3:
        raise NotSimplyLacedError("Dynkin graph is not of finite ADE type")
    b = branch[0]
    arms = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while degrees[cur] == 2:
            prev, cur = cur, next(w for w in adj[cur] if w != prev)
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return "D", n
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return "E", n
    raise NotSimplyLacedError(f"arms {tuple(arms)} do not form a finite Dynkin diagram")


def classify_component(C: Sequence[Sequence[int]]) -> tuple[str, int]:
    if not C:
        raise ValueError("empty component")
    adj = _adjacency(C)
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(C):
        raise ValueError("component is not connected")
    return _shape(adj)


def classify(S: Sequence[Sequence[int]]) -> DynkinType:
    """Dynkin type of a configuration of roots."""
    return DynkinType(tuple(classify_component(C) for C in components(S)))


# ---------------------------------------------------------------------------
# abstract root systems (coefficient space)


def cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with nodes numbered along the longest path.

    For D and E the extra node hangs off node ``rank-3`` (D) or node 2 (E,
    Bourbaki-style arm of length one at the third node).
    """
    if (family == "D" and rank < 4) or _normalize_term(family, rank) != [(family, rank)]:
        raise ValueError(f"no Cartan matrix for label {family}{rank}")
    A = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def join(i, j):
        A[i][j] = A[j][i] = -1

    if family == "A":
        for i in range(rank - 1):
            join(i, i + 1)
    elif family == "D":
        for i in range(rank - 2):
            join(i, i + 1)
        join(rank - 3, rank - 1)
    else:
        for i in range(rank - 2):
            join(i, i + 1)
        join(2, rank - 1)
    return tuple(tuple(row) for row in A)


@lru_cache(maxsize=None)
def positive_root_coefficients(cartan: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    """Positive roots of a simply-laced Cartan matrix, as simple-root coefficients.

    Grows roots by height: for a positive root ``b`` other than ``a_i``,
    ``b + a_i`` is a root exactly when ``(b, a_i) = -1``.
    """
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for b in layer:
            for i in range(n):
                ip = sum(b[j] * cartan[j][i] for j in range(n))
                if ip == -1:
                    c = tuple(b[j] + (j == i) for j in range(n))
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
        layer = nxt
    return tuple(sorted(found, key=lambda c: (sum(c), c)))


def highest_root_coefficients(cartan: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    roots = positive_root_coefficients(cartan)
    top = max(sum(c) for c in roots)
    highest = [c for c in roots if sum(c) == top]
    if len(highest) != 1:
        raise AssertionError("highest root is not unique; Cartan matrix is not irreducible")
    return highest[0]


def _gram_cartan(C: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    # Cartan matrix = negated Gram matrix for (-2)-roots
    return tuple(tuple(-pairing(a, b) for b in C) for a in C)


def _combine(coeffs: Sequence[int], C: Sequence[Sequence[int]]) -> Vector:
    dim = len(C[0])
    return tuple(sum(c * r[k] for c, r in zip(coeffs, C)) for k in range(dim))


def subsystem_roots(L: PicLattice, C: Sequence[Sequence[int]]) -> tuple[Vector, ...]:
    """All roots of the irreducible subsystem with simple roots ``C``, sorted."""
    classify_component(C)
    pos = positive_root_coefficients(_gram_cartan(C))
    out = set()
    for c in pos:
        v = _combine(c, C)
        out.add(v)
        out.add(tuple(-x for x in v))
    return tuple(sorted(out))


def lowest_root(L: PicLattice, C: Sequence[Sequence[int]]) -> Vector:
    """Negative of the highest root of the subsystem with simple roots ``C``."""
    classify_component(C)
    top = highest_root_coefficients(_gram_cartan(C))
    return tuple(-x for x in _combine(top, C))


def lowest_root_coefficients(C: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return tuple(-c for c in highest_root_coefficients(_gram_cartan(C)))
