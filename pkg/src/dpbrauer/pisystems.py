"""Enumeration of Pi-systems (candidate configurations of (-2)-curves) in Q.

Maximal-rank systems are generated from the simple roots of Q by repeated
elementary transformations (adjoin the lowest root of one component, drop one
of its simple roots).  Every Pi-system is a subset of a maximal-rank one, so
all configurations are obtained as subsets of the maximal-rank
representatives.  :func:`exhaustive_pisystems` is an independent brute-force
search over all roots used to validate that pipeline.
"""

from __future__ import annotations

import os
import random
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from . import intlin
from .brauer import brauer_group
from .intlin import AbelianGroup
from .piclattice import PicLattice, Vector, pairing
from .roots import (DynkinType, NotSimplyLacedError, _shape, all_roots,
                    classify, classify_component, components, lowest_root,
                    reflect)

WORKERS_ENV = "DPBRAUER_WORKERS"

InvariantKey = tuple[str, tuple[int, ...]]


class PiSystemError(ValueError):
    pass


@dataclass(frozen=True)
class PiSystem:
    """Linearly independent roots with pairwise intersections in {0, 1}.

    ``roots`` is stored sorted by coordinate tuple, so equal sets compare equal.
    """

    lattice: PicLattice
    roots: tuple[Vector, ...]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        roots = tuple(sorted(tuple(int(x) for x in r) for r in self.roots))
        object.__setattr__(self, "roots", roots)
        if self.check:
            validate(self.lattice, roots)

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    @property
    def dynkin_type(self) -> DynkinType:
        return classify(self.roots)

    @property
    def is_maximal_rank(self) -> bool:
        return len(self.roots) == self.lattice.root_rank


def validate(L: PicLattice, roots: Sequence[Sequence[int]]) -> None:
    for r in roots:
        if len(r) != L.dim:
            raise PiSystemError(f"vector of length {len(r)} in a lattice of rank {L.dim}")
        if pairing(r, r) != -2 or pairing(r, L.K) != 0:
            raise PiSystemError(f"{L.format_vector(r)} is not a root of Q")
    if len(set(map(tuple, roots))) != len(roots):
        raise PiSystemError("repeated root")
    for a, b in combinations(roots, 2):
        if pairing(a, b) not in (0, 1):
            raise PiSystemError(
                f"{L.format_vector(a)} and {L.format_vector(b)} meet with multiplicity {pairing(a, b)}")
    if roots and intlin.rank(roots) != len(roots):
        raise PiSystemError("roots are linearly dependent")


def invariant_key(S: PiSystem) -> InvariantKey:
    return str(S.dynkin_type), brauer_group(S).invariant_factors


@dataclass(frozen=True)
class ClassifiedSystem:
    pisystem: PiSystem
    dynkin_type: DynkinType
    brauer: AbelianGroup

    @property
    def invariant_key(self) -> InvariantKey:
        return str(self.dynkin_type), self.brauer.invariant_factors

    @property
    def sort_key(self) -> tuple:
        return self.dynkin_type.rank, str(self.dynkin_type), self.brauer.invariant_factors


def classify_system(S: PiSystem) -> ClassifiedSystem:
    return ClassifiedSystem(S, S.dynkin_type, brauer_group(S))


# ---------------------------------------------------------------------------
# maximal rank systems


def elementary_transformations(S: PiSystem) -> list[PiSystem]:
    """All systems obtained by one elementary transformation of ``S``."""
    if not S.is_maximal_rank:
        raise PiSystemError(
            f"elementary transformations need a maximal-rank system ({len(S)} of {S.lattice.root_rank} roots)")
    out: dict[tuple[Vector, ...], PiSystem] = {}
    for C in components(S.roots):
        low = lowest_root(S.lattice, C)
        for r in C:
            new = [x for x in S.roots if x != r] + [low]
            T = PiSystem(S.lattice, tuple(new))
            out.setdefault(T.roots, T)
    return list(out.values())


def _sub_torsion(L: PicLattice, roots: Sequence[Vector]) -> tuple[int, ...]:
    if not roots:
        return ()
    M = intlin.transpose([L.root_coordinates(r) for r in roots])
    return intlin.quotient_torsion(M).invariant_factors


def _fingerprint(S: PiSystem) -> tuple:
    """Weyl-invariant refinement of the invariant key used to prune the search.

    Adds, for every component, its type with the torsion of ``Q`` modulo that
    component and modulo the remaining components.
    """
    L = S.lattice
    parts = []
    for C in components(S.roots):
        rest = [r for r in S.roots if r not in C]
        parts.append((classify_component(C), _sub_torsion(L, C), _sub_torsion(L, rest)))
    return invariant_key(S), tuple(sorted(parts))


def _maximal_rank_representatives(L: PicLattice) -> list[PiSystem]:
    start = PiSystem(L, L.simple_roots)
    reps = [start]
    seen = {_fingerprint(start)}
    queue = deque([start])
    while queue:
        S = queue.popleft()
        for T in elementary_transformations(S):
            fp = _fingerprint(T)
            if fp not in seen:
                seen.add(fp)
                reps.append(T)
                queue.append(T)
    return reps


def maximal_rank_systems(L: PicLattice) -> list[PiSystem]:
    """One maximal-rank Pi-system per invariant key, sorted by key."""
    by_key: dict[InvariantKey, PiSystem] = {}
    for S in _maximal_rank_representatives(L):
        by_key.setdefault(invariant_key(S), S)
    return [by_key[k] for k in sorted(by_key)]


# ---------------------------------------------------------------------------
# all Pi-systems


def _subsystems_of(S: PiSystem) -> list[ClassifiedSystem]:
    out: dict[InvariantKey, ClassifiedSystem] = {}
    for k in range(1, len(S) + 1):
        for subset in combinations(S.roots, k):
            cs = classify_system(PiSystem(S.lattice, subset, check=False))
            out.setdefault(cs.invariant_key, cs)
    return list(out.values())


def _workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    return max(1, workers)


def all_pisystems(L: PicLattice, workers: int | None = None) -> list[ClassifiedSystem]:
    """Every Pi-system class (by invariant key), sorted by (rank, type, group).

    ``workers`` (default: the ``DPBRAUER_WORKERS`` environment variable, else 1)
    sets the number of processes; the result does not depend on it.
    """
    reps = _maximal_rank_representatives(L)
    n = _workers(workers)
    if n > 1 and len(reps) > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            chunks = list(pool.map(_subsystems_of, reps))
    else:
        chunks = [_subsystems_of(S) for S in reps]
    merged: dict[InvariantKey, ClassifiedSystem] = {}
    for chunk in chunks:
        for cs in chunk:
            merged.setdefault(cs.invariant_key, cs)
    return sorted(merged.values(), key=lambda cs: cs.sort_key)


# ---------------------------------------------------------------------------
# brute-force oracle


def root_orbits(roots: Sequence[Vector], generators: Sequence[Vector]) -> list[list[int]]:
    """Orbits (as sorted index lists) of ``roots`` under reflections in ``generators``."""
    index = {r: i for i, r in enumerate(roots)}
    orbit_of = [-1] * len(roots)
    orbits = []
    for i, r in enumerate(roots):
        if orbit_of[i] >= 0:
            continue
        orbit_of[i] = len(orbits)
        members, stack = [i], [r]
        while stack:
            x = stack.pop()
            for g in generators:
                j = index[reflect(x, g)]
                if orbit_of[j] < 0:
                    orbit_of[j] = len(orbits)
                    members.append(j)
                    stack.append(roots[j])
        orbits.append(sorted(members))
    return orbits


def _is_ade(adj_matrix: list[list[int]], chosen: list[int]) -> bool:
    pos = {v: k for k, v in enumerate(chosen)}
    adj = [[pos[w] for w in chosen if w != v and adj_matrix[v][w]] for v in chosen]
    seen = [False] * len(chosen)
    for s in range(len(chosen)):
        if seen[s]:
            continue
        comp, stack = [s], [s]
        seen[s] = True
        while stack:
            for w in adj[stack.pop()]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        local = {v: k for k, v in enumerate(comp)}
        try:
            _shape([[local[w] for w in adj[v]] for v in comp])
        except NotSimplyLacedError:
            return False
    return True


def exhaustive_pisystems(L: PicLattice, max_size: int | None = None) -> list[ClassifiedSystem]:
    """Brute-force classification of all Pi-systems with at most ``max_size`` roots.

    Backtracks over all roots of Q.  Since the invariant key is Weyl-invariant,
    the search fixes one member to a representative ``r0`` of its Weyl orbit
    and a second member to a representative of its orbit under the
    stabiliser of ``r0``; the remaining members are chosen in increasing order.
    """
    if max_size is None:
        max_size = L.root_rank
    roots = all_roots(L)
    N = len(roots)
    P = [[pairing(a, b) for b in roots] for a in roots]
    compatible = [[P[i][j] in (0, 1) and i != j for j in range(N)] for i in range(N)]
    edge = [[P[i][j] == 1 for j in range(N)] for i in range(N)]
    coords = [L.root_coordinates(r) for r in roots]

    found: dict[InvariantKey, ClassifiedSystem] = {}

    def record(chosen: list[int]) -> None:
        subset = tuple(roots[i] for i in chosen)
        S = PiSystem(L, subset, check=False)
        t = classify(subset)
        M = intlin.transpose([coords[i] for i in chosen])
        G = intlin.quotient_torsion(M).torsion
        key = (str(t), G.invariant_factors)
        if key not in found:
            validate(L, subset)
            found[key] = ClassifiedSystem(S, t, G)

    def extend(chosen: list[int], candidates: list[int]) -> None:
        record(chosen)
        if len(chosen) == max_size:
            return
        for pos, j in enumerate(candidates):
            trial = chosen + [j]
            if not _is_ade(edge, trial):
                continue
            rest = [k for k in candidates[pos + 1:] if compatible[j][k]]
            extend(trial, rest)

    if max_size < 1:
        return []
    for orbit in root_orbits(roots, L.simple_roots):
        i0 = orbit[0]
        record([i0])
        if max_size == 1:
            continue
        stabilizer = [roots[k] for k in range(N) if P[i0][k] == 0]
        others = [k for k in range(N) if compatible[i0][k]]
        for sub in root_orbits(roots, stabilizer):
            i1 = next((k for k in sub if compatible[i0][k]), None)
            if i1 is None:
                continue
            pair = [i0, i1]
            if not _is_ade(edge, pair):
                continue
            cand = [k for k in others if k != i1 and compatible[i1][k]]
            extend(pair, cand)
    return sorted(found.values(), key=lambda cs: cs.sort_key)


# ---------------------------------------------------------------------------
# Weyl group action


def apply_weyl_word(S: PiSystem, word: Iterable[Vector]) -> PiSystem:
    """Image of ``S`` under the product of reflections in ``word`` (applied left to right)."""
    word = list(word)
    images = []
    for r in S.roots:
        v = r
        for g in word:
            v = reflect(v, g)
        images.append(v)
    return PiSystem(S.lattice, tuple(images))


def weyl_perturb(S: PiSystem, seed: int, max_length: int = 24) -> PiSystem:
    """Apply a pseudo-random word of simple reflections of Q to every member."""
    rng = random.Random(seed)
    simple = S.lattice.simple_roots
    word = [rng.choice(simple) for _ in range(rng.randint(0, max_length))]
    return apply_weyl_word(S, word)
