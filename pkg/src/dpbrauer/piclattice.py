"""Picard lattice of a blow-up of P^2 in n points.

Coordinates are taken in the basis ``H, E1, ..., En`` with intersection form
``diag(1, -1, ..., -1)``.  The canonical class is ``K = -3H + E1 + ... + En``
and the root lattice ``Q`` is its orthogonal complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import intlin

Vector = tuple[int, ...]

MIN_DEGREE = 1
MAX_DEGREE = 7


class UnsupportedDegreeError(ValueError):
    pass


class DimensionError(ValueError):
    pass


def pairing(a: Sequence[int], b: Sequence[int]) -> int:
    """Intersection number of two classes given in ``(H, E1, ..., En)`` coordinates."""
    if len(a) != len(b):
        raise DimensionError(f"vectors of length {len(a)} and {len(b)}")
    if not a:
        return 0
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


@dataclass(frozen=True)
class PicLattice:
    n: int

    def __post_init__(self):
        if not 2 <= self.n <= 8:
            raise UnsupportedDegreeError(f"number of blown-up points must be in [2, 8], got {self.n}")

    @property
    def degree(self) -> int:
        return 9 - self.n

    @property
    def dim(self) -> int:
        return self.n + 1

    @cached_property
    def form(self) -> intlin.Matrix:
        return [[(1 if i == 0 else -1) if i == j else 0 for j in range(self.dim)]
                for i in range(self.dim)]

    @cached_property
    def K(self) -> Vector:
        return (-3,) + (1,) * self.n

    @property
    def H(self) -> Vector:
        return self.basis_vector(0)

    def E(self, i: int) -> Vector:
        """The exceptional class ``Ei`` (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"E{i} does not exist for n={self.n}")
        return self.basis_vector(i)

    def basis_vector(self, k: int) -> Vector:
        return tuple(1 if j == k else 0 for j in range(self.dim))

    @property
    def basis_labels(self) -> list[str]:
        return ["H"] + [f"E{i}" for i in range(1, self.n + 1)]

    def vector(self, coords: Sequence[int]) -> Vector:
        v = tuple(int(c) for c in coords)
        if len(v) != self.dim:
            raise DimensionError(f"expected {self.dim} coordinates, got {len(v)}")
        return v

    def pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        if len(a) != self.dim or len(b) != self.dim:
            raise DimensionError(f"expected vectors of length {self.dim}")
        return pairing(a, b)

    def in_Q(self, v: Sequence[int]) -> bool:
        return self.pairing(v, self.K) == 0

    def format_vector(self, v: Sequence[int]) -> str:
        """Human-readable class, e.g. ``H-E1-E2-E3``."""
        terms = []
        for c, label in zip(v, self.basis_labels):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            terms.append(f"{sign}{mag}{label}")
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s

    @cached_property
    def simple_roots(self) -> tuple[Vector, ...]:
        return tuple(simple_roots_of_Q(self))

    @cached_property
    def q_basis(self) -> tuple[Vector, ...]:
        return tuple(q_basis(self))

    @property
    def root_rank(self) -> int:
        """Rank of the root system of Q (differs from rank Q only in degree 7)."""
        return len(self.simple_roots)

    @cached_property
    def _coordinate_inverse(self) -> intlin.Matrix:
        basis = extend_Q_basis_to_pic(self)
        # columns are basis vectors; inverse maps Pic coordinates to basis coefficients
        return intlin.unimodular_inverse(intlin.transpose(basis))

    def root_coordinates(self, v: Sequence[int]) -> list[int]:
        """Coefficients of ``v`` in the Z-basis :func:`q_basis` of ``Q``."""
        coeffs = intlin.matvec(self._coordinate_inverse, self.vector(v))
        if coeffs[-1] != 0:
            raise ValueError(f"{self.format_vector(v)} is not orthogonal to K")
        return coeffs[:-1]


def make_pic_lattice(degree: int) -> PicLattice:
    if not MIN_DEGREE <= degree <= MAX_DEGREE:
        raise UnsupportedDegreeError(
            f"degree must be between {MIN_DEGREE} and {MAX_DEGREE}, got {degree}")
    return PicLattice(n=9 - degree)


def simple_roots_of_Q(L: PicLattice) -> list[Vector]:
    """``H-E1-E2-E3`` followed by ``Ei - E(i+1)``; for ``n = 2`` only ``E1-E2``."""
    n = L.n
    roots = []
    if n >= 3:
        roots.append(tuple([1, -1, -1, -1] + [0] * (n - 3)))
    for i in range(1, n):
        v = [0] * (n + 1)
        v[i], v[i + 1] = 1, -1
        roots.append(tuple(v))
    return roots


def q_basis(L: PicLattice) -> list[Vector]:
    """A Z-basis of Q.

    For ``n >= 3`` this is the set of simple roots.  For ``n = 2`` the roots
    only span a rank-one sublattice, so ``H - 3E1`` (self-intersection -8)
    completes ``E1 - E2`` to a basis.
    """
    basis = simple_roots_of_Q(L)
    if L.n == 2:
        basis.append((1, -3, 0))
    return basis


def extend_Q_basis_to_pic(L: PicLattice) -> list[Vector]:
    """:func:`q_basis` followed by ``E1``; always a basis of Pic X."""
    return q_basis(L) + [L.E(1)]
