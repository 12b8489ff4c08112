"""Brauer groups of singular del Pezzo surfaces from their (-2)-configurations.

Three independent routes are provided and are expected to agree:

* :func:`brauer_group` -- torsion of ``Q/E`` (via ``Ext^1(Q/E, Z)``);
* :func:`brauer_via_cokernel` -- cokernel of ``Pic X -> E*`` given by the
  intersection pairing;
* :func:`nonsingular_locus_picard_torsion` -- torsion of ``Pic X / E``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from . import intlin
from .intlin import AbelianGroup
from .piclattice import PicLattice, make_pic_lattice, pairing
from .roots import (DynkinType, cartan_matrix, classify, components,
                    highest_root_coefficients)

if TYPE_CHECKING:
    from .pisystems import PiSystem

# Sub-root systems that are valid in the lattice but are not configurations
# of (-2)-curves on an actual del Pezzo surface (Urabe).
URABE_EXCLUSIONS: dict[int, frozenset[str]] = {
    2: frozenset({"7A1"}),
    1: frozenset({"4A1+D4", "7A1", "8A1"}),
}
URABE_CAVEAT = "realizability established in characteristic 0; positive characteristic not settled"


class InconsistencyError(RuntimeError):
    """Two computations that must agree did not."""


class InvariantViolationError(ValueError):
    pass


def _check_in_Q(L: PicLattice, roots: Sequence[Sequence[int]]) -> None:
    for r in roots:
        if len(r) != L.dim or L.pairing(r, L.K) != 0 or L.pairing(r, r) != -2:
            raise InvariantViolationError(f"{L.format_vector(r)} is not a root of Q")


def brauer_group(S: PiSystem) -> AbelianGroup:
    L = S.lattice
    _check_in_Q(L, S.roots)
    if not S.roots:
        return AbelianGroup()
    # columns: the roots of S in the simple-root basis of Q
    M = intlin.transpose([L.root_coordinates(r) for r in S.roots])
    return intlin.ext1_to_Z(intlin.quotient_torsion(M))


def pairing_matrix(L: PicLattice, roots: Sequence[Sequence[int]]) -> intlin.Matrix:
    """Rows ``(r.H, r.E1, ..., r.En)``: the map ``Pic X -> E*`` in dual coordinates."""
    basis = [L.basis_vector(k) for k in range(L.dim)]
    return [[pairing(r, b) for b in basis] for r in roots]


def brauer_via_cokernel(S: PiSystem) -> AbelianGroup:
    L = S.lattice
    _check_in_Q(L, S.roots)
    if not S.roots:
        return AbelianGroup()
    G = intlin.cokernel(pairing_matrix(L, S.roots))
    if G.free_rank:
        raise InconsistencyError("pairing map onto E* has infinite cokernel")
    return G


def nonsingular_locus_picard_torsion(S: PiSystem) -> AbelianGroup:
    L = S.lattice
    if not S.roots:
        return AbelianGroup()
    return intlin.quotient_torsion(intlin.transpose(S.roots)).torsion


def local_brauer(L: PicLattice, C: Sequence[Sequence[int]]) -> AbelianGroup:
    """Local group at the singular point whose exceptional curves are ``C``."""
    if not C:
        raise ValueError("empty component")
    if len(components(C)) != 1:
        raise ValueError("local_brauer needs a connected configuration")
    _check_in_Q(L, C)
    return intlin.cokernel(pairing_matrix(L, C))


def is_locally_trivial(S: PiSystem) -> bool:
    return all(local_brauer(S.lattice, C).is_trivial for C in components(S.roots))


def _prime_factors(n: int) -> set[int]:
    out, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def bad_primes(family: str, rank: int) -> frozenset[int]:
    """Primes among the highest-root coefficients of the given irreducible type."""
    primes: set[int] = set()
    for c in highest_root_coefficients(cartan_matrix(family, rank)):
        primes |= _prime_factors(c)
    return frozenset(primes)


def ambient_type(L: PicLattice) -> DynkinType:
    return classify(L.simple_roots)


def ambient_bad_primes(L: PicLattice) -> frozenset[int]:
    primes: set[int] = set()
    for family, rank in ambient_type(L).components:
        primes |= bad_primes(family, rank)
    return frozenset(primes)


def discriminant_order(family: str, rank: int) -> int:
    return abs(intlin.determinant(cartan_matrix(family, rank)))


def is_excluded(degree: int, type_string: str) -> bool:
    return type_string in URABE_EXCLUSIONS.get(degree, ())


@dataclass(frozen=True)
class BrauerResult:
    degree: int
    type: DynkinType
    group: AbelianGroup
    group_via_cokernel: AbelianGroup
    locally_trivial: bool
    excluded: bool
    embedding_index: int = 0
    caveat: str = ""

    def __post_init__(self):
        if self.group != self.group_via_cokernel:
            raise InconsistencyError(
                f"{self.type}: {self.group} from Q/E but {self.group_via_cokernel} from Pic X -> E*")


def brauer_result(S: PiSystem, embedding_index: int = 0) -> BrauerResult:
    t = classify(S.roots)
    excluded = is_excluded(S.lattice.degree, str(t))
    return BrauerResult(
        degree=S.lattice.degree,
        type=t,
        group=brauer_group(S),
        group_via_cokernel=brauer_via_cokernel(S),
        locally_trivial=is_locally_trivial(S),
        excluded=excluded,
        embedding_index=embedding_index,
        caveat=URABE_CAVEAT if excluded else "",
    )


def brauer_results(degree: int) -> list[BrauerResult]:
    """One result per classified configuration in the given degree.

    Configurations sharing a Dynkin type are numbered by ``embedding_index``
    in the enumeration order.
    """
    from .pisystems import all_pisystems

    seen: dict[str, int] = {}
    out = []
    for cs in all_pisystems(make_pic_lattice(degree)):
        key = str(cs.dynkin_type)
        idx = seen.get(key, 0)
        seen[key] = idx + 1
        out.append(brauer_result(cs.pisystem, idx))
    return out
