"""Self-validation suite behind ``dpbrauer check``."""

from __future__ import annotations

from dataclasses import dataclass, field

from .brauer import (ambient_bad_primes, bad_primes, brauer_group,
                     brauer_via_cokernel, nonsingular_locus_picard_torsion)
from .piclattice import MAX_DEGREE, MIN_DEGREE, make_pic_lattice
from .pisystems import all_pisystems, exhaustive_pisystems
from .tables import (GOLDEN_DEGREES, build_rows, diff_rows, golden_rows,
                     golden_text, render_text)

# bad primes as listed in the literature for each irreducible type
QUOTED_BAD_PRIMES = {
    **{("A", n): frozenset() for n in range(1, 9)},
    **{("D", n): frozenset({2}) for n in range(4, 9)},
    ("E", 6): frozenset({2, 3}),
    ("E", 7): frozenset({2, 3}),
    ("E", 8): frozenset({2, 3, 5}),
}


@dataclass
class CheckResult:
    name: str
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "failures": self.failures}


def _degrees():
    return range(MIN_DEGREE, MAX_DEGREE + 1)


def check_formula_agreement() -> CheckResult:
    res = CheckResult("three-formula agreement")
    for d in _degrees():
        for cs in all_pisystems(make_pic_lattice(d)):
            S = cs.pisystem
            groups = (brauer_group(S), brauer_via_cokernel(S), nonsingular_locus_picard_torsion(S))
            if len(set(groups)) != 1:
                res.failures.append(f"degree {d} {cs.dynkin_type}: " + " / ".join(map(str, groups)))
    return res


def check_high_degree_trivial() -> CheckResult:
    res = CheckResult("trivial Brauer group in degree >= 5")
    for d in range(5, MAX_DEGREE + 1):
        for cs in all_pisystems(make_pic_lattice(d)):
            if not cs.brauer.is_trivial:
                res.failures.append(f"degree {d} {cs.dynkin_type}: {cs.brauer}")
    return res


def check_oracle(floor: int = 3) -> CheckResult:
    res = CheckResult(f"exhaustive oracle (degrees >= {floor})")
    for d in range(max(floor, MIN_DEGREE), MAX_DEGREE + 1):
        L = make_pic_lattice(d)
        fast = {cs.invariant_key for cs in all_pisystems(L)}
        slow = {cs.invariant_key for cs in exhaustive_pisystems(L)}
        for key in sorted(fast - slow):
            res.failures.append(f"degree {d}: {key} found only by Dynkin moves")
        for key in sorted(slow - fast):
            res.failures.append(f"degree {d}: {key} found only by brute force")
    return res


def check_bad_primes() -> CheckResult:
    res = CheckResult("bad primes")
    for (family, rank), quoted in sorted(QUOTED_BAD_PRIMES.items()):
        got = bad_primes(family, rank)
        if got != quoted:
            res.failures.append(f"{family}{rank}: computed {sorted(got)}, quoted {sorted(quoted)}")
    for d in _degrees():
        L = make_pic_lattice(d)
        allowed = ambient_bad_primes(L)
        for cs in all_pisystems(L):
            order = cs.brauer.order
            for p in range(2, order + 1):
                if order % p == 0 and all(p % q for q in range(2, p)) and p not in allowed:
                    res.failures.append(f"degree {d} {cs.dynkin_type}: prime {p} divides |{cs.brauer}|")
    return res


def check_golden() -> CheckResult:
    res = CheckResult("golden tables")
    for d in GOLDEN_DEGREES:
        rows = build_rows(d)
        for line in diff_rows(golden_rows(d), rows):
            res.failures.append(f"degree {d} {line}")
        if render_text(d, rows) != golden_text(d):
            res.failures.append(f"degree {d}: text rendering differs from golden file")
    return res


def run_checks(oracle_floor: int = 3) -> list[CheckResult]:
    return [
        check_formula_agreement(),
        check_high_degree_trivial(),
        check_oracle(oracle_floor),
        check_bad_primes(),
        check_golden(),
    ]
