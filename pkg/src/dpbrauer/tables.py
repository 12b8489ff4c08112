"""Table rows, rendering and golden data for the ``tables`` command."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .brauer import BrauerResult, brauer_results
from .intlin import AbelianGroup

GOLDEN_DEGREES = (1, 2, 3, 4)

STAR = "*"
DAGGER = "#"

_TYPE_WIDTH = 16
_GROUP_WIDTH = 20


@dataclass(frozen=True)
class TableRow:
    type_string: str
    group: AbelianGroup
    embedding_count: int
    footnote: str  # "none", "star" or "dagger"
    excluded: bool
    locally_trivial: bool

    @property
    def brauer_string(self) -> str:
        return self.group.render()

    def to_json(self) -> dict:
        return {
            "type": self.type_string,
            "group": {"invariant_factors": list(self.group.invariant_factors)},
            "embeddings": self.embedding_count,
            "excluded": self.excluded,
            "locally_trivial": self.locally_trivial,
        }

    @classmethod
    def from_json(cls, data: dict, differing_groups: bool = True) -> TableRow:
        group = AbelianGroup(tuple(data["group"]["invariant_factors"]))
        excluded = bool(data["excluded"])
        return cls(
            type_string=data["type"],
            group=group,
            embedding_count=int(data["embeddings"]),
            footnote=_footnote(excluded, int(data["embeddings"]) > 1 and differing_groups),
            excluded=excluded,
            locally_trivial=bool(data["locally_trivial"]),
        )


def _footnote(excluded: bool, starred: bool) -> str:
    if excluded:
        return "dagger"
    if starred:
        return "star"
    return "none"


@lru_cache(maxsize=None)
def _results(degree: int) -> tuple[BrauerResult, ...]:
    return tuple(brauer_results(degree))


def build_rows(degree: int, include_trivial: bool = False,
               include_excluded: bool = True) -> list[TableRow]:
    """Rows in (total rank, type string, group) order.

    By default only non-trivial Brauer groups are listed.
    """
    results = _results(degree)
    by_type: dict[str, list[BrauerResult]] = {}
    for r in results:
        by_type.setdefault(str(r.type), []).append(r)
    rows = []
    for r in results:
        if r.group.is_trivial and not include_trivial:
            continue
        if r.excluded and not include_excluded:
            continue
        siblings = by_type[str(r.type)]
        starred = len({s.group for s in siblings}) > 1
        rows.append(TableRow(
            type_string=str(r.type),
            group=r.group,
            embedding_count=len(siblings),
            footnote=_footnote(r.excluded, starred),
            excluded=r.excluded,
            locally_trivial=r.locally_trivial,
        ))
    return rows


# ---------------------------------------------------------------------------
# rendering


def _marker(row: TableRow) -> str:
    return {"star": STAR, "dagger": DAGGER}.get(row.footnote, "")


def render_text(degree: int, rows: list[TableRow], include_trivial: bool = False) -> str:
    what = "all singularity types" if include_trivial else "singularity types with non-trivial Brauer group"
    lines = [f"Degree {degree}: {what}"]
    if not rows:
        lines.append(f"(none: every singular del Pezzo surface of degree {degree} has trivial Brauer group)")
        return "\n".join(lines) + "\n"
    lines.append(f"{'Singularity type':<{_TYPE_WIDTH}}  {'Brauer group':<{_GROUP_WIDTH}}  Embeddings")
    lines.append(f"{'-' * _TYPE_WIDTH}  {'-' * _GROUP_WIDTH}  ----------")
    for row in rows:
        label = f"{row.type_string} {_marker(row)}".rstrip()
        lines.append(f"{label:<{_TYPE_WIDTH}}  {row.brauer_string:<{_GROUP_WIDTH}}  {row.embedding_count}".rstrip())
    notes = []
    if any(r.footnote == "star" for r in rows):
        notes.append(f"{STAR} embeds in more than one way, with different Brauer groups")
    if any(r.footnote == "dagger" for r in rows):
        notes.append(f"{DAGGER} valid in the lattice but not realized on a del Pezzo surface (Urabe)")
    if notes:
        lines.append("")
        lines.extend(notes)
    return "\n".join(lines) + "\n"


def render_json(degree: int, rows: list[TableRow]) -> str:
    return json.dumps({"degree": degree, "rows": [r.to_json() for r in rows]}, indent=2) + "\n"


def render_csv(degree: int, rows: list[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["degree", "type", "group", "invariant_factors", "embeddings", "excluded", "locally_trivial"])
    for r in rows:
        w.writerow([degree, r.type_string, r.brauer_string,
                    " ".join(map(str, r.group.invariant_factors)),
                    r.embedding_count, str(r.excluded).lower(), str(r.locally_trivial).lower()])
    return buf.getvalue()


def render(degree: int, rows: list[TableRow], fmt: str, include_trivial: bool = False) -> str:
    if fmt == "text":
        return render_text(degree, rows, include_trivial)
    if fmt == "json":
        return render_json(degree, rows)
    if fmt == "csv":
        return render_csv(degree, rows)
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# golden data


def golden_json(degree: int) -> dict:
    path = resources.files("dpbrauer") / "data" / f"golden_degree{degree}.json"
    return json.loads(path.read_text(encoding="utf-8"))


def golden_text(degree: int) -> str:
    path = resources.files("dpbrauer") / "data" / f"golden_degree{degree}.txt"
    return path.read_text(encoding="utf-8")


def golden_rows(degree: int) -> list[TableRow]:
    return [TableRow.from_json(r) for r in golden_json(degree)["rows"]]


def diff_rows(expected: list[TableRow], actual: list[TableRow]) -> list[str]:
    """Human-readable differences; the first entry names the first divergent row."""
    out = []
    for i in range(max(len(expected), len(actual))):
        e = expected[i].to_json() if i < len(expected) else None
        a = actual[i].to_json() if i < len(actual) else None
        if e != a:
            out.append(f"row {i + 1}: expected {json.dumps(e)}, got {json.dumps(a)}")
    return out
