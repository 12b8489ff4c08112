"""Parser for singularity-type strings such as ``2A1+A3`` or ``A1 + 2A3``.

Grammar::

    TYPE   := TERM ("+" TERM)*
    TERM   := [digits] FAMILY digits
    FAMILY := "A" | "D" | "E"

Whitespace is allowed around ``+``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .roots import DynkinType

MAX_TERM_RANK = 8
GRAMMAR = 'TYPE := TERM ("+" TERM)*; TERM := [multiplicity] FAMILY rank; FAMILY in {A, D, E}'

_TERM = re.compile(r"(\d*)([A-Za-z]?)(\d*)")


class TypeParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r} (grammar: {GRAMMAR})")


@dataclass(frozen=True)
class TypeExpr:
    dynkin_type: DynkinType

    @property
    def terms(self) -> list[tuple[int, str, int]]:
        return self.dynkin_type.counts()

    def render(self) -> str:
        return str(self.dynkin_type)

    def __str__(self) -> str:
        return self.render()


def _check_label(family: str, rank: int, text: str, pos: int) -> None:
    if rank > MAX_TERM_RANK:
        raise TypeParseError(f"rank overflow in {family}{rank} (max {MAX_TERM_RANK})", text, pos)
    if family == "D" and rank < 2:
        raise TypeParseError(f"D{rank} is not a Dynkin type", text, pos)
    if family == "E" and rank not in (6, 7, 8):
        raise TypeParseError(f"E{rank} is not a Dynkin type", text, pos)


def parse_type(text: str) -> TypeExpr:
    if not text.strip():
        raise TypeParseError("empty type", text, 0)
    terms: list[tuple[str, int]] = []
    pos = 0
    for chunk in text.split("+"):
        start = pos + len(chunk) - len(chunk.lstrip())
        body = chunk.strip()
        pos += len(chunk) + 1
        if not body:
            raise TypeParseError("empty term", text, start)
        m = _TERM.fullmatch(body)
        if not m:
            bad = next(i for i, ch in enumerate(body) if not (ch.isalnum()))
            raise TypeParseError(f"unexpected character {body[bad]!r}", text, start + bad)
        mult_s, family, rank_s = m.groups()
        if not family:
            raise TypeParseError(f"missing family letter in {body!r}", text, start)
        fpos = start + len(mult_s)
        if family not in "ADE":
            raise TypeParseError(f"unknown family {family!r}", text, fpos)
        if not rank_s:
            raise TypeParseError(f"missing rank after {family!r}", text, fpos + 1)
        mult = int(mult_s) if mult_s else 1
        rank = int(rank_s)
        if mult == 0:
            raise TypeParseError("multiplicity must be at least 1", text, start)
        if mult > MAX_TERM_RANK:
            raise TypeParseError(f"multiplicity overflow ({mult})", text, start)
        if rank == 0:
            raise TypeParseError("rank must be at least 1", text, fpos + 1)
        _check_label(family, rank, text, fpos)
        terms.extend([(family, rank)] * mult)
    return TypeExpr(DynkinType(tuple(terms)))
