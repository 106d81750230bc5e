"""Tehai arithmetic: total duration, cycles to sam, and the embedded rest pattern.

A tehai is a phrase played three times, optionally with a gap between the
parts, built so that its final stroke falls on the sam (beat 1) of a later
cycle.  All durations are exact fractions of a beat.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import ceil
from pathlib import Path

from palrhythm.core import GapVector, rhythm_from_gaps
from palrhythm.distance import are_homometric
from palrhythm.errors import InvalidArgument
from palrhythm.family import FamilyMember, match_member, tau1_member, tau2_member


@dataclass(frozen=True)
class TaalSpec:
    name: str
    beats: int
    vibhag: tuple[int, ...]

    def __post_init__(self):
        if self.beats < 1:
            raise InvalidArgument(f"taal needs a positive beat count, got {self.beats}")
        if sum(self.vibhag) != self.beats:
            raise InvalidArgument(f"vibhag {self.vibhag} does not sum to {self.beats}")


_TAALS = {
    "teentaal": TaalSpec("teentaal", 16, (4, 4, 4, 4)),
    "pancham_sawari": TaalSpec("pancham_sawari", 15, (4, 3, 5, 3)),
    "jhaptaal": TaalSpec("jhaptaal", 10, (2, 3, 2, 3)),
    "dhamar": TaalSpec("dhamar", 14, (5, 2, 3, 4)),
}


_ALIASES = {"teen_taal": "teentaal", "tintal": "teentaal", "jhaap": "jhaptaal", "jhaap_taal": "jhaptaal"}


def builtin_taals() -> list[TaalSpec]:
    return list(_TAALS.values())


def taal(name: str) -> TaalSpec:
    key = name.lower().replace(" ", "_").replace("-", "_")
    key = _ALIASES.get(key, key)
    try:
        return _TAALS[key]
    except KeyError:
        raise InvalidArgument(f"unknown taal {name!r}; known: {', '.join(_TAALS)}") from None


def parse_fraction(value) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidArgument(f"not a rational number: {value!r}") from exc


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class TehaiSpec:
    taal: TaalSpec
    jaati: int
    part_length: Fraction
    gap: Fraction = Fraction(0)
    start_offset: Fraction = Fraction(0)
    rest_pattern: GapVector | None = None
    label: str = ""
    repetitions: int = 3

    def __post_init__(self):
        if self.part_length <= 0:
            raise InvalidArgument("part length must be positive")
        if self.gap < 0 or self.start_offset < 0:
            raise InvalidArgument("gap and start offset must be non-negative")
        if self.repetitions != 3:
            raise InvalidArgument("a tehai repeats its phrase exactly 3 times")
        if self.jaati < 1:
            raise InvalidArgument(f"jaati subdivision must be positive, got {self.jaati}")

    @property
    def rest_unit(self) -> Fraction:
        return Fraction(1, self.jaati)

    @property
    def bedaam(self) -> bool:
        return self.gap == 0

    @classmethod
    def from_json(cls, data: dict) -> "TehaiSpec":
        pattern = data.get("rest_pattern")
        return cls(
            taal=taal(data["taal"]),
            jaati=int(data["jaati"]),
            part_length=parse_fraction(data["part_length"]),
            gap=parse_fraction(data.get("gap", 0)),
            start_offset=parse_fraction(data.get("start_offset", 0)),
            rest_pattern=GapVector(tuple(pattern)) if pattern else None,
            label=data.get("label", ""),
        )

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "taal": self.taal.name,
            "jaati": self.jaati,
            "part_length": format_fraction(self.part_length),
            "gap": format_fraction(self.gap),
            "start_offset": format_fraction(self.start_offset),
        }
        if self.rest_pattern is not None:
            out["rest_pattern"] = list(self.rest_pattern.digits)
        return out


def load_tehai(path: str | Path) -> TehaiSpec:
    with open(path) as fh:
        return TehaiSpec.from_json(json.load(fh))


def builtin_tehais() -> list[TehaiSpec]:
    folder = resources.files("palrhythm") / "data" / "tehais"
    specs = [TehaiSpec.from_json(json.loads(f.read_text())) for f in folder.iterdir() if f.name.endswith(".json")]
    return sorted(specs, key=lambda t: int(t.label.rsplit("-", 1)[1]))


def total_length(t: TehaiSpec) -> Fraction:
    return t.repetitions * t.part_length + (t.repetitions - 1) * t.gap


def cycles_to_sam(t: TehaiSpec) -> tuple[int, bool]:
    """Cycles covered before the final stroke, and whether it lands on beat 1.

    Positions are measured in beats from the start of the first cycle; the
    tehai starts at `start_offset` and its final stroke begins at
    start_offset + total_length - 1.
    """
    end = t.start_offset + total_length(t) - 1
    beats = t.taal.beats
    return ceil(end / beats), end % beats == 0


def embedded_gap_vector(t: TehaiSpec) -> GapVector:
    if t.rest_pattern is None:
        raise InvalidArgument(f"tehai {t.label or '?'} has no rest pattern")
    return t.rest_pattern


@dataclass(frozen=True)
class PatternOrigin:
    """How a rest pattern relates to the palindromic family."""

    relation: str  # "member", "sum", "homometric" or "none"
    members: tuple[FamilyMember, ...] = ()

    def to_json(self) -> dict:
        return {"relation": self.relation, "members": [m.to_json() for m in self.members]}


def _members_with_p(p: int, max_digit: int) -> list[FamilyMember]:
    out = []
    for m in range(1, max_digit):
        if p % 2 == 1 and p >= 5:
            out.append(tau1_member((p + 1) // 2, m))
        if p % 4 == 3 and p >= 11:
            out.append(tau2_member((p - 3) // 4, m))
    return out


def explain_rest_pattern(g: GapVector) -> PatternOrigin:
    """Name a family member equal to g, a same-length sum of two members, or a
    member homometric to g's rhythm."""
    member = match_member(g) if g.is_palindrome() else None
    if member is not None:
        return PatternOrigin("member", (member,))
    cands = _members_with_p(g.p, max(g.digits) + 1)
    for i, a in enumerate(cands):
        for b in cands[i:]:
            if tuple(x + y for x, y in zip(a.digits.digits, b.digits.digits)) == g.digits:
                return PatternOrigin("sum", (a, b))
    r = rhythm_from_gaps(g)
    for mem in cands:
        if mem.n == r.n and are_homometric(r, rhythm_from_gaps(mem.digits)):
            return PatternOrigin("homometric", (mem,))
    return PatternOrigin("none")
