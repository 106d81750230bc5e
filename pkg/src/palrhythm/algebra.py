"""Constructions that build new rhythms from old ones: pumping, digit-wise
addition of gap vectors, aligned addition, and onset insertion."""

from __future__ import annotations

from dataclasses import dataclass, field

from palrhythm.core import DecimalV, GapVector, Rhythm, scale
from palrhythm.distance import vertex_histogram
from palrhythm.errors import InvalidArgument, InvalidPump


@dataclass(frozen=True)
class PumpSpec:
    m: int
    offsets: tuple[int, ...]
    anchor1: int
    anchor2: int
    r: int = field(default=-1)

    def __post_init__(self):
        offsets = tuple(int(s) for s in self.offsets)
        object.__setattr__(self, "offsets", offsets)
        if self.r < 0:
            object.__setattr__(self, "r", len(offsets) // 2)
        if self.m < 1:
            raise InvalidArgument(f"pump scale m must be >= 1, got {self.m}")
        if len(offsets) != 2 * self.r:
            raise InvalidArgument(f"expected {2 * self.r} offsets, got {len(offsets)}")
        if len(set(offsets)) != len(offsets) or 0 in offsets:
            raise InvalidArgument(f"offsets must be distinct and nonzero: {offsets}")
        if set(offsets) != {-s for s in offsets}:
            raise InvalidArgument(f"offsets must be closed under negation: {offsets}")

    def to_json(self) -> dict:
        return {"m": self.m, "r": self.r, "offsets": list(self.offsets),
                "anchor1": self.anchor1, "anchor2": self.anchor2}

    @classmethod
    def from_json(cls, data: dict) -> "PumpSpec":
        return cls(
            m=int(data["m"]),
            offsets=tuple(int(s) for s in data["offsets"]),
            anchor1=int(data["anchor1"]),
            anchor2=int(data["anchor2"]),
            r=int(data.get("r", len(data["offsets"]) // 2)),
        )


def _pump_one(r: Rhythm, anchor: int, spec: PumpSpec) -> Rhythm:
    base = scale(r, spec.m)
    n = base.n
    centre = anchor * spec.m
    existing = set(base.onsets)
    extra = [(centre + s) % n for s in spec.offsets]
    if len(set(extra)) != len(extra):
        raise InvalidPump(f"companion onsets around {centre} coincide modulo {n}")
    hits = sorted(existing.intersection(extra))
    if hits:
        raise InvalidPump(f"companion onsets {hits} collide with existing onsets")
    return Rhythm.from_pulses(n, list(existing) + extra)


def pump(r1: Rhythm, r2: Rhythm, spec: PumpSpec) -> tuple[Rhythm, Rhythm]:
    """(m, r, S) pumping of a homometric pair around isospectral anchors.

    Both rhythms are scaled onto m*n pulses, and each anchor gains the 2r
    companions anchor*m + s (mod m*n) for s in S.
    """
    if r1.n != r2.n:
        raise InvalidArgument("pumping needs two rhythms on the same circle")
    if spec.anchor1 not in r1.onsets or spec.anchor2 not in r2.onsets:
        raise InvalidArgument("anchors must be onsets of their rhythms")
    if vertex_histogram(r1, spec.anchor1) != vertex_histogram(r2, spec.anchor2):
        raise InvalidArgument(f"anchors {spec.anchor1} and {spec.anchor2} are not isospectral")
    return _pump_one(r1, spec.anchor1, spec), _pump_one(r2, spec.anchor2, spec)


def pump_union(q1: Rhythm, q2: Rhythm) -> Rhythm:
    if q1.n != q2.n:
        raise InvalidArgument("union needs rhythms on the same circle")
    return Rhythm.from_pulses(q1.n, set(q1.onsets) | set(q2.onsets))


def _as_gaps(g) -> GapVector:
    if isinstance(g, DecimalV):
        return g.digits
    if isinstance(g, GapVector):
        return g
    return GapVector(tuple(g))


def add_same_p(g1, g2) -> GapVector:
    g1, g2 = _as_gaps(g1), _as_gaps(g2)
    if g1.p != g2.p:
        raise InvalidArgument(f"componentwise addition needs equal lengths, got {g1.p} and {g2.p}")
    return GapVector(tuple(a + b for a, b in zip(g1.digits, g2.digits)))


def subtract_same_p(g1, g2) -> GapVector:
    g1, g2 = _as_gaps(g1), _as_gaps(g2)
    if g1.p != g2.p:
        raise InvalidArgument(f"componentwise subtraction needs equal lengths, got {g1.p} and {g2.p}")
    out = tuple(a - b for a, b in zip(g1.digits, g2.digits))
    if min(out) < 0:
        raise InvalidArgument(f"{g1} - {g2} has a negative digit")
    return GapVector(out)


def _check_offset(g1: GapVector, g2: GapVector, offset: int):
    if not 0 <= offset <= g1.p - g2.p:
        raise InvalidArgument(f"offset {offset} outside [0, {g1.p - g2.p}]")


def add_aligned(g1, g2, offset: int) -> GapVector:
    """Lay g2 over g1 starting at digit position `offset` and add."""
    g1, g2 = _as_gaps(g1), _as_gaps(g2)
    _check_offset(g1, g2, offset)
    d = list(g1.digits)
    for i, x in enumerate(g2.digits):
        d[offset + i] += x
    return GapVector(tuple(d))


def subtract_aligned(g1, g2, offset: int) -> GapVector:
    g1, g2 = _as_gaps(g1), _as_gaps(g2)
    _check_offset(g1, g2, offset)
    d = list(g1.digits)
    for i, x in enumerate(g2.digits):
        d[offset + i] -= x
    if min(d) < 0:
        raise InvalidArgument(f"aligned subtraction of {g2} from {g1} goes negative")
    return GapVector(tuple(d))


def centered_offset(g1, g2) -> int:
    g1, g2 = _as_gaps(g1), _as_gaps(g2)
    diff = g1.p - g2.p
    if diff < 0 or diff % 2:
        raise InvalidArgument(f"cannot centre {g2.p} digits inside {g1.p}")
    return diff // 2


def add_centered(g1, g2) -> GapVector:
    return add_aligned(g1, g2, centered_offset(g1, g2))


def introduce_onsets(r: Rhythm, positions) -> Rhythm:
    positions = set(positions)
    clash = sorted(positions.intersection(r.onsets))
    if clash:
        raise InvalidArgument(f"positions {clash} are already onsets")
    bad = [x for x in positions if not 0 <= x < r.n]
    if bad:
        raise InvalidArgument(f"positions {sorted(bad)} lie outside [0, {r.n})")
    return Rhythm.from_pulses(r.n, set(r.onsets) | positions)
