"""Chordal-distance histograms, deepness predicates and homometry."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb

from palrhythm.core import Rhythm, gap_vector, rhythm_from_gaps, rotate
from palrhythm.errors import InvalidArgument, SizeLimitError
from palrhythm.family import FamilyMember, Kind, match_member

HOMOMETRIC_SUBSET_LIMIT = 10**7


def chordal_distance(i: int, j: int, n: int) -> int:
    d = abs(j - i) % n
    return min(d, n - d)


@dataclass(frozen=True)
class DistanceHistogram:
    n: int
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def multiplicities(self) -> list[int]:
        return sorted(self.counts.values())

    def to_json(self) -> dict:
        return {"n": self.n, "counts": {str(d): c for d, c in sorted(self.counts.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "DistanceHistogram":
        return cls(int(data["n"]), {int(d): int(c) for d, c in data["counts"].items()})

    def __eq__(self, other):
        if not isinstance(other, DistanceHistogram):
            return NotImplemented
        return self.n == other.n and self.counts == other.counts

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.counts.items()))))


def histogram(r: Rhythm) -> DistanceHistogram:
    counts = Counter(chordal_distance(a, b, r.n) for a, b in combinations(r.onsets, 2))
    return DistanceHistogram(r.n, dict(sorted(counts.items())))


def vertex_histogram(r: Rhythm, v: int) -> dict[int, int]:
    """Chordal distances from onset v to every other onset of r."""
    return dict(Counter(chordal_distance(v, b, r.n) for b in r.onsets if b != v))


def is_erdos_deep(r: Rhythm) -> tuple[bool, dict[int, int]]:
    """Return (deep?, witness) where witness maps multiplicity -> distance."""
    h = histogram(r)
    witness = {c: d for d, c in h.counts.items()}
    deep = r.p >= 2 and sorted(h.counts.values()) == list(range(1, r.p))
    return deep, dict(sorted(witness.items())) if deep else {}


def is_almost_winograd_deep(r: Rhythm) -> bool:
    mults = list(histogram(r).counts.values())
    return len(mults) == len(set(mults))


class NotDeep(InvalidArgument):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def deep_bijection(r: Rhythm) -> dict[int, int]:
    """Map each occurring chordal distance to its multiplicity.

    Raises NotDeep naming the property that fails; on success the map is a
    bijection onto {1, ..., p-1}.
    """
    erdos, _ = is_erdos_deep(r)
    winograd = is_almost_winograd_deep(r)
    if not (erdos or winograd):
        raise NotDeep("neither Erdos-deep nor almost Winograd-deep")
    if not erdos:
        raise NotDeep("not Erdos-deep")
    if not winograd:
        raise NotDeep("not almost Winograd-deep")
    return dict(histogram(r).counts)


def fold(n: int, clockwise: dict[int, int]) -> dict[int, int]:
    """Fold clockwise-distance counts onto chordal distances."""
    out: Counter = Counter()
    for d, c in clockwise.items():
        out[chordal_distance(0, d, n)] += c
    return dict(sorted(out.items()))


def theorem5_clockwise(p: int) -> dict[int, int]:
    """Predicted clockwise-distance counts for the (m=1) tau1 member with p onsets.

    Its inter-onset intervals are the cycle 3 2 3 2 ... 3, with a single 3|3
    junction.  Every unordered onset pair is counted once through the run
    of L <= (p-1)/2 consecutive intervals joining it.  Alternating runs and
    runs crossing the junction give, for j >= 1:

        L = 2j-1:  5j-3 -> (p+1)/2 - j,   5j-2 -> (p-1)/2 + j
        L = 2j:    5j   -> p - j,         5j+1 -> j
    """
    if p < 5 or p % 2 == 0:
        raise InvalidArgument(f"set-A members have odd p >= 5, got {p}")
    counts: Counter = Counter()
    half = (p - 1) // 2
    for length in range(1, half + 1):
        if length % 2:
            j = (length + 1) // 2
            counts[5 * j - 3] += (p + 1) // 2 - j
            counts[5 * j - 2] += (p - 1) // 2 + j
        else:
            j = length // 2
            counts[5 * j] += p - j
            counts[5 * j + 1] += j
    return {d: c for d, c in sorted(counts.items()) if c}


def theorem5_counts(member: FamilyMember) -> dict[int, int]:
    """Predicted chordal histogram of a set-A member (tau1 with m = 1)."""
    if member.kind is not Kind.TAU1 or member.m != 1:
        raise InvalidArgument(f"prediction covers tau1 members with m = 1, got {member}")
    return fold(member.n, theorem5_clockwise(member.p))


def are_homometric(r1: Rhythm, r2: Rhythm) -> bool:
    if r1.n != r2.n:
        raise InvalidArgument(f"homometry compares rhythms on the same circle, got n={r1.n} and n={r2.n}")
    return histogram(r1) == histogram(r2)


def homometric_class(r: Rhythm, limit: int = HOMOMETRIC_SUBSET_LIMIT) -> list[Rhythm]:
    """Every p-subset of Z_n sharing r's histogram, in lexicographic order."""
    size = comb(r.n, r.p)
    if size > limit:
        raise SizeLimitError(f"C({r.n},{r.p}) = {size} subsets exceeds the limit {limit}")
    target = histogram(r).counts
    n = r.n
    # distance lookup table keeps the inner loop cheap
    dist = [[chordal_distance(a, b, n) for b in range(n)] for a in range(n)]
    out = []
    for subset in combinations(range(n), r.p):
        counts: Counter = Counter()
        for i, a in enumerate(subset):
            row = dist[a]
            for b in subset[i + 1:]:
                counts[row[b]] += 1
        if counts == target:
            out.append(Rhythm(n, subset))
    return out


def rotations(r: Rhythm) -> list[Rhythm]:
    return sorted({rotate(r, l) for l in range(r.n)}, key=lambda x: x.onsets)


@dataclass(frozen=True)
class IsospectralPair:
    vertex_a: int
    vertex_b: int

    def to_json(self) -> dict:
        return {"vertex_a": self.vertex_a, "vertex_b": self.vertex_b}


def isospectral_pairs(r1: Rhythm, r2: Rhythm) -> list[IsospectralPair]:
    if not are_homometric(r1, r2):
        raise InvalidArgument("isospectral vertices are only defined for homometric rhythms")
    spec2 = {b: vertex_histogram(r2, b) for b in r2.onsets}
    return [
        IsospectralPair(a, b)
        for a in r1.onsets
        for b in r2.onsets
        if vertex_histogram(r1, a) == spec2[b]
    ]


def _in_family(digits) -> bool:
    return len(digits.digits) >= 2 and digits.is_palindrome() and match_member(digits) is not None


def swap_homometric(r: Rhythm) -> list[Rhythm]:
    """Homometric rhythms obtained by reversing a prefix or suffix of the gap digits.

    Selections whose reversal leaves the digits unchanged are skipped, which
    leaves p - 1 distinct rhythms for every tau1 member.  Each candidate is
    checked for homometry and dropped if it fails; for tau2 some reversals
    do fail, so fewer than p - 1 rhythms come back.  All outputs have an
    onset on pulse 0.
    """
    if not r.onsets or r.onsets[0] != 0:
        raise InvalidArgument("swap_homometric expects a rhythm anchored at pulse 0")
    g = gap_vector(r)
    if not _in_family(g):
        raise InvalidArgument(f"{g} is not a tau1/tau2 gap vector")
    d = g.digits
    p = len(d)
    target = histogram(r)
    seen = {d}
    out = []
    selections = [(0, i) for i in range(1, p)] + [(p - i, p) for i in range(1, p)]
    for lo, hi in selections:
        swapped = d[:lo] + d[lo:hi][::-1] + d[hi:]
        if swapped in seen:
            continue
        seen.add(swapped)
        cand = rhythm_from_gaps(swapped)
        if histogram(cand) == target:
            out.append(cand)
    return out


def apply_transposition(r: Rhythm, a: int, b: int) -> Rhythm:
    """Relabel pulses by the transposition (a b)."""
    if not (0 <= a < r.n and 0 <= b < r.n):
        raise InvalidArgument(f"pulses must lie in [0, {r.n})")

    def sigma(x):
        return b if x == a else a if x == b else x

    return Rhythm.from_pulses(r.n, (sigma(x) for x in r.onsets))
