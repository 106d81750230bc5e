"""Euclidean rhythm generation and the elementary rhythm representations.

A rhythm is a set of onset pulses in Z_n.  Its gap vector lists, for each
onset, the number of rests that follow it before the next onset (wrapping
around the cycle), so the digits sum to the number of rests k = n - p.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from palrhythm.errors import InvalidArgument, NotDecimalRepresentable

ONSET = "x"
REST = "."


@dataclass(frozen=True)
class Rhythm:
    n: int
    onsets: tuple[int, ...]

    def __post_init__(self):
        onsets = tuple(self.onsets)
        object.__setattr__(self, "onsets", onsets)
        if self.n < 1:
            raise InvalidArgument(f"rhythm needs at least one pulse, got n={self.n}")
        if not onsets:
            raise InvalidArgument("rhythm needs at least one onset")
        if any(b <= a for a, b in zip(onsets, onsets[1:])):
            raise InvalidArgument(f"onsets must be strictly increasing: {onsets}")
        if onsets[0] < 0 or onsets[-1] >= self.n:
            raise InvalidArgument(f"onsets must lie in [0, {self.n}): {onsets}")

    @classmethod
    def from_pulses(cls, n: int, pulses: Iterable[int]) -> "Rhythm":
        """Build from an unordered collection of pulses, reduced mod n."""
        return cls(n, tuple(sorted({x % n for x in pulses})))

    @classmethod
    def from_text(cls, text: str) -> "Rhythm":
        text = text.strip()
        bad = set(text) - {ONSET, REST}
        if bad:
            raise InvalidArgument(f"unexpected characters in rhythm text: {sorted(bad)}")
        return cls(len(text), tuple(i for i, c in enumerate(text) if c == ONSET))

    @property
    def p(self) -> int:
        return len(self.onsets)

    @property
    def k(self) -> int:
        return self.n - len(self.onsets)

    def to_text(self) -> str:
        onsets = set(self.onsets)
        return "".join(ONSET if i in onsets else REST for i in range(self.n))

    def to_bits(self) -> list[int]:
        onsets = set(self.onsets)
        return [1 if i in onsets else 0 for i in range(self.n)]

    def to_json(self) -> dict:
        return {"n": self.n, "onsets": list(self.onsets)}

    @classmethod
    def from_json(cls, data: dict) -> "Rhythm":
        return cls(int(data["n"]), tuple(int(x) for x in data["onsets"]))

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class GapVector:
    digits: tuple[int, ...]

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)
        object.__setattr__(self, "digits", digits)
        if not digits:
            raise InvalidArgument("gap vector needs at least one digit")
        if any(d < 0 for d in digits):
            raise InvalidArgument(f"gap digits must be non-negative: {digits}")

    @classmethod
    def parse(cls, text: str) -> "GapVector":
        """Parse "21212" (one digit per gap) or "12,3,4" (comma separated)."""
        text = text.strip()
        if "," in text:
            return cls(tuple(int(t) for t in text.split(",")))
        if not text.isdigit():
            raise InvalidArgument(f"not a gap vector: {text!r}")
        return cls(tuple(int(c) for c in text))

    @property
    def p(self) -> int:
        return len(self.digits)

    @property
    def k(self) -> int:
        return sum(self.digits)

    @property
    def n(self) -> int:
        return self.p + self.k

    def is_palindrome(self) -> bool:
        return self.digits == self.digits[::-1]

    def reversed(self) -> "GapVector":
        return GapVector(self.digits[::-1])

    def rotations(self) -> list["GapVector"]:
        d = self.digits
        return [GapVector(d[i:] + d[:i]) for i in range(len(d))]

    def to_json(self) -> dict:
        return {"digits": list(self.digits)}

    @classmethod
    def from_json(cls, data: dict) -> "GapVector":
        return cls(tuple(data["digits"]))

    def __str__(self):
        if all(d <= 9 for d in self.digits):
            return "".join(map(str, self.digits))
        return ",".join(map(str, self.digits))


@dataclass(frozen=True)
class DecimalV:
    """A gap vector read as a base-10 integer; every digit is 0..9."""

    digits: GapVector

    def __post_init__(self):
        if any(d > 9 for d in self.digits.digits):
            raise NotDecimalRepresentable(f"gap digit exceeds 9: {self.digits.digits}")

    @property
    def value(self) -> int:
        return int("".join(map(str, self.digits.digits)))

    @property
    def length(self) -> int:
        return len(self.digits.digits)

    def reversed(self) -> "DecimalV":
        return DecimalV(self.digits.reversed())

    def __str__(self):
        return "".join(map(str, self.digits.digits))


def bjorklund(p: int, n: int) -> Rhythm:
    """Return E(p, n), the Euclidean rhythm from Bjorklund's pairing procedure.

    Every group in the front block is identical, as is every group in the
    remainder block, so each block is tracked as (word, count).  Remainder
    groups are attached to the earliest front groups.  The result always has
    an onset at pulse 0.
    """
    if not (isinstance(p, int) and isinstance(n, int)) or p < 1 or p > n:
        raise InvalidArgument(f"bjorklund needs 1 <= p <= n, got p={p}, n={n}")
    front, n_front = "1", p
    rem, n_rem = "0", n - p
    while n_rem > 1:
        paired = min(n_front, n_rem)
        if n_front > n_rem:
            new_rem, n_new_rem = front, n_front - n_rem
        else:
            new_rem, n_new_rem = rem, n_rem - n_front
        front, n_front = front + rem, paired
        rem, n_rem = new_rem, n_new_rem
    word = front * n_front + rem * n_rem
    return Rhythm(n, tuple(i for i, c in enumerate(word) if c == "1"))


def gap_vector(r: Rhythm) -> GapVector:
    on = r.onsets
    nxt = on[1:] + (on[0] + r.n,)
    return GapVector(tuple(b - a - 1 for a, b in zip(on, nxt)))


def rhythm_from_gaps(g: GapVector | Sequence[int]) -> Rhythm:
    if not isinstance(g, GapVector):
        g = GapVector(tuple(g))
    onsets = []
    pos = 0
    for d in g.digits:
        onsets.append(pos)
        pos += d + 1
    return Rhythm(pos, tuple(onsets))


def euclidean_gaps(p: int, n: int) -> GapVector:
    return gap_vector(bjorklund(p, n))


def rotate(r: Rhythm, l: int) -> Rhythm:
    return Rhythm.from_pulses(r.n, (a + l for a in r.onsets))


def reflect(r: Rhythm) -> Rhythm:
    """Mirror the rhythm through pulse 0 (a -> -a mod n)."""
    return Rhythm.from_pulses(r.n, (-a for a in r.onsets))


def anchor(r: Rhythm) -> Rhythm:
    """Rotate so that the first onset sits on pulse 0."""
    return rotate(r, -r.onsets[0])


def scale(r: Rhythm, l: int) -> Rhythm:
    if l < 1:
        raise InvalidArgument(f"scale factor must be >= 1, got {l}")
    return Rhythm(r.n * l, tuple(a * l for a in r.onsets))


def complement(r: Rhythm) -> Rhythm:
    if r.p == r.n:
        raise InvalidArgument("complement of a rhythm with no rests is empty")
    on = set(r.onsets)
    return Rhythm(r.n, tuple(i for i in range(r.n) if i not in on))


def concatenate(r1: Rhythm, r2: Rhythm) -> Rhythm:
    return Rhythm(r1.n + r2.n, r1.onsets + tuple(a + r1.n for a in r2.onsets))


def break_rhythm(r: Rhythm, b: int) -> tuple[Rhythm, Rhythm]:
    """Split r after onset b: the first part ends on that onset.

    The second part must still contain an onset, so b cannot be the last one.
    """
    if b not in r.onsets:
        raise InvalidArgument(f"break point {b} is not an onset of {r.to_text()}")
    if b >= r.onsets[-1]:
        raise InvalidArgument("break point must leave an onset in the second part")
    first = Rhythm(b + 1, tuple(a for a in r.onsets if a <= b))
    second = Rhythm(r.n - b - 1, tuple(a - b - 1 for a in r.onsets if a > b))
    return first, second


def decimal_of(g: GapVector | Sequence[int]) -> DecimalV:
    if not isinstance(g, GapVector):
        g = GapVector(tuple(g))
    return DecimalV(g)


def digits_of(value: int, length: int) -> GapVector:
    """Inverse of decimal_of: left-pad value with zeros to `length` digits."""
    if value < 0:
        raise InvalidArgument(f"negative value {value}")
    text = str(value)
    if len(text) > length:
        raise InvalidArgument(f"{value} has more than {length} digits")
    return GapVector(tuple(int(c) for c in text.rjust(length, "0")))


def is_palindrome_digits(digits: Sequence[int]) -> bool:
    digits = tuple(digits)
    return digits == digits[::-1]


def palindromic_rotation(digits: Sequence[int]) -> int | None:
    """Smallest left shift that makes the digit cycle a palindrome, if any."""
    d = tuple(digits)
    for i in range(len(d)):
        rot = d[i:] + d[:i]
        if rot == rot[::-1]:
            return i
    return None


def is_cyclic_palindrome(digits: Sequence[int]) -> bool:
    """True when the reversed cycle equals some rotation of the cycle."""
    d = tuple(digits)
    rev = d[::-1]
    return any(d[i:] + d[:i] == rev for i in range(len(d)))
