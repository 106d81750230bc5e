"""Euclidean rhythms whose gap vectors are palindromes.

Two parametric shapes are known:

* ``tau1(t, m)``: (m+1) m (m+1) m ... (m+1), with t large digits (t >= 3)
* ``tau2(s, m)``: s copies of (m+1) m (m+1) (m+1), then (m+1) m (m+1) (s >= 2)

``brute_force_family`` is the independent check: it runs Bjorklund over every
coprime (p, n) with p < n - p and keeps the palindromic outputs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from palrhythm.core import GapVector, bjorklund, gap_vector, palindromic_rotation
from palrhythm.errors import InvalidArgument, Unsupported


class Kind(str, enum.Enum):
    TAU1 = "tau1"
    TAU2 = "tau2"


@dataclass(frozen=True)
class FamilyMember:
    kind: Kind
    reps: int
    m: int

    def __post_init__(self):
        low = 3 if self.kind is Kind.TAU1 else 2
        if self.reps < low or self.m < 1:
            raise InvalidArgument(
                f"{self.kind.value} needs reps >= {low} and m >= 1, got reps={self.reps}, m={self.m}"
            )

    @property
    def digits(self) -> GapVector:
        big, small = self.m + 1, self.m
        if self.kind is Kind.TAU1:
            d = [big, small] * (self.reps - 1) + [big]
        else:
            d = [big, small, big, big] * self.reps + [big, small, big]
        return GapVector(tuple(d))

    @property
    def p(self) -> int:
        if self.kind is Kind.TAU1:
            return 2 * self.reps - 1
        return 4 * self.reps + 3

    @property
    def k(self) -> int:
        if self.kind is Kind.TAU1:
            return self.reps * (2 * self.m + 1) - self.m
        return self.reps * (4 * self.m + 3) + 3 * self.m + 2

    @property
    def n(self) -> int:
        return self.p + self.k

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "reps": self.reps,
            "m": self.m,
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "digits": list(self.digits.digits),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FamilyMember":
        return cls(Kind(data["kind"]), int(data["reps"]), int(data["m"]))

    def __str__(self):
        return f"{self.kind.value}(reps={self.reps}, m={self.m}) p={self.p} k={self.k} n={self.n} V={self.digits}"


def tau1_member(t: int, m: int) -> FamilyMember:
    return FamilyMember(Kind.TAU1, t, m)


def tau2_member(s: int, m: int) -> FamilyMember:
    return FamilyMember(Kind.TAU2, s, m)


def match_member(digits: GapVector | Sequence[int]) -> FamilyMember | None:
    """Return the tau1/tau2 descriptor whose digit pattern equals `digits`."""
    d = tuple(digits.digits if isinstance(digits, GapVector) else digits)
    if len(d) < 5 or not d[0] >= 2:
        return None
    m = d[0] - 1
    p = len(d)
    if p % 2 == 1:
        t = (p + 1) // 2
        if t >= 3:
            cand = tau1_member(t, m)
            if cand.digits.digits == d:
                return cand
    if p % 4 == 3:
        s = (p - 3) // 4
        if s >= 2:
            cand = tau2_member(s, m)
            if cand.digits.digits == d:
                return cand
    return None


@dataclass(frozen=True)
class ClassificationResult:
    p: int
    n: int
    digits: GapVector
    is_member: bool
    member: FamilyMember | None
    rotated_palindrome: bool
    rotation_offset: int | None

    @property
    def parametrized(self) -> bool:
        """True when the palindrome fits the tau1 or tau2 pattern."""
        return self.member is not None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "digits": list(self.digits.digits),
            "is_member": self.is_member,
            "member": self.member.to_json() if self.member else None,
            "rotated_palindrome": self.rotated_palindrome,
            "rotation_offset": self.rotation_offset,
        }


def classify(p: int, n: int) -> ClassificationResult:
    """Classify E(p, n) by whether its gap vector is a palindrome.

    Only coprime (p, n) with p < k are covered.  ``is_member`` is the plain
    palindrome test; ``member`` names the tau1/tau2 pattern when one matches
    and is None for palindromes outside both patterns.  A single gap digit
    is not counted as a palindrome (p = 1 has no rest structure to mirror).
    """
    if p < 1 or p > n:
        raise InvalidArgument(f"need 1 <= p <= n, got p={p}, n={n}")
    if gcd(p, n) != 1:
        raise Unsupported(f"gcd({p}, {n}) = {gcd(p, n)}: every gap is {n // p - 1}, nothing to classify")
    if p >= n - p:
        raise Unsupported(f"only p < k is covered, got p={p}, k={n - p}")
    g = gap_vector(bjorklund(p, n))
    palin = p >= 2 and g.is_palindrome()
    offset = palindromic_rotation(g.digits) if p >= 2 else None
    return ClassificationResult(
        p=p,
        n=n,
        digits=g,
        is_member=palin,
        member=match_member(g) if palin else None,
        rotated_palindrome=offset is not None,
        rotation_offset=offset,
    )


def enumerate_family(max_n: int) -> list[FamilyMember]:
    """All tau1 and tau2 members with n <= max_n, sorted by (n, p)."""
    out = []
    t = 3
    while tau1_member(t, 1).n <= max_n:
        m = 1
        while (mem := tau1_member(t, m)).n <= max_n:
            out.append(mem)
            m += 1
        t += 1
    s = 2
    while tau2_member(s, 1).n <= max_n:
        m = 1
        while (mem := tau2_member(s, m)).n <= max_n:
            out.append(mem)
            m += 1
        s += 1
    out.sort(key=lambda mem: (mem.n, mem.p))
    return out


def brute_force_family(max_n: int) -> list[tuple[int, int]]:
    """Every coprime (p, n), 2 <= p < n - p, n <= max_n, with E(p, n) palindromic."""
    found = []
    for n in range(2, max_n + 1):
        for p in range(2, (n + 1) // 2):
            if gcd(p, n) == 1 and gap_vector(bjorklund(p, n)).is_palindrome():
                found.append((p, n))
    found.sort(key=lambda pn: (pn[1], pn[0]))
    return found


def family_counterexamples(max_n: int) -> list[tuple[int, int, GapVector]]:
    """Palindromic E(p, n) found by brute force that neither pattern produces."""
    known = {(mem.p, mem.n) for mem in enumerate_family(max_n)}
    return [
        (p, n, gap_vector(bjorklund(p, n)))
        for p, n in brute_force_family(max_n)
        if (p, n) not in known
    ]
