"""Arithmetic progressions over the tau1 solution matrix and over V-numbers.

The n-values of the tau1 members form a symmetric matrix indexed by
(row i, col j) = (t - 2, m).  Rows and columns are arithmetic progressions.
Separately, gap vectors read as decimal numbers can form an AP; palindromic
terms of such an AP are constructed explicitly and checked against a
brute-force scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from palrhythm.core import DecimalV, GapVector, Rhythm, decimal_of, digits_of, euclidean_gaps, rhythm_from_gaps
from palrhythm.errors import InvalidArgument, NoSolution, SizeLimitError
from palrhythm.family import FamilyMember, tau1_member, tau2_member

# ---------------------------------------------------------------- matrix


def matrix_entry(i: int, j: int) -> tuple[int, int, int]:
    """(n, p, k) of the tau1 member at row i, column j (both from 1)."""
    if i < 1 or j < 1:
        raise InvalidArgument(f"matrix indices start at 1, got ({i}, {j})")
    n = ((2 * i + 3) * (2 * j + 3) + 1) // 2
    p = 2 * (i + 2) - 1
    return n, p, n - p


def matrix_member(i: int, j: int) -> FamilyMember:
    return tau1_member(i + 2, j)


def tau2_matrix_entry(i: int, j: int) -> tuple[int, int, int]:
    """Same layout for tau2: row i is s = i + 1, column j is m."""
    mem = tau2_member(i + 1, j)
    return mem.n, mem.p, mem.k


def solution_matrix(rows: int, cols: int, which: str = "n") -> list[list[int]]:
    idx = {"n": 0, "p": 1, "k": 2}[which]
    return [[matrix_entry(i, j)[idx] for j in range(1, cols + 1)] for i in range(1, rows + 1)]


def row_column_of(value: int, row: int) -> int | None:
    """Column j with matrix_entry(row, j).n == value, or None."""
    step = 2 * row + 3
    num = 2 * value - 1
    if num % step:
        return None
    odd = num // step
    if odd < 5 or odd % 2 == 0:
        return None
    return (odd - 3) // 2


def row_ap_closure(row: int, a: int, b: int, terms: int = 10) -> list[tuple[int, bool]]:
    """Further terms a + t(b - a), t = 2..terms+1, with their row membership."""
    if a >= b:
        raise InvalidArgument(f"need a < b, got a={a}, b={b}")
    if row_column_of(a, row) is None or row_column_of(b, row) is None:
        raise InvalidArgument(f"{a} and {b} must both lie in row {row}")
    step = b - a
    return [(a + t * step, row_column_of(a + t * step, row) is not None) for t in range(2, terms + 2)]


# ---------------------------------------------------------------- primes

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def line_progression(axis: str, index: int, which: str = "n") -> tuple[int, int]:
    """(first term, common difference) of a matrix row or column."""
    k = {"n": 0, "p": 1, "k": 2}[which]
    if axis == "row":
        a, b = matrix_entry(index, 1)[k], matrix_entry(index, 2)[k]
    elif axis == "col":
        a, b = matrix_entry(1, index)[k], matrix_entry(2, index)[k]
    else:
        raise InvalidArgument(f"axis must be 'row' or 'col', got {axis!r}")
    return a, b - a


class Inapplicable(InvalidArgument):
    pass


def primes_in_line(axis: str, index: int, which: str = "n", count: int = 5) -> list[int]:
    first, step = line_progression(axis, index, which)
    if count < 0:
        raise InvalidArgument("count must be >= 0")
    if count == 0:
        return []
    if step == 0 or gcd(first, step) != 1:
        raise Inapplicable(f"{axis} {index} of {which}: gcd(first={first}, step={step}) != 1")
    out = []
    x = first
    while len(out) < count:
        if is_prime(x):
            out.append(x)
        x += step
    return out


# ---------------------------------------------------------------- palindromes in an AP


def split_2_5(d: int) -> tuple[int, int, int]:
    """d = 2**a * 5**b * c with gcd(c, 10) == 1."""
    if d < 1:
        raise InvalidArgument(f"common difference must be positive, got {d}")
    a = b = 0
    while d % 2 == 0:
        d //= 2
        a += 1
    while d % 5 == 0:
        d //= 5
        b += 1
    return a, b, d


@dataclass(frozen=True)
class APSpec:
    first: DecimalV
    difference: int
    twos: int = field(init=False)
    fives: int = field(init=False)
    cofactor: int = field(init=False)

    def __post_init__(self):
        a, b, c = split_2_5(self.difference)
        object.__setattr__(self, "twos", a)
        object.__setattr__(self, "fives", b)
        object.__setattr__(self, "cofactor", c)

    @classmethod
    def of(cls, first: int | str, difference: int) -> "APSpec":
        text = str(first)
        return cls(decimal_of(GapVector(tuple(int(ch) for ch in text))), difference)

    def term(self, t: int) -> int:
        return self.first.value + t * self.difference

    def index_of(self, x: int) -> int | None:
        t, rem = divmod(x - self.first.value, self.difference)
        return t if rem == 0 and t >= 0 else None

    @property
    def last_digit_nonzero(self) -> bool:
        return self.first.digits.digits[-1] != 0

    @property
    def difference_not_multiple_of_10(self) -> bool:
        return self.difference % 10 != 0


def multiplicative_order_10(c: int) -> int:
    if c == 1:
        return 1
    if gcd(c, 10) != 1:
        raise InvalidArgument(f"10 has no order modulo {c}")
    e, x = 1, 10 % c
    while x != 1:
        x = x * 10 % c
        e += 1
    return e


def _as_decimal(x: int) -> DecimalV:
    return decimal_of(digits_of(x, len(str(x))))


def is_decimal_palindrome(x: int) -> bool:
    s = str(x)
    return s == s[::-1]


def _seed(spec: APSpec) -> tuple[int, ...]:
    """Digits of the AP term the construction starts from."""
    if spec.last_digit_nonzero:
        return spec.first.digits.digits
    if not spec.difference_not_multiple_of_10:
        raise NoSolution(
            f"first term {spec.first} ends in 0 and {spec.difference} is a multiple of 10: "
            "every term ends in 0"
        )
    # d is not a multiple of 10, so the next term already ends in a nonzero digit
    t = 1
    while spec.term(t) % 10 == 0:
        t += 1
    return tuple(int(ch) for ch in str(spec.term(t)))


def palindrome_candidates(spec: APSpec) -> Iterator[int]:
    """Unvalidated candidates V'.10^(es+e-q) + sum_{i=1..s} 10^(ie) + V.

    Here V is the seed term with q+1 digits, V' its reversal, e runs over
    multiples of the order of 10 modulo the part of d coprime to 10, and s
    solves V'.10^(e-q) + s == 0 (mod c).  When c == 1 this is V + 10^l V'.
    """
    digits = _seed(spec)
    q = len(digits) - 1
    v = int("".join(map(str, digits)))
    v_rev = int("".join(map(str, digits[::-1])))
    a, b, c = spec.twos, spec.fives, spec.cofactor
    order = multiplicative_order_10(c)
    e = order
    while True:
        s = (-v_rev * pow(10, e - q, c)) % c if c > 1 else 0
        low = e if s >= 1 else e - q
        if e > q and (s >= 1 or e - q > q) and low >= max(a, b):
            yield v_rev * 10 ** (e * s + e - q) + sum(10 ** (i * e) for i in range(1, s + 1)) + v
        e += order


def find_palindromes_in_ap(spec: APSpec, count: int, max_candidates: int = 10_000) -> list[DecimalV]:
    """`count` palindromic terms of the AP, smallest construction first.

    Every candidate is re-checked (palindrome, congruent to the first term,
    not below it); failures are skipped.
    """
    if count < 0:
        raise InvalidArgument("count must be >= 0")
    out: list[DecimalV] = []
    if count == 0:
        return out
    for tried, x in enumerate(palindrome_candidates(spec)):
        if tried >= max_candidates:
            raise NoSolution(f"only {len(out)} valid palindromes in {max_candidates} candidates")
        if is_decimal_palindrome(x) and spec.index_of(x) is not None:
            out.append(_as_decimal(x))
            if len(out) == count:
                return out


def _palindrome_mask(vals: np.ndarray) -> np.ndarray:
    rev = np.zeros_like(vals)
    x = vals.copy()
    while np.any(x):
        # numbers that have run out of digits must not be shifted further
        live = x > 0
        rev = np.where(live, rev * 10 + x % 10, rev)
        x //= 10
    return rev == vals


def brute_force_palindromes_in_ap(spec: APSpec, limit: int, start: int = 0) -> list[DecimalV]:
    """Palindromic values among terms start, ..., start + limit - 1."""
    if limit <= 0:
        return []
    start = max(start, 0)
    first, d = spec.first.value, spec.difference
    hi = first + (start + limit - 1) * d
    if hi < 10**17:
        out = []
        chunk = 1 << 20
        for lo in range(start, start + limit, chunk):
            t = np.arange(lo, min(lo + chunk, start + limit), dtype=np.int64)
            vals = first + d * t
            out.extend(int(v) for v in vals[_palindrome_mask(vals)])
    else:
        out = [x for x in (first + t * d for t in range(start, start + limit)) if is_decimal_palindrome(x)]
    return [_as_decimal(x) for x in out]


# ---------------------------------------------------------------- decompositions


@dataclass(frozen=True)
class AlignedTerm:
    sign: int
    digits: DecimalV
    shift: int
    label: str = ""

    @property
    def value(self) -> int:
        return self.sign * self.digits.value * 10**self.shift

    def to_json(self) -> dict:
        out = {"sign": self.sign, "digits": str(self.digits), "shift": self.shift}
        if self.label:
            out["label"] = self.label
        return out

    @classmethod
    def from_json(cls, data: dict) -> "AlignedTerm":
        return cls(
            int(data["sign"]),
            decimal_of(GapVector(tuple(int(ch) for ch in str(data["digits"])))),
            int(data["shift"]),
            data.get("label", ""),
        )


@dataclass(frozen=True)
class Decomposition:
    target: DecimalV
    terms: tuple[AlignedTerm, ...]
    residue: Rhythm | None = None

    def to_json(self) -> dict:
        return {
            "target": str(self.target),
            "terms": [t.to_json() for t in self.terms],
            "residue": self.residue.to_json() if self.residue else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Decomposition":
        target = decimal_of(GapVector(tuple(int(ch) for ch in str(data["target"]))))
        res = data.get("residue")
        return cls(
            target,
            tuple(AlignedTerm.from_json(t) for t in data["terms"]),
            Rhythm.from_json(res) if res else None,
        )


@dataclass(frozen=True)
class NotFound:
    target: DecimalV
    max_terms: int
    conditions_met: bool

    def to_json(self) -> dict:
        return {"target": str(self.target), "found": False, "max_terms": self.max_terms,
                "conditions_met": self.conditions_met}


def verify_decomposition(dec: Decomposition) -> bool:
    width = dec.target.length
    for t in dec.terms:
        if t.sign not in (1, -1):
            raise InvalidArgument(f"term sign must be +1 or -1, got {t.sign}")
        if t.shift < 0 or t.shift + t.digits.length > width:
            raise InvalidArgument(
                f"term {t.digits} shifted by {t.shift} does not fit in {width} digits"
            )
    return sum(t.value for t in dec.terms) == dec.target.value


def decomposition_conditions(target: DecimalV) -> tuple[bool, bool]:
    """(odd digit count, every digit on one side of the first digit)."""
    d = target.digits.digits
    first = d[0]
    dominated = all(x >= first for x in d) or all(x <= first for x in d)
    return len(d) % 2 == 1, dominated


@dataclass(frozen=True)
class DictionaryEntry:
    digits: DecimalV
    label: str


def standard_dictionary(max_p: int = 9, max_len: int | None = None) -> list[DictionaryEntry]:
    """Euclidean V-numbers with at most max_p onsets, their rotations and their prefixes.

    Only gap vectors with every digit <= 9 are kept.  Order is deterministic:
    Euclidean first, then rotated, then broken (prefix) strings.
    """
    euclid, rotated, broken = {}, {}, {}
    for p in range(1, max_p + 1):
        for k in range(0, 9 * p + 1):
            g = euclidean_gaps(p, p + k)
            if max(g.digits) > 9:
                continue
            euclid.setdefault(g.digits, f"V({p},{k})")
            for i, rot in enumerate(g.rotations()[1:], start=1):
                rotated.setdefault(rot.digits, f"V({p},{k}) rotated {i}")
            for rot in g.rotations():
                for j in range(1, p):
                    broken.setdefault(rot.digits[:j], f"V({p},{k}) broken")
    out, seen = [], set()
    for table in (euclid, rotated, broken):
        for digits, label in table.items():
            if digits in seen or (max_len is not None and len(digits) > max_len):
                continue
            seen.add(digits)
            out.append(DictionaryEntry(decimal_of(GapVector(digits)), label))
    return out


def _singles(entries: Sequence[DictionaryEntry], width: int) -> tuple[list[int], list[AlignedTerm]]:
    values, terms, seen = [], [], set()
    for ent in entries:
        length = ent.digits.length
        for shift in range(0, width - length + 1):
            for sign in (1, -1):
                term = AlignedTerm(sign, ent.digits, shift, ent.label)
                v = term.value
                if v == 0 or v in seen:
                    continue
                seen.add(v)
                values.append(v)
                terms.append(term)
    return values, terms


MAX_SEARCH_TERMS = 4


def decompose_search(
    target: DecimalV, dictionary: Sequence[DictionaryEntry], max_terms: int = 4
) -> Decomposition | NotFound:
    """Shortest signed, shifted sum of dictionary terms equal to target.

    Exhaustive over term counts 1..max_terms.  Three- and four-term sums are
    matched against a table of all two-term sums (meet in the middle).  The
    first hit in dictionary order is returned, so output is deterministic.
    """
    if not dictionary:
        raise InvalidArgument("dictionary is empty")
    if not 1 <= max_terms <= MAX_SEARCH_TERMS:
        raise InvalidArgument(f"max_terms must be in 1..{MAX_SEARCH_TERMS}")
    width = target.length
    T = target.value
    values, terms = _singles(dictionary, width)
    index = {v: i for i, v in enumerate(values)}

    def done(chosen):
        return Decomposition(target, tuple(terms[i] for i in chosen))

    if T in index:
        return done([index[T]])
    if max_terms >= 2:
        for i, v in enumerate(values):
            j = index.get(T - v)
            if j is not None:
                return done([i, j])
    if max_terms >= 3:
        if width > 7 and len(values) ** 2 > 4_000_000:
            raise SizeLimitError(f"{width}-digit target with {len(values)} terms is too large to search")
        arr = np.array(values, dtype=np.int64)
        bound = 2 * 10**width
        pair_sums = np.zeros(2 * bound + 1, dtype=bool)
        for v in values:
            pair_sums[arr + (v + bound)] = True

        def complete_pair(rest):
            for i, v in enumerate(values):
                j = index.get(rest - v)
                if j is not None:
                    return [i, j]
            raise AssertionError("pair table and index disagree")

        for i, v in enumerate(values):
            rest = T - v
            if -bound <= rest <= bound and pair_sums[rest + bound]:
                return done([i] + complete_pair(rest))
        if max_terms >= 4:
            for i, v in enumerate(values):
                rests = (T - v) - arr
                ok = (rests >= -bound) & (rests <= bound)
                hit = np.zeros(len(arr), dtype=bool)
                hit[ok] = pair_sums[rests[ok] + bound]
                if hit.any():
                    j = int(np.argmax(hit))
                    return done([i, j] + complete_pair(int(rests[j])))
    return NotFound(target, max_terms, all(decomposition_conditions(target)))


def paper_decompositions() -> list[Decomposition]:
    """The two worked decompositions, with shifts chosen so the sums are exact.

    The residues are the rhythms whose gap vectors are the subtracted
    constants 11 and 3.
    """

    def dv(text):
        return decimal_of(GapVector(tuple(int(ch) for ch in text)))

    first = Decomposition(
        dv("4976794"),
        (
            AlignedTerm(1, dv("4343434"), 0, "V(7,25)"),
            AlignedTerm(1, dv("65656"), 1, "V(5,28)"),
            AlignedTerm(-1, dv("221"), 2, "V(3,5)"),
            AlignedTerm(-1, dv("11"), 2, "residue"),
        ),
        rhythm_from_gaps((1, 1)),
    )
    second = Decomposition(
        dv("2953592"),
        (
            AlignedTerm(1, dv("2121212"), 0, "V(7,11)"),
            AlignedTerm(1, dv("87878"), 1, "V(5,38)"),
            AlignedTerm(-1, dv("434"), 2, "broken Euclidean"),
            AlignedTerm(-1, dv("3"), 3, "residue"),
        ),
        rhythm_from_gaps((3,)),
    )
    return [first, second]
