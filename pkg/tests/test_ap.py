import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from palrhythm.ap import (
    AlignedTerm,
    APSpec,
    Decomposition,
    Inapplicable,
    NotFound,
    brute_force_palindromes_in_ap,
    decompose_search,
    decomposition_conditions,
    find_palindromes_in_ap,
    is_decimal_palindrome,
    is_prime,
    line_progression,
    matrix_entry,
    matrix_member,
    multiplicative_order_10,
    paper_decompositions,
    primes_in_line,
    row_ap_closure,
    row_column_of,
    solution_matrix,
    split_2_5,
    standard_dictionary,
    tau2_matrix_entry,
    verify_decomposition,
)
from palrhythm.core import GapVector, Rhythm, decimal_of
from palrhythm.errors import InvalidArgument, NoSolution
from palrhythm.family import tau1_member, tau2_member

EQ4 = [
    [13, 18, 23, 28, 33],
    [18, 25, 32, 39, 46],
    [23, 32, 41, 50, 59],
    [28, 39, 50, 61, 72],
    [33, 46, 59, 72, 85],
    [38, 53, 68, 83, 98],
]

SEEDS = ["21212", "212", "32323", "2121212", "43434", "53535", "2122", "121", "1", "4343434", "221"]
DIFFS_COPRIME_TO_10 = [1, 3, 7, 9, 11, 13, 21, 37]
DIFFS_WITH_2_5 = [2, 4, 5, 8, 20, 25, 40, 50, 100, 110, 200, 1000, 300, 14]


def dv(text):
    return decimal_of(GapVector.parse(text))


def sieve(limit):
    flags = [True] * (limit + 1)
    flags[0] = flags[1] = False
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = [False] * len(flags[i * i :: i])
    return flags


def random_specs(count, seed=2024):
    rng = random.Random(seed)
    specs = []
    for i in range(count):
        diffs = DIFFS_COPRIME_TO_10 if i % 2 else DIFFS_WITH_2_5
        specs.append(APSpec.of(rng.choice(SEEDS), rng.choice(diffs)))
    return specs


class TestMatrix:
    def test_eq4_block(self):
        assert solution_matrix(6, 5) == EQ4

    @pytest.mark.parametrize("ij,n", [((1, 1), 13), ((3, 3), 41), ((2, 3), 32), ((3, 2), 32)])
    def test_examples(self, ij, n):
        assert matrix_entry(*ij)[0] == n

    def test_symmetric(self):
        for i in range(1, 21):
            for j in range(1, 21):
                assert matrix_entry(i, j)[0] == matrix_entry(j, i)[0]

    def test_matches_family(self):
        for i in range(1, 15):
            for j in range(1, 15):
                n, p, k = matrix_entry(i, j)
                mem = matrix_member(i, j)
                assert mem == tau1_member(i + 2, j)
                assert (mem.n, mem.p, mem.k) == (n, p, k)

    def test_p_and_k_matrices(self):
        assert solution_matrix(2, 3, "p") == [[5, 5, 5], [7, 7, 7]]
        assert solution_matrix(1, 3, "k") == [[8, 13, 18]]

    def test_tau2_layout(self):
        assert tau2_matrix_entry(1, 1) == (30, 11, 19)
        mem = tau2_member(3, 2)
        assert tau2_matrix_entry(2, 2) == (mem.n, mem.p, mem.k)

    def test_bad_index(self):
        with pytest.raises(InvalidArgument):
            matrix_entry(0, 1)

    def test_row_lookup(self):
        assert row_column_of(23, 1) == 3
        assert row_column_of(24, 1) is None
        assert row_column_of(13, 2) is None


class TestClosure:
    def test_row_1(self):
        got = row_ap_closure(1, 13, 18)
        assert [v for v, _ in got[:3]] == [23, 28, 33]
        assert all(ok for _, ok in got) and len(got) == 10

    def test_row_2(self):
        got = row_ap_closure(2, 18, 32)
        assert [v for v, _ in got[:2]] == [46, 60]
        assert all(ok for _, ok in got)

    def test_errors(self):
        with pytest.raises(InvalidArgument):
            row_ap_closure(1, 13, 13)
        with pytest.raises(InvalidArgument):
            row_ap_closure(1, 13, 25)


class TestPrimes:
    def test_rows(self):
        assert primes_in_line("row", 1) == [13, 23, 43, 53, 73]
        assert primes_in_line("row", 2) == [53, 67, 109, 137, 151]
        assert primes_in_line("row", 1, count=0) == []

    def test_against_sieve(self):
        flags = sieve(200_000)
        assert [x for x in range(200_001) if is_prime(x)] == [x for x, f in enumerate(flags) if f]
        for axis in ("row", "col"):
            for idx in range(1, 8):
                for which in ("n", "k"):
                    first, step = line_progression(axis, idx, which)
                    try:
                        got = primes_in_line(axis, idx, which, 12)
                    except Inapplicable:
                        continue
                    expected = [x for x in range(first, 200_000, step) if flags[x]][:12]
                    assert got == expected

    def test_inapplicable(self):
        # the p-values along a row are constant: step 0
        with pytest.raises(Inapplicable):
            primes_in_line("row", 1, "p")

    def test_large_prime(self):
        assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


class TestSpec:
    def test_split(self):
        assert split_2_5(600) == (3, 2, 3)
        assert split_2_5(7) == (0, 0, 7)
        with pytest.raises(InvalidArgument):
            split_2_5(0)

    def test_order(self):
        assert multiplicative_order_10(7) == 6
        assert multiplicative_order_10(3) == 1
        assert multiplicative_order_10(1) == 1
        with pytest.raises(InvalidArgument):
            multiplicative_order_10(6)

    def test_terms(self):
        s = APSpec.of("21212", 100)
        assert (s.twos, s.fives, s.cofactor) == (2, 2, 1)
        assert s.term(3) == 21512
        assert s.index_of(21512) == 3 and s.index_of(21513) is None and s.index_of(21112) is None


class TestConstruction:
    def test_21212_d100(self):
        got = [str(x) for x in find_palindromes_in_ap(APSpec.of("21212", 100), 3)]
        assert got == ["2121221212", "21212021212", "212120021212"]

    def test_d1_against_oracle(self):
        spec = APSpec.of("212", 1)
        got = find_palindromes_in_ap(spec, 3)
        oracle = {x.value for x in brute_force_palindromes_in_ap(spec, 10**7)}
        inside = [x.value for x in got if spec.index_of(x.value) < 10**7]
        assert inside == [212212, 2120212]
        assert set(inside) <= oracle
        assert [str(x) for x in brute_force_palindromes_in_ap(spec, 100)][:3] == ["212", "222", "232"]

    def test_zero_last_digit_advances(self):
        spec = APSpec.of("2120", 3)
        for x in find_palindromes_in_ap(spec, 2):
            assert is_decimal_palindrome(x.value) and spec.index_of(x.value) is not None

    def test_no_solution(self):
        with pytest.raises(NoSolution):
            find_palindromes_in_ap(APSpec.of("2120", 10), 1)

    def test_oracle_examples(self):
        assert brute_force_palindromes_in_ap(APSpec.of("10", 10), 100) == []
        assert [x.value for x in brute_force_palindromes_in_ap(APSpec.of("21212", 1), 101)] == [21212, 21312]

    @given(st.integers(1, 10**6), st.integers(1, 5000), st.integers(0, 3000))
    def test_oracle_matches_string_scan(self, first, d, start):
        spec = APSpec.of(str(first), d)
        terms = (first + t * d for t in range(start, start + 500))
        expected = [x for x in terms if str(x) == str(x)[::-1]]
        assert [x.value for x in brute_force_palindromes_in_ap(spec, 500, start)] == expected

    @pytest.mark.parametrize("spec", random_specs(24), ids=lambda s: f"{s.first}+{s.difference}t")
    def test_random_specs(self, spec):
        values = find_palindromes_in_ap(spec, 3)
        assert len(values) == 3
        for x in values:
            v = x.value
            assert is_decimal_palindrome(v)
            assert (v - spec.first.value) % spec.difference == 0 and v >= spec.first.value
            t = spec.index_of(v)
            window = brute_force_palindromes_in_ap(spec, 2001, start=t - 1000)
            assert v in {w.value for w in window}

    def test_small_outputs_found_from_the_start(self):
        for spec in random_specs(24):
            small = [x.value for x in find_palindromes_in_ap(spec, 3) if spec.index_of(x.value) < 10**6]
            if small:
                oracle = {w.value for w in brute_force_palindromes_in_ap(spec, max(spec.index_of(v) for v in small) + 1)}
                assert set(small) <= oracle

    @pytest.mark.parametrize("first,d", [("2120", 10), ("10", 100), ("212120", 1000), ("30", 20)])
    def test_both_conditions_fail(self, first, d):
        spec = APSpec.of(first, d)
        assert not spec.last_digit_nonzero and not spec.difference_not_multiple_of_10
        assert brute_force_palindromes_in_ap(spec, 10**6) == []


class TestDecomposition:
    def test_paper_examples(self):
        first, second = paper_decompositions()
        assert verify_decomposition(first) and verify_decomposition(second)
        assert 4343434 + 656560 - 22100 - 1100 == first.target.value == 4976794
        assert 2121212 + 878780 - 43400 - 3000 == second.target.value == 2953592
        assert first.residue == Rhythm(4, (0, 2)) and second.residue == Rhythm(4, (0,))

    def test_empty(self):
        assert verify_decomposition(Decomposition(dv("0"), ()))

    def test_wrong_sum(self):
        dec = Decomposition(dv("21212"), (AlignedTerm(1, dv("21211"), 0),))
        assert not verify_decomposition(dec)

    @pytest.mark.parametrize("term", [AlignedTerm(2, dv("1"), 0), AlignedTerm(1, dv("212"), 3), AlignedTerm(1, dv("1"), -1)])
    def test_malformed(self, term):
        with pytest.raises(InvalidArgument):
            verify_decomposition(Decomposition(dv("21212"), (term,)))

    def test_json(self):
        first = paper_decompositions()[0]
        data = first.to_json()
        assert data["target"] == "4976794"
        assert data["terms"][0] == {"sign": 1, "digits": "4343434", "shift": 0, "label": "V(7,25)"}
        assert data["residue"] == {"n": 4, "onsets": [0, 2]}
        assert Decomposition.from_json(data) == first

    def test_single_term(self):
        res = decompose_search(dv("21212"), standard_dictionary(5, 5), 4)
        assert isinstance(res, Decomposition) and len(res.terms) == 1

    @pytest.mark.parametrize("target", ["4976794", "2953592"])
    def test_search_finds_valid(self, target):
        res = decompose_search(dv(target), standard_dictionary(9, 7), 4)
        assert isinstance(res, Decomposition)
        assert verify_decomposition(res) and len(res.terms) <= 4

    def test_paper_terms_are_in_dictionary(self):
        labels = {str(e.digits): e.label for e in standard_dictionary(9, 7)}
        for digits in ("4343434", "65656", "221", "2121212", "87878", "434", "11", "3"):
            assert digits in labels

    def test_not_found(self):
        tiny = [e for e in standard_dictionary(2, 2) if str(e.digits) == "11"]
        res = decompose_search(dv("5"), tiny, 2)
        assert isinstance(res, NotFound) and res.conditions_met
        res = decompose_search(dv("52"), tiny, 1)
        assert isinstance(res, NotFound) and not res.conditions_met
        assert res.to_json()["found"] is False

    def test_conditions(self):
        assert decomposition_conditions(dv("2953592")) == (True, True)
        assert decomposition_conditions(dv("4976794")) == (True, True)
        assert decomposition_conditions(dv("3193")) == (False, False)

    def test_guards(self):
        with pytest.raises(InvalidArgument):
            decompose_search(dv("212"), [], 2)
        with pytest.raises(InvalidArgument):
            decompose_search(dv("212"), standard_dictionary(3, 3), 5)

    @given(st.lists(st.tuples(st.sampled_from([1, -1]), st.sampled_from(["212", "21212", "3", "434"]), st.integers(0, 4)), max_size=4))
    def test_verify_matches_arithmetic(self, raw):
        terms = tuple(AlignedTerm(s, dv(d), sh) for s, d, sh in raw if sh + len(d) <= 9)
        total = sum(t.value for t in terms)
        if total < 0:
            return
        target = decimal_of(GapVector.parse(str(total).rjust(9, "0")))
        assert verify_decomposition(Decomposition(target, terms))
