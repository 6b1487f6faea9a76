import math

import pytest
from hypothesis import given, strategies as st

from qhashgen.gf import (
    FieldElement,
    Word,
    check_modulus,
    fp_inv,
    fp_mul,
    fp_pow,
    is_prime,
    poly_eval,
    prime_count,
    primes_up_to,
    smallest_prime_in,
)


def trial_division_primes(M):
    return [p for p in range(2, M + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


SMALL_PRIMES = trial_division_primes(101)


@pytest.mark.parametrize("a, b, q, expected", [(3, 4, 5, 2), (0, 3, 5, 0), (0, 6, 7, 0), (6, 6, 7, 1)])
def test_fp_mul(a, b, q, expected):
    assert fp_mul(FieldElement(a, q), FieldElement(b, q)) == FieldElement(expected, q)


def test_fp_mul_modulus_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        fp_mul(FieldElement(1, 5), FieldElement(1, 7))


@pytest.mark.parametrize("a, q, expected", [(2, 7, 4), (1, 11, 1), (1, 2, 1), (4, 5, 4)])
def test_fp_inv(a, q, expected):
    assert fp_inv(FieldElement(a, q)).value == expected


def test_fp_inv_zero():
    with pytest.raises(ZeroDivisionError):
        fp_inv(FieldElement(0, 7))


@pytest.mark.parametrize("a, e, q, expected", [(3, 4, 5, 1), (2, 10, 11, 1), (0, 0, 7, 1), (5, 0, 7, 1), (0, 3, 7, 0)])
def test_fp_pow(a, e, q, expected):
    assert fp_pow(FieldElement(a, q), e).value == expected


def test_fp_pow_negative_exponent():
    with pytest.raises(ValueError):
        fp_pow(FieldElement(2, 7), -1)


@pytest.mark.parametrize("q", SMALL_PRIMES)
def test_inverse_and_fermat_exhaustive(q):
    for a in range(1, q):
        x = FieldElement(a, q)
        assert (x * fp_inv(x)).value == 1
        assert fp_pow(x, q - 1).value == 1


@pytest.mark.parametrize("q", [1, 4, 9, 15, 2**31 - 1 + 2])
def test_composite_or_out_of_range_moduli_rejected(q):
    with pytest.raises(ValueError):
        check_modulus(q)


def test_element_range_checked():
    with pytest.raises(ValueError):
        FieldElement(7, 7)
    with pytest.raises(ValueError):
        FieldElement(-1, 7)


def test_is_prime_matches_trial_division():
    oracle = set(trial_division_primes(5000))
    assert {n for n in range(5001) if is_prime(n)} == oracle
    assert is_prime(2**31 - 1)


@pytest.mark.parametrize("M, expected", [(10, [2, 3, 5, 7]), (2, [2]), (1, []), (0, [])])
def test_primes_up_to(M, expected):
    assert primes_up_to(M) == expected


def test_primes_up_to_matches_oracle():
    for M in (17, 50, 100, 1000):
        assert primes_up_to(M) == trial_division_primes(M)
    assert prime_count(17) == 7
    assert prime_count(50) == 15


def test_prime_counting_bounds():
    for M in range(17, 2001):
        pi = prime_count(M)
        assert M / math.log(M) <= pi <= 1.26 * M / math.log(M), M


def test_smallest_prime_in():
    assert smallest_prime_in(50, 100) == 53
    assert smallest_prime_in(89, 178) == 89
    with pytest.raises(ValueError):
        smallest_prime_in(24, 28)


def test_word_roundtrip_and_parse():
    w = Word.from_int(7, 3, 2)
    assert w.values == (1, 2)
    assert w.to_int() == 7
    assert Word.parse("2,1", 3).values == (2, 1)
    assert Word.parse("0110", 2).values == (0, 1, 1, 0)
    assert Word.parse("0110", 2).to_int() == 6
    with pytest.raises(ValueError):
        Word.parse("1,2", 3, k=3)
    with pytest.raises(ValueError):
        Word((3,), 3)
    with pytest.raises(ValueError):
        Word.from_elements([FieldElement(1, 3), FieldElement(1, 5)])


def test_poly_eval_horner():
    assert poly_eval([1, 1], 3, 5) == 4
    assert poly_eval([2, 0, 1], 4, 7) == (2 + 16) % 7


@given(
    st.sampled_from(SMALL_PRIMES),
    st.integers(min_value=0, max_value=10**6),
    st.integers(min_value=0, max_value=10**6),
    st.integers(min_value=0, max_value=10**6),
)
def test_field_axioms(q, a, b, c):
    x, y, z = FieldElement.of(a, q), FieldElement.of(b, q), FieldElement.of(c, q)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x + (-x) == FieldElement(0, q)
    assert x - y == -(y - x)
