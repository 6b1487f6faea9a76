import itertools

import numpy as np
import pytest

from qhashgen.codes import (
    BlockCode,
    code_distance,
    codewords,
    hamming_distance,
    polynomial_encoder,
    reed_solomon_code,
    repetition_code,
    simplex_code,
)


def census_distance(code):
    words = list(codewords(code).values())
    return min(hamming_distance(u, v) for u, v in itertools.combinations(words, 2))


def test_simplex_distance_census(simplex):
    assert (simplex.n, simplex.k, simplex.d) == (15, 4, 8)
    assert census_distance(simplex) == 8
    assert code_distance(simplex) == 8
    # every pair of distinct codewords is exactly 8 apart
    words = list(codewords(simplex).values())
    assert {hamming_distance(u, v) for u, v in itertools.combinations(words, 2)} == {8}


@pytest.mark.parametrize("q, k, n", [(5, 2, 4), (7, 3, 6), (5, 1, 5), (7, 2, 7)])
def test_reed_solomon_is_mds(q, k, n):
    code = reed_solomon_code(q, k, n)
    assert code.d == n - k + 1
    assert census_distance(code) == n - k + 1


def test_reed_solomon_codeword():
    code = reed_solomon_code(5, 2, 4, [1, 2, 3, 4])
    assert code.encode([1, 1]) == (2, 3, 4, 0)


def test_encoder_and_matrix_forms_agree():
    rs = reed_solomon_code(7, 3, 6)
    twin = BlockCode(7, 6, 3, 4, encoder=polynomial_encoder([1, 2, 3, 4, 5, 6], 7))
    for w in itertools.product(range(7), repeat=3):
        assert rs.encode(w) == twin.encode(w)


def test_repetition():
    code = repetition_code(4)
    assert code.encode([1]) == (1, 1, 1, 1)
    assert code_distance(code) == 4


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(q=5, k=2, n=6),
        dict(q=5, k=3, n=2),
        dict(q=4, k=1, n=2),
    ],
)
def test_reed_solomon_rejects_bad_parameters(kwargs):
    with pytest.raises(ValueError):
        reed_solomon_code(**kwargs)


def test_reed_solomon_rejects_repeated_points():
    with pytest.raises(ValueError, match="distinct"):
        reed_solomon_code(5, 2, 3, [1, 1, 2])


def test_block_code_validation():
    with pytest.raises(ValueError):
        BlockCode(2, 3, 1, 4, generator_matrix=np.ones((1, 3)))
    with pytest.raises(ValueError):
        BlockCode(2, 3, 1, 3)
    with pytest.raises(ValueError):
        BlockCode(2, 3, 2, 1, generator_matrix=np.ones((1, 3)))
    with pytest.raises(ValueError):
        simplex_code(0)
