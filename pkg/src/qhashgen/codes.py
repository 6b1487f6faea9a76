"""Block codes over prime fields, used as sources of hash families and fingerprints."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .gf import check_modulus, poly_eval


def matmul_mod(left: np.ndarray, right: np.ndarray, q: int) -> np.ndarray:
    """(left @ right) mod q without int64 overflow for q < 2**31."""
    left = np.asarray(left, dtype=np.int64) % q
    right = np.asarray(right, dtype=np.int64) % q
    out = np.zeros((left.shape[0], right.shape[1]), dtype=np.int64)
    for j in range(left.shape[1]):
        out = (out + np.outer(left[:, j], right[j]) % q) % q
    return out


@dataclass
class BlockCode:
    """An (n, k, d) code from (F_q)^k to (F_q)^n.

    Either ``generator_matrix`` (k x n, codeword = w G) or an ``encoder``
    callable must be supplied. ``d`` is the declared minimum distance; use
    :func:`code_distance` to check it.
    """

    q: int
    n: int
    k: int
    d: int
    generator_matrix: np.ndarray | None = None
    encoder: Callable[[Sequence[int]], Sequence[int]] | None = field(default=None, repr=False)
    name: str = "custom"

    def __post_init__(self) -> None:
        check_modulus(self.q)
        if self.n < 1 or self.k < 1:
            raise ValueError("code needs n >= 1 and k >= 1")
        if not 0 <= self.d <= self.n:
            raise ValueError(f"distance {self.d} outside [0, n={self.n}]")
        if self.generator_matrix is None and self.encoder is None:
            raise ValueError("supply a generator matrix or an encoder")
        if self.generator_matrix is not None:
            g = np.asarray(self.generator_matrix, dtype=np.int64) % self.q
            if g.shape != (self.k, self.n):
                raise ValueError(f"generator matrix has shape {g.shape}, expected {(self.k, self.n)}")
            self.generator_matrix = g

    def encode(self, word: Sequence[int]) -> tuple[int, ...]:
        w = [int(v) for v in word]
        if len(w) != self.k:
            raise ValueError(f"expected a word of length {self.k}, got {len(w)}")
        if self.generator_matrix is not None:
            return tuple(int(v) for v in matmul_mod(np.array([w]), self.generator_matrix, self.q)[0])
        out = tuple(int(v) % self.q for v in self.encoder(w))
        if len(out) != self.n:
            raise ValueError(f"encoder returned {len(out)} symbols, expected {self.n}")
        return out

    def encode_many(self, words: np.ndarray) -> np.ndarray:
        words = np.asarray(words, dtype=np.int64).reshape(-1, self.k)
        if self.generator_matrix is not None:
            return matmul_mod(words, self.generator_matrix, self.q)
        return np.array([self.encode(w) for w in words], dtype=np.int64).reshape(-1, self.n)

    def describe(self) -> dict:
        return {"name": self.name, "q": self.q, "n": self.n, "k": self.k, "d": self.d}


def all_words(q: int, k: int) -> np.ndarray:
    """Every word of (F_q)^k as rows, ordered as little-endian base-q integers."""
    idx = np.arange(q**k, dtype=np.int64)
    return (idx[:, None] // (q ** np.arange(k, dtype=np.int64))[None, :]) % q


def code_distance(code: BlockCode) -> int:
    """Minimum Hamming distance by brute force over all codeword pairs."""
    cw = code.encode_many(all_words(code.q, code.k))
    best = code.n
    for a in range(len(cw) - 1):
        dist = (cw[a + 1 :] != cw[a]).sum(axis=1)
        best = min(best, int(dist.min()))
    return best


def reed_solomon_code(q: int, k: int, n: int, points: Sequence[int] | None = None) -> BlockCode:
    """Evaluation code [n, k, n-k+1]_q of polynomials of degree < k."""
    check_modulus(q)
    if not 1 <= k <= n <= q:
        raise ValueError(f"Reed-Solomon needs 1 <= k <= n <= q, got k={k}, n={n}, q={q}")
    pts = default_points(q, n) if points is None else check_points(points, q, n)
    g = np.array([[pow(a, i, q) for a in pts] for i in range(k)], dtype=np.int64)
    return BlockCode(q, n, k, n - k + 1, generator_matrix=g, name="reed_solomon")


def default_points(q: int, n: int) -> list[int]:
    """The first n nonzero field elements; when n == q the point 0 is appended."""
    pts = list(range(1, min(n, q - 1) + 1))
    if n == q:
        pts.append(0)
    return pts


def check_points(points: Sequence[int], q: int, n: int) -> list[int]:
    pts = [int(a) for a in points]
    if len(pts) != n:
        raise ValueError(f"expected {n} evaluation points, got {len(pts)}")
    if len(set(pts)) != n:
        raise ValueError(f"evaluation points must be distinct, got {pts}")
    if any(not 0 <= a < q for a in pts):
        raise ValueError(f"evaluation points must lie in F_{q}")
    return pts


def simplex_code(m: int) -> BlockCode:
    """Binary simplex code [2^m - 1, m, 2^(m-1)]: coordinate a is <a, w> for nonzero a."""
    if m < 1:
        raise ValueError("simplex code needs m >= 1")
    cols = all_words(2, m)[1:]
    return BlockCode(2, 2**m - 1, m, 2 ** (m - 1), generator_matrix=cols.T.copy(), name="simplex")


def repetition_code(n: int, q: int = 2) -> BlockCode:
    if n < 1:
        raise ValueError("repetition code needs n >= 1")
    return BlockCode(q, n, 1, n, generator_matrix=np.ones((1, n), dtype=np.int64), name="repetition")


def polynomial_encoder(points: Sequence[int], q: int) -> Callable[[Sequence[int]], list[int]]:
    """Coordinate-wise polynomial evaluation, an encoder-form twin of the RS generator matrix."""
    pts = list(points)
    return lambda w: [poly_eval(w, a, q) for a in pts]


def hamming_distance(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a != b for a, b in zip(u, v, strict=True))


def codewords(code: BlockCode) -> dict[tuple[int, ...], tuple[int, ...]]:
    return {tuple(w): code.encode(w) for w in itertools.product(range(code.q), repeat=code.k)}
