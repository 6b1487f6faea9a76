"""Classical epsilon-universal hash families and their collision census.

Families are rule-based: function ``i`` applied to a word is computed on
demand, never stored as an N x K table. Domain words are enumerated as
little-endian base-q integers (w_0 least significant).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .codes import BlockCode, check_points, default_points, matmul_mod, reed_solomon_code
from .gf import FieldElement, Word, check_modulus, poly_eval, primes_up_to

KINDS = ("linear", "freivalds", "rs", "code", "custom")
DEFAULT_EVAL_CAP = 10**7
_INT64_SAFE = 2**62


class BudgetExceededError(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its configured cap."""


@dataclass(frozen=True)
class HashFamilyDescriptor:
    N: int
    K: int
    M: int
    epsilon_claimed: Fraction
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.N < 1 or self.K < 2 or self.M < 2:
            raise ValueError(f"need N >= 1, K >= 2, M >= 2 (got N={self.N}, K={self.K}, M={self.M})")
        # epsilon = 0 is legitimate for repetition codes and k = 1 Reed-Solomon
        if not 0 <= self.epsilon_claimed <= 1:
            raise ValueError(f"epsilon_claimed {self.epsilon_claimed} outside [0, 1]")


class HashFamily:
    """An indexed set of functions f_0 ... f_{N-1} from a word domain to {0..M-1}.

    Subclasses provide :meth:`_values`, the vectorized rule mapping a batch of
    domain words (rows) to the N function values.
    """

    kind = "custom"

    def __init__(self, descriptor: HashFamilyDescriptor, q: int, k: int, alphabet: int, params: dict):
        self.descriptor = descriptor
        self.q = q
        self.k = k
        self.alphabet = alphabet
        self.params = params

    @property
    def N(self) -> int:
        return self.descriptor.N

    @property
    def K(self) -> int:
        return self.descriptor.K

    @property
    def M(self) -> int:
        return self.descriptor.M

    @property
    def epsilon_claimed(self) -> Fraction:
        return self.descriptor.epsilon_claimed

    # domain handling -----------------------------------------------------

    def _index_offset(self) -> int:
        return 0

    def word_at(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.K:
            raise IndexError(f"domain index {index} outside [0, {self.K})")
        n = int(index) + self._index_offset()
        out = []
        for _ in range(self.k):
            n, r = divmod(n, self.alphabet)
            out.append(r)
        return tuple(out)

    def index_of(self, word: Sequence[int]) -> int:
        w = self.check_word(word)
        return sum(v * self.alphabet**i for i, v in enumerate(w)) - self._index_offset()

    def words_at(self, indices: np.ndarray) -> np.ndarray:
        idx = np.asarray(indices, dtype=np.int64) + self._index_offset()
        powers = self.alphabet ** np.arange(self.k, dtype=np.int64)
        return (idx[:, None] // powers[None, :]) % self.alphabet

    def domain(self) -> Iterator[tuple[int, ...]]:
        for i in range(self.K):
            yield self.word_at(i)

    def check_word(self, word: Sequence[int] | Word) -> tuple[int, ...]:
        w = tuple(int(v) for v in word)
        if len(w) != self.k:
            raise ValueError(f"expected a word of length {self.k}, got {len(w)}")
        if any(not 0 <= v < self.alphabet for v in w):
            raise ValueError(f"word {w} has entries outside [0, {self.alphabet})")
        if self._index_offset() and not any(w):
            raise ValueError("the all-zero word is excluded from this family's domain")
        return w

    # evaluation ----------------------------------------------------------

    def _values(self, words: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def values(self, words: np.ndarray) -> np.ndarray:
        """Function values for a batch of words, shape (len(words), N)."""
        words = np.asarray(words, dtype=np.int64).reshape(-1, self.k)
        return self._values(words)

    def values_at(self, indices: np.ndarray) -> np.ndarray:
        return self.values(self.words_at(indices))

    def hash_all(self, word: Sequence[int]) -> np.ndarray:
        return self.values(np.array([self.check_word(word)]))[0]

    def evaluate(self, i: int, word: Sequence[int]) -> int:
        if not 0 <= i < self.N:
            raise IndexError(f"function index {i} outside [0, {self.N})")
        return int(self.hash_all(word)[i])

    def __call__(self, i: int, word: Sequence[int]) -> FieldElement | int:
        v = self.evaluate(i, word)
        return FieldElement(v, self.q) if self.M == self.q else v

    def __len__(self) -> int:
        return self.N

    def to_dict(self) -> dict:
        d = self.descriptor
        return {
            "kind": d.kind,
            "q": self.q,
            "k": self.k,
            "n": self.params.get("n"),
            "N": d.N,
            "K": d.K,
            "M": d.M,
            "epsilon_claimed": float(d.epsilon_claimed),
            "params": {"epsilon_fraction": str(d.epsilon_claimed), **_jsonable(self.params)},
        }

    def __repr__(self) -> str:
        d = self.descriptor
        return f"<{type(self).__name__} N={d.N} K={d.K} M={d.M} eps={d.epsilon_claimed}>"


def _jsonable(params: dict) -> dict:
    out = {}
    for key, val in params.items():
        if isinstance(val, np.ndarray):
            val = val.tolist()
        elif isinstance(val, Fraction):
            val = str(val)
        out[key] = val
    return out


def _check_domain_size(base: int, k: int) -> int:
    K = base**k
    if K >= _INT64_SAFE:
        raise OverflowError(f"domain size {base}**{k} is too large to index")
    return K


class LinearFamily(HashFamily):
    """f_a(w) = sum_i a_i w_i over all a in (F_q)^k; the zero word is excluded."""

    kind = "linear"

    def _index_offset(self) -> int:
        return 1

    def coefficient_vector(self, i: int) -> tuple[int, ...]:
        return tuple((i // self.q**j) % self.q for j in range(self.k))

    def _values(self, words):
        coeffs = (np.arange(self.N, dtype=np.int64)[:, None] // (self.q ** np.arange(self.k))[None, :]) % self.q
        return matmul_mod(words, coeffs.T, self.q)


def linear_family(q: int, k: int) -> LinearFamily:
    q = check_modulus(q)
    if k < 1:
        raise ValueError("k must be >= 1")
    N = _check_domain_size(q, k)
    desc = HashFamilyDescriptor(N=N, K=N - 1, M=q, epsilon_claimed=Fraction(1, q), kind="linear")
    return LinearFamily(desc, q, k, q, {"n": None})


class FreivaldsFamily(HashFamily):
    """f_i(w) = w mod p_i, with the bit string w read as sum_j w_j 2**j."""

    kind = "freivalds"

    def _values(self, words):
        primes = np.asarray(self.params["primes"], dtype=np.int64)
        if self.k < 63:
            ints = words @ (2 ** np.arange(self.k, dtype=np.int64))
            return ints[:, None] % primes[None, :]
        ints = [sum(int(b) << j for j, b in enumerate(row)) for row in words]
        return np.array([[n % p for p in primes.tolist()] for n in ints], dtype=np.int64)


def freivalds_range(k: int, c: float) -> int:
    """M = ceil(c k ln k)."""
    return math.ceil(c * k * math.log(k))


def freivalds_family(k: int, c: int) -> FreivaldsFamily:
    if k < 2:
        raise ValueError("k must be >= 2")
    if not c > 1:
        raise ValueError("c must be > 1")
    M = freivalds_range(k, c)
    if M < 2:
        raise ValueError(f"range size M={M} < 2")
    primes = primes_up_to(M)
    K = _check_domain_size(2, k)
    eps = Fraction(1, c) if isinstance(c, int) else Fraction(1) / Fraction(c).limit_denominator(10**6)
    desc = HashFamilyDescriptor(N=len(primes), K=K, M=M, epsilon_claimed=eps, kind="freivalds")
    params = {
        "n": None,
        "c": c,
        "primes": primes,
        # rigorous collision bound from the prime-divisor count; 1/c holds only asymptotically
        "epsilon_divisor_bound": str(min(Fraction(1), Fraction(k, len(primes)))),
    }
    return FreivaldsFamily(desc, 2, k, 2, params)


class ReedSolomonFamily(HashFamily):
    """f_a(w) = P_w(a) = sum_i w_i a**i for each evaluation point a."""

    kind = "rs"

    def point(self, i: int) -> int:
        return self.params["points"][i]

    def _values(self, words):
        return matmul_mod(words, self.params["vandermonde"], self.q)

    def evaluate(self, i: int, word: Sequence[int]) -> int:
        w = self.check_word(word)
        return poly_eval(w, self.point(i), self.q)

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["params"].pop("vandermonde", None)
        return d


def rs_family(q: int, k: int, n: int, points: Sequence[int] | None = None) -> ReedSolomonFamily:
    q = check_modulus(q)
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    if n > q:
        raise ValueError(f"n={n} exceeds q={q}: not enough distinct evaluation points")
    pts = default_points(q, n) if points is None else check_points(points, q, n)
    K = _check_domain_size(q, k)
    vander = np.array([[pow(a, i, q) for a in pts] for i in range(k)], dtype=np.int64)
    desc = HashFamilyDescriptor(N=n, K=K, M=q, epsilon_claimed=Fraction(k - 1, n), kind="rs")
    return ReedSolomonFamily(desc, q, k, q, {"n": n, "points": pts, "vandermonde": vander})


class CodeFamily(HashFamily):
    """Function i returns coordinate i of the codeword."""

    kind = "code"

    def __init__(self, descriptor, code: BlockCode, params: dict):
        super().__init__(descriptor, code.q, code.k, code.q, params)
        self.code = code

    def _values(self, words):
        return self.code.encode_many(words)


def code_to_family(code: BlockCode) -> CodeFamily:
    """The (1 - d/n)-universal family of codeword coordinates."""
    K = _check_domain_size(code.q, code.k)
    if code.q < 2:
        raise ValueError("code alphabet must have at least two symbols")
    desc = HashFamilyDescriptor(
        N=code.n, K=K, M=code.q, epsilon_claimed=1 - Fraction(code.d, code.n), kind="code"
    )
    return CodeFamily(desc, code, {"n": code.n, "d": code.d, "code": code.name})


def rs_code_family(q: int, k: int, n: int, points: Sequence[int] | None = None) -> CodeFamily:
    return code_to_family(reed_solomon_code(q, k, n, points))


# collision census ----------------------------------------------------------


@dataclass
class EpsilonReport:
    epsilon_measured: Fraction
    worst_pair: tuple[tuple[int, ...], tuple[int, ...]]
    collisions: int
    pairs_examined: int
    mode: str
    seed: int | None = None
    epsilon_claimed: Fraction = field(default=Fraction(0))

    def to_dict(self) -> dict:
        return {
            "epsilon_measured": float(self.epsilon_measured),
            "epsilon_measured_fraction": str(self.epsilon_measured),
            "epsilon_claimed": float(self.epsilon_claimed),
            "worst_pair": [list(self.worst_pair[0]), list(self.worst_pair[1])],
            "collisions": self.collisions,
            "pairs_examined": self.pairs_examined,
            "mode": self.mode,
            "seed": self.seed,
        }


_ROW_CHUNK = 256
_SAMPLE_CHUNK = 4096


def _scan_rows(table: np.ndarray, start: int, stop: int) -> tuple[int, int, int]:
    """Best (count, a, b) over pairs a < b with a in [start, stop); ties keep the first pair."""
    best = (-1, 0, 1)
    for a in range(start, stop):
        if a + 1 >= len(table):
            break
        counts = (table[a + 1 :] == table[a]).sum(axis=1)
        j = int(np.argmax(counts))
        if counts[j] > best[0]:
            best = (int(counts[j]), a, a + 1 + j)
    return best


def _reduce(results: list[tuple[int, int, int]]) -> tuple[int, int, int]:
    # max count, then smallest pair index
    return min(results, key=lambda r: (-r[0], r[1], r[2]))


def measure_epsilon(
    family: HashFamily,
    mode: str = "exhaustive",
    pairs: int = 100_000,
    seed: int = 0,
    cap: int = DEFAULT_EVAL_CAP,
    workers: int = 1,
) -> EpsilonReport:
    """Largest fraction of functions under which a distinct pair collides.

    ``mode="exhaustive"`` examines every pair and is exact; ``"sampled"`` draws
    ``pairs`` random distinct pairs and gives a lower estimate.
    """
    K, N = family.K, family.N
    if mode == "exhaustive":
        total = K * (K - 1) // 2
        if total * N > cap:
            raise BudgetExceededError(
                f"exhaustive census needs {total * N} evaluations (cap {cap}); use sampled mode"
            )
        table = family.values_at(np.arange(K))
        spans = [(s, min(s + _ROW_CHUNK, K)) for s in range(0, K, _ROW_CHUNK)]
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                results = list(pool.map(lambda sp: _scan_rows(table, *sp), spans))
        else:
            results = [_scan_rows(table, *sp) for sp in spans]
        count, a, b = _reduce(results)
        examined = total
        used_seed = None
    elif mode == "sampled":
        if pairs < 1:
            raise ValueError("sampled mode needs pairs >= 1")
        chunks = [(c, min(_SAMPLE_CHUNK, pairs - c * _SAMPLE_CHUNK)) for c in range(-(-pairs // _SAMPLE_CHUNK))]

        def run(chunk):
            c, size = chunk
            i, j = sample_pairs(K, size, seed, c)
            counts = (family.values_at(i) == family.values_at(j)).sum(axis=1)
            t = int(np.argmax(counts))
            lo, hi = sorted((int(i[t]), int(j[t])))
            return int(counts[t]), lo, hi

        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                results = list(pool.map(run, chunks))
        else:
            results = [run(ch) for ch in chunks]
        count, a, b = _reduce(results)
        examined = pairs
        used_seed = seed
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return EpsilonReport(
        epsilon_measured=Fraction(count, N),
        worst_pair=(family.word_at(a), family.word_at(b)),
        collisions=count,
        pairs_examined=examined,
        mode=mode,
        seed=used_seed,
        epsilon_claimed=family.epsilon_claimed,
    )


def sample_pairs(K: int, size: int, seed: int, stream: int) -> tuple[np.ndarray, np.ndarray]:
    """``size`` uniform distinct index pairs from substream ``(seed, stream)``."""
    rng = np.random.default_rng([seed, stream])
    i = rng.integers(0, K, size=size)
    j = rng.integers(0, K - 1, size=size)
    j = j + (j >= i)
    return i, j


def pair_collision_counts(family: HashFamily) -> np.ndarray:
    """Collision count for every pair a < b, in lexicographic pair order."""
    table = family.values_at(np.arange(family.K))
    return np.concatenate(
        [(table[a + 1 :] == table[a]).sum(axis=1) for a in range(family.K - 1)]
    )
