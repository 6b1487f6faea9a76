"""Quantum hash generators: a function family plus an amplitude rule.

A generator G = {g_1..g_D} with an l-qubit amplitude rule maps a word w to

    |psi_G(w)> = 1/sqrt(D) sum_j |j> |psi_{g_j}(w)>

Index registers are rounded up to ceil(log2 D) qubits; padded branches carry
zero amplitude. Basis state |j>|x> has index ``j * 2**l + x`` (index register
high-order), and branch j is the 0-based position of g_j.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .codes import BlockCode
from .gf import FieldElement, check_modulus
from .qstate import QuantumState, inner_product
from .uhash import HashFamily

logger = logging.getLogger(__name__)

GENERATOR_KINDS = ("binary_fingerprint", "hdq", "composed", "custom")


def ceil_log2(n: int) -> int:
    if n < 1:
        raise ValueError("ceil_log2 needs n >= 1")
    return (n - 1).bit_length()


@dataclass(frozen=True)
class GeneratorSpec:
    """Size parameters of a generator.

    For composed generators ``d_qubits`` is ceil(log2 N) + ceil(log2 T), the
    two index registers side by side, which can exceed ceil(log2 (N T)).
    """

    D: int
    ell: int
    K: int
    delta_claimed: float
    kind: str
    d_qubits: int = -1
    s: int = field(init=False)

    def __post_init__(self) -> None:
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.D < 1 or self.ell < 1 or self.K < 1:
            raise ValueError("need D >= 1, ell >= 1 and K >= 1")
        if not 0 <= self.delta_claimed <= 1:
            raise ValueError(f"delta_claimed {self.delta_claimed} outside [0, 1]")
        d = ceil_log2(self.D) if self.d_qubits < 0 else self.d_qubits
        if d < ceil_log2(self.D):
            raise ValueError(f"{d} index qubits cannot address D={self.D} branches")
        object.__setattr__(self, "d_qubits", d)
        object.__setattr__(self, "s", d + self.ell)


@dataclass(frozen=True)
class BSet:
    """Distinct multipliers b_1..b_T in F_q for h_j(w) = b_j w mod q."""

    q: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        check_modulus(self.q)
        elems = tuple(int(b) for b in self.elements)
        object.__setattr__(self, "elements", elems)
        if not elems:
            raise ValueError("B must contain at least one element")
        if len(set(elems)) != len(elems):
            raise ValueError(f"B elements must be distinct, got {elems}")
        if any(not 0 <= b < self.q for b in elems):
            raise ValueError(f"B elements must lie in F_{self.q}")

    @property
    def T(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.T

    def __iter__(self):
        return iter(self.elements)


class QuantumHashGenerator:
    """Base class. Subclasses implement :meth:`_amplitudes` for a batch of domain indices."""

    kind = "custom"

    def __init__(self, spec: GeneratorSpec):
        self.spec = spec

    @property
    def K(self) -> int:
        return self.spec.K

    @property
    def num_qubits(self) -> int:
        return self.spec.s

    @property
    def delta_claimed(self) -> float:
        return self.spec.delta_claimed

    def index_of(self, word) -> int:
        raise NotImplementedError

    def word_at(self, index: int):
        raise NotImplementedError

    def _amplitudes(self, indices: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def amplitude_matrix(self, indices=None) -> np.ndarray:
        """Rows are the state vectors of the given domain indices (default: all)."""
        idx = np.arange(self.K) if indices is None else np.asarray(indices, dtype=np.int64).ravel()
        if idx.size and (idx.min() < 0 or idx.max() >= self.K):
            raise IndexError(f"domain index outside [0, {self.K})")
        return self._amplitudes(idx)

    def state(self, word) -> QuantumState:
        return QuantumState(self.amplitude_matrix([self.index_of(word)])[0])

    __call__ = state

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "K": self.K,
            "D": self.spec.D,
            "ell": self.spec.ell,
            "s": self.spec.s,
            "delta_claimed": self.spec.delta_claimed,
        }

    def __repr__(self) -> str:
        sp = self.spec
        return f"<{type(self).__name__} K={sp.K} D={sp.D} s={sp.s} delta={sp.delta_claimed:.6g}>"


def _word_index(word, k: int, alphabet: int) -> int:
    w = tuple(int(v) for v in word)
    if len(w) != k:
        raise ValueError(f"expected a word of length {k}, got {len(w)}")
    if any(not 0 <= v < alphabet for v in w):
        raise ValueError(f"word {w} has entries outside [0, {alphabet})")
    return sum(v * alphabet**i for i, v in enumerate(w))


class BinaryFingerprintGenerator(QuantumHashGenerator):
    """1/sqrt(n) sum_i |i>|E_i(w)> for a binary code E."""

    kind = "binary_fingerprint"

    def __init__(self, code: BlockCode):
        if code.q != 2:
            raise ValueError(f"binary fingerprint needs a binary code, got q={code.q}")
        self.code = code
        spec = GeneratorSpec(
            D=code.n, ell=1, K=2**code.k, delta_claimed=1 - code.d / code.n, kind=self.kind
        )
        super().__init__(spec)

    def index_of(self, word) -> int:
        return _word_index(word, self.code.k, 2)

    def word_at(self, index: int) -> tuple[int, ...]:
        return tuple((int(index) >> j) & 1 for j in range(self.code.k))

    def codeword_bits(self, indices: np.ndarray) -> np.ndarray:
        words = (np.asarray(indices)[:, None] >> np.arange(self.code.k)[None, :]) & 1
        return self.code.encode_many(words)

    def _amplitudes(self, indices):
        bits = self.codeword_bits(indices)
        out = np.zeros((len(indices), 2**self.spec.s), dtype=np.complex128)
        cols = 2 * np.arange(self.code.n)[None, :] + bits
        np.put_along_axis(out, cols, 1 / math.sqrt(self.code.n), axis=1)
        return out

    def rotation_amplitudes(self, indices) -> np.ndarray:
        """The cos/sin form with angle pi E_i(w) / 2, which must equal :meth:`_amplitudes`."""
        bits = self.codeword_bits(np.asarray(indices, dtype=np.int64))
        out = np.zeros((len(bits), 2**self.spec.s), dtype=np.complex128)
        theta = np.pi * bits / 2
        out[:, 0 : 2 * self.code.n : 2] = np.cos(theta) / math.sqrt(self.code.n)
        out[:, 1 : 2 * self.code.n : 2] = np.sin(theta) / math.sqrt(self.code.n)
        return out

    def to_dict(self) -> dict:
        return {**super().to_dict(), "q": 2, "k": self.code.k, "n": self.code.n, "code": self.code.describe()}


def binary_fingerprint_generator(code: BlockCode) -> BinaryFingerprintGenerator:
    return BinaryFingerprintGenerator(code)


def _as_field_value(w, q: int) -> int:
    if isinstance(w, FieldElement):
        if w.q != q:
            raise ValueError(f"modulus mismatch: {w.q} vs {q}")
        return w.value
    if isinstance(w, (tuple, list)) and len(w) == 1:
        w = w[0]
    v = int(w)
    if not 0 <= v < q:
        raise ValueError(f"{v} is not an element of F_{q}")
    return v


def rotation_pairs(values: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    theta = 2 * np.pi * (np.asarray(values, dtype=np.int64) % q) / q
    return np.cos(theta), np.sin(theta)


class HDQGenerator(QuantumHashGenerator):
    """The family h_j(w) = b_j w mod q with a single rotated target qubit."""

    kind = "hdq"

    def __init__(self, bset: BSet, delta_claimed: float | None = None):
        self.bset = bset
        if delta_claimed is None:
            delta_claimed = bset_resistance(bset)
        spec = GeneratorSpec(D=bset.T, ell=1, K=bset.q, delta_claimed=min(1.0, delta_claimed), kind=self.kind)
        super().__init__(spec)
        self._b = np.asarray(bset.elements, dtype=np.int64)

    @property
    def q(self) -> int:
        return self.bset.q

    def index_of(self, word) -> int:
        return _as_field_value(word, self.q)

    def word_at(self, index: int) -> int:
        return int(index)

    def _amplitudes(self, indices):
        T = self.bset.T
        c, s = rotation_pairs(np.outer(indices, self._b), self.q)
        out = np.zeros((len(indices), 2**self.spec.s), dtype=np.complex128)
        out[:, 0 : 2 * T : 2] = c / math.sqrt(T)
        out[:, 1 : 2 * T : 2] = s / math.sqrt(T)
        return out

    def to_dict(self) -> dict:
        return {**super().to_dict(), "q": self.q, "T": self.bset.T, "B": list(self.bset.elements)}


def hdq_generator(bset: BSet | Sequence[int], q: int | None = None) -> HDQGenerator:
    if not isinstance(bset, BSet):
        if q is None:
            raise ValueError("q is required when B is given as a plain sequence")
        bset = BSet(q, tuple(bset))
    return HDQGenerator(bset)


def hdq_state(bset: BSet, w) -> QuantumState:
    return HDQGenerator(bset, delta_claimed=1.0).state(w)


def hdq_inner_product_analytic(bset: BSet, w, w2) -> float:
    """(1/T) sum_j cos(2 pi b_j (w - w') / q)."""
    q = bset.q
    diff = (_as_field_value(w, q) - _as_field_value(w2, q)) % q
    return float(difference_overlaps(bset, [diff])[0])


def difference_overlaps(bset: BSet, diffs) -> np.ndarray:
    """Analytic overlap for each difference class (w - w') mod q."""
    b = np.asarray(bset.elements, dtype=np.int64)
    d = np.asarray(diffs, dtype=np.int64)
    c, _ = rotation_pairs(np.outer(d, b), bset.q)
    return c.mean(axis=1)


def bset_resistance(bset: BSet) -> float:
    """Exact max |overlap| over the q - 1 nonzero differences."""
    if bset.q < 2:
        return 0.0
    return float(np.abs(difference_overlaps(bset, np.arange(1, bset.q))).max())


class ComposedGenerator(QuantumHashGenerator):
    """G = F o H: branch (i, j) applies h_j to f_i(w).

    |psi_G(w)> = 1/sqrt(N) sum_i |i> (x) |psi_H(f_i(w))>
    """

    kind = "composed"

    def __init__(self, family: HashFamily, inner: QuantumHashGenerator):
        if family.M > inner.K:
            raise ValueError(
                f"family range size {family.M} does not fit the inner generator domain of size {inner.K}"
            )
        self.family = family
        self.inner = inner
        self.T = inner.spec.D
        N = family.N
        self.side_condition_ok = math.log2(family.K) > (
            math.log2(N) + math.log2(self.T) + inner.spec.ell
        )
        if not self.side_condition_ok:
            logger.warning(
                "log K > log N + log T + l fails (K=%d, N=%d, T=%d); the generator is still valid",
                family.K, N, self.T,
            )
        spec = GeneratorSpec(
            D=N * self.T,
            ell=inner.spec.ell,
            K=family.K,
            delta_claimed=min(1.0, float(family.epsilon_claimed) + inner.delta_claimed),
            kind=self.kind,
            d_qubits=ceil_log2(N) + inner.spec.d_qubits,
        )
        super().__init__(spec)
        self._inner_table: np.ndarray | None = None

    @property
    def N(self) -> int:
        return self.family.N

    def index_of(self, word) -> int:
        return self.family.index_of(word)

    def word_at(self, index: int) -> tuple[int, ...]:
        return self.family.word_at(index)

    def inner_table(self) -> np.ndarray:
        if self._inner_table is None:
            self._inner_table = self.inner.amplitude_matrix(np.arange(self.family.M))
        return self._inner_table

    def _amplitudes(self, indices):
        vals = self.family.values_at(indices)
        table = self.inner_table()
        dim_h = table.shape[1]
        out = np.zeros((len(indices), 2 ** ceil_log2(self.N), dim_h), dtype=np.complex128)
        out[:, : self.N, :] = table[vals] / math.sqrt(self.N)
        return out.reshape(len(indices), -1)

    def branch_values(self, word) -> np.ndarray:
        return self.family.hash_all(word)

    def to_dict(self) -> dict:
        d = {
            **super().to_dict(),
            "q": self.inner.to_dict().get("q"),
            "k": self.family.k,
            "n": self.family.params.get("n"),
            "N": self.N,
            "T": self.T,
            "side_condition_ok": self.side_condition_ok,
            "family": self.family.to_dict(),
            "inner": self.inner.to_dict(),
        }
        if isinstance(self.inner, HDQGenerator):
            d["B"] = list(self.inner.bset.elements)
        return d


def composed_generator(family: HashFamily, inner: QuantumHashGenerator) -> ComposedGenerator:
    return ComposedGenerator(family, inner)


def composed_state(family: HashFamily, inner: QuantumHashGenerator, w) -> QuantumState:
    return ComposedGenerator(family, inner).state(w)


def generator_qubits(g: QuantumHashGenerator) -> int:
    return g.spec.s


class FamilyGenerator(QuantumHashGenerator):
    """A generator from explicit functions and an arbitrary amplitude rule.

    ``amplitude_rule(v)`` returns the 2**ell amplitudes of the target register
    for the function value v.
    """

    def __init__(
        self,
        functions: Sequence[Callable],
        domain: Sequence,
        ell: int,
        amplitude_rule: Callable[[int], Sequence[complex]],
        delta_claimed: float = 1.0,
    ):
        self.functions = list(functions)
        self.domain = list(domain)
        self.amplitude_rule = amplitude_rule
        self._index = {self._key(w): i for i, w in enumerate(self.domain)}
        spec = GeneratorSpec(D=len(self.functions), ell=ell, K=len(self.domain), delta_claimed=delta_claimed, kind="custom")
        super().__init__(spec)

    @staticmethod
    def _key(w):
        return tuple(w) if isinstance(w, (list, tuple)) else int(w)

    def index_of(self, word) -> int:
        try:
            return self._index[self._key(word)]
        except KeyError:
            raise ValueError(f"{word!r} is not in the generator's domain") from None

    def word_at(self, index: int):
        return self.domain[index]

    def _amplitudes(self, indices):
        D, ell = self.spec.D, self.spec.ell
        out = np.zeros((len(indices), 2 ** self.spec.d_qubits, 2**ell), dtype=np.complex128)
        for r, i in enumerate(indices):
            w = self.domain[i]
            for j, g in enumerate(self.functions):
                out[r, j] = np.asarray(self.amplitude_rule(g(w)), dtype=np.complex128)
        return out.reshape(len(indices), -1) / math.sqrt(D)


def rotation_rule(q: int) -> Callable[[int], list[float]]:
    """v -> cos(2 pi v / q)|0> + sin(2 pi v / q)|1>."""
    return lambda v: [math.cos(2 * math.pi * (int(v) % q) / q), math.sin(2 * math.pi * (int(v) % q) / q)]


@dataclass
class OverlapDecomposition:
    """Per-branch split of <psi_G(w)|psi_G(w')> for a composed generator."""

    inner_product: complex
    branch_overlaps: np.ndarray
    bad: list[int]
    good: list[int]
    delta_inner: float

    @property
    def N(self) -> int:
        return len(self.branch_overlaps)

    @property
    def branch_average(self) -> complex:
        return complex(self.branch_overlaps.mean())

    @property
    def bound(self) -> float:
        """|I_bad|/N + (|I_good|/N) * delta_inner."""
        return len(self.bad) / self.N + len(self.good) / self.N * self.delta_inner


def decompose_overlap(g: ComposedGenerator, w, w2, delta_inner: float | None = None) -> OverlapDecomposition:
    fw, fw2 = g.branch_values(w), g.branch_values(w2)
    table = g.inner_table()
    branch = np.einsum("ij,ij->i", table[fw].conj(), table[fw2])
    bad = [i for i in range(g.N) if fw[i] == fw2[i]]
    good = [i for i in range(g.N) if fw[i] != fw2[i]]
    if delta_inner is None:
        delta_inner = g.inner.delta_claimed
    ip = inner_product(g.state(w), g.state(w2))
    return OverlapDecomposition(ip, branch, bad, good, delta_inner)
