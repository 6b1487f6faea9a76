"""Exact arithmetic in prime fields F_q.

Only prime moduli below 2**31 are supported. Elements are plain integers
wrapped in a small immutable value type; all arithmetic stays in Python ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_MODULUS = 2**31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_modulus(q: int) -> int:
    """Validate a field modulus and return it as an int."""
    if isinstance(q, bool) or not isinstance(q, (int, np.integer)):
        raise TypeError(f"modulus must be an integer, got {type(q).__name__}")
    q = int(q)
    if q >= MAX_MODULUS:
        raise ValueError(f"modulus {q} exceeds the supported limit 2**31")
    if not is_prime(q):
        # prime powers are valid in general but extension fields are not implemented
        raise ValueError(f"modulus {q} is not prime; only prime fields are supported")
    return q


@dataclass(frozen=True)
class FieldElement:
    value: int
    q: int

    def __post_init__(self) -> None:
        check_modulus(self.q)
        if not 0 <= self.value < self.q:
            raise ValueError(f"value {self.value} outside [0, {self.q})")

    @classmethod
    def of(cls, value: int, q: int) -> "FieldElement":
        """Reduce an arbitrary integer into F_q."""
        return cls(int(value) % q, q)

    def _coerce(self, other: "FieldElement | int") -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.q != self.q:
                raise ValueError(f"modulus mismatch: {self.q} vs {other.q}")
            return other
        if isinstance(other, (int, np.integer)):
            return FieldElement.of(int(other), self.q)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value + o.value) % self.q, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value - o.value) % self.q, self.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.value % self.q, self.q)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return fp_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return fp_mul(self, fp_inv(o))

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return fp_pow(fp_inv(self), -e)
        return fp_pow(self, e)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FieldElement({self.value} mod {self.q})"


def fp_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    if a.q != b.q:
        raise ValueError(f"modulus mismatch: {a.q} vs {b.q}")
    return FieldElement(a.value * b.value % a.q, a.q)


def fp_inv(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise ZeroDivisionError("zero has no multiplicative inverse")
    return FieldElement(pow(a.value, -1, a.q), a.q)


def fp_pow(a: FieldElement, e: int) -> FieldElement:
    """a**e in F_q, with 0**0 == 1."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return FieldElement(pow(a.value, int(e), a.q), a.q)


@dataclass(frozen=True)
class Word:
    """A length-k vector over F_q, element 0 first (w_0 ... w_{k-1})."""

    values: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        check_modulus(self.q)
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 1:
            raise ValueError("words must have length k >= 1")
        bad = [v for v in vals if not 0 <= v < self.q]
        if bad:
            raise ValueError(f"word entries {bad} outside F_{self.q}")

    @classmethod
    def from_elements(cls, elems: Sequence[FieldElement]) -> "Word":
        moduli = {e.q for e in elems}
        if len(moduli) != 1:
            raise ValueError(f"word elements carry mixed moduli {sorted(moduli)}")
        return cls(tuple(e.value for e in elems), moduli.pop())

    @classmethod
    def from_int(cls, n: int, q: int, k: int) -> "Word":
        """Little-endian base-q digits of n: n = w_0 + w_1 q + ... ."""
        if not 0 <= n < q**k:
            raise ValueError(f"{n} outside [0, {q}**{k})")
        digits = []
        for _ in range(k):
            n, r = divmod(n, q)
            digits.append(r)
        return cls(tuple(digits), q)

    @classmethod
    def parse(cls, text: str, q: int, k: int | None = None) -> "Word":
        """Parse ``"2,1"`` or, for q=2, a bit string such as ``"0110"``."""
        text = text.strip()
        if "," in text or q != 2:
            vals = tuple(int(t) for t in text.split(",") if t.strip() != "")
        else:
            if set(text) - {"0", "1"}:
                raise ValueError(f"not a bit string: {text!r}")
            vals = tuple(int(ch) for ch in text)
        if k is not None and len(vals) != k:
            raise ValueError(f"expected a word of length {k}, got {len(vals)}")
        return cls(vals, q)

    @property
    def k(self) -> int:
        return len(self.values)

    @property
    def elems(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(v, self.q) for v in self.values)

    def to_int(self) -> int:
        return sum(v * self.q**i for i, v in enumerate(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.values))


def primes_up_to(M: int) -> list[int]:
    """Sieve of Eratosthenes; ``len(primes_up_to(M))`` is pi(M)."""
    if M < 2:
        return []
    sieve = np.ones(M + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(M) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def prime_count(M: int) -> int:
    return len(primes_up_to(M))


def smallest_prime_in(lo: int, hi: int) -> int:
    """Smallest prime p with lo <= p <= hi."""
    for n in range(max(lo, 2), hi + 1):
        if is_prime(n):
            return n
    raise ValueError(f"no prime in [{lo}, {hi}]")


def poly_eval(coeffs: Iterable[int], x: int, q: int) -> int:
    """Horner evaluation of sum_i coeffs[i] x**i mod q."""
    acc = 0
    for c in reversed(list(coeffs)):
        acc = (acc * x + c) % q
    return acc
