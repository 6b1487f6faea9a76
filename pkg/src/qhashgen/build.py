"""Assemble families and generators from flat parameter sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .analysis import BSearchResult, best_bset_exhaustive, capped_set_size, hdq_set_size, search_bset
from .codes import BlockCode, reed_solomon_code, repetition_code, simplex_code
from .gf import smallest_prime_in
from .qgen import (
    BSet,
    ComposedGenerator,
    HDQGenerator,
    QuantumHashGenerator,
    binary_fingerprint_generator,
)
from .uhash import HashFamily, code_to_family, freivalds_family, linear_family, rs_family
from .validation import check_open_unit, check_positive_int, check_prime

FAMILY_KINDS = ("linear", "rs", "freivalds", "code")
CODE_KINDS = ("simplex", "repetition", "rs")


def build_code(code: str, *, m: int | None = None, n: int | None = None, q: int = 2, k: int | None = None) -> BlockCode:
    if code == "simplex":
        return simplex_code(check_positive_int(m if m is not None else 4, "m"))
    if code == "repetition":
        return repetition_code(check_positive_int(n if n is not None else 3, "n"), check_prime(q))
    if code == "rs":
        if k is None or n is None:
            raise ValueError("a Reed-Solomon code needs q, k and n")
        return reed_solomon_code(check_prime(q), k, n)
    raise ValueError(f"unknown code {code!r}; expected one of {CODE_KINDS}")


def build_family(
    kind: str,
    *,
    q: int | None = None,
    k: int | None = None,
    n: int | None = None,
    c: int | None = None,
    points: Sequence[int] | None = None,
    code: str | None = None,
    m: int | None = None,
) -> HashFamily:
    if kind == "linear":
        return linear_family(check_prime(q), check_positive_int(k, "k"))
    if kind == "rs":
        q = check_prime(q)
        return rs_family(q, check_positive_int(k, "k"), check_positive_int(n if n is not None else q - 1, "n"), points)
    if kind == "freivalds":
        return freivalds_family(check_positive_int(k, "k", 2), check_positive_int(c if c is not None else 2, "c", 2))
    if kind == "code":
        return code_to_family(build_code(code or "simplex", m=m, n=n, q=q if q is not None else 2, k=k))
    raise ValueError(f"unknown family kind {kind!r}; expected one of {FAMILY_KINDS}")


@dataclass
class InnerChoice:
    generator: HDQGenerator
    search: BSearchResult | None
    T_formula: int | None
    T_capped: bool

    def to_dict(self) -> dict:
        out = {"T_formula": self.T_formula, "T_capped": self.T_capped}
        if self.search is not None:
            out["search"] = self.search.to_dict()
        return out


def build_inner(
    q: int,
    *,
    bset: Sequence[int] | None = None,
    delta: float | None = None,
    T: int | None = None,
    restarts: int = 50,
    seed: int = 0,
    refine: bool = False,
    exhaustive: bool = False,
) -> InnerChoice:
    """An hdq generator over F_q from an explicit B, an exhaustive optimum, or a seeded search."""
    q = check_prime(q)
    if bset is not None:
        return InnerChoice(HDQGenerator(BSet(q, tuple(bset))), None, None, False)
    T_formula, capped = None, False
    if T is None:
        if delta is None:
            raise ValueError("give an explicit B, a set size T, or a target delta")
        T_formula = hdq_set_size(q, check_open_unit(delta))
        T, capped = capped_set_size(q, delta)
    T = check_positive_int(T, "T")
    if exhaustive:
        res = best_bset_exhaustive(q, T)
    else:
        target = delta if delta is not None else 1.0
        res = search_bset(q, target, T, restarts=check_positive_int(restarts, "restarts"), seed=seed, refine=refine)
    return InnerChoice(HDQGenerator(res.bset), res, T_formula, capped)


def inner_field_for(family: HashFamily, q: int | None = None) -> int:
    """Field for the inner generator: the family's own q, or for Freivalds the smallest prime in [M, 2M]."""
    if family.kind == "freivalds":
        if q is not None:
            q = check_prime(q)
            if q < family.M:
                raise ValueError(f"q={q} is smaller than the Freivalds range M={family.M}")
            return q
        return smallest_prime_in(family.M, 2 * family.M)
    return family.q


@dataclass
class Built:
    generator: QuantumHashGenerator
    inner: InnerChoice | None = None
    family: HashFamily | None = None

    def to_dict(self) -> dict:
        d = self.generator.to_dict()
        if self.inner is not None:
            d["inner_choice"] = self.inner.to_dict()
        return d


def build_generator(
    gen: str,
    *,
    family: str | None = None,
    code: str | None = None,
    q: int | None = None,
    k: int | None = None,
    n: int | None = None,
    m: int | None = None,
    c: int | None = None,
    points: Sequence[int] | None = None,
    bset: Sequence[int] | None = None,
    delta: float | None = None,
    T: int | None = None,
    restarts: int = 50,
    seed: int = 0,
    refine: bool = False,
    exhaustive_bset: bool = False,
) -> Built:
    inner_kw = dict(bset=bset, delta=delta, T=T, restarts=restarts, seed=seed, refine=refine, exhaustive=exhaustive_bset)
    if gen == "fingerprint":
        bcode = build_code(code or "simplex", m=m, n=n, q=2, k=k)
        return Built(binary_fingerprint_generator(bcode))
    if gen == "hdq":
        if q is None:
            raise ValueError("an hdq generator needs --q")
        inner = build_inner(q, **inner_kw)
        return Built(inner.generator, inner)
    if gen == "composed":
        fam = build_family(family or "rs", q=q, k=k, n=n, c=c, points=points, code=code, m=m)
        inner = build_inner(inner_field_for(fam, q if fam.kind == "freivalds" else None), **inner_kw)
        return Built(ComposedGenerator(fam, inner.generator), inner, fam)
    raise ValueError(f"unknown generator kind {gen!r}; expected fingerprint, hdq or composed")
