"""Resistance measurement, B-set search and the qubit-count bounds.

Logs are base 2 except the natural logs in the B-set size and the
Freivalds range, which follow the constructions they size.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gf import check_modulus, prime_count, smallest_prime_in
from .qgen import (
    BSet,
    ComposedGenerator,
    HDQGenerator,
    QuantumHashGenerator,
    bset_resistance,
    ceil_log2,
    difference_overlaps,
)
from .uhash import BudgetExceededError, freivalds_range, sample_pairs

DEFAULT_PAIR_BUDGET = 10**6
BOUND_TOL = 1e-9
MODES = ("exhaustive", "sampled", "difference")


@dataclass
class ResistanceReport:
    delta_measured: float
    delta_bound: float
    epsilon_used: float
    argmax_pair: tuple
    pairs_evaluated: int
    mode: str
    seed: int | None
    s_qubits: int
    s_lower_bound: float | None
    runtime_ms: int

    @property
    def exact(self) -> bool:
        return self.mode != "sampled"

    @property
    def within_bound(self) -> bool:
        return self.delta_measured <= self.delta_bound + BOUND_TOL

    def to_dict(self) -> dict:
        return {
            "delta_measured": self.delta_measured,
            "delta_bound": self.delta_bound,
            "epsilon_used": self.epsilon_used,
            "argmax_pair": [_plain(w) for w in self.argmax_pair],
            "pairs_evaluated": self.pairs_evaluated,
            "mode": self.mode,
            "seed": self.seed,
            "s_qubits": self.s_qubits,
            "s_lower_bound": self.s_lower_bound,
            "runtime_ms": self.runtime_ms,
        }


def _plain(w):
    return [int(v) for v in w] if isinstance(w, (tuple, list, np.ndarray)) else int(w)


@dataclass
class BSearchResult:
    bset: BSet
    delta_achieved: float
    restarts_used: int
    target_delta: float
    T: int
    achieved: bool

    def to_dict(self) -> dict:
        return {
            "bset": {"q": self.bset.q, "elements": list(self.bset.elements)},
            "delta_achieved": self.delta_achieved,
            "restarts_used": self.restarts_used,
            "target_delta": self.target_delta,
            "T": self.T,
            "achieved": self.achieved,
        }


# bounds ---------------------------------------------------------------------


def theoretical_delta(epsilon: float, delta_inner: float) -> float:
    """epsilon + delta, clamped to 1."""
    for name, v in (("epsilon", epsilon), ("delta", delta_inner)):
        if not 0 <= v <= 1:
            raise ValueError(f"{name}={v} outside [0, 1]")
    return min(1.0, float(epsilon) + float(delta_inner))


def _loglog(x: float) -> float:
    return math.log2(math.log2(x))


def qubit_lower_bound(K: int, delta: float) -> float:
    """Fewest qubits any delta-resistant map on a K-element domain can use.

    s >= log log K - log log(1 + sqrt(2 / (1 - delta))) - 1
    """
    if K < 2:
        raise ValueError("K must be >= 2")
    return qubit_lower_bound_log2(math.log2(K), delta)


def qubit_lower_bound_log2(log2K: float, delta: float) -> float:
    """:func:`qubit_lower_bound` taking log2 K, for domains too large to write out."""
    if log2K < 1:
        raise ValueError("log2 K must be >= 1")
    if not 0 <= delta < 1:
        raise ValueError(f"delta={delta} outside [0, 1)")
    return math.log2(log2K) - _loglog(1 + math.sqrt(2 / (1 - delta))) - 1


def hdq_set_size(q: int, delta: float) -> int:
    """T = ceil((2 / delta^2) ln(2q)), the B-set size that guarantees delta-resistance."""
    if not 0 < delta < 1:
        raise ValueError(f"delta={delta} outside (0, 1)")
    return math.ceil(2 / delta**2 * math.log(2 * q))


def capped_set_size(q: int, delta: float) -> tuple[int, bool]:
    """(min(T, q), whether the cap applied). B is a set, so T cannot exceed q."""
    T = hdq_set_size(q, delta)
    return min(T, q), T > q


def generic_qubit_upper_bound(N: int, q: int, delta: float) -> float:
    """log N + log log q + 2 log(1/delta) + 3 for any epsilon-U family composed with H."""
    return math.log2(N) + _loglog(q) + 2 * math.log2(1 / delta) + 3


def hdq_qubit_upper_bound(q: int, delta: float) -> float:
    return _loglog(2 * q) + 2 * math.log2(1 / delta) + 3


def linear_qubit_upper_bound(q: int, k: int, delta: float) -> float:
    return k * math.log2(q) + _loglog(q) + 2 * math.log2(1 / delta) + 3


def linear_qubit_lower_bound(q: int, k: int, delta: float) -> float:
    return math.log2(k) + _loglog(q) - _loglog(1 + math.sqrt(2 / (1 - delta))) - 1


def freivalds_qubit_upper_bound(k: int, c: float, q: int, delta: float) -> float:
    return math.log2(c * k) + _loglog(k) + _loglog(q) + 2 * math.log2(1 / delta) + 3


def code_qubit_upper_bound(n: int, q: int, delta: float) -> float:
    return math.log2(n) + _loglog(q) + 2 * math.log2(1 / delta) + 4


def rs_qubit_upper_bound(q: int, delta: float) -> float:
    return math.log2(q * math.log2(q)) + 2 * math.log2(1 / delta) + 4


def freivalds_parameters(k: int, c: float) -> dict:
    """M, pi(M) and the smallest prime q in [M, 2M] for the Freivalds construction."""
    M = freivalds_range(k, c)
    return {"M": M, "N": prime_count(M), "q": smallest_prime_in(M, 2 * M)}


def composed_qubits(N: int, T: int, ell: int = 1) -> int:
    return ceil_log2(N) + ceil_log2(T) + ell


# resistance -----------------------------------------------------------------

_GRAM_ROWS = 512


def _scan_gram(states: np.ndarray, start: int, stop: int) -> tuple[float, int, int]:
    block = np.abs(states[start:stop].conj() @ states.T)
    rows = np.arange(start, stop)[:, None]
    block[np.arange(states.shape[0])[None, :] <= rows] = -1.0
    flat = int(np.argmax(block))
    r, c = divmod(flat, block.shape[1])
    return float(block[r, c]), start + r, c


def _best(results):
    # max overlap; near-ties go to the smallest pair index
    top = max(r[0] for r in results)
    return min((r for r in results if r[0] >= top - 1e-12), key=lambda r: (r[1], r[2]))


def measure_resistance(
    g: QuantumHashGenerator,
    mode: str = "exhaustive",
    budget: int = DEFAULT_PAIR_BUDGET,
    seed: int = 0,
    workers: int = 1,
) -> ResistanceReport:
    """Max |<psi(w)|psi(w')>| over distinct pairs.

    ``exhaustive`` checks every pair, ``difference`` uses the shift invariance of
    hdq generators (q - 1 classes), ``sampled`` draws ``budget`` random pairs and
    yields a lower estimate.
    """
    t0 = time.perf_counter()
    K = g.K
    if K < 2:
        raise ValueError("resistance needs a domain with at least two elements")
    used_seed = None
    if mode == "exhaustive":
        total = K * (K - 1) // 2
        if total > budget:
            raise BudgetExceededError(
                f"{total} pairs exceed the budget {budget}; use sampled or difference mode"
            )
        states = g.amplitude_matrix()
        spans = [(s, min(s + _GRAM_ROWS, K)) for s in range(0, K - 1, _GRAM_ROWS)]
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                results = list(pool.map(lambda sp: _scan_gram(states, *sp), spans))
        else:
            results = [_scan_gram(states, *sp) for sp in spans]
        value, a, b = _best(results)
        pairs = total
    elif mode == "difference":
        if not isinstance(g, HDQGenerator):
            raise ValueError("difference mode applies only to hdq generators")
        overlaps = np.abs(difference_overlaps(g.bset, np.arange(1, g.q)))
        d = int(np.argmax(overlaps))
        value, a, b = float(overlaps[d]), 0, d + 1
        pairs = g.q - 1
    elif mode == "sampled":
        if budget < 1:
            raise ValueError("sampled mode needs budget >= 1")
        chunk = 4096
        parts = [(c, min(chunk, budget - c * chunk)) for c in range(-(-budget // chunk))]

        def run(part):
            c, size = part
            i, j = sample_pairs(K, size, seed, c)
            si, sj = g.amplitude_matrix(i), g.amplitude_matrix(j)
            ov = np.abs(np.einsum("ij,ij->i", si.conj(), sj))
            t = int(np.argmax(ov))
            lo, hi = sorted((int(i[t]), int(j[t])))
            return float(ov[t]), lo, hi

        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                results = list(pool.map(run, parts))
        else:
            results = [run(p) for p in parts]
        value, a, b = _best(results)
        pairs = budget
        used_seed = seed
    else:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")

    value = min(value, 1.0) if value <= 1.0 + BOUND_TOL else value
    eps, bound = _bound_for(g)
    lower = qubit_lower_bound(K, value) if value < 1 else None
    return ResistanceReport(
        delta_measured=value,
        delta_bound=bound,
        epsilon_used=eps,
        argmax_pair=(g.word_at(a), g.word_at(b)),
        pairs_evaluated=pairs,
        mode=mode,
        seed=used_seed,
        s_qubits=g.spec.s,
        s_lower_bound=lower,
        runtime_ms=int((time.perf_counter() - t0) * 1000),
    )


def inner_resistance(g: QuantumHashGenerator) -> float:
    """Exact resistance of a generator when cheaply available, else its claim."""
    if isinstance(g, HDQGenerator):
        return bset_resistance(g.bset)
    return g.delta_claimed


def _bound_for(g: QuantumHashGenerator) -> tuple[float, float]:
    if isinstance(g, ComposedGenerator):
        eps = float(g.family.epsilon_claimed)
        return eps, theoretical_delta(min(eps, 1.0), inner_resistance(g.inner))
    return 0.0, g.delta_claimed


def check_qubit_lower_bound(report: ResistanceReport, K: int) -> bool | None:
    """Whether s_qubits respects the lower bound at delta_measured; None when delta >= 1."""
    if report.delta_measured >= 1:
        return None
    return report.s_qubits >= qubit_lower_bound(K, report.delta_measured) - BOUND_TOL


# B-set search -----------------------------------------------------------------


def bset_score(q: int, elements: Sequence[int]) -> float:
    return bset_resistance(BSet(q, tuple(elements)))


def _greedy_refine(q: int, elems: list[int], score: float) -> tuple[list[int], float]:
    improved = True
    while improved:
        improved = False
        members = set(elems)
        for pos in range(len(elems)):
            for cand in range(q):
                if cand in members:
                    continue
                trial = elems[:pos] + [cand] + elems[pos + 1 :]
                s = bset_score(q, trial)
                if s < score - 1e-15:
                    members.discard(elems[pos])
                    members.add(cand)
                    elems, score, improved = trial, s, True
    return sorted(elems), score


def search_bset(
    q: int,
    delta_target: float,
    T: int,
    restarts: int = 50,
    seed: int = 0,
    refine: bool = False,
) -> BSearchResult:
    """Random restarts over size-T subsets of F_q, scored exactly by difference class.

    Restart r draws from the substream ``(seed, r)``. Returns the first subset
    reaching ``delta_target``, otherwise the best one seen.
    """
    q = check_modulus(q)
    if T < 1:
        raise ValueError("T must be >= 1")
    if T > q:
        raise ValueError(
            f"T={T} exceeds q={q}: a set B in F_q has at most q elements; cap T at q"
        )
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    best: tuple[float, list[int]] | None = None
    used = 0
    for r in range(restarts):
        used = r + 1
        rng = np.random.default_rng([seed, r])
        elems = sorted(int(b) for b in rng.choice(q, size=T, replace=False))
        score = bset_score(q, elems)
        if refine:
            elems, score = _greedy_refine(q, elems, score)
        if best is None or score < best[0]:
            best = (score, elems)
        if score <= delta_target:
            break
    score, elems = best
    return BSearchResult(
        bset=BSet(q, tuple(elems)),
        delta_achieved=score,
        restarts_used=used,
        target_delta=delta_target,
        T=T,
        achieved=score <= delta_target,
    )


def best_bset_exhaustive(q: int, T: int) -> BSearchResult:
    """The size-T subset with the smallest resistance; ties go to the first in lexicographic order."""
    q = check_modulus(q)
    if not 1 <= T <= q:
        raise ValueError(f"T={T} outside [1, q={q}]")
    if math.comb(q, T) > 10**6:
        raise BudgetExceededError(f"C({q},{T}) subsets is too many to enumerate")
    best = None
    for comb in itertools.combinations(range(q), T):
        s = bset_score(q, comb)
        if best is None or s < best[0] - 1e-15:
            best = (s, comb)
    score, elems = best
    return BSearchResult(BSet(q, elems), score, math.comb(q, T), score, T, True)
