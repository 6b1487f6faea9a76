"""scikit-learn style wrappers: ``fit`` builds a generator, ``transform`` hashes words into states."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .analysis import ResistanceReport, measure_resistance
from .build import build_code, build_generator
from .qgen import ComposedGenerator, HDQGenerator, QuantumHashGenerator, binary_fingerprint_generator
from .qstate import QuantumState
from .validation import check_words


class _GeneratorTransformer(TransformerMixin, BaseEstimator):
    """Shared transform/score logic once ``generator_`` is set by ``fit``."""

    def _word_spec(self) -> tuple[int, int, bool]:
        g = self.generator_
        if isinstance(g, HDQGenerator):
            return 1, g.q, False
        if isinstance(g, ComposedGenerator):
            fam = g.family
            return fam.k, fam.alphabet, fam.kind == "linear"
        return g.code.k, 2, False

    def _indices(self, X) -> np.ndarray:
        k, alphabet, exclude_zero = self._word_spec()
        X = check_words(X, k=k, alphabet=alphabet, exclude_zero=exclude_zero)
        idx = X @ (alphabet ** np.arange(k, dtype=np.int64))
        return idx - 1 if exclude_zero else idx

    def transform(self, X):
        """Amplitude rows, shape (n_samples, 2**s), complex."""
        check_is_fitted(self, "generator_")
        return self.generator_.amplitude_matrix(self._indices(X))

    def states(self, X) -> list[QuantumState]:
        return [QuantumState(row) for row in self.transform(X)]

    def overlaps(self, X, X2=None) -> np.ndarray:
        """|<psi(x)|psi(x')>| between the rows of X and X2."""
        A = self.transform(X)
        B = A if X2 is None else self.transform(X2)
        return np.abs(A.conj() @ B.T)

    def score(self, X, y=None) -> float:
        """1 minus the worst overlap among distinct words in X; higher separates better."""
        idx = np.unique(self._indices(X))
        if idx.size < 2:
            raise ValueError("score needs at least two distinct words")
        S = self.generator_.amplitude_matrix(idx)
        G = np.abs(S.conj() @ S.T)
        np.fill_diagonal(G, 0.0)
        return 1.0 - float(G.max())

    def resistance(self, mode: str = "exhaustive", budget: int = 10**6, seed: int = 0) -> ResistanceReport:
        check_is_fitted(self, "generator_")
        return measure_resistance(self.generator_, mode=mode, budget=budget, seed=seed)

    @property
    def n_qubits_(self) -> int:
        check_is_fitted(self, "generator_")
        return self.generator_.spec.s


class QuantumHashTransformer(_GeneratorTransformer):
    """A universal hash family composed with the rotation generator over F_q.

    Parameters
    ----------
    family : {"rs", "linear", "freivalds", "code"} or None
        Classical family; ``None`` hashes single field elements with the
        rotation generator alone.
    q : int, optional
        Field size (prime). For Freivalds it defaults to the smallest prime in [M, 2M].
    k : int, optional
        Word length. Inferred from ``X`` in ``fit`` when omitted.
    n : int, optional
        Reed-Solomon evaluation points (default q - 1).
    c : int
        Freivalds range constant.
    delta : float
        Target resistance of the inner rotation generator; sets its set size.
    bset : sequence of int, optional
        Explicit multipliers; skips the search.
    bset_size : int, optional
        Overrides the set size derived from ``delta``.
    restarts : int
        Random restarts for the multiplier search.
    refine : bool
        Greedy swap pass after each restart.
    random_state : int
        Seed for the search.
    """

    def __init__(
        self,
        family="rs",
        q=None,
        k=None,
        n=None,
        c=2,
        delta=0.35,
        bset=None,
        bset_size=None,
        restarts=50,
        refine=False,
        random_state=0,
    ):
        self.family = family
        self.q = q
        self.k = k
        self.n = n
        self.c = c
        self.delta = delta
        self.bset = bset
        self.bset_size = bset_size
        self.restarts = restarts
        self.refine = refine
        self.random_state = random_state

    def fit(self, X=None, y=None):
        k = self.k
        if X is not None:
            X = check_words(X)
            if k is None:
                k = X.shape[1]
            elif X.shape[1] != k:
                raise ValueError(f"X has {X.shape[1]} features, but k={k}")
            self.n_features_in_ = X.shape[1]
        built = build_generator(
            "hdq" if self.family is None else "composed",
            family=self.family,
            q=self.q,
            k=k,
            n=self.n,
            c=self.c,
            bset=self.bset,
            delta=self.delta,
            T=self.bset_size,
            restarts=self.restarts,
            seed=self.random_state,
            refine=self.refine,
        )
        self.generator_: QuantumHashGenerator = built.generator
        self.family_ = built.family
        self.search_result_ = built.inner.search if built.inner else None
        self.bset_ = built.inner.generator.bset
        return self


class FingerprintTransformer(_GeneratorTransformer):
    """Binary fingerprint states 1/sqrt(n) sum_i |i>|E_i(w)> for a binary code.

    ``code`` is ``"simplex"`` (with ``m``), ``"repetition"`` (with ``n``) or a
    :class:`~qhashgen.codes.BlockCode` instance over F_2.
    """

    def __init__(self, code="simplex", m=4, n=None):
        self.code = code
        self.m = m
        self.n = n

    def fit(self, X=None, y=None):
        code = self.code if not isinstance(self.code, str) else build_code(self.code, m=self.m, n=self.n)
        self.generator_ = binary_fingerprint_generator(code)
        if X is not None:
            self.n_features_in_ = check_words(X, k=code.k, alphabet=2).shape[1]
        return self
