"""scikit-learn style wrappers so the membership table, verifier and census
can sit inside pipelines and be configured through ``get_params``/``set_params``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .census import census_even, census_odd
from .membership import FigurateSet, build_set, load_cache, save_cache
from .verifier import DEFAULT_CHUNK, verify_range, witness_for


def _as_targets(X, minimum: int) -> np.ndarray:
    X = check_array(X, dtype=np.int64, ensure_2d=False, ensure_all_finite=True)
    if X.size and X.min() < minimum:
        raise ValueError(f"all entries must be >= {minimum}, found {X.min()}")
    return X


class _SetMixin:
    """Builds (or loads) the membership table on ``fit``."""

    def _fit_set(self, needed: int) -> FigurateSet:
        max_n = self.max_n if self.max_n is not None else needed
        if max_n < max(needed, 1):
            raise ValueError(f"max_n={max_n} smaller than largest required index {needed}")
        fset = None
        if self.cache_path is not None:
            try:
                fset = load_cache(self.cache_path)
            except FileNotFoundError:
                fset = None
            if fset is not None and fset.max_n < max_n:
                fset = None
        if fset is None:
            fset = build_set(max(max_n, 1))
            if self.cache_path is not None:
                save_cache(fset, self.cache_path)
        return fset


class FigurateIndicator(_SetMixin, TransformerMixin, BaseEstimator):
    """Map integers to their figurate-prime indicator.

    Parameters
    ----------
    max_n : int or None
        Upper end of the membership table. ``None`` sizes it from the data
        seen in ``fit``.
    cache_path : str or None
        Optional cache file, read if present and large enough, else written.

    Attributes
    ----------
    set_ : FigurateSet
    """

    def __init__(self, max_n=None, cache_path=None):
        self.max_n = max_n
        self.cache_path = cache_path

    def fit(self, X=None, y=None):
        needed = 1 if X is None else int(_as_targets(X, 1).max(initial=1))
        self.set_ = self._fit_set(needed)
        self.n_values_ = len(self.set_)
        return self

    def transform(self, X):
        check_is_fitted(self, "set_")
        X = _as_targets(X, 1)
        if X.size and X.max() > self.set_.max_n:
            raise ValueError(f"entries exceed fitted max_n={self.set_.max_n}")
        return self.set_.flags[X].astype(np.int64)


class TwoSumVerifier(_SetMixin, BaseEstimator):
    """Predict the smallest figurate summand ``a`` of each target (0 if none).

    ``score`` returns the fraction of targets with a decomposition.
    """

    def __init__(self, max_n=None, cache_path=None, jobs=1, chunk_size=DEFAULT_CHUNK):
        self.max_n = max_n
        self.cache_path = cache_path
        self.jobs = jobs
        self.chunk_size = chunk_size

    def fit(self, X=None, y=None):
        needed = 2 if X is None else int(_as_targets(X, 2).max(initial=2))
        self.set_ = self._fit_set(needed)
        return self

    def predict(self, X):
        check_is_fitted(self, "set_")
        X = _as_targets(X, 2)
        out = np.zeros(X.shape, dtype=np.int64)
        for idx, n in np.ndenumerate(X):
            rec = witness_for(self.set_, int(n))
            out[idx] = 0 if rec is None else rec.a
        return out

    def score(self, X, y=None):
        return float(np.mean(self.predict(X) > 0))

    def verify(self, lo=2, hi=None):
        check_is_fitted(self, "set_")
        hi = self.set_.max_n if hi is None else hi
        return verify_range(self.set_, lo, hi, jobs=self.jobs, chunk_size=self.chunk_size)


class CensusTransformer(_SetMixin, TransformerMixin, BaseEstimator):
    """Turn half-targets ``n`` into census features.

    ``parity='even'`` yields columns ``(l, l1, l2)`` for target ``2n``;
    ``parity='odd'`` yields ``(m, m1, m2)`` for ``2n + 1``.
    """

    def __init__(self, parity="even", max_n=None, cache_path=None):
        self.parity = parity
        self.max_n = max_n
        self.cache_path = cache_path

    def fit(self, X, y=None):
        if self.parity not in ("even", "odd"):
            raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        X = _as_targets(X, 3 if self.parity == "even" else 1)
        top = int(X.max(initial=3))
        self.set_ = self._fit_set(2 * top)
        return self

    def transform(self, X):
        check_is_fitted(self, "set_")
        X = _as_targets(X, 3 if self.parity == "even" else 1).ravel()
        fn = census_even if self.parity == "even" else census_odd
        rows = []
        for n in X.tolist():
            c = fn(self.set_, n)
            rows.append(c.as_row()[2:])
        return np.asarray(rows, dtype=np.int64).reshape(-1, 3)

    def get_feature_names_out(self, input_features=None):
        names = ("l", "l1", "l2") if self.parity == "even" else ("m", "m1", "m2")
        return np.asarray(names, dtype=object)
