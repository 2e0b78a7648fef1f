"""scikit-learn style wrapper around the loxodrome integrator.

``fit`` traces the loxodrome across the span of the given x values;
``predict`` returns ``y(x)`` from the dense output and ``transform`` returns
the embedded points ``Omega(x, y(x))``.

>>> import numpy as np
>>> est = LoxodromeTracer(family="type1", a=1, b=0, f="cosh(y)", g="sinh(y)",
...                       theta=1.0, y0=0.0, x_anchor=0.0)
>>> xs = np.linspace(-0.5, 0.5, 5)
>>> bool(np.allclose(est.fit(xs).predict(xs), -2 * np.arctanh(xs * np.tanh(1.0))))
True
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .loxodrome import LoxodromeSpec
from .solver import IntegrationConfig, Termination, angle_deviation, integrate_loxodrome
from .surfaces import TwistedSurface, embed_point


def _as_column(X) -> np.ndarray:
    X = np.asarray(X, dtype=float) if not hasattr(X, "shape") else X
    if np.ndim(X) == 1:
        X = np.reshape(X, (-1, 1))
    X = check_array(X, dtype=float)
    if X.shape[1] != 1:
        raise ValueError(f"expected a single column of x values, got {X.shape[1]} columns")
    return X[:, 0]


class LoxodromeTracer(TransformerMixin, BaseEstimator):
    """Loxodrome on a twisted surface as a fitted 1-D map ``x -> y``.

    Parameters mirror :class:`TwistedSurface`, :class:`LoxodromeSpec` and
    :class:`IntegrationConfig`.  ``x_anchor`` defaults to the smallest
    fitted x value.
    """

    def __init__(self, family="type1", a=1.0, b=0.0, f="cosh(y)", g="sinh(y)",
                 theta=1.0, q=1, branch=-1, y0=0.0, x_anchor=None,
                 rel_tol=1e-10, abs_tol=1e-12, max_samples=1001):
        self.family = family
        self.a = a
        self.b = b
        self.f = f
        self.g = g
        self.theta = theta
        self.q = q
        self.branch = branch
        self.y0 = y0
        self.x_anchor = x_anchor
        self.rel_tol = rel_tol
        self.abs_tol = abs_tol
        self.max_samples = max_samples

    def fit(self, X, y=None):
        xs = _as_column(X)
        anchor = float(xs.min()) if self.x_anchor is None else float(self.x_anchor)
        lo, hi = min(xs.min(), anchor), max(xs.max(), anchor)
        if lo == hi:
            raise ValueError("fit needs at least two distinct x values (or an anchor)")
        self.surface_ = TwistedSurface(self.family, self.a, self.b, self.f, self.g)
        self.spec_ = LoxodromeSpec(float(self.theta), self.q, self.branch)
        self.config_ = IntegrationConfig(float(lo), float(hi), float(self.y0),
                                         rel_tol=self.rel_tol, abs_tol=self.abs_tol,
                                         max_samples=self.max_samples,
                                         x_anchor=None if anchor == lo else anchor)
        self.trace_ = integrate_loxodrome(self.surface_, self.spec_, self.config_)
        self.terminated_ = self.trace_.terminated
        self.flags_ = self.trace_.flags_used
        self.arc_length_ = self.trace_.arc_length
        self.n_features_in_ = 1
        return self

    @property
    def completed_(self) -> bool:
        return self.terminated_ is Termination.COMPLETED

    def predict(self, X) -> np.ndarray:
        """``y(x)``; NaN where the trace did not reach ``x``."""
        check_is_fitted(self, "trace_")
        return self.trace_.y_at(_as_column(X))

    def transform(self, X) -> np.ndarray:
        """Embedded points, shape ``(n, 3)``; NaN rows where ``y`` is unknown."""
        xs = _as_column(X)
        ys = self.predict(xs)
        out = np.full((xs.size, 3), np.nan)
        for i, (x, y) in enumerate(zip(xs, ys)):
            if np.isfinite(y):
                out[i] = embed_point(self.surface_, float(x), float(y)).as_tuple()
        return out

    def angle_deviation(self) -> float | None:
        check_is_fitted(self, "trace_")
        return angle_deviation(self.trace_, self.surface_, self.spec_)
