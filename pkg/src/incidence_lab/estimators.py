"""scikit-learn style wrappers over the functional API.

Inputs are point sets: a :class:`PointSet`, or any sequence (or integer / object
numpy array) of exact coordinates. Float arrays are refused.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .audit import audit_config
from .exact import PointSet, as_point
from .incidence import enumerate_objects
from .transforms import invert, project_from_point

__all__ = [
    "check_point_set",
    "IncidenceCounter",
    "Inversion",
    "CentralProjection",
    "BoundAuditor",
]


def check_point_set(X, dim: int | None = None) -> PointSet:
    """Coerce ``X`` to a PointSet, checking dimension and exactness."""
    if isinstance(X, PointSet):
        S = X
    else:
        if isinstance(X, np.ndarray):
            if X.dtype.kind == "f":
                raise TypeError("float arrays are not exact; pass integers, Fractions or 'num/den' strings")
            if X.ndim != 2:
                raise ValueError(f"expected a 2-D array of points, got shape {X.shape}")
            X = X.tolist()
        S = PointSet([as_point(p) for p in X])
    if dim is not None and S.dim != dim:
        raise ValueError(f"expected {dim}D points, got {S.dim}D")
    return S


def _check_fitted(est, attr):
    if not hasattr(est, attr):
        raise NotFittedError(f"{type(est).__name__} is not fitted yet; call fit first")


class IncidenceCounter(BaseEstimator):
    """Enumerate determined objects of one kind. ``fit`` sets ``objects_`` and ``profile_``."""

    def __init__(self, kind: str = "lines", jobs: int = 1, max_quadruples: int | None = None):
        self.kind = kind
        self.jobs = jobs
        self.max_quadruples = max_quadruples

    def fit(self, X, y=None):
        S = check_point_set(X)
        kw = {"jobs": self.jobs}
        if self.max_quadruples is not None:
            kw["max_quadruples"] = self.max_quadruples
        enum = enumerate_objects(S, self.kind, **kw)
        self.n_points_ = len(S)
        self.objects_ = enum.objects
        self.profile_ = enum.profile()
        return self


class Inversion(TransformerMixin, BaseEstimator):
    """Unit inversion about ``center``. It is an involution, so
    ``inverse_transform`` is ``transform``."""

    def __init__(self, center=None):
        self.center = center

    def fit(self, X, y=None):
        S = check_point_set(X)
        if self.center is None:
            raise ValueError("Inversion needs a center")
        self.center_ = as_point(self.center)
        if len(self.center_) != S.dim:
            raise ValueError(f"center has dimension {len(self.center_)}, points have {S.dim}")
        self.dim_ = S.dim
        return self

    def transform(self, X) -> PointSet:
        _check_fitted(self, "center_")
        return invert(check_point_set(X, self.dim_), self.center_)

    def inverse_transform(self, X) -> PointSet:
        return self.transform(X)


class CentralProjection(TransformerMixin, BaseEstimator):
    """Project a 3D set from one of its points (``anchor`` is an index)."""

    def __init__(self, anchor: int = 0):
        self.anchor = anchor

    def fit(self, X, y=None):
        self.projection_ = project_from_point(check_point_set(X, 3), self.anchor)
        return self

    def transform(self, X) -> np.ndarray:
        """Primitive integer directions, one row per non-anchor point."""
        proj = project_from_point(check_point_set(X, 3), self.anchor)
        return np.array(proj.points, dtype=object).reshape(len(proj.points), 3)

    def fit_transform(self, X, y=None, **fit_params):
        self.fit(X)
        return np.array(self.projection_.points, dtype=object).reshape(len(self.projection_.points), 3)


class BoundAuditor(BaseEstimator):
    """Run the full audit on ``fit``; ``report_`` holds the AuditReport."""

    def __init__(self, spheres: bool | None = None, jobs: int = 1, max_quadruples: int | None = None):
        self.spheres = spheres
        self.jobs = jobs
        self.max_quadruples = max_quadruples

    def fit(self, X, y=None, claims=None):
        S = check_point_set(X)
        self.report_ = audit_config(
            S, spheres=self.spheres, claims=claims, jobs=self.jobs, max_quadruples=self.max_quadruples
        )
        return self

    def score(self, X=None, y=None) -> float:
        """Fraction of applicable entries that pass (1.0 when none apply)."""
        _check_fitted(self, "report_")
        applicable = [e for e in self.report_.entries if e.applicable]
        if not applicable:
            return 1.0
        return sum(e.verdict == "pass" for e in applicable) / len(applicable)
