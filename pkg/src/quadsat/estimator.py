"""scikit-learn style wrapper around the greedy construction."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .bounds import bound_a
from .field import FieldError, field_of_order, prime_power
from .geometry import ProjectiveSpace3
from .quadric import EllipticQuadric
from .saturator import GreedyConfig, run, verify_2saturating

# beyond this the full greedy scan gets slow; randomized-greedy still works
GREEDY_MAX_Q = 128


def check_prime_power(q) -> int:
    if isinstance(q, bool) or not isinstance(q, (int, np.integer)):
        raise TypeError(f"q must be an integer, got {type(q).__name__}")
    q = int(q)
    if prime_power(q) is None:
        raise FieldError(f"{q} is not a prime power")
    return q


class GreedySaturator(BaseEstimator):
    """Builds a 2-saturating subset of the elliptic quadric in PG(3, q).

    ``fit`` ignores X and y; they exist so the estimator drops into
    pipelines and ``clone``.  After fitting:

    saturating_set_ : ndarray of point indices, in the order chosen
    n_ : size of the set
    trace_ : per-step RunTrace
    bound_a_ : the Bound A recurrence for the same q
    quadric_ : the EllipticQuadric used
    """

    def __init__(self, q=5, strategy="greedy-max", seed=0, pool_size=50, line_rule=False, delta_method="auto"):
        self.q = q
        self.strategy = strategy
        self.seed = seed
        self.pool_size = pool_size
        self.line_rule = line_rule
        self.delta_method = delta_method

    def _config(self) -> GreedyConfig:
        return GreedyConfig(
            strategy=self.strategy,
            seed=int(self.seed),
            pool_size=int(self.pool_size),
            line_rule=bool(self.line_rule),
            delta_method=self.delta_method,
        )

    def fit(self, X=None, y=None):
        q = check_prime_power(self.q)
        cfg = self._config()
        if cfg.strategy == "greedy-max" and q > GREEDY_MAX_Q:
            raise ValueError(f"greedy-max is limited to q <= {GREEDY_MAX_Q}; use randomized-greedy")
        space = ProjectiveSpace3(field_of_order(q))
        self.quadric_ = EllipticQuadric(space)
        self.bound_a_ = bound_a(q)
        result, trace = run(self.quadric_, cfg, self.bound_a_.trajectory)
        self.saturating_set_ = np.asarray(result.points, dtype=np.int64)
        self.trace_ = trace
        self.n_ = len(result)
        return self

    def transform(self, X=None):
        """Canonical coordinates of the chosen points, one row per point."""
        check_is_fitted(self, "saturating_set_")
        return self.quadric_.space.points[self.saturating_set_]

    def verify(self) -> bool:
        check_is_fitted(self, "saturating_set_")
        return verify_2saturating(self.quadric_.space, self.saturating_set_).ok
