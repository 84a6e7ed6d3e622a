"""Parity-check matrices from point sets and exhaustive checks of d and R.

A set of n points of PG(3,q) written as columns gives a 4 x n parity-check
matrix; the set is 2-saturating exactly when the code has covering radius
at most 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .field import FieldSpec
from .geometry import ProjectiveSpace3, cross3, matrix_rank

MAX_DISTANCE_N = 60
MAX_DISTANCE_Q = 13
MAX_SYNDROME_Q = 9


class DegenerateSetError(ValueError):
    pass


class SizeLimitError(ValueError):
    pass


@dataclass
class CodeSpec:
    F: FieldSpec
    H: np.ndarray  # shape (4, n)

    @property
    def q(self) -> int:
        return self.F.q

    @property
    def n(self) -> int:
        return self.H.shape[1]

    @property
    def r(self) -> int:
        return self.H.shape[0]

    def dump(self) -> str:
        return "\n".join(" ".join(str(int(x)) for x in row) for row in self.H)


def parity_check_from_set(space: ProjectiveSpace3, S, check_rank: bool = True) -> CodeSpec:
    S = [int(x) for x in S]
    if len(set(S)) != len(S):
        raise DegenerateSetError("points must be distinct")
    if check_rank and len(S) < 4:
        raise DegenerateSetError("need at least 4 points")
    H = space.points[S].T.copy()
    if check_rank and matrix_rank(space.F, H.T) < 4:
        raise DegenerateSetError("columns do not span F_q^4")
    return CodeSpec(space.F, H)


def min_distance(C: CodeSpec) -> int | None:
    """Minimum distance if it is at most 4, else None (meaning d >= 5).

    Columns are distinct projective points, so d >= 3; d = 3 iff three
    columns are collinear, d = 4 iff four columns are coplanar.
    """
    if C.n > MAX_DISTANCE_N or C.q > MAX_DISTANCE_Q:
        raise SizeLimitError(f"min_distance limited to n <= {MAX_DISTANCE_N}, q <= {MAX_DISTANCE_Q}")
    F = C.F
    X = C.H.T
    n = len(X)
    if n < 3:
        return None
    T = np.array(list(combinations(range(n), 3)), dtype=np.int64)
    N = cross3(F, X[T[:, 0]], X[T[:, 1]], X[T[:, 2]])
    if (~N.any(axis=1)).any():
        return 3
    # a fourth column on the plane of some triple
    on = F.dot(N[:, None, :], X[None, :, :]) == 0  # (triples, n)
    on[np.arange(len(T))[:, None], T] = False
    if on.any():
        return 4
    return None


def _encode(q: int, V: np.ndarray) -> np.ndarray:
    return ((V[..., 0] * q + V[..., 1]) * q + V[..., 2]) * q + V[..., 3]


def _decode(q: int, s: np.ndarray) -> np.ndarray:
    out = np.empty(s.shape + (4,), dtype=np.int64)
    for i in range(3, -1, -1):
        out[..., i] = s % q
        s = s // q
    return out


def syndrome_levels(C: CodeSpec, max_weight: int = 3) -> list[np.ndarray]:
    """Sets of syndromes reachable with exactly 0, 1, ..., max_weight columns
    (as base-q integers, cumulative reach minus earlier levels)."""
    if C.r != 4:
        raise ValueError("syndrome search is written for r = 4")
    if C.q > MAX_SYNDROME_Q:
        raise SizeLimitError(f"syndrome enumeration limited to q <= {MAX_SYNDROME_Q}")
    F, q = C.F, C.q
    cols = C.H.T
    scal = np.arange(1, q)
    gens = F.mul(scal[None, :, None], cols[:, None, :]).reshape(-1, 4)
    gens = np.unique(_encode(q, gens))
    total = q**4
    reached = np.zeros(total, dtype=bool)
    reached[0] = True
    levels = [np.array([0])]
    frontier = np.array([0])
    G = _decode(q, gens)
    for _ in range(max_weight):
        V = _decode(q, frontier)
        sums = F.add(V[:, None, :], G[None, :, :]).reshape(-1, 4)
        new = np.unique(_encode(q, sums))
        new = new[~reached[new]]
        reached[new] = True
        levels.append(new)
        frontier = np.nonzero(reached)[0]
        if reached.all():
            break
    return levels


def covering_radius_le3(C: CodeSpec) -> bool:
    levels = syndrome_levels(C, 3)
    return sum(len(x) for x in levels) == C.q**4


def covering_radius(C: CodeSpec, max_weight: int = 4) -> int | None:
    levels = syndrome_levels(C, max_weight)
    if sum(len(x) for x in levels) < C.q**4:
        return None
    return max(i for i, lv in enumerate(levels) if len(lv))
