"""Greedy construction of 2-saturating sets inside the elliptic quadric.

A point is covered by a set K when it lies on a plane spanned by three
non-collinear points of K.  Since K sits inside a cap, any three of its
points are non-collinear, so the coverage state reduces to ``plane_count``:
a plane is fully covered once it holds three K-points.  Adding H to K newly
covers exactly the uncovered points of the planes through H that currently
hold two K-points.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .geometry import ProjectiveSpace3, canonicalize, cross3, rank_vectors, theta
from .quadric import EllipticQuadric

log = logging.getLogger(__name__)

STRATEGIES = ("greedy-max", "randomized-greedy", "fop")
_ALIASES = {"rand": "randomized-greedy", "random": "randomized-greedy", "max": "greedy-max"}
DELTA_METHODS = ("auto", "plane", "pencil")

# cap on cached planes-through-point rows (entries, int32)
_PLANE_CACHE_LIMIT = 40_000_000


class ConstructionStall(RuntimeError):
    """No candidate covers a new point although more than one point is uncovered."""


def normalize_strategy(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in STRATEGIES:
        raise ValueError(f"unknown strategy {name!r}; expected one of {STRATEGIES}")
    return name


@dataclass
class GreedyConfig:
    strategy: str = "greedy-max"
    seed: int = 0
    pool_size: int = 50
    line_rule: bool = False
    delta_method: str = "auto"

    def __post_init__(self):
        self.strategy = normalize_strategy(self.strategy)
        if self.pool_size < 1:
            raise ValueError("pool_size must be >= 1")
        if self.delta_method not in DELTA_METHODS:
            raise ValueError(f"delta_method must be one of {DELTA_METHODS}")


@dataclass
class StepRecord:
    w: int
    point: int
    delta: int
    uncovered_after: int
    bound_a_cap: int | None
    final: bool = False


@dataclass
class RunTrace:
    initial_uncovered: int
    steps: list[StepRecord] = field(default_factory=list)

    def uncovered_sequence(self) -> list[int]:
        """#U_w for w = 3, 4, ... as observed."""
        return [self.initial_uncovered] + [s.uncovered_after for s in self.steps]


@dataclass
class SaturatingSet:
    points: list[int]
    quadric: EllipticQuadric

    def __len__(self) -> int:
        return len(self.points)

    @property
    def space(self) -> ProjectiveSpace3:
        return self.quadric.space


class CoverageState:
    """Chosen set K, covered mask and per-plane counts |pi ∩ K|."""

    def __init__(self, quadric: EllipticQuadric, line_rule: bool = False):
        self.quadric = quadric
        self.space = quadric.space
        self.q = quadric.q
        self.line_rule = line_rule
        n = self.space.n_points
        self.K: list[int] = []
        self.in_K = np.zeros(n, dtype=bool)
        self.covered = np.zeros(n, dtype=bool)
        self.uncovered_count = n
        self.plane_count = np.zeros(n, dtype=np.uint16)
        self._planes_cache: dict[int, np.ndarray] = {}
        self._cache_ok = len(quadric) * theta(2, self.q) <= _PLANE_CACHE_LIMIT

    @property
    def w(self) -> int:
        return len(self.K)

    def copy(self) -> "CoverageState":
        new = CoverageState.__new__(CoverageState)
        new.__dict__.update(self.__dict__)
        new.K = list(self.K)
        new.in_K = self.in_K.copy()
        new.covered = self.covered.copy()
        new.plane_count = self.plane_count.copy()
        return new  # plane cache is shared on purpose: it is read-only data

    def planes_through(self, H: int) -> np.ndarray:
        """Planes through H in PG(2,q) parameter order (see ProjectiveSpace3)."""
        got = self._planes_cache.get(H)
        if got is None:
            got = self.space.planes_through_point(H)
            if self._cache_ok:
                self._planes_cache[H] = got
        return got

    def uncovered_points(self) -> np.ndarray:
        return np.nonzero(~self.covered)[0]

    def add_point(self, H: int) -> int:
        """Commit H to K; returns the number of newly covered points."""
        H = int(H)
        if self.in_K[H]:
            raise ValueError(f"point {H} already chosen")
        planes = self.planes_through(H)
        closing = planes[self.plane_count[planes] == 2]
        before = self.uncovered_count
        if len(closing):
            pts = self.space.points_on_planes(closing).ravel()
            self.covered[pts] = True
        if self.line_rule:
            for B in self.K:
                self.covered[self.space.points_on_line(B, H)] = True
        self.plane_count[planes] += 1
        self.K.append(H)
        self.in_K[H] = True
        self.uncovered_count = int((~self.covered).sum())
        return before - self.uncovered_count


def init_state(quadric: EllipticQuadric, triple, line_rule: bool = False) -> CoverageState:
    triple = [int(x) for x in triple]
    if len(triple) != 3 or len(set(triple)) != 3:
        raise ValueError("need three distinct points")
    if not all(quadric.member[x] for x in triple):
        raise ValueError("initial points must lie on the quadric")
    state = CoverageState(quadric, line_rule=line_rule)
    for x in triple:
        state.add_point(x)
    return state


def _check_candidate(state: CoverageState, H: int) -> None:
    if not state.quadric.member[H]:
        raise ValueError(f"point {H} is not on the quadric")
    if state.in_K[H]:
        raise ValueError(f"point {H} is already in K")


def _delta_plane(state: CoverageState, H: int) -> int:
    planes = state.planes_through(H)
    active = planes[state.plane_count[planes] == 2]
    parts = []
    if len(active):
        pts = state.space.points_on_planes(active).ravel()
        parts.append(pts[~state.covered[pts]])
    if state.line_rule:
        for B in state.K:
            pts = state.space.points_on_line(B, H)
            parts.append(pts[~state.covered[pts]])
    if not parts:
        return 0
    return len(np.unique(np.concatenate(parts)))


def _delta_pencil(state: CoverageState, H: int) -> int:
    """For each uncovered P, test the q+1 planes of the pencil through line HP."""
    space, F = state.space, state.space.F
    planes = state.planes_through(H)
    U = state.uncovered_points()
    total = 0
    if not state.covered[H]:
        total += int(np.any(state.plane_count[planes] >= 2))
        U = U[U != H]
    if len(U) == 0:
        return total
    h = space.points[H]
    lead = int(np.argmax(h != 0))
    free = [c for c in range(4) if c != lead]
    P = space.points[U]
    # g_s = (e_{m_s} - h_{m_s} e_lead) . P
    g = np.stack(
        [F.sub(P[:, m], F.mul(int(h[m]), P[:, lead])) for m in free], axis=1
    )
    lines = rank_vectors(state.q, canonicalize(F, g))
    pencil = planes[space.line_table_pg2[lines]]  # (|U|, q+1)
    hit = (state.plane_count[pencil] >= 2).any(axis=1)
    if state.line_rule:
        for B in state.K:
            on_line = np.isin(U, space.points_on_line(B, H))
            hit |= on_line
    return total + int(hit.sum())


def delta(state: CoverageState, H: int, method: str = "auto") -> int:
    """Number of points newly covered if H joined K (state is not modified)."""
    H = int(H)
    _check_candidate(state, H)
    if method == "auto":
        n_active = int((state.plane_count[state.planes_through(H)] == 2).sum())
        plane_cost = n_active * theta(2, state.q)
        pencil_cost = state.uncovered_count * (state.q + 1)
        method = "plane" if plane_cost <= pencil_cost else "pencil"
    if method == "plane":
        return _delta_plane(state, H)
    if method == "pencil":
        return _delta_pencil(state, H)
    raise ValueError(f"unknown delta method {method!r}")


def candidates(state: CoverageState) -> np.ndarray:
    Q = state.quadric.points
    return Q[~state.in_K[Q]]


def greedy_step(state: CoverageState, cfg: GreedyConfig, rng: np.random.Generator | None = None):
    """Pick B_{w+1} per the configured strategy and commit it.

    Returns ``(point, delta)``; ties go to the smallest point index.
    """
    cand = candidates(state)
    if len(cand) == 0:
        raise ConstructionStall("quadric exhausted")
    strategy = cfg.strategy
    if strategy == "fop":
        for H in cand:
            d = delta(state, H, cfg.delta_method)
            if d > 0:
                state.add_point(H)
                return int(H), d
        raise ConstructionStall(f"no candidate covers a new point (#U={state.uncovered_count})")

    if strategy == "randomized-greedy":
        if rng is None:
            rng = np.random.default_rng(cfg.seed)
        k = min(cfg.pool_size, len(cand))
        pool = np.sort(rng.choice(cand, size=k, replace=False))
    else:
        pool = cand
    best_H, best_d = _best_of(state, pool, cfg.delta_method)
    if best_d == 0 and strategy == "randomized-greedy" and len(pool) < len(cand):
        log.debug("sampled pool covers nothing at w=%d; scanning all candidates", state.w)
        best_H, best_d = _best_of(state, cand, cfg.delta_method)
    if best_d == 0:
        raise ConstructionStall(f"no candidate covers a new point (#U={state.uncovered_count})")
    state.add_point(best_H)
    return best_H, best_d


def _best_of(state, pool, method):
    best_H, best_d = -1, -1
    for H in pool:  # pool is ascending, so strict > keeps the smallest index on ties
        d = delta(state, H, method)
        if d > best_d:
            best_H, best_d = int(H), d
    return best_H, best_d


def run(quadric: EllipticQuadric, cfg: GreedyConfig | None = None, bound_a_trajectory=None):
    """Build a 2-saturating subset of the quadric.

    Starts from the first three quadric points, steps until at most one point
    is uncovered, then adds the smallest-index quadric point covering the
    residue if needed.  The result is re-verified from scratch.
    """
    cfg = cfg or GreedyConfig()
    rng = np.random.default_rng(cfg.seed)
    state = init_state(quadric, quadric.points[:3], line_rule=cfg.line_rule)
    trace = RunTrace(initial_uncovered=state.uncovered_count)

    def cap(w_next):
        if bound_a_trajectory is None:
            return None
        i = w_next - 3
        return int(bound_a_trajectory[i]) if 0 <= i < len(bound_a_trajectory) else None

    while state.uncovered_count > 1:
        w = state.w
        H, d = greedy_step(state, cfg, rng)
        trace.steps.append(StepRecord(w, H, d, state.uncovered_count, cap(w + 1)))
        log.debug("w=%d chose %d delta=%d #U=%d", w, H, d, state.uncovered_count)

    if state.uncovered_count == 1:
        w = state.w
        for H in candidates(state):
            if delta(state, H, "pencil") >= 1:
                state.add_point(H)
                trace.steps.append(StepRecord(w, int(H), 1, state.uncovered_count, cap(w + 1), final=True))
                break
        else:
            raise ConstructionStall("no quadric point covers the last uncovered point")

    result = SaturatingSet(list(state.K), quadric)
    check = verify_2saturating(quadric.space, result.points)
    if not check.ok:
        raise AssertionError(f"constructed set failed verification at point {check.witness}")
    return result, trace


@dataclass
class VerifyResult:
    ok: bool
    witness: int | None
    n_uncovered: int

    def __bool__(self) -> bool:
        return self.ok


def coverage_mask(space: ProjectiveSpace3, S, chunk: int = 256) -> np.ndarray:
    """Union of all planes through three non-collinear points of S."""
    S = np.asarray(list(S), dtype=np.int64)
    covered = np.zeros(space.n_points, dtype=bool)
    if len(S) < 3:
        return covered
    T = np.array(list(combinations(range(len(S)), 3)), dtype=np.int64)
    planes = space.planes_through_triples(S[T[:, 0]], S[T[:, 1]], S[T[:, 2]])
    planes = np.unique(planes[planes >= 0])
    for i in range(0, len(planes), chunk):
        covered[space.points_on_planes(planes[i:i + chunk]).ravel()] = True
    return covered


def verify_2saturating(space: ProjectiveSpace3, S) -> VerifyResult:
    """Exhaustive check that every point of PG(3,q) is on a plane spanned by S.

    Accepts an EllipticQuadric in place of the space for convenience.
    """
    if isinstance(space, EllipticQuadric):
        space = space.space
    covered = coverage_mask(space, S)
    missing = np.nonzero(~covered)[0]
    return VerifyResult(len(missing) == 0, int(missing[0]) if len(missing) else None, len(missing))


def s_w_of_point(state: CoverageState, P: int) -> int:
    """S_w(P): how many candidates H would newly cover the uncovered point P.

    Brute force over pairs of K: P is covered by K+H iff B_i, B_j, H, P are
    coplanar for some pair, i.e. det[B_i, B_j, H, P] = 0.
    """
    P = int(P)
    if state.covered[P]:
        raise ValueError(f"point {P} is already covered")
    space, F = state.space, state.space.F
    cand = candidates(state)
    if state.w < 2:
        return 0
    pairs = np.array(list(combinations(state.K, 2)), dtype=np.int64)
    X = space.points
    # det[Bi, Bj, H, P] = cross3(Bi, Bj, H) . P, over all (pair, H)
    Bi = X[pairs[:, 0]][:, None, :]
    Bj = X[pairs[:, 1]][:, None, :]
    Hs = X[cand][None, :, :]
    shape = (len(pairs), len(cand), 4)
    N = cross3(F, np.broadcast_to(Bi, shape), np.broadcast_to(Bj, shape), np.broadcast_to(Hs, shape))
    det = F.dot(N, np.broadcast_to(X[P], shape))
    return int((det == 0).any(axis=0).sum())
