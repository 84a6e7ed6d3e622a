"""The elliptic quadric x0*x1 = x2^2 + b*x2*x3 + c*x3^2 in PG(3,q)."""

from __future__ import annotations

import numpy as np

from .field import FieldSpec
from .geometry import ProjectiveSpace3, nullspace, rank_vectors, canonicalize


def is_irreducible_quadratic(F: FieldSpec, b: int, c: int) -> bool:
    t = np.arange(F.q)
    vals = F.add(F.add(F.mul(t, t), F.mul(b, t)), c)
    return not np.any(vals == 0)


def smallest_irreducible_form(F: FieldSpec) -> tuple[int, int]:
    for b in range(F.q):
        for c in range(1, F.q):
            if is_irreducible_quadratic(F, b, c):
                return b, c
    raise AssertionError("unreachable: an irreducible quadratic always exists")


class EllipticQuadric:
    """Point set of the quadric, plus plane-section helpers.

    ``points`` is sorted ascending; ``member`` is a boolean mask over all
    points of PG(3,q).
    """

    def __init__(self, space: ProjectiveSpace3, b: int | None = None, c: int | None = None):
        F = space.F
        if b is None or c is None:
            b, c = smallest_irreducible_form(F)
        elif not is_irreducible_quadratic(F, b, c):
            raise ValueError(f"t^2 + {b}t + {c} is reducible over GF({F.q})")
        self.space = space
        self.F = F
        self.q = F.q
        self.b, self.c = int(b), int(c)
        self.member = self.form(space.points) == 0
        self.points = np.nonzero(self.member)[0]
        if len(self.points) != self.q**2 + 1:
            raise AssertionError(f"quadric has {len(self.points)} points, expected q^2+1")
        self._pos = np.full(space.n_points, -1, dtype=np.int64)
        self._pos[self.points] = np.arange(len(self.points))

    def form(self, X) -> np.ndarray:
        """Value of x0*x1 - (x2^2 + b*x2*x3 + c*x3^2) on each row of X."""
        F = self.F
        X = np.asarray(X)
        x0, x1, x2, x3 = X[..., 0], X[..., 1], X[..., 2], X[..., 3]
        rhs = F.add(F.add(F.mul(x2, x2), F.mul(self.b, F.mul(x2, x3))), F.mul(self.c, F.mul(x3, x3)))
        return F.sub(F.mul(x0, x1), rhs)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, point) -> bool:
        return bool(self.member[point])

    def header(self) -> str:
        return f"quadric b {self.b} c {self.c}"

    def plane_section(self, plane: int) -> np.ndarray:
        pts = self.space.points_on_plane(plane)
        return pts[self.member[pts]]

    def section_sizes(self) -> np.ndarray:
        """|pi ∩ Q| for every plane, counted via the planes through each quadric point."""
        counts = np.zeros(self.space.n_points, dtype=np.int64)
        for P in self.points:
            counts[self.space.planes_through_point(P)] += 1
        return counts

    def tangent_plane(self, point: int) -> int:
        """Polar plane of a quadric point (the unique plane meeting Q only there)."""
        if not self.member[point]:
            raise ValueError("point is not on the quadric")
        F = self.F
        x0, x1, x2, x3 = (int(v) for v in self.space.points[point])
        # gradient of the form; valid in every characteristic
        grad = [
            x1,
            x0,
            F.neg(F.add(F.add(x2, x2), F.mul(self.b, x3))),
            F.neg(F.add(F.mul(self.b, x2), F.add(F.mul(self.c, x3), F.mul(self.c, x3)))),
        ]
        return self.space.index(np.array(grad))

    def arc_intersection(self, plane1: int, plane2: int) -> int:
        """Number of common points of two plane sections."""
        if plane1 == plane2:
            raise ValueError("planes must be distinct")
        a = self.plane_section(plane1)
        b = self.plane_section(plane2)
        return len(np.intersect1d(a, b))

    def line_type(self, plane1: int, plane2: int) -> int:
        """|(pi1 ∩ pi2) ∩ Q|: 2 bisecant, 1 tangent, 0 external line."""
        S = self.space
        basis = nullspace(self.F, [S.points[plane1], S.points[plane2]])
        u, v = (np.array(x, dtype=np.int64) for x in basis)
        F = self.F
        t = np.arange(self.q)
        V = np.concatenate([F.add(F.mul(t[:, None], u[None, :]), v[None, :]), u[None, :]])
        pts = rank_vectors(self.q, canonicalize(F, V))
        return int(self.member[pts].sum())


def build_quadric(space: ProjectiveSpace3) -> EllipticQuadric:
    return EllipticQuadric(space)
