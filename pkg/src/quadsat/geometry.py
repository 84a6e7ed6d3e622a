"""Points, planes and lines of PG(3,q).

Points are canonical coordinate vectors (leftmost nonzero entry equal to 1)
and are numbered by the lexicographic order of those vectors.  Planes use
the same numbering applied to their coefficient vectors, so a plane index
and a point index live in the same range ``[0, theta(3, q))`` and the
point/plane incidence is ``dot(a, x) == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .field import FieldSpec


class DegenerateSpanError(ValueError):
    """Points are repeated or collinear where a plane/line was required."""


def theta(N: int, q: int) -> int:
    """Number of points of PG(N, q), exact."""
    if N < 0:
        raise ValueError("dimension must be >= 0")
    return (q ** (N + 1) - 1) // (q - 1)


def canonical_vectors(q: int, n: int) -> np.ndarray:
    """All canonical vectors of length n over GF(q) in index order."""
    blocks = []
    for lead in range(n - 1, -1, -1):
        tail = n - 1 - lead
        free = np.indices((q,) * tail).reshape(tail, -1).T if tail else np.zeros((1, 0), int)
        block = np.zeros((len(free), n), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = free
        blocks.append(block)
    return np.concatenate(blocks)


def rank_vectors(q: int, V: np.ndarray) -> np.ndarray:
    """Index of canonical vectors (rows of V); closed form, no lookup table."""
    V = np.asarray(V, dtype=np.int64)
    n = V.shape[-1]
    out = np.full(V.shape[:-1], -1, dtype=np.int64)
    done = np.zeros(V.shape[:-1], dtype=bool)
    for lead in range(n):
        tail = n - 1 - lead
        here = ~done & (V[..., lead] != 0)
        base = (q**tail - 1) // (q - 1)  # canonical vectors with a later lead
        off = np.zeros(V.shape[:-1], dtype=np.int64)
        for j in range(lead + 1, n):
            off = off * q + V[..., j]
        out = np.where(here, base + off, out)
        done |= here
    return out


def canonicalize(F: FieldSpec, V: np.ndarray) -> np.ndarray:
    """Scale each row so its leftmost nonzero entry is 1.  Zero rows stay zero."""
    V = np.asarray(V, dtype=np.int64)
    nz = V != 0
    lead = np.argmax(nz, axis=-1)
    val = np.take_along_axis(V, lead[..., None], axis=-1)[..., 0]
    zero = ~nz.any(axis=-1)
    scale = F._inv[np.where(zero, 1, val)]
    return np.asarray(F.mul(V, scale[..., None]), dtype=np.int64)


def det3(F: FieldSpec, a, b, c):
    """Determinant of rows a, b, c (arrays of shape (..., 3)) over F."""
    m, ad = F.mul, F.add

    def minor(i, j):
        return F.sub(m(b[..., i], c[..., j]), m(b[..., j], c[..., i]))

    t0 = m(a[..., 0], minor(1, 2))
    t1 = m(a[..., 1], minor(0, 2))
    t2 = m(a[..., 2], minor(0, 1))
    return ad(F.sub(t0, t1), t2)


def cross3(F: FieldSpec, A, B, C):
    """Normal vector of the 3-space spanned by rows of A, B, C in F^4.

    Entry k is the signed 3x3 minor omitting column k; the result is zero
    exactly when the three vectors are linearly dependent.
    """
    A, B, C = (np.asarray(x, dtype=np.int64) for x in (A, B, C))
    cols = [0, 1, 2, 3]
    out = []
    for k in range(4):
        keep = [c for c in cols if c != k]
        d = det3(F, A[..., keep], B[..., keep], C[..., keep])
        out.append(d if k % 2 == 0 else F.neg(d))
    return np.stack([np.asarray(x, dtype=np.int64) for x in out], axis=-1)


def nullspace(F: FieldSpec, rows) -> list[list[int]]:
    """Basis of the right null space of a small matrix over F (Gaussian elimination)."""
    M = [list(map(int, r)) for r in rows]
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        s = F.inv(M[r][c])
        M[r] = [F.mul(s, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[free] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(M[i][free])
        basis.append(v)
    return basis


def matrix_rank(F: FieldSpec, rows) -> int:
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return 0
    return len(rows[0]) - len(nullspace(F, rows))


@dataclass(frozen=True)
class ProjLine:
    """A line given by its two smallest-index points."""

    a: int
    b: int


class ProjectiveSpace3:
    """PG(3, q) over a given field with dense point/plane indexing."""

    def __init__(self, F: FieldSpec):
        self.F = F
        self.q = F.q
        self.n_points = theta(3, F.q)
        self.points = canonical_vectors(F.q, 4)
        # canonical representatives of PG(2,q); used to parametrize planes
        self.plane_params = canonical_vectors(F.q, 3)

    # --- indexing ---
    def index(self, coords) -> int | np.ndarray:
        """Index of (not necessarily canonical) coordinate vectors."""
        V = canonicalize(self.F, np.asarray(coords))
        if np.any(~V.any(axis=-1)):
            raise ValueError("zero vector is not a projective point")
        r = rank_vectors(self.q, V)
        return int(r) if r.ndim == 0 else r

    def coords(self, idx) -> np.ndarray:
        return self.points[idx]

    # --- planes ---
    def plane_through(self, i: int, j: int, k: int) -> int:
        """Index of the unique plane through three non-collinear points."""
        if len({int(i), int(j), int(k)}) < 3:
            raise DegenerateSpanError("repeated points")
        P = self.points
        n = cross3(self.F, P[i], P[j], P[k])
        if not n.any():
            raise DegenerateSpanError("collinear points")
        return self.index(n)

    def planes_through_triples(self, I, J, K) -> np.ndarray:
        """Vectorized plane_through; -1 marks collinear or repeated triples."""
        P = self.points
        N = cross3(self.F, P[I], P[J], P[K])
        ok = N.any(axis=-1)
        out = np.full(N.shape[:-1], -1, dtype=np.int64)
        if ok.any():
            out[ok] = rank_vectors(self.q, canonicalize(self.F, N[ok]))
        return out

    def _hyperplane_points(self, coeffs: np.ndarray) -> np.ndarray:
        """Point indices on each plane in ``coeffs`` (canonical, shape (m,4)).

        Row order follows the PG(2,q) parameter order, not ascending index.
        With the leading coefficient at position l, the vectors
        ``e_m - a_m e_l`` (m != l) span the plane; we combine them with every
        canonical parameter triple.
        """
        F = self.F
        A = np.atleast_2d(np.asarray(coeffs, dtype=np.int64))
        m = len(A)
        lead = np.argmax(A != 0, axis=1)
        R = self.plane_params  # (t, 3)
        t = len(R)
        V = np.zeros((m, t, 4), dtype=np.int64)
        free = np.array([[c for c in range(4) if c != l] for l in range(4)])[lead]  # (m,3)
        # free coordinates take the parameter values directly
        for s in range(3):
            V[np.arange(m), :, free[:, s]] = R[None, :, s].repeat(m, 0)
        # x_l = -sum_{m != l} a_m x_m
        acc = np.zeros((m, t), dtype=np.int64)
        for s in range(3):
            am = A[np.arange(m), free[:, s]][:, None]
            acc = F.add(acc, F.mul(np.broadcast_to(am, (m, t)), R[None, :, s].repeat(m, 0)))
        V[np.arange(m), :, lead] = F.neg(acc)
        return rank_vectors(self.q, canonicalize(F, V))

    def points_on_plane(self, plane: int) -> np.ndarray:
        """Sorted indices of the q^2+q+1 points on a plane."""
        return np.sort(self._hyperplane_points(self.points[plane])[0])

    def points_on_planes(self, planes) -> np.ndarray:
        """Rows of (unsorted) point indices for several planes at once."""
        planes = np.asarray(planes, dtype=np.int64)
        if planes.size == 0:
            return np.zeros((0, theta(2, self.q)), dtype=np.int64)
        return self._hyperplane_points(self.points[planes])

    def planes_through_point(self, point: int) -> np.ndarray:
        """Indices of the planes through a point, in PG(2,q) parameter order.

        Incidence is symmetric, so this is the plane computation applied to
        the point's coordinates.
        """
        return self._hyperplane_points(self.points[point])[0]

    def on_plane(self, plane: int, points) -> np.ndarray:
        return self.F.dot(self.points[points], self.points[plane][None, :]) == 0

    # --- lines ---
    def points_on_line(self, i: int, j: int) -> np.ndarray:
        if i == j:
            raise DegenerateSpanError("a line needs two distinct points")
        F = self.F
        P, Q = self.points[i], self.points[j]
        t = np.arange(self.q)
        V = np.concatenate(
            [F.add(F.mul(t[:, None], P[None, :]), Q[None, :]), P[None, :]]
        )
        return np.sort(rank_vectors(self.q, canonicalize(F, V)))

    def line(self, i: int, j: int) -> ProjLine:
        pts = self.points_on_line(i, j)
        return ProjLine(int(pts[0]), int(pts[1]))

    def pencil_through_line(self, L: ProjLine) -> list[int]:
        """The q+1 planes containing a line, ascending by index."""
        basis = nullspace(self.F, [self.points[L.a], self.points[L.b]])
        u, v = (np.array(b, dtype=np.int64) for b in basis)
        F = self.F
        t = np.arange(self.q)
        V = np.concatenate([F.add(F.mul(t[:, None], u[None, :]), v[None, :]), u[None, :]])
        return sorted(int(x) for x in rank_vectors(self.q, canonicalize(F, V)))

    def collinear(self, i: int, j: int, k: int) -> bool:
        return matrix_rank(self.F, self.points[[i, j, k]]) < 3

    @cached_property
    def line_table_pg2(self) -> np.ndarray:
        """For each line of PG(2,q) (indexed like points), its q+1 point indices."""
        F = self.F
        R = self.plane_params
        t = len(R)
        out = np.zeros((t, self.q + 1), dtype=np.int64)
        # incidence matrix via dot products; t <= q^2+q+1 keeps this small
        for g in range(t):
            hits = np.nonzero(F.dot(R, R[g][None, :]) == 0)[0]
            out[g] = hits
        return out
