from itertools import product

import numpy as np
import pytest

from quadsat.geometry import DegenerateSpanError, ProjLine, canonicalize, theta
from conftest import space_of


def test_theta():
    assert theta(3, 2) == 15
    assert theta(2, 3) == 13
    assert theta(0, 7) == 1
    assert theta(3, 9) == 820


def _idx(S, *vecs):
    return [S.index(np.array(v)) for v in vecs]


def test_plane_through_examples():
    S2 = space_of(2)
    e1, e2, e3 = _idx(S2, (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))
    assert tuple(S2.points[S2.plane_through(e1, e2, e3)]) == (0, 0, 0, 1)
    e12 = S2.index(np.array((1, 1, 0, 0)))
    with pytest.raises(DegenerateSpanError):
        S2.plane_through(e1, e2, e12)
    with pytest.raises(DegenerateSpanError):
        S2.plane_through(e1, e1, e2)

    S3 = space_of(3)
    a, b, d = _idx(S3, (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1))
    assert tuple(S3.points[S3.plane_through(a, b, d)]) == (0, 0, 1, 0)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_enumeration_is_a_bijection(q):
    S = space_of(q)
    P = S.points
    assert len(P) == theta(3, q)
    # canonical: leading nonzero coordinate is 1
    lead = P[np.arange(len(P)), np.argmax(P != 0, axis=1)]
    assert np.all(lead == 1)
    assert len({tuple(r) for r in P}) == len(P)
    assert np.array_equal(S.index(P), np.arange(len(P)))


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_index_of_scalar_multiples(q):
    S = space_of(q)
    rng = np.random.default_rng(q)
    idx = rng.integers(0, S.n_points, 50)
    for lam in range(1, q):
        assert np.array_equal(S.index(S.F.mul(lam, S.points[idx])), idx)


def test_points_on_plane_q2_x3():
    S = space_of(2)
    plane = S.index(np.array((0, 0, 0, 1)))
    got = S.points_on_plane(plane)
    want = [i for i, v in enumerate(S.points) if v[3] == 0]
    assert list(got) == want and len(got) == 7


def test_points_on_plane_q3_x0_against_scan():
    S = space_of(3)
    plane = S.index(np.array((1, 0, 0, 0)))
    got = S.points_on_plane(plane)
    want = [i for i, v in enumerate(S.points) if v[0] == 0]
    assert len(got) == 13 and list(got) == want


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_every_plane_against_dot_product(q):
    S = space_of(q)
    F = S.F
    rows = S.points_on_planes(np.arange(S.n_points))
    assert rows.shape == (S.n_points, theta(2, q))
    for pl in range(0, S.n_points, max(1, S.n_points // 60)):
        want = np.nonzero(F.dot(S.points, S.points[pl][None, :]) == 0)[0]
        assert np.array_equal(np.sort(rows[pl]), want)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_duality_counts(q):
    S = space_of(q)
    rows = S.points_on_planes(np.arange(S.n_points))
    # each point on theta_2 planes
    assert np.all(np.bincount(rows.ravel(), minlength=S.n_points) == theta(2, q))
    for P in range(0, S.n_points, max(1, S.n_points // 30)):
        planes = S.planes_through_point(P)
        assert len(set(planes.tolist())) == theta(2, q)
        assert np.all(S.F.dot(S.points[planes], S.points[P][None, :]) == 0)


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_plane_through_is_order_invariant(q):
    S = space_of(q)
    rng = np.random.default_rng(10 + q)
    done = 0
    while done < 40:
        i, j, k = (int(x) for x in rng.choice(S.n_points, 3, replace=False))
        if S.collinear(i, j, k):
            with pytest.raises(DegenerateSpanError):
                S.plane_through(i, j, k)
            continue
        pl = S.plane_through(i, j, k)
        for a, b, c in [(j, i, k), (k, j, i), (j, k, i)]:
            assert S.plane_through(a, b, c) == pl
        assert S.on_plane(pl, [i, j, k]).all()
        done += 1


def test_planes_through_triples_marks_degenerate():
    S = space_of(3)
    line = S.points_on_line(0, 1)
    out = S.planes_through_triples(np.array([line[0], 0]), np.array([line[1], 0]), np.array([line[2], 5]))
    assert out[0] == -1 and out[1] == -1


def test_pencil_q2_examples():
    S = space_of(2)
    e1, e2 = _idx(S, (1, 0, 0, 0), (0, 1, 0, 0))
    pencil = S.pencil_through_line(S.line(e1, e2))
    assert len(pencil) == 3 and len(set(pencil)) == 3
    for pl in pencil:
        assert tuple(S.points[pl][:2]) == (0, 0)


def test_pencil_q5_incidence():
    S = space_of(5)
    rng = np.random.default_rng(5)
    for _ in range(20):
        i, j = (int(x) for x in rng.choice(S.n_points, 2, replace=False))
        L = S.line(i, j)
        pts = S.points_on_line(i, j)
        assert len(pts) == 6
        pencil = S.pencil_through_line(L)
        assert len(pencil) == 6 and len(set(pencil)) == 6
        for pl in pencil:
            assert S.on_plane(pl, pts).all()


def test_line_identity_is_canonical():
    S = space_of(4)
    pts = S.points_on_line(3, 40)
    L = S.line(3, 40)
    assert L == ProjLine(int(pts[0]), int(pts[1]))
    assert S.line(int(pts[-1]), int(pts[2])) == L
    with pytest.raises(DegenerateSpanError):
        S.points_on_line(3, 3)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_line_table_pg2(q):
    S = space_of(q)
    T = S.line_table_pg2
    R = S.plane_params
    assert T.shape == (theta(2, q), q + 1)
    for g, row in enumerate(T):
        assert np.all(S.F.dot(R[row], R[g][None, :]) == 0)


def test_canonicalize_small_oracle():
    S = space_of(3)
    F = S.F
    for v in product(range(3), repeat=4):
        if not any(v):
            continue
        c = canonicalize(F, np.array(v))
        lead = next(x for x in v if x)
        assert tuple(c) == tuple(F.mul(F.inv(lead), x) for x in v)
