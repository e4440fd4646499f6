import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull, QhullError

from crnkit import load
from crnkit.errors import DimensionCapExceeded, DimensionMismatch
from crnkit.netio import parse_network
from crnkit.polytope import (
    aug_mv,
    face_restriction,
    hull,
    minkowski_sum,
    mixed_volume,
    newton_polytope,
    ssp_mv,
    vertex_sign_witness,
    volume,
)
from crnkit.symbolic import Poly

P = Poly.parse
TRI1 = hull([(0, 0), (1, 0), (1, 1)])
TRI2 = hull([(0, 0), (0, 1), (1, 1)])


def shoelace(points):
    """Area of the convex hull of 2D points (float oracle via Qhull ordering)."""
    pts = np.array(points, dtype=float)
    try:
        h = ConvexHull(pts)
    except QhullError:
        return 0.0
    v = pts[h.vertices]
    x, y = v[:, 0], v[:, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def scipy_volume(points):
    pts = np.unique(np.array(points, dtype=float), axis=0)
    if len(pts) <= pts.shape[1]:
        return 0.0
    try:
        return ConvexHull(pts).volume
    except QhullError:
        return 0.0


def scipy_mixed_volume(vertex_lists):
    """Inclusion-exclusion over Minkowski sums with scipy volumes."""
    n = len(vertex_lists)
    total = 0.0
    for k in range(1, n + 1):
        for S in itertools.combinations(range(n), k):
            sums = [tuple(map(sum, zip(*combo))) for combo in itertools.product(*(vertex_lists[i] for i in S))]
            total += (-1) ** (n - k) * scipy_volume(sums)
    return total


points2 = st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20)), min_size=1, max_size=8)
points3 = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=6)


def test_square_drops_interior_point():
    sq = hull([(0, 0), (1, 0), (0, 1), (1, 1), (Fraction(1, 2), Fraction(1, 2))])
    assert set(sq.vertices) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert volume(sq) == 1


def test_triangle_and_hexagon():
    assert volume(TRI1) == Fraction(1, 2)
    hexagon = minkowski_sum(TRI1, TRI2)
    assert set(hexagon.vertices) == {(0, 0), (1, 0), (2, 1), (2, 2), (1, 2), (0, 1)}
    assert volume(hexagon) == 3
    assert mixed_volume([TRI1, TRI2]) == 2


def test_simplex_and_cube_identities():
    for n in (1, 2, 3):
        simplex = hull([tuple(int(i == j) for j in range(n)) for i in range(n)] + [(0,) * n])
        assert mixed_volume([simplex] * n) == 1
    square = hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert mixed_volume([square, square]) == 2
    cube = hull(list(itertools.product((0, 1), repeat=3)))
    assert mixed_volume([cube] * 3) == 6


def test_newton_polytopes():
    assert set(newton_polytope(P("x1 + 3*x1*x2 - c1"), ["x1", "x2"]).vertices) == {(0, 0), (1, 0), (1, 1)}
    pt = newton_polytope(P("7"), ["x", "y"])
    assert pt.vertices == ((0, 0),) and pt.affine_dim == 0
    seg = newton_polytope(P("x^2 + x*y + y^2"), ["x", "y"])
    assert set(seg.vertices) == {(2, 0), (0, 2)} and seg.affine_dim == 1


def test_face_restriction():
    p = P("x^2 - x*y + 3")
    assert face_restriction(p, (1, 1), ["x", "y"]) == P("x^2 - x*y")
    assert face_restriction(p, (0, 0), ["x", "y"]) == p
    m = P("5*x^3*y")
    assert face_restriction(m, (-2, 7), ["x", "y"]) == m


def test_sign_witness():
    w = vertex_sign_witness(P("x^2*y - 1"))
    assert w.has_negative_vertex and w.vertex == (0, 0)
    assert w.value < 0
    assert P("x^2*y - 1").eval([Fraction(1, 10), Fraction(1, 10)]) == Fraction(-999, 1000)
    assert not vertex_sign_witness(P("x + y")).has_negative_vertex
    assert not vertex_sign_witness(P("(x - 1)^2")).has_negative_vertex


def test_ssp_mckeithan(mck):
    res = ssp_mv(mck, ["x3", "x4"])
    assert res.value == 2
    assert {frozenset(P_.vertices) for P_ in res.polytopes} == {frozenset(TRI1.vertices), frozenset(TRI2.vertices)}


def test_linear_system_bound_one():
    net = parse_network("A -> B ; k1\nB -> A ; k2")
    assert ssp_mv(net, ["B"]).value == 1
    assert aug_mv(net).value == 1


def test_aug_mckeithan_against_scipy(mck):
    res = aug_mv(mck)
    verts = [[tuple(float(a) for a in v) for v in P_.vertices] for P_ in res.polytopes]
    assert res.value == round(scipy_mixed_volume(verts))
    assert res.value == 2
    assert list(res.ode_rows) == [0, 2]


def test_dimension_errors():
    with pytest.raises(DimensionMismatch):
        hull([(0, 0), (1, 0, 0)])
    with pytest.raises(DimensionMismatch):
        mixed_volume([TRI1])
    with pytest.raises(DimensionCapExceeded):
        hull([tuple(int(i == j) for j in range(8)) for i in range(8)] + [(0,) * 8])


@settings(max_examples=100, deadline=None)
@given(points2, points2)
def test_shoelace_oracle(a, b):
    P1, P2 = hull(a), hull(b)
    sums = [(x[0] + y[0], x[1] + y[1]) for x in a for y in b]
    expect = shoelace(sums) - shoelace(a) - shoelace(b)
    got = mixed_volume([P1, P2])
    assert float(got) == pytest.approx(expect, abs=1e-9)
    assert volume(P1) == pytest.approx(shoelace(a), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(points2, points2, st.tuples(st.integers(-5, 5), st.integers(-5, 5)), st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_symmetry_and_translation(a, b, s, t):
    P1, P2 = hull(a), hull(b)
    mv = mixed_volume([P1, P2])
    assert mixed_volume([P2, P1]) == mv
    assert mixed_volume([P1.translate(s), P2.translate(t)]) == mv


@settings(max_examples=25, deadline=None)
@given(points3)
def test_diagonal_identity(a):
    Q = hull(a)
    assert mixed_volume([Q, Q, Q]) == math.factorial(3) * volume(Q)


@settings(max_examples=25, deadline=None)
@given(points2, points2, points2)
def test_minkowski_additivity(a, a2, b):
    P1, P1b, Q = hull(a), hull(a2), hull(b)
    assert mixed_volume([P1 + P1b, Q]) == mixed_volume([P1, Q]) + mixed_volume([P1b, Q])


@settings(max_examples=40, deadline=None)
@given(points3)
def test_hull_idempotent(a):
    Q = hull(a)
    assert hull(Q.vertices) == Q
    assert float(volume(Q)) == pytest.approx(scipy_volume(a), abs=1e-9)
