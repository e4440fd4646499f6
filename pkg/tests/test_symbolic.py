import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crnkit import exactla as la
from crnkit.errors import SingularSymbolicSystem
from crnkit.symbolic import Poly, PolyFraction, det_bareiss, solve_linear_symbolic
from crnkit.toric import laplacian

P = Poly.parse
VARS = ("k1", "k2", "x1", "x2")


@st.composite
def polys(draw, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exp = tuple(draw(st.integers(0, 2)) for _ in VARS)
        terms[exp] = draw(st.integers(-3, 3))
    return Poly(VARS, terms)


def cofactor_det(M):
    n = len(M)
    if n == 0:
        return Poly.const(1)
    total = Poly.const(0)
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * cofactor_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def test_difference_of_squares():
    assert P("(x+y)*(x-y)") == P("x^2 - y^2")


def test_eval_binomial_at_balanced_point():
    p = P("k3*x3 - k4*x4")
    assert p.eval({"k3": 1, "k4": 1, "x3": Fraction(1, 2), "x4": Fraction(1, 2)}) == 0
    assert Poly.const(0).eval({}) == 0


def test_bareiss_on_laplacian_minor(mck):
    A = laplacian(mck)
    minor = [row[1:] for row in A[1:]]
    assert det_bareiss(minor) == P("(k2+k3)*k4")
    assert det_bareiss([[P("k1*k3")]]) == P("k1*k3")
    p, q = P("k1+x1"), P("x2^2")
    assert det_bareiss([[p, 0], [0, q]]) == p * q


def test_solve_mckeithan_pair():
    # steady state of the X3 and X4 equations
    A = [[P("-(k2+k3)"), P("0")], [P("k3"), P("-k4")]]
    b = [P("-k1*x1*x2"), P("0")]
    x3, x4 = solve_linear_symbolic(A, b)
    assert x3 == PolyFraction(P("k1*x1*x2"), P("k2+k3"))
    assert x4 == PolyFraction(P("k1*k3*x1*x2"), P("(k2+k3)*k4"))


def test_solve_identity_and_singular():
    b = [P("x1"), P("k2*x2")]
    assert solve_linear_symbolic([[1, 0], [0, 1]], b) == [PolyFraction(v) for v in b]
    with pytest.raises(SingularSymbolicSystem):
        solve_linear_symbolic([[P("0")]], [P("1")])


def test_fraction_equality_is_cross_multiplied():
    a = PolyFraction(P("k1*x1"), P("k1+k2"))
    b = PolyFraction(P("k1*x1*(k1+k2)"), P("(k1+k2)^2"))
    assert a == b
    assert a - b == 0
    assert a != PolyFraction(P("x1"), P("k1+k2"))


def test_common_factor_cancelled():
    f = PolyFraction(P("(k2+k4)*k1*x1"), P("(k2+k4)*k5"))
    assert f.den == P("k5")


def test_variable_order_puts_rates_first():
    p = P("x1 + k2 + lam1 + k10")
    assert p.variables == ("k2", "k10", "lam1", "x1") or p.variables.index("k2") < p.variables.index("x1")


@settings(max_examples=80, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly.const(0)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(polys(2), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_cofactor(M):
    assert det_bareiss(M) == cofactor_det(M)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(polys(2), min_size=n, max_size=n), min_size=n, max_size=n)),
    st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=4, max_size=4),
)
def test_bareiss_commutes_with_evaluation(M, values):
    pt = dict(zip(VARS, values))
    numeric = [[p.eval(pt) for p in row] for row in M]
    assert det_bareiss(M).eval(pt) == la.det(numeric)
