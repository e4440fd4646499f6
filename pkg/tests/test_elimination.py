import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crnkit.errors import NotLinearInChosenVariables, SingularSymbolicSystem
from crnkit.elimination import (
    eliminate_linear,
    ode_polynomials,
    parse_expression,
    steady_state_residuals,
    verify_invariant,
)
from crnkit.netio import parse_network
from crnkit.symbolic import Poly, PolyFraction

P = Poly.parse


def frac(num, den):
    return PolyFraction(P(num), P(den))


G1_EXPECTED = {
    "x4": frac("k1*x1*x3", "k7*x2"),
    "x5": frac("k1*k3*x1^2*x3", "k5*k7*x2^2"),
    "x6": frac("k1*x1*x3", "k2"),
    "x7": frac("k1*k3*x1^2*x3", "k7*k4*x2"),
    "x8": frac("k1*k3*x1^2*x3", "k6*k7*x2"),
    "x9": frac("k1*x1*x3", "k8"),
}

G2_EXPECTED = {
    "x4": frac("k1*x1*x3", "k7*x2"),
    "x5": frac("k1*k4*x1*x3", "(k2+k4)*k5*x2"),
    "x6": frac("k1*x1*x3", "k2+k4"),
    "x8": frac("k1*k4*x1*x3", "(k2+k4)*k6"),
    "x9": frac("k1*x1*x3", "k8"),
}


@pytest.fixture(scope="module")
def mck_par(mck):
    return eliminate_linear(mck, ["x3", "x4"])


@pytest.fixture(scope="module")
def g1_par(g1):
    return eliminate_linear(g1, ["x4", "x5", "x6", "x7", "x8", "x9"])


def test_mckeithan_parametrization(mck_par):
    assert mck_par.free == ("x1", "x2")
    assert mck_par["x3"] == frac("k1*x1*x2", "k2+k3")
    assert mck_par["x4"] == frac("k1*k3*x1*x2", "(k2+k3)*k4")


def test_g1_parametrization(g1_par):
    assert g1_par.free == ("x1", "x2", "x3")
    for var, expr in G1_EXPECTED.items():
        assert g1_par[var] == expr, var


def test_g2_parametrization(g2):
    par = eliminate_linear(g2, list(G2_EXPECTED))
    for var, expr in G2_EXPECTED.items():
        assert par[var] == expr, var
    assert verify_invariant(par, P("-k4*k7*x2*x4 + k5*(k2+k4)*x2*x5"))
    assert verify_invariant(par, P("k1*x1*x3 - k7*x2*x4"))


def test_invariants(mck_par, g1_par, mck):
    assert verify_invariant(g1_par, P("k1*k5*x1*x3*x5 - k3*k7*x1*x4^2"))
    assert verify_invariant(mck_par, P("k3*x3 - k4*x4"))
    assert not verify_invariant(mck_par, P("x3 - x4"))
    # species names work as well as symbols
    assert verify_invariant(mck_par, parse_expression("k3*X3 - k4*X4", mck))


def test_empty_elimination(mck):
    par = eliminate_linear(mck, [])
    assert par.free == ("x1", "x2", "x3", "x4") and par.expressions == ()


def test_nonlinear_rejected():
    net = parse_network("2A -> B ; k1\nB -> 2A ; k2")
    with pytest.raises(NotLinearInChosenVariables):
        eliminate_linear(net, ["A"])


def test_singular_rejected():
    net = parse_network("A -> B ; k1\nB -> A ; k2")
    with pytest.raises(SingularSymbolicSystem):
        eliminate_linear(net, ["A", "B"])


def test_json(mck_par):
    js = mck_par.to_json()
    assert js[0]["var"] == "x3"
    assert frac(js[0]["num"], js[0]["den"]) == mck_par["x3"]


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.integers(0, 3), min_size=3, max_size=3),
    st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=20),
)
def test_invariant_scale_free(mck_par, exps, scale):
    mono = Poly.monomial({v: e for v, e in zip(["x1", "x2", "x3"], exps)})
    p = P("k3*x3 - k4*x4")
    assert verify_invariant(mck_par, p * mono * scale)
    assert not verify_invariant(mck_par, (p + P("x1")) * mono * scale)


@pytest.mark.parametrize("name, elim", [
    ("mckeithan", ["x3", "x4"]),
    ("g1", ["x4", "x5", "x6", "x7", "x8", "x9"]),
    ("g2", ["x4", "x5", "x6", "x8", "x9"]),
])
def test_numeric_back_substitution(name, elim):
    from crnkit import load

    net = load(name)
    par = eliminate_linear(net, elim)
    rng = random.Random(5)
    f = ode_polynomials(net)
    for _ in range(10):
        point = {v: Fraction(rng.randint(1, 50), rng.randint(1, 50)) for v in par.free + net.labels}
        assert all(r == 0 for r in steady_state_residuals(par, point))
        full = par.evaluate(point)
        eliminated_rows = [net.species_index(v) for v in par.eliminated]
        assert all(f[i].eval(full) == 0 for i in eliminated_rows)
