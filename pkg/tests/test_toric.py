import math
import random
import warnings
from fractions import Fraction

import numpy as np
import pytest

from crnkit import exactla as la
from crnkit.errors import ClassEmpty, NotComplexBalanced
from crnkit.netio import parse_network
from crnkit.network import (
    Network,
    class_from_totals,
    compatibility_class,
    is_weakly_reversible,
    structure,
)
from crnkit.symbolic import Poly
from crnkit.toric import (
    birch_point,
    cayley_conditions,
    cb_residual,
    complex_balanced_point,
    is_complex_balanced,
    laplacian,
    lyapunov,
    tree_labels,
    tree_labels_by_minors,
)

from netgen import random_complex

P = Poly.parse
ONES4 = {f"k{i}": 1 for i in range(1, 5)}
ONES6 = {f"k{i}": 1 for i in range(1, 7)}
ROOT2 = math.sqrt(2)
BIRCH = (ROOT2 - 1, ROOT2, (2 - ROOT2) / 2, (2 - ROOT2) / 2)


def reversible_networks(count=20, seed=11):
    rng = random.Random(seed)
    nets = []
    while len(nets) < count:
        n = rng.randint(1, 4)
        pairs = []
        for _ in range(rng.randint(1, 4)):
            a, b = random_complex(rng, n), random_complex(rng, n)
            if a != b and (a, b) not in pairs and (b, a) not in pairs:
                pairs.append((a, b))
        rxs = []
        for a, b in pairs:
            rxs += [(a, b, f"k{len(rxs) + 1}"), (b, a, f"k{len(rxs) + 2}")]
        if rxs:
            nets.append(Network.build([f"X{i + 1}" for i in range(n)], rxs))
    return nets


def test_mckeithan_laplacian(mck):
    A = laplacian(mck)
    expect = [["-k1", "k2", "k4"], ["k1", "-k2-k3", "0"], ["0", "k3", "-k4"]]
    assert A == [[P(e) for e in row] for row in expect]
    for j in range(3):
        assert sum((A[i][j] for i in range(3)), Poly.const(0)).is_zero()


def test_single_reaction_laplacian():
    A = laplacian(parse_network("A -> B ; k1"))
    assert A == [[P("-k1"), P("0")], [P("k1"), P("0")]]


def test_mckeithan_labels(mck):
    K = tree_labels(mck).K
    assert K == (P("(k2+k3)*k4"), P("k1*k4"), P("k1*k3"))
    assert tree_labels_by_minors(mck).K == K


def test_extended_second_component(ext):
    K = tree_labels(ext).K
    assert K[3] == P("k6") and K[4] == P("k5")


def test_two_cycle_labels():
    net = parse_network("A <-> B ; ka kb")
    assert tree_labels(net).K == (P("kb"), P("ka"))


def test_cayley_conditions(mck, ext):
    rep = cayley_conditions(mck)
    assert rep.kernel == () and rep.conditions == ()
    rep = cayley_conditions(ext)
    assert [list(u) for u in rep.kernel] in ([[0, 2, -2, -1, 1]], [[0, -2, 2, 1, -1]])
    (cond,) = rep.conditions
    assert str(cond) == "K2^2*K5 = K3^2*K4"
    assert (cond.lhs_kappa, cond.rhs_kappa) == (P("k4^2*k5"), P("k3^2*k6"))
    assert len(rep.conditions) == rep.deficiency == 1


def test_complex_balance_verdicts(mck, ext):
    assert is_complex_balanced(mck, {"k1": 3, "k2": 1, "k3": 7, "k4": 2}).status == "always-by-deficiency-zero"
    assert is_complex_balanced(ext, ONES6).status == "yes"
    v = is_complex_balanced(ext, {**ONES6, "k5": 2})
    assert v.status == "no" and str(v.failing[0]) == "K2^2*K5 = K3^2*K4"
    with pytest.raises(NotComplexBalanced):
        complex_balanced_point(ext, {**ONES6, "k5": 2})


def test_complex_balanced_points(mck):
    half = [1, 1, Fraction(1, 2), Fraction(1, 2)]
    assert cb_residual(mck, ONES4, half) == 0
    x = complex_balanced_point(mck, ONES4)
    assert cb_residual(mck, ONES4, x) <= 1e-10
    net = parse_network("A <-> B ; k1 k2")
    x = complex_balanced_point(net, {"k1": 5, "k2": 5})
    assert x[0] == pytest.approx(x[1])


def test_birch_quadratic_oracle(mck):
    # x3 = x4 = x1 x2 / 2 and x2 = x1 + 1 give x1^2 + 2 x1 - 1 = 0
    x1 = (-2 + math.sqrt(8)) / 2
    oracle = (x1, x1 + 1, x1 * (x1 + 1) / 2, x1 * (x1 + 1) / 2)
    sol = birch_point(mck, ONES4, class_from_totals(mck, [1, 2]))
    assert np.max(np.abs(sol.x_star - np.array(oracle))) < 1e-9
    assert np.max(np.abs(sol.x_star - np.array(BIRCH))) < 1e-9
    assert sol.iterations <= 20


def test_birch_reference_is_fixed(mck):
    x_ref = complex_balanced_point(mck, ONES4)
    cc = compatibility_class(mck, [Fraction(v) for v in x_ref])
    sol = birch_point(mck, ONES4, cc, x_ref=x_ref)
    assert np.allclose(sol.x_star, x_ref, rtol=1e-12)
    with pytest.raises(ClassEmpty):
        birch_point(mck, ONES4, class_from_totals(mck, [0, 0]))


@pytest.mark.parametrize("totals", [(1, 2), (3, 1), (Fraction(1, 10), 5)])
def test_birch_orthogonality(ext, totals):
    x_ref = complex_balanced_point(ext, ONES6)
    cc = class_from_totals(ext, list(totals))
    y = birch_point(ext, ONES6, cc, x_ref=x_ref).x_star
    Z = np.array([[float(a) for a in row] for row in cc.Z])
    assert np.allclose(Z @ y, [float(c) for c in totals], atol=1e-9)
    for v in la.right_kernel(cc.Z, cols=cc.n):
        assert abs(np.dot(np.log(y) - np.log(x_ref), [float(a) for a in v])) < 1e-9


def test_lyapunov_values():
    assert lyapunov([1, 2], [1, 2]) == 0
    assert lyapunov([2, 1], [1, 1]) == pytest.approx(2 * math.log(2) - 1)
    assert lyapunov([0.3, 2.5], [1, 1]) > 0


@pytest.mark.parametrize("net", reversible_networks(), ids=lambda n: f"n{n.n}m{n.m}")
def test_labels_and_condition_count(net):
    assert is_weakly_reversible(net)
    K = tree_labels(net).K
    assert K == tree_labels_by_minors(net).K
    assert all(c > 0 for k in K for c in k.terms.values())
    assert len(cayley_conditions(net).conditions) == structure(net).deficiency


def test_non_weakly_reversible_warns():
    with pytest.warns(UserWarning):
        tree_labels(parse_network("A -> B ; k1"))
