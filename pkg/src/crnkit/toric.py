"""Complex balancing: tree constants, Cayley-matrix binomial conditions,
complex-balanced points and Birch points."""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import exactla as la
from .errors import ClassEmpty, NoConvergence, NonpositiveInput, NotComplexBalanced
from .network import (
    CompatibilityClass,
    Network,
    complex_matrix,
    is_weakly_reversible,
    linkage_classes,
    positive_coordinates,
    structure,
)
from .symbolic import Poly, det_bareiss


def laplacian(net: Network, rates: Mapping[str, object] | None = None) -> list[list]:
    """``A_kappa = C_G K_kappa`` (m x m), the negated graph Laplacian.

    Entries are :class:`Poly` in the rate labels, or Fractions when
    ``rates`` is given.
    """
    if rates is None:
        zero = Poly.const(0)
        A = [[zero] * net.m for _ in range(net.m)]
        for rx in net.reactions:
            k = Poly.var(rx.label)
            A[rx.target][rx.source] = A[rx.target][rx.source] + k
            A[rx.source][rx.source] = A[rx.source][rx.source] - k
        return A
    kv = net.rate_vector(rates)
    A = [[Fraction(0)] * net.m for _ in range(net.m)]
    for rx, k in zip(net.reactions, kv):
        A[rx.target][rx.source] += k
        A[rx.source][rx.source] -= k
    return A


@dataclass(frozen=True)
class ToricLabels:
    """One tree-constant polynomial ``K_i`` per complex."""

    K: tuple[Poly, ...]

    def evaluate(self, rates: Mapping[str, object]) -> list[Fraction]:
        return [Fraction(k.eval({lb: Fraction(v) for lb, v in rates.items()})) for k in self.K]


def tree_labels(net: Network) -> ToricLabels:
    """``K_i`` as the sum over spanning trees of ``i``'s linkage class,
    directed toward ``i``, of the product of edge labels."""
    if not is_weakly_reversible(net):
        warnings.warn("network is not weakly reversible; some K_i may vanish", stacklevel=2)
    out_edges: list[list] = [[] for _ in range(net.m)]
    for rx in net.reactions:
        out_edges[rx.source].append(rx)
    K: list[Poly] = [Poly.const(0)] * net.m
    for cls in linkage_classes(net):
        members = set(cls)
        for root in cls:
            others = [u for u in cls if u != root]
            total = Poly.const(0)
            for choice in itertools.product(*(out_edges[u] for u in others)):
                parent = {u: rx.target for u, rx in zip(others, choice)}
                if _is_in_tree(parent, root, members):
                    term = Poly.const(1)
                    for rx in choice:
                        term = term * Poly.var(rx.label)
                    total = total + term
            K[root] = total
    return ToricLabels(tuple(K))


def _is_in_tree(parent: dict, root: int, members: set) -> bool:
    limit = len(members)
    for u in parent:
        v, steps = u, 0
        while v != root:
            v = parent.get(v)
            steps += 1
            if v is None or steps > limit:
                return False
    return True


def tree_labels_by_minors(net: Network) -> ToricLabels:
    """The same labels as signed principal minors of the class Laplacians."""
    A = laplacian(net)
    K: list[Poly] = [Poly.const(0)] * net.m
    for cls in linkage_classes(net):
        idx = sorted(cls)
        for i in idx:
            rest = [j for j in idx if j != i]
            minor = det_bareiss([[A[a][b] for b in rest] for a in rest])
            K[i] = minor if len(idx) % 2 == 1 else -minor
    return ToricLabels(tuple(K))


def _k_monomial(exps: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"K{i + 1}")
        elif e:
            parts.append(f"K{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class BinomialCondition:
    """``K^plus = K^minus``, exponents indexed by complex (original order)."""

    u: tuple[int, ...]
    plus: tuple[int, ...]
    minus: tuple[int, ...]
    lhs_kappa: Poly
    rhs_kappa: Poly

    def holds(self, rates: Mapping[str, object]) -> bool:
        pt = {lb: Fraction(v) for lb, v in rates.items()}
        return self.lhs_kappa.eval(pt) == self.rhs_kappa.eval(pt)

    def to_json(self) -> dict:
        return {
            "lhs": _k_monomial(self.plus),
            "rhs": _k_monomial(self.minus),
            "lhs_kappa": str(self.lhs_kappa),
            "rhs_kappa": str(self.rhs_kappa),
        }

    def __str__(self):
        return f"{_k_monomial(self.plus)} = {_k_monomial(self.minus)}"


@dataclass(frozen=True)
class ToricReport:
    permutation: tuple[int, ...]
    cayley: tuple[tuple[int, ...], ...]
    kernel: tuple[tuple[int, ...], ...]
    conditions: tuple[BinomialCondition, ...]
    deficiency: int
    weakly_reversible: bool
    labels: ToricLabels = field(repr=False)

    def to_json(self) -> dict:
        return {
            "permutation": [p + 1 for p in self.permutation],
            "cayley": [list(r) for r in self.cayley],
            "kernel": [list(u) for u in self.kernel],
            "conditions": [c.to_json() for c in self.conditions],
            "deficiency": self.deficiency,
            "weakly_reversible": self.weakly_reversible,
            "labels": [str(k) for k in self.labels.K],
        }


def cayley_matrix(net: Network) -> tuple[list[list[int]], list[int]]:
    """Cayley matrix with complexes regrouped by linkage class, plus the
    permutation (new position -> original complex index)."""
    classes = linkage_classes(net)
    order = [i for cls in classes for i in cls]
    Y = complex_matrix(net)
    rows = [[Y[s][i] for i in order] for s in range(net.n)]
    for cls in classes:
        members = set(cls)
        rows.append([int(i in members) for i in order])
    return rows, order


def cayley_conditions(net: Network) -> ToricReport:
    """Binomial conditions ``K^u = 1`` over a saturated basis of the integer
    kernel of the Cayley matrix. Their number equals the deficiency."""
    cay, order = cayley_matrix(net)
    kernel = la.integer_kernel(cay, cols=net.m)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        labels = tree_labels(net)
    conditions = []
    for u in kernel:
        orig = [0] * net.m
        for pos, i in enumerate(order):
            orig[i] = u[pos]
        plus = tuple(max(a, 0) for a in orig)
        minus = tuple(max(-a, 0) for a in orig)
        lhs, rhs = Poly.const(1), Poly.const(1)
        for k, a, b in zip(labels.K, plus, minus):
            lhs = lhs * k**a
            rhs = rhs * k**b
        names = tuple(sorted(set(lhs.variables) | set(rhs.variables)))
        lhs, rhs = lhs.embed(names), rhs.embed(names)
        g = tuple(min(a, b) for a, b in zip(lhs.monomial_gcd(), rhs.monomial_gcd()))
        if any(g):
            lhs, rhs = lhs.shift(g, -1), rhs.shift(g, -1)
        conditions.append(BinomialCondition(tuple(orig), plus, minus, lhs.trim(), rhs.trim()))
    rep = structure(net)
    return ToricReport(
        permutation=tuple(order),
        cayley=tuple(map(tuple, cay)),
        kernel=tuple(map(tuple, kernel)),
        conditions=tuple(conditions),
        deficiency=rep.deficiency,
        weakly_reversible=rep.weakly_reversible,
        labels=labels,
    )


@dataclass(frozen=True)
class ComplexBalanceVerdict:
    status: str  # "always-by-deficiency-zero" | "yes" | "no"
    failing: tuple[BinomialCondition, ...] = ()
    reason: str = ""

    @property
    def balanced(self) -> bool:
        return self.status != "no"


def is_complex_balanced(net: Network, rates: Mapping[str, object]) -> ComplexBalanceVerdict:
    """Decide whether these rate constants admit a complex-balanced steady state."""
    kv = net.rate_vector(rates)
    if any(k <= 0 for k in kv):
        raise NonpositiveInput("rate constants must be positive")
    rep = structure(net)
    if not rep.weakly_reversible:
        return ComplexBalanceVerdict("no", reason="network is not weakly reversible")
    if rep.deficiency == 0:
        return ComplexBalanceVerdict("always-by-deficiency-zero", reason="weakly reversible with deficiency zero")
    report = cayley_conditions(net)
    failing = tuple(c for c in report.conditions if not c.holds(rates))
    if failing:
        return ComplexBalanceVerdict("no", failing, reason="; ".join(f"{c} fails" for c in failing))
    return ComplexBalanceVerdict("yes", reason="all binomial conditions hold")


def _log(q: Fraction) -> float:
    q = Fraction(q)
    return math.log(q.numerator) - math.log(q.denominator)


def cb_residual(net: Network, rates: Mapping[str, object], x) -> float:
    """Relative residual of ``A_kappa x^Y = 0``, scaled by the complex fluxes."""
    kv = [float(k) for k in net.rate_vector(rates)]
    x = np.asarray(x, dtype=float)
    mono = np.array([np.prod(x ** np.array(y, dtype=float)) for y in net.complexes])
    out = np.zeros(net.m)
    scale = np.zeros(net.m)
    for rx, k in zip(net.reactions, kv):
        f = k * mono[rx.source]
        out[rx.target] += f
        out[rx.source] -= f
        scale[rx.source] += f
        scale[rx.target] += f
    return float(np.max(np.abs(out)) / max(np.max(scale), np.finfo(float).tiny)) if net.m else 0.0


def complex_balanced_point(net: Network, rates: Mapping[str, object]) -> np.ndarray:
    """A positive complex-balanced steady state, found in log space.

    Along a spanning tree of each linkage class the binomials
    ``K_i x^{y_j} = K_j x^{y_i}`` become linear equations in ``log x``; the
    minimum-norm solution is returned.
    """
    verdict = is_complex_balanced(net, rates)
    if not verdict.balanced:
        raise NotComplexBalanced(verdict.reason)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        K = tree_labels(net).evaluate(rates)
    adj: list[set[int]] = [set() for _ in range(net.m)]
    for rx in net.reactions:
        adj[rx.source].add(rx.target)
        adj[rx.target].add(rx.source)
    rows, rhs = [], []
    for cls in linkage_classes(net):
        seen = {cls[0]}
        for u in cls:  # BFS order, so parents precede children
            for v in sorted(adj[u]):
                if v not in seen:
                    seen.add(v)
                    rows.append([b - a for a, b in zip(net.complexes[u], net.complexes[v])])
                    rhs.append(_log(K[v]) - _log(K[u]))
    if not rows:
        return np.ones(net.n)
    A = np.array(rows, dtype=float)
    b = np.array(rhs)
    logx, *_ = np.linalg.lstsq(A, b, rcond=None)
    x = np.exp(logx)
    res = cb_residual(net, rates, x)
    if res > 1e-10:
        raise NotComplexBalanced(f"log-space system inconsistent (residual {res:.3g})")
    return x


@dataclass(frozen=True)
class BirchSolution:
    x_star: np.ndarray
    residual: float
    iterations: int


def _class_is_positive(cc: CompatibilityClass) -> bool:
    support = positive_coordinates([list(r) for r in cc.Z], list(cc.c), cc.n)
    return support is not None and len(support) == cc.n


def birch_point(
    net: Network,
    rates: Mapping[str, object],
    cc: CompatibilityClass,
    x_ref: Sequence[float] | None = None,
    max_iter: int = 100,
) -> BirchSolution:
    """The unique positive steady state of a complex-balanced system in ``cc``.

    Newton's method on ``mu -> Z exp(log x_ref + Z^T mu) - c`` from
    ``mu = 0`` with step halving until the class residual decreases.
    """
    if x_ref is None:
        x_ref = complex_balanced_point(net, rates)
    x_ref = np.asarray(x_ref, dtype=float)
    if not _class_is_positive(cc):
        raise ClassEmpty("the class does not meet the positive orthant")
    if cc.d == 0:
        return BirchSolution(x_ref.copy(), 0.0, 0)
    Z = np.array([[float(a) for a in row] for row in cc.Z])
    c = np.array([float(a) for a in cc.c])
    tol = 1e-12 * (1 + np.max(np.abs(c)))
    mu = np.zeros(cc.d)
    logref = np.log(x_ref)

    def state(m):
        return np.exp(logref + Z.T @ m)

    x = state(mu)
    F = Z @ x - c
    err = np.max(np.abs(F))
    for it in range(1, max_iter + 1):
        if err <= tol:
            return BirchSolution(x, float(err), it - 1)
        J = (Z * x) @ Z.T
        step = np.linalg.solve(J, -F)
        t = 1.0
        for _ in range(60):
            x_new = state(mu + t * step)
            F_new = Z @ x_new - c
            err_new = np.max(np.abs(F_new))
            if np.isfinite(err_new) and err_new < err:
                break
            t /= 2
        else:
            break
        mu = mu + t * step
        x, F, err = x_new, F_new, err_new
    if err <= tol:
        return BirchSolution(x, float(err), max_iter)
    raise NoConvergence(f"Newton iteration stalled at residual {err:.3g}")


def lyapunov(x, x_star) -> float:
    """``sum(x log x - x log x* - x + x*)``; zero exactly at ``x = x*``."""
    x = np.asarray(x, dtype=float)
    x_star = np.asarray(x_star, dtype=float)
    if np.any(x <= 0) or np.any(x_star <= 0):
        raise NonpositiveInput("the Lyapunov function needs positive vectors")
    return float(np.sum(x * np.log(x / x_star) - x + x_star))
