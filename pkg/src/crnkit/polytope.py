"""Exact polytopes: convex hulls, volumes, Minkowski sums and mixed volumes,
Newton polytopes and the mixed-volume bounds on steady-state counts.

Hulls use an incremental beneath-beyond construction on integer
coordinates (rational input is scaled by a common denominator first).
Lower-dimensional point sets are handled in lattice coordinates of their
affine hull.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import exactla as la
from .elimination import eliminate_linear, ode_polynomials, species_symbols
from .errors import DimensionCapExceeded, DimensionMismatch, WitnessSearchFailed, ZeroPolynomial
from .network import Network, conservation_basis, full_rank_rows, stoichiometric_matrix
from .symbolic import Poly

MAX_DIM = 7


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many rational points.

    ``volume`` is the ambient Euclidean volume (0 unless full-dimensional);
    ``relative_volume`` is the volume inside the affine hull measured in
    coordinates of the integer lattice parallel to it.
    """

    ambient: int
    vertices: tuple[tuple[Fraction, ...], ...]
    affine_dim: int
    volume: Fraction
    relative_volume: Fraction

    def to_json(self) -> dict:
        return {"dim": self.ambient, "vertices": [[str(a) for a in v] for v in self.vertices]}

    def translate(self, t: Sequence) -> "Polytope":
        return hull([tuple(a + Fraction(b) for a, b in zip(v, t)) for v in self.vertices])

    def __add__(self, other: "Polytope") -> "Polytope":
        return minkowski_sum(self, other)


# -- hull engine ------------------------------------------------------------

def _plane(points: Sequence[Sequence[int]], ids: Sequence[int]):
    """Integer normal ``a`` and offset ``b`` of the hyperplane through ``ids``."""
    p0 = points[ids[0]]
    diffs = [[a - b for a, b in zip(points[i], p0)] for i in ids[1:]]
    ker = la.right_kernel(diffs, cols=len(p0))
    if len(ker) != 1:
        return None
    a = la.primitive(ker[0])
    return a, sum(x * y for x, y in zip(a, p0))


def _dot(a, p) -> int:
    return sum(x * y for x, y in zip(a, p))


def _full_hull(points: list[tuple[int, ...]], k: int):
    """Hull of integer points spanning ``Z^k`` affinely (k >= 1).

    Returns ``(vertex indices, k! * volume)``.
    """
    if k == 1:
        lo = min(range(len(points)), key=lambda i: points[i][0])
        hi = max(range(len(points)), key=lambda i: points[i][0])
        return sorted({lo, hi}), points[hi][0] - points[lo][0]
    if k == 2:
        return _planar_hull(points)
    # initial simplex
    simplex = [0]
    for i in range(1, len(points)):
        trial = simplex + [i]
        diffs = [[a - b for a, b in zip(points[j], points[simplex[0]])] for j in trial[1:]]
        if la.rank(diffs) == len(trial) - 1:
            simplex = trial
            if len(simplex) == k + 1:
                break
    centre = [sum(points[i][c] for i in simplex) for c in range(k)]  # (k+1) * centroid

    facets: dict[int, tuple] = {}
    ridges: dict[frozenset, set[int]] = {}
    counter = itertools.count()

    def add_facet(ids):
        a, b = _plane(points, ids)
        if _dot(a, centre) - (k + 1) * b > 0:
            a, b = [-x for x in a], -b
        fid = next(counter)
        facets[fid] = (tuple(ids), a, b)
        for skip in range(k):
            r = frozenset(ids[:skip] + ids[skip + 1:])
            ridges.setdefault(r, set()).add(fid)

    def drop_facet(fid):
        ids, _, _ = facets.pop(fid)
        for skip in range(k):
            r = frozenset(ids[:skip] + ids[skip + 1:])
            ridges[r].discard(fid)
            if not ridges[r]:
                del ridges[r]

    for skip in range(k + 1):
        add_facet(simplex[:skip] + simplex[skip + 1:])

    in_simplex = set(simplex)
    for i, p in enumerate(points):
        if i in in_simplex:
            continue
        visible = {f for f, (_, a, b) in facets.items() if _dot(a, p) > b}
        if not visible:
            continue
        horizon = []
        for f in visible:
            ids = facets[f][0]
            for skip in range(k):
                r = frozenset(ids[:skip] + ids[skip + 1:])
                if any(g not in visible for g in ridges[r]):
                    horizon.append(ids[:skip] + ids[skip + 1:])
        for f in visible:
            drop_facet(f)
        for r in horizon:
            add_facet(list(r) + [i])

    apex = points[simplex[0]]
    scaled_volume = 0
    planes = set()
    candidates = set()
    for ids, a, b in facets.values():
        planes.add((tuple(a), b))
        candidates.update(ids)
        scaled_volume += abs(la.det([[x - y for x, y in zip(points[j], apex)] for j in ids]))
    vertices = []
    for i in sorted(candidates):
        active = [list(a) for a, b in planes if _dot(a, points[i]) == b]
        if la.rank(active) == k:
            vertices.append(i)
    return vertices, scaled_volume


def _planar_hull(points: list[tuple[int, ...]]):
    """Monotone chain; collinear boundary points are not vertices."""
    order = sorted(range(len(points)), key=lambda i: points[i])

    def cross(o, a, b):
        (ox, oy), (ax, ay), (bx, by) = points[o], points[a], points[b]
        return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)

    def chain(seq):
        out: list[int] = []
        for i in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], i) <= 0:
                out.pop()
            out.append(i)
        return out

    lower, upper = chain(order), chain(reversed(order))
    ring = lower[:-1] + upper[:-1]
    twice_area = 0
    for a, b in zip(ring, ring[1:] + ring[:1]):
        twice_area += points[a][0] * points[b][1] - points[b][0] * points[a][1]
    return sorted(ring), abs(twice_area)


def _affine_lattice(diffs: list[list[Fraction]], n: int):
    """Saturated integer basis of the lattice parallel to ``span(diffs)``."""
    perp = la.right_kernel(diffs, cols=n) if diffs else la.identity(n)
    if not perp:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    return la.integer_kernel([la.primitive(row) for row in perp], cols=n)


def hull(points: Iterable[Sequence]) -> Polytope:
    """Exact convex hull; vertices irredundant and sorted lexicographically."""
    pts = sorted({tuple(Fraction(a) for a in p) for p in points})
    if not pts:
        raise ValueError("hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionMismatch("points of different dimensions")
    p0 = pts[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    k = la.rank(diffs) if diffs else 0
    if k > MAX_DIM:
        raise DimensionCapExceeded(f"affine dimension {k} exceeds the cap of {MAX_DIM}")
    if k == 0:
        return Polytope(n, (p0,), 0, Fraction(int(n == 0)), Fraction(1))
    if k == n:
        local = [list(d) for d in [[Fraction(0)] * n] + diffs]
        det_lattice = 1
    else:
        L = _affine_lattice(diffs, n)
        R, piv = la.rref(L)
        sub = [[row[c] for c in piv] for row in L]  # k x k, invertible
        subT = la.transpose(sub)
        local = [la.solve(subT, [d[c] for c in piv]) for d in [[Fraction(0)] * n] + diffs]
        det_lattice = None
    den = 1
    for v in local:
        for a in v:
            den = _lcm(den, Fraction(a).denominator)
    ints = [tuple(int(Fraction(a) * den) for a in v) for v in local]
    idx, scaled = _full_hull(ints, k)
    rel = Fraction(scaled, math.factorial(k) * den**k)
    vertices = tuple(sorted(pts[i] for i in idx))
    volume = rel if det_lattice is not None else Fraction(0)
    return Polytope(n, vertices, k, volume, rel)


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.ambient != Q.ambient:
        raise DimensionMismatch("Minkowski sum of polytopes in different dimensions")
    return hull(tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices)


def volume(P: Polytope) -> Fraction:
    return P.volume


def mixed_volume(polytopes: Sequence[Polytope]) -> Fraction:
    """Normalized mixed volume: ``sum over nonempty S of (-1)^(n-|S|) vol(sum P_S)``.

    With this normalization ``MV(P, ..., P) = n! vol(P)`` and the unit
    simplex gives 1, so the value is the Bernstein root count.
    """
    n = len(polytopes)
    if n == 0:
        return Fraction(1)
    if any(P.ambient != n for P in polytopes):
        raise DimensionMismatch(f"mixed volume needs {n} polytopes in dimension {n}")
    sums: dict[tuple[int, ...], Polytope] = {}
    total = Fraction(0)
    for size in range(1, n + 1):
        for S in itertools.combinations(range(n), size):
            P = polytopes[S[0]] if size == 1 else minkowski_sum(sums[S[:-1]], polytopes[S[-1]])
            sums[S] = P
            total += (-1) ** (n - size) * P.volume
    return total


# -- Newton polytopes -------------------------------------------------------

def _projected(p: Poly, over: Sequence[str] | None):
    over = tuple(p.variables if over is None else over)
    idx = [p.variables.index(v) if v in p.variables else None for v in over]
    return over, [(tuple(e[i] if i is not None else 0 for i in idx), c) for e, c in p.terms.items()]


def newton_polytope(p: Poly, over: Sequence[str] | None = None) -> Polytope:
    """Hull of the exponent vectors of ``p``, restricted to ``over``."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no Newton polytope")
    _, terms = _projected(p, over)
    return hull(e for e, _ in terms)


def face_restriction(p: Poly, w: Sequence, over: Sequence[str] | None = None) -> Poly:
    """Terms of ``p`` whose exponents maximize ``<w, alpha>``."""
    if p.is_zero():
        raise ZeroPolynomial("face restriction of the zero polynomial")
    over, terms = _projected(p, over)
    if len(w) != len(over):
        raise DimensionMismatch("weight vector length differs from the variable count")
    score = {e: sum(Fraction(a) * b for a, b in zip(w, e)) for e, _ in terms}
    best = max(score.values())
    keep = {full: c for full, (e, c) in zip(p.terms, terms) if score[e] == best}
    return Poly(p.variables, keep)


@dataclass(frozen=True)
class SignWitness:
    has_negative_vertex: bool
    vertex: tuple[int, ...] | None = None
    direction: tuple[int, ...] | None = None
    t: int | None = None
    point: tuple[float, ...] | None = None
    value: float | None = None


def _outer_direction(alpha, others) -> list[int] | None:
    """Integer ``w`` with ``<w, alpha - beta> >= 1`` for every other exponent."""
    n = len(alpha)
    if not others:
        return [0] * n
    rows, rhs = [], []
    for t, beta in enumerate(others):
        slack = [0] * len(others)
        slack[t] = -1
        rows.append([a - b for a, b in zip(alpha, beta)] + slack)
        rhs.append(1)
    ok, sol = la.lp_feasible(rows, rhs, nonneg_set=range(n, n + len(others)))
    if not ok:
        return None
    w = sol[:n]
    den = 1
    for x in w:
        den = _lcm(den, Fraction(x).denominator)
    return [int(x * den) for x in w]


def vertex_sign_witness(p: Poly, max_log2_t: int = 60) -> SignWitness:
    """Look for a vertex of ``New(p)`` carrying a negative coefficient.

    For such a vertex ``alpha`` an outer direction ``w`` is found by exact
    LP, and ``x(t) = t^w`` is followed with ``t = 2, 4, 8, ...`` until
    ``p(x(t)) < 0``. Vertices are tried in lexicographic order.
    """
    if p.is_zero():
        raise ZeroPolynomial("sign witness for the zero polynomial")
    P = newton_polytope(p)
    coeff = dict(p.terms)
    exps = list(coeff)
    for v in P.vertices:
        alpha = tuple(int(a) for a in v)
        if coeff[alpha] >= 0:
            continue
        w = _outer_direction(alpha, [e for e in exps if e != alpha])
        if w is None:  # cannot happen for a genuine vertex
            continue
        for k in range(1, max_log2_t + 1):
            t = Fraction(2) ** k
            x = [t**wi for wi in w]
            val = p.eval(x)
            if val < 0:
                return SignWitness(True, alpha, tuple(w), 2**k, tuple(float(a) for a in x), float(val))
        raise WitnessSearchFailed(f"no negative value found up to t = 2^{max_log2_t}", tuple(w))
    return SignWitness(False)


# -- mixed-volume bounds -------------------------------------------------------

@dataclass(frozen=True)
class MVBound:
    method: str
    value: Fraction
    variables: tuple[str, ...]
    polynomials: tuple[Poly, ...]
    polytopes: tuple[Polytope, ...]
    ode_rows: tuple[int, ...] = ()

    def to_json(self) -> dict:
        out = {
            "method": self.method,
            "value": str(self.value),
            "variables": list(self.variables),
            "polytopes": [P.to_json() for P in self.polytopes],
        }
        if self.method == "aug":
            out["ode_rows"] = [i + 1 for i in self.ode_rows]
        return out


def conservation_polynomials(net: Network) -> list[Poly]:
    """``Z x - c`` for the echelon conservation basis, totals ``c1 .. cd``."""
    xs = species_symbols(net)
    out = []
    for t, row in enumerate(conservation_basis(net)):
        f = Poly.var(f"c{t + 1}") * -1
        for x, a in zip(xs, row):
            if a:
                f = f + Poly.var(x) * a
        out.append(f)
    return out


def aug_mv(net: Network) -> MVBound:
    """Mixed volume of the augmented steady-state system.

    Dependent ODE rows are replaced by conservation laws: the rows kept
    are the lexicographically first full-rank rows of ``N``.
    """
    xs = species_symbols(net)
    f = ode_polynomials(net)
    rows = full_rank_rows(stoichiometric_matrix(net))
    polys = [f[i] for i in rows] + conservation_polynomials(net)
    if any(q.is_zero() for q in polys):
        return MVBound("aug", Fraction(0), tuple(xs), tuple(polys), ())
    P = [newton_polytope(q, xs) for q in polys]
    return MVBound("aug", mixed_volume(P), tuple(xs), tuple(polys), tuple(P), tuple(rows))


def ssp_mv(net: Network, eliminate: Sequence[str]) -> MVBound:
    """Mixed volume after substituting a linear-elimination parametrization
    into the conservation laws and clearing denominators."""
    par = eliminate_linear(net, eliminate)
    laws = conservation_polynomials(net)
    if len(laws) != len(par.free):
        raise DimensionMismatch(
            f"{len(laws)} conservation laws but {len(par.free)} free variables"
        )
    polys = tuple(q.substitute(par.as_mapping()).num for q in laws)
    if any(q.is_zero() for q in polys):
        return MVBound("ssp", Fraction(0), par.free, polys, ())
    P = tuple(newton_polytope(q, par.free) for q in polys)
    return MVBound("ssp", mixed_volume(P), par.free, polys, P)
