"""Injectivity test by expanding ``det M(kappa, lambda)`` term by term.

``M`` stacks ``N' diag(kappa) B^T diag(lambda)`` (``N'`` = a full-rank
row selection of the stoichiometric matrix) on top of a conservation
basis ``Z``. Laplace expansion along the top block and Cauchy-Binet give
one monomial ``kappa^T lambda^S`` per pair of ``s``-subsets::

    coeff(T, S) = eps(S) * det N'[:, T] * det B[S, T] * det Z[:, not S]

with ``eps(S) = (-1)^(s(s+1)/2 + sum(S))`` for 1-based ``S``. The network
is injective iff every nonzero coefficient has one sign and there is at
least one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import exactla as la
from .errors import DimensionMismatch, TooManyTerms
from .network import Network, conservation_basis, exponent_matrix, full_rank_rows, stoichiometric_matrix
from .symbolic import Poly

MAX_TERMS = 10**7

INCONCLUSIVE = "injectivity criterion inconclusive for multistationarity"

__all__ = ["exponent_matrix", "InjectivityVerdict", "injectivity", "assembled_matrix", "MAX_TERMS"]


def _integer_rows(Z) -> list[list[int]]:
    return [la.primitive(row) for row in Z]


@dataclass(frozen=True)
class InjectivityVerdict:
    status: str  # "injective" | "not-injective" | "degenerate-zero-determinant"
    s: int
    coefficients: dict = field(repr=False)  # (T, S) 0-based tuples -> nonzero int
    n_rows: tuple[int, ...] = ()
    Z: tuple[tuple[int, ...], ...] = ()

    @property
    def positive_count(self) -> int:
        return sum(1 for c in self.coefficients.values() if c > 0)

    @property
    def negative_count(self) -> int:
        return sum(1 for c in self.coefficients.values() if c < 0)

    @property
    def injective(self) -> bool:
        return self.status == "injective"

    def evaluate(self, kappa: Sequence, lam: Sequence):
        """The expansion at numeric ``kappa`` (length r) and ``lambda`` (length n)."""
        total = 0
        for (T, S), c in self.coefficients.items():
            term = c
            for j in T:
                term *= kappa[j]
            for i in S:
                term *= lam[i]
            total += term
        return total

    def as_poly(self, labels: Sequence[str], n: int) -> Poly:
        """``det M`` as a polynomial in the rate labels and ``lam1 .. lamn``."""
        lams = [f"lam{i + 1}" for i in range(n)]
        names = tuple(labels) + tuple(lams)
        terms = {}
        for (T, S), c in self.coefficients.items():
            e = [0] * len(names)
            for j in T:
                e[j] = 1
            for i in S:
                e[len(labels) + i] = 1
            terms[tuple(e)] = Fraction(c)
        return Poly(names, terms)

    def extreme(self, k: int = 20) -> list[tuple[tuple, int]]:
        """Up to ``k`` coefficients of largest magnitude, canonical tie order."""
        items = sorted(self.coefficients.items(), key=lambda kv: (-abs(kv[1]), kv[0]))
        return items[:k]

    def to_json(self, full: bool = False) -> dict:
        chosen = sorted(self.coefficients.items()) if full else self.extreme()
        out = {
            "status": self.status,
            "s": self.s,
            "terms": len(self.coefficients),
            "positive_count": self.positive_count,
            "negative_count": self.negative_count,
            "coefficients": [
                {"reactions": [j + 1 for j in T], "species": [i + 1 for i in S], "coefficient": c}
                for (T, S), c in chosen
            ],
        }
        if self.status == "not-injective":
            out["note"] = INCONCLUSIVE
        return out


def injectivity(
    net: Network,
    n_rows: Sequence[int] | None = None,
    Z: Sequence[Sequence] | None = None,
    max_terms: int = MAX_TERMS,
) -> InjectivityVerdict:
    """Expand ``det M`` and classify its sign pattern.

    ``n_rows`` (rows of ``N`` kept) and ``Z`` default to the
    lexicographically first full-rank rows and the echelon conservation
    basis scaled to primitive integer rows.
    """
    N = stoichiometric_matrix(net)
    B = exponent_matrix(net)
    n, r = net.n, net.r
    rows = list(full_rank_rows(N) if n_rows is None else n_rows)
    s = len(rows)
    Zi = _integer_rows(conservation_basis(net) if Z is None else Z)
    if s + len(Zi) != n or (s and la.rank([N[i] for i in rows]) != s):
        raise DimensionMismatch("row selection and conservation basis do not form an n x n matrix")
    count = math.comb(n, s) * math.comb(r, s)
    if count > max_terms:
        raise TooManyTerms(f"{count} candidate terms exceed the cap of {max_terms}")
    Np = [N[i] for i in rows]
    detN = {}
    for T in itertools.combinations(range(r), s):
        d = la.det([[row[j] for j in T] for row in Np])
        if d:
            detN[T] = d
    coeffs: dict = {}
    base = s * (s + 1) // 2
    for S in itertools.combinations(range(n), s):
        rest = [i for i in range(n) if i not in S]
        dz = la.det([[row[i] for i in rest] for row in Zi])
        if not dz:
            continue
        sign = -1 if (base + sum(i + 1 for i in S)) % 2 else 1
        for T, dn in detN.items():
            db = la.det([[B[i][j] for j in T] for i in S])
            if db:
                coeffs[(T, S)] = sign * dn * db * dz
    if not coeffs:
        status = "degenerate-zero-determinant"
    elif all(c > 0 for c in coeffs.values()) or all(c < 0 for c in coeffs.values()):
        status = "injective"
    else:
        status = "not-injective"
    return InjectivityVerdict(status, s, coeffs, tuple(rows), tuple(map(tuple, Zi)))


def assembled_matrix(
    net: Network,
    kappa: Sequence,
    lam: Sequence,
    n_rows: Sequence[int] | None = None,
    Z: Sequence[Sequence] | None = None,
) -> list[list]:
    """``M(kappa, lambda)`` with numbers plugged in, built directly from its definition."""
    N = stoichiometric_matrix(net)
    B = exponent_matrix(net)
    rows = list(full_rank_rows(N) if n_rows is None else n_rows)
    Zi = _integer_rows(conservation_basis(net) if Z is None else Z)
    top = []
    for i in rows:
        top.append([
            sum(N[i][j] * kappa[j] * B[k][j] for j in range(net.r)) * lam[k]
            for k in range(net.n)
        ])
    return top + [list(row) for row in Zi]


def numeric_determinant(net: Network, kappa: Sequence, lam: Sequence, **kw):
    return la.det(assembled_matrix(net, kappa, lam, **kw))


def sign_samples(net: Network, samples: int = 1000, seed: int = 0, **kw) -> set[int]:
    """Signs of the numeric determinant at random positive rational points."""
    import random

    rng = random.Random(seed)
    signs = set()
    for _ in range(samples):
        kappa = [Fraction(rng.randint(1, 1000), rng.randint(1, 1000)) for _ in range(net.r)]
        lam = [Fraction(rng.randint(1, 1000), rng.randint(1, 1000)) for _ in range(net.n)]
        d = numeric_determinant(net, kappa, lam, **kw)
        signs.add((d > 0) - (d < 0))
    return signs


def expansion_matches(verdict: InjectivityVerdict, net: Network, kappa: Mapping | Sequence, lam: Sequence) -> bool:
    if isinstance(kappa, Mapping):
        kappa = net.rate_vector(kappa)
    return verdict.evaluate(kappa, lam) == numeric_determinant(
        net, kappa, lam, n_rows=verdict.n_rows, Z=verdict.Z
    )
