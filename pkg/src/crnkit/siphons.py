"""Siphons: species sets whose joint absence persists under the dynamics.

``W`` is a siphon when every reaction producing a species of ``W`` also
consumes one. Minimal siphons are found by branch and bound; each is then
tested for coverage by a non-negative conservation law supported inside it.
If every minimal siphon is covered, no compatibility class has a boundary
steady state.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import exactla as la
from .errors import TooManyTerms
from .network import Network, stoichiometric_matrix

MAX_SIPHONS = 10**5


def _support(y) -> set[int]:
    return {i for i, a in enumerate(y) if a}


def _violated(net: Network, W: frozenset[int]):
    """First reaction that produces something in ``W`` without consuming from it."""
    for rx in net.reactions:
        if _support(net.complexes[rx.target]) & W and not _support(net.complexes[rx.source]) & W:
            return rx
    return None


def is_siphon(net: Network, W: Iterable[int]) -> bool:
    W = frozenset(W)
    if not W:
        return False
    return _violated(net, W) is None


def minimal_siphons(net: Network) -> list[tuple[int, ...]]:
    """All inclusion-minimal siphons (0-based, sorted).

    Starting from each singleton, repeatedly pick a violated reaction and
    branch on which of its reactant species joins the set. Reactions from
    the empty complex cannot be repaired, so such branches die.
    """
    found: set[frozenset[int]] = set()
    visited: set[frozenset[int]] = set()

    def grow(W: frozenset[int]):
        if W in visited or any(S <= W for S in found):
            return
        visited.add(W)
        rx = _violated(net, W)
        if rx is None:
            found.add(W)
            return
        for i in sorted(_support(net.complexes[rx.source])):
            grow(W | {i})

    for i in range(net.n):
        grow(frozenset({i}))
    minimal = [S for S in found if not any(T < S for T in found)]
    return sorted(tuple(sorted(S)) for S in minimal)


def all_siphons(net: Network, cap: int = MAX_SIPHONS) -> list[tuple[int, ...]]:
    """Every siphon, by subset enumeration; refuses beyond ``cap`` results."""
    out = []
    for k in range(1, net.n + 1):
        for W in itertools.combinations(range(net.n), k):
            if is_siphon(net, W):
                out.append(W)
                if len(out) > cap:
                    raise TooManyTerms(f"more than {cap} siphons")
    return sorted(out)


def covering_law(net: Network, W: Iterable[int]) -> list[int] | None:
    """A non-negative conservation law supported in ``W``, as a primitive
    integer vector, or ``None`` if there is none.

    Decided exactly on ``N`` itself: ``v >= 0``, ``v^T N = 0``,
    ``v_i = 0`` off ``W``, ``sum(v_W) = 1``.
    """
    W = set(W)
    N = stoichiometric_matrix(net)
    n = net.n
    rows = [[N[i][j] for i in range(n)] for j in range(net.r)]
    rows += [[int(i == k) for i in range(n)] for k in range(n) if k not in W]
    ok, v = la.lp_feasible(rows, [0] * len(rows), positive_sum_set=W, cols=n)
    return la.primitive(v) if ok else None


@dataclass(frozen=True)
class SiphonStatus:
    siphon: tuple[int, ...]
    witness: tuple[int, ...] | None

    @property
    def covered(self) -> bool:
        return self.witness is not None

    @property
    def status(self) -> str:
        return "covered-by-conservation-law" if self.covered else "relevant"


@dataclass(frozen=True)
class SiphonReport:
    minimal_siphons: tuple[tuple[int, ...], ...]
    relevance: tuple[SiphonStatus, ...] | None = None

    @property
    def no_boundary_steady_states(self) -> bool | None:
        if self.relevance is None:
            return None
        return all(s.covered for s in self.relevance)

    def to_json(self) -> dict:
        out: dict = {"minimal_siphons": [[i + 1 for i in W] for W in self.minimal_siphons]}
        if self.relevance is not None:
            out["relevance"] = [
                {
                    "siphon": [i + 1 for i in s.siphon],
                    "status": s.status,
                    "witness": list(s.witness) if s.witness is not None else None,
                }
                for s in self.relevance
            ]
            out["no_boundary_steady_states"] = self.no_boundary_steady_states
        return out


def siphon_report(net: Network, relevant: bool = True) -> SiphonReport:
    sip = tuple(minimal_siphons(net))
    if not relevant:
        return SiphonReport(sip)
    return relevance(net, SiphonReport(sip))


def relevance(net: Network, report: SiphonReport) -> SiphonReport:
    """Fill in coverage of each minimal siphon.

    A law covering a minimal siphon covers every siphon containing it, so
    the minimal ones decide the question for all siphons.
    """
    statuses = []
    for W in report.minimal_siphons:
        v = covering_law(net, W)
        statuses.append(SiphonStatus(W, tuple(v) if v is not None else None))
    return SiphonReport(report.minimal_siphons, tuple(statuses))


def boundary_rhs_vanishes(net: Network, W: Iterable[int], rates=None, x=None) -> bool:
    """``dx_i/dt = 0`` for ``i`` in ``W`` whenever ``x_W = 0``.

    With ``x`` omitted this is checked structurally: every reaction with a
    nonzero rate on the face must leave the species of ``W`` untouched.
    """
    W = set(W)
    N = stoichiometric_matrix(net)
    if x is None:
        for j, rx in enumerate(net.reactions):
            if _support(net.complexes[rx.source]) & W:
                continue  # rate vanishes on the face
            if any(N[i][j] for i in W):
                return False
        return True
    kv = net.rate_vector(rates)
    x = [Fraction(0) if i in W else Fraction(a) for i, a in enumerate(x)]
    for i in W:
        total = Fraction(0)
        for j, rx in enumerate(net.reactions):
            flux = kv[j]
            for a, e in zip(x, net.complexes[rx.source]):
                flux *= a**e
            total += N[i][j] * flux
        if total != 0:
            return False
    return True
