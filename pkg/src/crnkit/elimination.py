"""Steady-state parametrizations by linear elimination, and invariant checks.

Concentrations are written with the symbols of :attr:`Network.symbols`;
rate constants are their reaction labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InvalidNetwork, NotLinearInChosenVariables
from .network import Network, stoichiometric_matrix
from .symbolic import Poly, PolyFraction, solve_linear_symbolic


def species_symbols(net: Network) -> list[str]:
    names = list(net.symbols)
    clash = set(names) & set(net.labels)
    if clash:
        raise InvalidNetwork(f"rate label(s) {sorted(clash)} clash with concentration symbols")
    return names


def species_rename(net: Network) -> dict[str, str]:
    """Map species names to their concentration symbols."""
    return dict(zip(net.species, species_symbols(net)))


def parse_expression(text: str, net: Network) -> Poly:
    """Parse a polynomial written with species names or concentration symbols."""
    return Poly.parse(text, rename=species_rename(net))


def ode_polynomials(net: Network) -> list[Poly]:
    """Right-hand sides ``(N v(x))_i`` with symbolic rate constants."""
    xs = species_symbols(net)
    N = stoichiometric_matrix(net)
    fluxes = []
    for rx in net.reactions:
        mono = {xs[i]: a for i, a in enumerate(net.complexes[rx.source]) if a}
        mono[rx.label] = 1
        fluxes.append(Poly.monomial(mono))
    out = []
    for i in range(net.n):
        f = Poly.const(0)
        for j, flux in enumerate(fluxes):
            if N[i][j]:
                f = f + flux * N[i][j]
        out.append(f)
    return out


@dataclass(frozen=True)
class Parametrization:
    """Eliminated concentrations as fractions in the free ones and the rates."""

    network: Network
    free: tuple[str, ...]
    eliminated: tuple[str, ...]
    expressions: tuple[PolyFraction, ...]

    def as_mapping(self) -> dict[str, PolyFraction]:
        return dict(zip(self.eliminated, self.expressions))

    def __getitem__(self, var: str) -> PolyFraction:
        return self.as_mapping()[var]

    def evaluate(self, point: Mapping[str, object]) -> dict:
        """Full state (plus the given rates) at a point of free variables and rates."""
        out = dict(point)
        for v, e in zip(self.eliminated, self.expressions):
            out[v] = e.eval(point)
        return out

    def to_json(self) -> list[dict]:
        return [
            {"var": v, "num": str(e.num), "den": str(e.den)}
            for v, e in zip(self.eliminated, self.expressions)
        ]


def _resolve(net: Network, variables: Iterable[str]) -> list[int]:
    idx = []
    for token in variables:
        try:
            i = net.species_index(token.strip())
        except KeyError:
            raise InvalidNetwork(f"unknown species {token!r}") from None
        if i not in idx:
            idx.append(i)
    return idx


def eliminate_linear(net: Network, variables: Sequence[str]) -> Parametrization:
    """Solve the steady-state equations of the chosen species for them.

    Only the ODEs of the eliminated species are used. They must be jointly
    linear in those species; coefficients may involve rates and the other
    concentrations. The solution is checked by substituting it back.
    """
    xs = species_symbols(net)
    idx = _resolve(net, variables)
    chosen = [xs[i] for i in idx]
    free = tuple(x for i, x in enumerate(xs) if i not in idx)
    if not chosen:
        return Parametrization(net, free, (), ())
    f = ode_polynomials(net)
    A, b = [], []
    for i in idx:
        parts = f[i].coefficients_in(chosen)
        row = [Poly.const(0)] * len(chosen)
        rhs = Poly.const(0)
        for e, coeff in parts.items():
            if sum(e) > 1:
                names = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(chosen, e) if k)
                raise NotLinearInChosenVariables(f"equation for {xs[i]} contains {names}")
            if sum(e) == 0:
                rhs = -coeff
            else:
                row[e.index(1)] = coeff
        A.append(row)
        b.append(rhs)
    sol = solve_linear_symbolic(A, b)
    par = Parametrization(net, free, tuple(chosen), tuple(sol))
    for i in idx:
        if not verify_invariant(par, f[i]):
            raise ArithmeticError(f"back-substitution failed for d{xs[i]}/dt")
    return par


def verify_invariant(par: Parametrization, p: Poly) -> bool:
    """True iff ``p`` vanishes identically once the parametrization is substituted."""
    return p.substitute(par.as_mapping()).num.is_zero()


def steady_state_residuals(par: Parametrization, point: Mapping[str, object]) -> list:
    """Exact right-hand sides of all eliminated species at a parametrized state."""
    full = par.evaluate(point)
    f = ode_polynomials(par.network)
    xs = species_symbols(par.network)
    return [f[xs.index(v)].eval(full) for v in par.eliminated]
