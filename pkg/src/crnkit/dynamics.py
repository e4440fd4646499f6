"""Mass-action right-hand sides, fixed-step RK4 simulation with conservation
and Lyapunov monitoring, and hulls of sampled trajectories."""

from __future__ import annotations

import csv
import io
import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import exactla as la
from .errors import DimensionCapExceeded, NonpositiveInput, NonpositiveState, StepUnderflow
from .network import Network, complex_matrix, conservation_basis, stoichiometric_matrix
from .polytope import Polytope, hull
from .toric import laplacian, lyapunov

log = logging.getLogger(__name__)

DEBUG_IDENTITY = False


def _monomials(net: Network, x) -> list:
    out = []
    for y in net.complexes:
        t = 1
        for a, e in zip(x, y):
            if e:
                t = t * a**e
        out.append(t)
    return out


def rhs_exact(net: Network, rates: Mapping[str, object], x: Sequence) -> list[Fraction]:
    """``N v(x)`` in exact rational arithmetic."""
    kv = net.rate_vector(rates)
    x = [Fraction(a) for a in x]
    mono = _monomials(net, x)
    out = [Fraction(0)] * net.n
    for rx, k in zip(net.reactions, kv):
        flux = k * mono[rx.source]
        for i, (a, b) in enumerate(zip(net.complexes[rx.source], net.complexes[rx.target])):
            if a != b:
                out[i] += (b - a) * flux
    return out


def rhs_by_laplacian(net: Network, rates: Mapping[str, object], x: Sequence) -> list:
    """``Y A_kappa x^Y``, the same vector assembled through complexes."""
    A = laplacian(net, rates)
    return la.matvec(complex_matrix(net), la.matvec(A, _monomials(net, [Fraction(a) for a in x])))


class _Field:
    """Vectorised float right-hand side for one network and rate vector."""

    def __init__(self, net: Network, rates: Mapping[str, object]):
        self.net = net
        self.k = np.array([float(k) for k in net.rate_vector(rates)])
        self.B = np.array([net.complexes[rx.source] for rx in net.reactions], dtype=float).reshape(net.r, net.n)
        self.N = np.array(stoichiometric_matrix(net), dtype=float).reshape(net.n, net.r)
        Y = np.array(complex_matrix(net), dtype=float).reshape(net.n, net.m)
        self.Y = Y
        self.A = np.array([[float(a) for a in row] for row in laplacian(net, rates)]).reshape(net.m, net.m)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        v = self.k * np.prod(np.power(x, self.B), axis=1) if self.net.r else np.zeros(0)
        f = self.N @ v
        if DEBUG_IDENTITY:
            mono = np.prod(np.power(x, self.Y.T), axis=1)
            g = self.Y @ (self.A @ mono)
            assert np.allclose(f, g, rtol=1e-9, atol=1e-12), "N v(x) != Y A x^Y"
        return f


def rhs(net: Network, rates: Mapping[str, object], x) -> np.ndarray:
    """Float right-hand side ``N v(x)``."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise NonpositiveInput("concentrations must be non-negative")
    return _Field(net, rates)(x)


@dataclass
class SimulationTrace:
    times: np.ndarray
    states: np.ndarray  # (steps+1, n)
    drift: np.ndarray  # (steps+1, d)
    Z: np.ndarray
    lyapunov: np.ndarray | None = None
    clipped: int = 0
    converged_early: bool = False

    @property
    def terminal(self) -> np.ndarray:
        return self.states[-1]

    @property
    def max_drift(self) -> float:
        return float(np.max(np.abs(self.drift))) if self.drift.size else 0.0

    def to_csv(self) -> str:
        n = self.states.shape[1]
        d = self.drift.shape[1]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = ["t"] + [f"x{i + 1}" for i in range(n)] + [f"drift{j + 1}" for j in range(d)]
        if self.lyapunov is not None:
            header.append("lyapunov")
        w.writerow(header)
        for s in range(len(self.times)):
            row = [repr(float(self.times[s]))]
            row += [repr(float(a)) for a in self.states[s]]
            row += [repr(float(a)) for a in self.drift[s]]
            if self.lyapunov is not None:
                row.append(repr(float(self.lyapunov[s])))
            w.writerow(row)
        return buf.getvalue()

    def summary(self) -> dict:
        out = {
            "steps": int(len(self.times) - 1),
            "t_final": float(self.times[-1]),
            "terminal_state": [float(a) for a in self.terminal],
            "max_conservation_drift": self.max_drift,
            "clipped_steps": self.clipped,
            "converged_early": self.converged_early,
        }
        if self.lyapunov is not None:
            out["lyapunov_initial"] = float(self.lyapunov[0])
            out["lyapunov_final"] = float(self.lyapunov[-1])
        return out


def simulate(
    net: Network,
    rates: Mapping[str, object],
    x0: Sequence,
    t_end: float,
    dt: float = 1e-3,
    x_star: Sequence[float] | None = None,
) -> SimulationTrace:
    """Classical RK4 with a fixed step.

    Conservation drift ``|Z x(t) - Z x0|`` is recorded at every step.
    Components that undershoot zero by more than round-off are clipped
    with a warning. Integration stops early once ``|f(x)|`` is negligible.
    """
    if dt <= 0 or not np.isfinite(dt):
        raise StepUnderflow("step size must be positive")
    x = np.array([float(a) for a in x0])
    if x.shape != (net.n,):
        raise NonpositiveInput(f"initial state needs {net.n} entries")
    if np.any(x < 0):
        raise NonpositiveInput("initial state must be non-negative")
    steps = int(round(float(t_end) / dt))
    if steps > 0 and float(t_end) / steps < np.finfo(float).eps * max(1.0, float(t_end)):
        raise StepUnderflow("step size underflows at this horizon")
    f = _Field(net, rates)
    Z = np.array([[float(a) for a in row] for row in conservation_basis(net)]).reshape(-1, net.n)
    c0 = Z @ x
    times, states, drift = [0.0], [x.copy()], [np.zeros(len(Z))]
    clipped = 0
    early = False
    for s in range(1, steps + 1):
        k1 = f(x)
        if np.max(np.abs(k1), initial=0.0) < 1e-12 * (1 + np.max(np.abs(x), initial=0.0)):
            early = True
            break
        k2 = f(np.maximum(x + 0.5 * dt * k1, 0))
        k3 = f(np.maximum(x + 0.5 * dt * k2, 0))
        k4 = f(np.maximum(x + dt * k3, 0))
        x = x + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        scale = max(1.0, float(np.max(np.abs(x))))
        if np.any(x < -10 * np.finfo(float).eps * scale):
            clipped += 1
            if clipped == 1:
                warnings.warn(f"state went negative at t={s * dt:g}; clipping to zero", stacklevel=2)
        x = np.maximum(x, 0)
        times.append(s * dt)
        states.append(x.copy())
        drift.append(Z @ x - c0)
    trace = SimulationTrace(
        np.array(times), np.array(states), np.array(drift).reshape(len(times), len(Z)), Z,
        clipped=clipped, converged_early=early,
    )
    if x_star is not None:
        trace.lyapunov = lyapunov_monitor(trace, x_star)[0]
    return trace


def lyapunov_monitor(trace: SimulationTrace, x_star: Sequence[float], tol: float = 1e-9):
    """Lyapunov values along the trace and whether they never increase by more than ``tol``."""
    x_star = np.asarray(x_star, dtype=float)
    if np.any(x_star <= 0):
        raise NonpositiveInput("x_star must be positive")
    if np.any(trace.states <= 0):
        raise NonpositiveState("the trace leaves the positive orthant")
    values = np.array([lyapunov(x, x_star) for x in trace.states])
    monotone = bool(np.all(np.diff(values) <= tol))
    return values, monotone


def _extreme_samples(pts: np.ndarray, rtol: float = 1e-9) -> np.ndarray:
    """Float pre-pass: indices of samples that can be hull vertices.

    Directions whose spread is below ``rtol`` of the largest are treated as
    flat, so nearly degenerate clouds are reduced before Qhull sees them.
    """
    centred = pts - pts.mean(axis=0)
    _, sing, vt = np.linalg.svd(centred, full_matrices=False)
    rank = int(np.sum(sing > rtol * max(sing[0] if sing.size else 0.0, np.finfo(float).tiny)))
    if rank == 0:
        return np.array([0])
    local = centred @ vt[:rank].T
    if rank == 1:
        return np.unique([int(np.argmin(local[:, 0])), int(np.argmax(local[:, 0]))])
    from scipy.spatial import ConvexHull

    return np.sort(ConvexHull(local).vertices)


GRID = 2**40


def trajectory_hull(trace: SimulationTrace, coords: Sequence[int], max_samples: int = 500) -> Polytope:
    """Hull of the sampled states projected to ``coords`` (0-based).

    A float pre-pass (SVD for the affine span, then scipy's Qhull) keeps
    only samples that can be extreme. Those are rounded to the dyadic grid
    ``2^-40``, promoted to exact rationals and hulled exactly. Beyond two
    coordinates the trace is first thinned to ``max_samples`` evenly
    spaced states (first and last always kept).
    """
    coords = list(coords)
    if len(coords) > 4:
        raise DimensionCapExceeded("trajectory hulls are limited to 4 coordinates")
    states = trace.states[:, coords]
    if len(coords) > 2 and len(states) > max_samples:
        states = states[np.unique(np.linspace(0, len(states) - 1, max_samples).round().astype(int))]
    pts = np.unique(np.round(states * GRID) / GRID, axis=0)
    keep = _extreme_samples(pts) if len(pts) > 1 else np.array([0])
    return hull([tuple(Fraction(int(round(a * GRID)), GRID) for a in pts[i]) for i in keep])
