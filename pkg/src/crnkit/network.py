"""Reaction network model and structural analysis.

Indices are 0-based throughout the Python API. JSON reports switch to
1-based species indices where noted.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import exactla as la
from .errors import DimensionMismatch, EmptyPolyhedron, InvalidNetwork


@dataclass(frozen=True)
class Reaction:
    source: int
    target: int
    label: str


@dataclass(frozen=True)
class Network:
    """Species, complexes (non-negative integer vectors) and labelled reactions.

    Rate labels double as the names of the rate-constant variables and
    species names as the names of the concentration variables.
    """

    species: tuple[str, ...]
    complexes: tuple[tuple[int, ...], ...]
    reactions: tuple[Reaction, ...]
    allow_parallel: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "species", tuple(self.species))
        object.__setattr__(self, "complexes", tuple(tuple(int(a) for a in y) for y in self.complexes))
        object.__setattr__(self, "reactions", tuple(self.reactions))
        n = len(self.species)
        if len(set(self.species)) != n:
            raise InvalidNetwork("duplicate species names")
        if len(set(self.complexes)) != len(self.complexes):
            raise InvalidNetwork("duplicate complexes")
        for y in self.complexes:
            if len(y) != n:
                raise InvalidNetwork(f"complex {y} has wrong length for {n} species")
            if any(a < 0 for a in y):
                raise InvalidNetwork(f"complex {y} has a negative coefficient")
        labels = [rx.label for rx in self.reactions]
        if len(set(labels)) != len(labels):
            raise InvalidNetwork("duplicate rate labels")
        if set(labels) & set(self.species):
            raise InvalidNetwork("a rate label coincides with a species name")
        pairs = set()
        for rx in self.reactions:
            if not (0 <= rx.source < len(self.complexes) and 0 <= rx.target < len(self.complexes)):
                raise InvalidNetwork(f"reaction {rx.label} references a missing complex")
            if rx.source == rx.target:
                raise InvalidNetwork(f"reaction {rx.label} is a self-loop")
            key = (rx.source, rx.target)
            if key in pairs and not self.allow_parallel:
                raise InvalidNetwork(f"parallel reaction {rx.label} (pass allow_parallel=True to permit)")
            pairs.add(key)

    @classmethod
    def build(cls, species: Sequence[str], reactions: Iterable, allow_parallel: bool = False) -> "Network":
        """Build from ``(source, target, label)`` triples.

        Sources and targets are vectors or ``{species: coefficient}``
        mappings; complexes are deduplicated in first-appearance order.
        """
        species = tuple(species)
        complexes: list[tuple[int, ...]] = []
        index: dict[tuple[int, ...], int] = {}
        rxs = []

        def vec(c):
            if isinstance(c, Mapping):
                v = [0] * len(species)
                for name, a in c.items():
                    v[species.index(name)] += int(a)
                return tuple(v)
            return tuple(int(a) for a in c)

        def idx(v):
            if v not in index:
                index[v] = len(complexes)
                complexes.append(v)
            return index[v]

        for src, tgt, label in reactions:
            s, t = idx(vec(src)), idx(vec(tgt))
            rxs.append(Reaction(s, t, label))
        return cls(species, tuple(complexes), tuple(rxs), allow_parallel=allow_parallel)

    @property
    def n(self) -> int:
        return len(self.species)

    @property
    def m(self) -> int:
        return len(self.complexes)

    @property
    def r(self) -> int:
        return len(self.reactions)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(rx.label for rx in self.reactions)

    def source(self, j: int) -> tuple[int, ...]:
        return self.complexes[self.reactions[j].source]

    def target(self, j: int) -> tuple[int, ...]:
        return self.complexes[self.reactions[j].target]

    @property
    def symbols(self) -> tuple[str, ...]:
        """Concentration symbols: ``x<k>`` for species named ``X<k>``,
        otherwise ``x1 .. xn`` by position."""
        lowered = [s.lower() for s in self.species]
        if all(re.fullmatch(r"x[1-9][0-9]*", s) for s in lowered) and len(set(lowered)) == self.n:
            return tuple(lowered)
        return tuple(f"x{i + 1}" for i in range(self.n))

    def species_index(self, token: str) -> int:
        """Resolve a species name or its concentration symbol (``x<k>``)."""
        if token in self.species:
            return self.species.index(token)
        symbols = self.symbols
        if token.lower() in symbols:
            return symbols.index(token.lower())
        raise KeyError(f"unknown species {token!r}")

    def rate_vector(self, rates: Mapping[str, object]) -> list[Fraction]:
        from .errors import MissingRate

        missing = [lb for lb in self.labels if lb not in rates]
        if missing:
            raise MissingRate(f"no value for rate(s) {', '.join(missing)}")
        return [Fraction(rates[lb]) for lb in self.labels]


def stoichiometric_matrix(net: Network) -> list[list[int]]:
    """``N`` (n x r): column ``j`` is target minus source of reaction ``j``."""
    N = [[0] * net.r for _ in range(net.n)]
    for j in range(net.r):
        for i, (a, b) in enumerate(zip(net.source(j), net.target(j))):
            N[i][j] = b - a
    return N


def complex_matrix(net: Network) -> list[list[int]]:
    """``Y`` (n x m): columns are the complexes."""
    return [[y[i] for y in net.complexes] for i in range(net.n)]


def incidence_matrix(net: Network) -> list[list[int]]:
    """``C_G`` (m x r): -1 at the source, +1 at the target of each reaction."""
    C = [[0] * net.r for _ in range(net.m)]
    for j, rx in enumerate(net.reactions):
        C[rx.source][j] = -1
        C[rx.target][j] = 1
    return C


def exponent_matrix(net: Network) -> list[list[int]]:
    """``B`` (n x r): column ``j`` is the source complex of reaction ``j``."""
    return [[net.source(j)[i] for j in range(net.r)] for i in range(net.n)]


def linkage_classes(net: Network) -> list[list[int]]:
    """Connected components of the complex graph, each in BFS order from
    its lowest-index complex; components ordered by that complex."""
    adj: list[set[int]] = [set() for _ in range(net.m)]
    for rx in net.reactions:
        adj[rx.source].add(rx.target)
        adj[rx.target].add(rx.source)
    seen = [False] * net.m
    classes = []
    for start in range(net.m):
        if seen[start]:
            continue
        seen[start] = True
        order, queue = [], deque([start])
        while queue:
            u = queue.popleft()
            order.append(u)
            for v in sorted(adj[u]):
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        classes.append(order)
    return classes


def _reachable(net: Network) -> list[set[int]]:
    out: list[set[int]] = [set() for _ in range(net.m)]
    for rx in net.reactions:
        out[rx.source].add(rx.target)
    reach = []
    for s in range(net.m):
        seen, stack = {s}, [s]
        while stack:
            u = stack.pop()
            for v in out[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        reach.append(seen)
    return reach


def is_weakly_reversible(net: Network) -> bool:
    """Every linkage class is strongly connected."""
    reach = _reachable(net)
    return all(all(v in reach[u] for v in cls) for cls in linkage_classes(net) for u in cls)


def conservation_basis(net: Network) -> list[list[Fraction]]:
    """Left-kernel basis of ``N`` in reduced row echelon form."""
    return la.left_kernel(stoichiometric_matrix(net)) if net.r else la.identity(net.n)


def full_rank_rows(A: Sequence[Sequence]) -> list[int]:
    """Lexicographically first set of row indices spanning the row space."""
    chosen: list[int] = []
    for i in range(len(A)):
        if la.rank([A[k] for k in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
    return chosen


def deficiency_by_kernel(net: Network) -> int:
    """``dim(ker Y ∩ im C_G)`` computed directly from the two subspaces."""
    Y = complex_matrix(net)
    C = incidence_matrix(net)
    im_basis = la.rref(la.transpose(C, cols=net.m))[0] if net.r else []
    ker_basis = la.right_kernel(Y, cols=net.m) if net.n else la.identity(net.m)
    a, b = len(im_basis), len(ker_basis)
    both = im_basis + ker_basis
    return a + b - (la.rank(both) if both else 0)


@dataclass(frozen=True)
class StructureReport:
    n: int
    m: int
    r: int
    linkage_classes: int
    rank: int
    deficiency: int
    weakly_reversible: bool
    conservation_basis: tuple[tuple[Fraction, ...], ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "r": self.r,
            "linkage_classes": self.linkage_classes,
            "rank": self.rank,
            "deficiency": self.deficiency,
            "weakly_reversible": self.weakly_reversible,
            "conservation_basis": [[str(x) for x in v] for v in self.conservation_basis],
        }


def structure(net: Network) -> StructureReport:
    N = stoichiometric_matrix(net)
    s = la.rank(N) if net.r else 0
    ell = len(linkage_classes(net))
    delta = net.m - ell - s
    assert delta >= 0
    return StructureReport(
        n=net.n,
        m=net.m,
        r=net.r,
        linkage_classes=ell,
        rank=s,
        deficiency=delta,
        weakly_reversible=is_weakly_reversible(net),
        conservation_basis=tuple(tuple(v) for v in conservation_basis(net)),
    )


@dataclass(frozen=True)
class CompatibilityClass:
    """``{x >= 0 : Z x = c}`` with linearly independent rows in ``Z``."""

    Z: tuple[tuple[Fraction, ...], ...]
    c: tuple[Fraction, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "Z", tuple(tuple(Fraction(a) for a in row) for row in self.Z))
        object.__setattr__(self, "c", tuple(Fraction(a) for a in self.c))
        if len(self.Z) != len(self.c):
            raise DimensionMismatch("Z and c disagree in length")
        if any(len(row) != self.n for row in self.Z):
            raise DimensionMismatch("rows of Z must have one entry per species")
        if self.Z and la.rank(self.Z) != len(self.Z):
            raise DimensionMismatch("rows of Z are linearly dependent")

    @property
    def d(self) -> int:
        return len(self.Z)


def compatibility_class(net: Network, z: Sequence, Z: Sequence[Sequence] | None = None) -> CompatibilityClass:
    """The class through ``z``; ``Z`` defaults to :func:`conservation_basis`."""
    if len(z) != net.n:
        raise DimensionMismatch(f"point has {len(z)} entries, network has {net.n} species")
    z = [Fraction(a) for a in z]
    if any(a < 0 for a in z):
        raise ValueError("the point must be non-negative")
    Z = conservation_basis(net) if Z is None else la.as_matrix(Z)
    return CompatibilityClass(tuple(map(tuple, Z)), tuple(la.matvec(Z, z)), net.n)


def class_from_totals(net: Network, c: Sequence, Z: Sequence[Sequence] | None = None) -> CompatibilityClass:
    Z = conservation_basis(net) if Z is None else la.as_matrix(Z)
    if len(c) != len(Z):
        raise DimensionMismatch(f"{len(Z)} totals expected, got {len(c)}")
    return CompatibilityClass(tuple(map(tuple, Z)), tuple(c), net.n)


@dataclass(frozen=True)
class ClassPolyhedron:
    """Vertices and extreme rays (empty when bounded) of a class."""

    vertices: tuple[tuple[Fraction, ...], ...]
    rays: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def bounded(self) -> bool:
        return not self.rays


def _basic_solutions(A, b, n):
    """Non-negative basic solutions of ``A x = b`` (rows of A independent)."""
    d = len(A)
    found = set()
    for cols in itertools.combinations(range(n), d):
        sub = [[row[j] for j in cols] for row in A]
        if la.det(sub) == 0:
            continue
        xb = la.solve(sub, b)
        if any(v < 0 for v in xb):
            continue
        x = [Fraction(0)] * n
        for j, v in zip(cols, xb):
            x[j] = v
        found.add(tuple(x))
    return sorted(found)


def class_vertices(cc: CompatibilityClass) -> ClassPolyhedron:
    """Exact vertex (and ray) enumeration by basic feasible solutions."""
    Z, c, n = [list(r) for r in cc.Z], list(cc.c), cc.n
    vertices = _basic_solutions(Z, c, n)
    if not vertices:
        raise EmptyPolyhedron("the compatibility class is empty")
    rays = _basic_solutions(Z + [[1] * n], [0] * len(Z) + [1], n)
    return ClassPolyhedron(tuple(vertices), tuple(rays))


def positive_coordinates(Z, c, n, zero: Iterable[int] = ()) -> set[int] | None:
    """Coordinates that are positive somewhere on ``{x >= 0, Zx = c, x_W = 0}``.

    Returns ``None`` when that set is empty.
    """
    zero = set(zero)
    keep = [j for j in range(n) if j not in zero]
    A = [[row[j] for j in keep] for row in Z]
    ok, _ = la.lp_feasible(A, list(c), cols=len(keep))
    if not ok:
        return None
    out = set()
    for t, j in enumerate(keep):
        # homogenised: Z x - s c = 0, x_j = 1, x, s >= 0
        H = [row + [-ci] for row, ci in zip(A, c)]
        H.append([int(k == t) for k in range(len(keep))] + [0])
        if la.lp_feasible(H, [0] * len(A) + [1])[0]:
            out.add(j)
    return out


@dataclass(frozen=True)
class Face:
    nonempty: bool
    dimension: int
    zero_set: frozenset[int]


def face_of_class(cc: CompatibilityClass, W: Iterable[int]) -> Face:
    """The face ``{x in class : x_i = 0 for i in W}``; dimension -1 if empty."""
    W = frozenset(W)
    if any(not 0 <= i < cc.n for i in W):
        raise DimensionMismatch("species index out of range")
    Z = [list(r) for r in cc.Z]
    support = positive_coordinates(Z, list(cc.c), cc.n, W)
    if support is None:
        return Face(False, -1, W)
    cols = sorted(support)
    sub = [[row[j] for j in cols] for row in Z]
    rk = la.rank(sub) if sub and cols else 0
    return Face(True, len(cols) - rk, W)
