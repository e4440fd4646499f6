"""Sparse multivariate polynomials over Q, polynomial fractions, and
fraction-free symbolic determinants / linear solves.

A :class:`Poly` carries its own ordered variable universe. Binary
operations merge universes by name, so rate-constant polynomials and
concentration polynomials mix freely::

    >>> k1, x1 = Poly.var("k1"), Poly.var("x1")
    >>> str((k1 + 1) * x1)
    '(1)*k1*x1 + (1)*x1'
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from math import gcd
from numbers import Number
from typing import Iterable, Mapping, Sequence

from .errors import (
    ExactDivisionFailure,
    InputError,
    MissingVariableValue,
    SingularSymbolicSystem,
)

_NAT = re.compile(r"(\d+)")


def variable_key(name: str):
    """Canonical variable order: rate constants (``k...``) first, then
    everything else; natural ordering inside each block (``k2 < k10``)."""
    block = 0 if name[:1] in ("k", "κ") else 1
    parts = tuple(int(p) if p.isdigit() else p for p in _NAT.split(name))
    return (block, parts, name)


def _sorted_vars(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=variable_key))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Poly:
    """Sparse polynomial: exponent tuple -> nonzero Fraction coefficient."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str] = (), terms: Mapping | None = None):
        variables = tuple(variables)
        canon = _sorted_vars(variables)
        if len(canon) != len(variables):
            raise ValueError(f"duplicate variables in {variables}")
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            if canon != variables:
                perm = [variables.index(v) for v in canon]
            else:
                perm = None
            for exp, c in terms.items():
                if len(exp) != len(variables):
                    raise ValueError("exponent length does not match variables")
                if any(e < 0 for e in exp):
                    raise ValueError("negative exponent")
                c = Fraction(c)
                if c == 0:
                    continue
                key = tuple(int(exp[i]) for i in perm) if perm else tuple(int(e) for e in exp)
                c = clean.get(key, 0) + c
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        self.variables = canon
        self.terms = clean

    # construction -------------------------------------------------------
    @classmethod
    def _raw(cls, variables, terms):
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        return p

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls._raw((name,), {(1,): Fraction(1)})

    @classmethod
    def const(cls, c, variables: Sequence[str] = ()) -> "Poly":
        variables = _sorted_vars(variables)
        c = Fraction(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff=1) -> "Poly":
        names = _sorted_vars(exponents)
        return cls(names, {tuple(exponents[v] for v in names): coeff})

    @classmethod
    def parse(cls, text: str, rename: Mapping[str, str] | None = None) -> "Poly":
        """Parse ``k1*k5*x1^2 - 3/2*x4`` style expressions.

        Division is only allowed by constants. ``rename`` maps identifiers
        in the text to variable names.
        """
        src = text.replace("^", "**").replace("κ", "k")
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise InputError(f"cannot parse polynomial {text!r}: {exc.msg}") from None
        return _from_ast(tree.body, rename or {}, src)

    # universe handling ----------------------------------------------------
    def embed(self, variables: Sequence[str]) -> "Poly":
        """Same polynomial over a larger, canonically ordered universe."""
        variables = _sorted_vars(variables)
        if variables == self.variables:
            return self
        missing = set(self.variables) - set(variables)
        if any(self.degree(v) > 0 for v in missing):
            raise ValueError(f"cannot drop variables {sorted(missing)} in use")
        idx = [self.variables.index(v) if v in self.variables else None for v in variables]
        terms = {tuple(exp[i] if i is not None else 0 for i in idx): c for exp, c in self.terms.items()}
        return Poly._raw(variables, terms)

    def _align(self, other: "Poly"):
        if self.variables == other.variables:
            return self.variables, self.terms, other.terms
        names = _sorted_vars(self.variables + other.variables)
        return names, self.embed(names).terms, other.embed(names).terms

    def used_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.variables)
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def trim(self) -> "Poly":
        return self.embed(self.used_variables())

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)) or isinstance(x, Number):
            return Poly.const(Fraction(x))
        return NotImplemented

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        names, a, b = self._align(other)
        out = dict(a)
        for exp, c in b.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Poly._raw(names, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        names, a, b = self._align(other)
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly._raw(names, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = Poly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if other.is_constant():
                other = other.constant_term()
            else:
                return PolyFraction(self, other)
        c = Fraction(other)
        if c == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return Poly._raw(self.variables, {e: v / c for e, v in self.terms.items()})

    def __eq__(self, other):
        other = Poly._coerce(other) if not isinstance(other, PolyFraction) else other
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, PolyFraction):
            return other == self
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.named_terms().items()))

    def __bool__(self):
        return bool(self.terms)

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def degree(self, var: str) -> int:
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max((e[i] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def named_terms(self) -> dict[tuple[tuple[str, int], ...], Fraction]:
        """Terms keyed by ``((var, exp), ...)`` with zero exponents omitted."""
        return {
            tuple((v, k) for v, k in zip(self.variables, e) if k): c
            for e, c in self.terms.items()
        }

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending graded-lex order over the canonical universe."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def content(self) -> Fraction:
        """Positive rational ``c`` making ``self / c`` integral and primitive."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = _lcm(den, c.denominator)
        return Fraction(num, den)

    def monomial_gcd(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * len(self.variables)
        exps = list(self.terms)
        return tuple(min(col) for col in zip(*exps)) if self.variables else ()

    def shift(self, exponent: Sequence[int], sign: int = 1) -> "Poly":
        """Multiply (sign=+1) or divide (sign=-1) by the monomial ``x^exponent``."""
        terms = {tuple(a + sign * b for a, b in zip(e, exponent)): c for e, c in self.terms.items()}
        if any(x < 0 for e in terms for x in e):
            raise ExactDivisionFailure("monomial does not divide polynomial")
        return Poly._raw(self.variables, terms)

    def coefficients_in(self, variables: Sequence[str]) -> dict[tuple[int, ...], "Poly"]:
        """Split into ``{exponent over variables: coefficient polynomial}``.

        The coefficients are polynomials in the remaining variables; only
        nonzero coefficients are kept (generic support).
        """
        variables = tuple(variables)
        idx = [self.variables.index(v) if v in self.variables else None for v in variables]
        rest = tuple(v for v in self.variables if v not in variables)
        ridx = [self.variables.index(v) for v in rest]
        out: dict[tuple[int, ...], dict] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] if i is not None else 0 for i in idx)
            sub = out.setdefault(key, {})
            re_ = tuple(e[i] for i in ridx)
            s = sub.get(re_, 0) + c
            if s:
                sub[re_] = s
            else:
                sub.pop(re_, None)
        return {k: Poly._raw(rest, v) for k, v in out.items() if v}

    # evaluation -----------------------------------------------------------
    def eval(self, point):
        """Evaluate at a full assignment.

        ``point`` is a mapping from variable name to value, or a sequence
        aligned with :attr:`variables`. Exact for Fraction/int values.
        """
        values = self._values(point, require_all=True)
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = t * v**k
            total = total + t
        return total

    def subs(self, point: Mapping[str, object]) -> "Poly":
        """Substitute numbers for some variables, keeping the rest symbolic."""
        keep = tuple(v for v in self.variables if v not in point)
        kidx = [self.variables.index(v) for v in keep]
        out: dict = {}
        for e, c in self.terms.items():
            t = Fraction(c)
            for v, k in zip(self.variables, e):
                if k and v in point:
                    t *= Fraction(point[v]) ** k
            key = tuple(e[i] for i in kidx)
            s = out.get(key, 0) + t
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Poly._raw(keep, out)

    def substitute(self, mapping: Mapping[str, "Poly | PolyFraction"]) -> "PolyFraction":
        """Substitute polynomials or fractions for variables.

        Denominators are cleared per substituted variable with its maximal
        degree, so the result is ``N / prod(den_v ** deg_v)``.
        """
        fr = {v: PolyFraction.coerce(q) for v, q in mapping.items() if v in self.variables}
        if not fr:
            return PolyFraction(self)
        keep = tuple(v for v in self.variables if v not in fr)
        kidx = [self.variables.index(v) for v in keep]
        degs = {v: self.degree(v) for v in fr}
        pidx = {v: self.variables.index(v) for v in fr}
        cache: dict = {}

        def power(p: Poly, k: int) -> Poly:
            key = (id(p), k)
            if key not in cache:
                cache[key] = p**k
            return cache[key]

        num = Poly.const(0)
        for e, c in self.terms.items():
            t = Poly._raw(keep, {tuple(e[i] for i in kidx): c})
            for v, q in fr.items():
                k = e[pidx[v]]
                t = t * power(q.num, k) * power(q.den, degs[v] - k)
            num = num + t
        den = Poly.const(1)
        for v, q in fr.items():
            den = den * power(q.den, degs[v])
        return PolyFraction(num, den)

    def _values(self, point, require_all):
        if isinstance(point, Mapping):
            out = []
            for v in self.variables:
                if v in point:
                    out.append(point[v])
                elif require_all and self.degree(v) > 0:
                    raise MissingVariableValue(v)
                else:
                    out.append(0)
            return out
        point = list(point)
        if len(point) != len(self.variables):
            raise MissingVariableValue(f"expected {len(self.variables)} values, got {len(point)}")
        return point

    # exact division -------------------------------------------------------
    def _lex_leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises if a remainder appears."""
        other = Poly._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("exact division by the zero polynomial")
        names, a, b = self._align(other)
        if not a:
            return Poly._raw(names, {})
        if len(b) == 1:
            (eb, cb), = b.items()
            out = {}
            for e, c in a.items():
                q = tuple(x - y for x, y in zip(e, eb))
                if any(x < 0 for x in q):
                    raise ExactDivisionFailure("monomial divisor does not divide")
                out[q] = c / cb
            return Poly._raw(names, out)
        rem = Poly._raw(names, dict(a))
        div = Poly._raw(names, b)
        eb, cb = div._lex_leading()
        quot: dict = {}
        while rem.terms:
            er, cr = rem._lex_leading()
            q = tuple(x - y for x, y in zip(er, eb))
            if any(x < 0 for x in q):
                raise ExactDivisionFailure("non-zero remainder in exact division")
            c = cr / cb
            quot[q] = c
            rem = rem - div * Poly._raw(names, {q: c})
        return Poly._raw(names, quot)

    # rendering ------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [f"({c})"]
            for v, k in zip(self.variables, e):
                if k == 1:
                    factors.append(v)
                elif k:
                    factors.append(f"{v}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def _from_ast(node, rename, text) -> Poly:
    if isinstance(node, ast.BinOp):
        left = _from_ast(node.left, rename, text)
        right = _from_ast(node.right, rename, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or right.is_zero():
                raise InputError(f"only division by nonzero constants allowed in {text!r}")
            return left / right.constant_term()
        if isinstance(node.op, ast.Pow):
            if not right.is_constant():
                raise InputError(f"non-constant exponent in {text!r}")
            k = right.constant_term()
            if k.denominator != 1 or k < 0:
                raise InputError(f"exponent must be a non-negative integer in {text!r}")
            return left ** int(k)
    elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _from_ast(node.operand, rename, text)
        return -inner if isinstance(node.op, ast.USub) else inner
    elif isinstance(node, ast.Name):
        return Poly.var(rename.get(node.id, node.id))
    elif isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        value = node.value
        if isinstance(value, float):
            # the literal text is exact; floats would round
            value = Fraction(ast.get_source_segment(text, node) or repr(value))
        return Poly.const(value)
    raise InputError(f"unsupported syntax in polynomial {text!r}")


class PolyFraction:
    """Quotient of two polynomials, reduced by content, common monomial and
    common factors that are cheap to guess.

    No multivariate gcd is taken; equality is decided by cross
    multiplication, which is exact.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly._coerce(num)
        den = Poly.const(1) if den is None else Poly._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        names = _sorted_vars(num.variables + den.variables)
        num, den = num.embed(names), den.embed(names)
        if num.is_zero():
            self.num, self.den = num, Poly.const(1, names)
            return
        g = tuple(min(a, b) for a, b in zip(num.monomial_gcd(), den.monomial_gcd()))
        if any(g):
            num, den = num.shift(g, -1), den.shift(g, -1)
        if not den.is_constant():
            num, den = _cancel_factors(num, den)
        # primitive integer denominator with positive leading coefficient
        lead = den.sorted_terms()[0][1]
        scale = den.content() * (1 if lead > 0 else -1)
        if scale != 1:
            num, den = num / scale, den / scale
        self.num, self.den = num, den

    @staticmethod
    def coerce(x) -> "PolyFraction":
        return x if isinstance(x, PolyFraction) else PolyFraction(x)

    def __add__(self, other):
        o = PolyFraction.coerce(other)
        if self.den == o.den:
            return PolyFraction(self.num + o.num, self.den)
        return PolyFraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return PolyFraction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-PolyFraction.coerce(other))

    def __rsub__(self, other):
        return PolyFraction.coerce(other) - self

    def __mul__(self, other):
        o = PolyFraction.coerce(other)
        return PolyFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = PolyFraction.coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return PolyFraction(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        try:
            o = PolyFraction.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def eval(self, point):
        return self.num.eval(point) / self.den.eval(point)

    def __str__(self):
        if self.den.is_constant() and self.den.constant_term() == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"PolyFraction({str(self)!r})"


def _try_div(p: Poly, q: Poly):
    try:
        return p.exact_div(q)
    except ExactDivisionFailure:
        return None


def _cancel_factors(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Cancel common factors that are cheap to guess.

    Candidates are the whole denominator, and for each variable the
    shortest coefficient of the denominator viewed as a polynomial in that
    variable (a factor free of the variable must divide all of them).
    """
    q = _try_div(num, den)
    if q is not None:
        return q, Poly.const(1, den.variables)
    changed = True
    while changed and not den.is_constant():
        changed = False
        for v in den.used_variables():
            coeffs = den.coefficients_in([v]).values()
            g = min(coeffs, key=lambda c: (len(c.terms), c.total_degree()))
            g = g.shift(g.monomial_gcd(), -1)
            if len(g.terms) < 2:
                continue
            g = g.embed(den.variables)
            dq, nq = _try_div(den, g), _try_div(num, g)
            if dq is not None and nq is not None:
                num, den = nq, dq
                changed = True
                break
    return num, den


def as_poly(x) -> Poly:
    p = Poly._coerce(x)
    if p is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to Poly")
    return p


def det_bareiss(M: Sequence[Sequence]) -> Poly:
    """Determinant of a square matrix of polynomials by Bareiss elimination.

    Every division is exact; :class:`ExactDivisionFailure` propagates if one
    is not, which would indicate a bug.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("det_bareiss needs a square matrix")
    if n == 0:
        return Poly.const(1)
    A = [[as_poly(x) for x in row] for row in M]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if A[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if p is None:
                return Poly.const(0)
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                num = A[i][j] * akk - aik * A[k][j]
                A[i][j] = num.exact_div(prev) if not num.is_zero() else num
            A[i][k] = Poly.const(0)
        prev = akk
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def solve_linear_symbolic(A: Sequence[Sequence], b: Sequence) -> list[PolyFraction]:
    """Cramer's rule over the polynomial ring: ``x_i = det(A_i) / det(A)``."""
    n = len(A)
    if len(b) != n:
        raise ValueError("right-hand side length mismatch")
    D = det_bareiss(A)
    if D.is_zero():
        raise SingularSymbolicSystem("coefficient matrix has zero determinant")
    out = []
    for i in range(n):
        Ai = [list(row[:i]) + [b[r]] + list(row[i + 1:]) for r, row in enumerate(A)]
        out.append(PolyFraction(det_bareiss(Ai), D))
    return out
