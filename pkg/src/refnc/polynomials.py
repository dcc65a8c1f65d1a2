"""Sparse multivariate polynomials over cyclotomic numbers.

Terms live in a dict keyed by exponent vectors.  The group action is the
literal substitution f |-> f(g.x) with x the column of variables, so that
the Jacobian of a set of invariants transforms by det(g)^-1.  Printing uses
graded lexicographic term order.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import comb

from .cyclotomic import CycNum, ONE, ZERO, _coerce, parse_scalar
from .matrices import Matrix

__all__ = ["MPoly", "graded_monomials", "act", "jacobian_det", "parse_poly"]


def _coeff(value) -> CycNum:
    out = _coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot use {value!r} as a coefficient")
    return out


class MPoly:
    """Polynomial in nvars variables with CycNum coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], CycNum] = {}
        for exps, c in (terms or {}).items():
            c = _coeff(c)
            if not c:
                continue
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            clean[exps] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "MPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MPoly":
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): ONE})

    @classmethod
    def monomial(cls, nvars: int, exps, coeff=1) -> "MPoly":
        return cls(nvars, {tuple(exps): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        # -1 for the zero polynomial
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self) -> int:
        """Total degree if homogeneous (zero counts as degree -1), else raise."""
        degs = {sum(e) for e in self.terms}
        if not degs:
            return -1
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    # -- ring operations -------------------------------------------------

    def _check(self, other: "MPoly"):
        if self.nvars != other.nvars:
            raise ValueError("mixed variable counts")

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = object.__new__(MPoly)
        res.nvars = self.nvars
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = object.__new__(MPoly)
        res.nvars = self.nvars
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            scal = _coeff(other)
            if not scal:
                return MPoly.zero(self.nvars)
            res = object.__new__(MPoly)
            res.nvars = self.nvars
            res.terms = {e: c * scal for e, c in self.terms.items()}
            return res
        self._check(other)
        out: dict[tuple[int, ...], CycNum] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = object.__new__(MPoly)
        res.nvars = self.nvars
        res.terms = out
        return res

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = MPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            if not self.terms:
                return _coeff(other) == ZERO
            return self.terms == {(0,) * self.nvars: _coeff(other)}
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    # -- calculus and actions ---------------------------------------------

    def deriv(self, i: int) -> "MPoly":
        out: dict[tuple[int, ...], CycNum] = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e:
                new = list(exps)
                new[i] = e - 1
                out[tuple(new)] = c * e
        return MPoly(self.nvars, out)

    def act(self, g: Matrix) -> "MPoly":
        """Substitute x_i -> sum_j g[i][j] x_j (the action f |-> f(g.x))."""
        if g.rows != g.cols or g.rows != self.nvars:
            raise ValueError("matrix shape does not match the variable count")
        linear = [
            MPoly(self.nvars, {tuple(1 if k == j else 0 for k in range(self.nvars)): g[i, j]
                               for j in range(self.nvars) if g[i, j]})
            for i in range(self.nvars)
        ]
        powers: list[list[MPoly]] = [[MPoly.constant(self.nvars, 1), linear[i]]
                                     for i in range(self.nvars)]
        out = MPoly.zero(self.nvars)
        for exps, c in self.terms.items():
            term = MPoly.constant(self.nvars, c)
            for i, e in enumerate(exps):
                if not e:
                    continue
                cache = powers[i]
                while len(cache) <= e:
                    cache.append(cache[-1] * linear[i])
                term = term * cache[e]
            out = out + term
        return out

    def compose(self, polys: list["MPoly"]) -> "MPoly":
        """Substitute variable i -> polys[i]."""
        if len(polys) != self.nvars:
            raise ValueError("substitution needs one polynomial per variable")
        nv = polys[0].nvars
        out = MPoly.zero(nv)
        cache: list[list[MPoly]] = [[MPoly.constant(nv, 1), p] for p in polys]
        for exps, c in self.terms.items():
            term = MPoly.constant(nv, c)
            for i, e in enumerate(exps):
                if not e:
                    continue
                powers = cache[i]
                while len(powers) <= e:
                    powers.append(powers[-1] * polys[i])
                term = term * powers[e]
            out = out + term
        return out

    # -- term order helpers -------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], CycNum]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading(self) -> tuple[tuple[int, ...], CycNum]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=lambda e: (sum(e), e))
        return exps, self.terms[exps]

    def monic(self) -> "MPoly":
        if not self.terms:
            return self
        _, lead = self.leading()
        return self * lead.inverse()

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Exact quotient self/other; raises ValueError if not divisible."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = self
        quot = MPoly.zero(self.nvars)
        dexps, dlead = other.leading()
        dinv = dlead.inverse()
        while rem.terms:
            rexps, rlead = rem.leading()
            qexps = tuple(a - b for a, b in zip(rexps, dexps))
            if any(e < 0 for e in qexps):
                raise ValueError("polynomial division is not exact")
            qterm = MPoly.monomial(self.nvars, qexps, rlead * dinv)
            quot = quot + qterm
            rem = rem - qterm * other
        return quot

    # -- text ----------------------------------------------------------------

    def to_str(self, prefix: str = "x") -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                f"{prefix}{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps) if e
            )
            if not mono:
                neg = _scalar_is_negative(c)
                parts.append(("-" if neg else "+", str(-c if neg else c)))
                continue
            if c == ONE:
                parts.append(("+", mono))
            elif c == -ONE:
                parts.append(("-", mono))
            elif c.is_rational:
                q = c.as_fraction()
                sign = "-" if q < 0 else "+"
                parts.append((sign, f"{abs(q)}*{mono}"))
            elif len(c.c) == 1:
                neg = _scalar_is_negative(c)
                parts.append(("-" if neg else "+", f"{-c if neg else c}*{mono}"))
            else:
                parts.append(("+", f"({c})*{mono}"))
        sign, first = parts[0]
        out = ("-" + first) if sign == "-" else first
        for sign, txt in parts[1:]:
            out += f" {sign} {txt}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MPoly({self.to_str()!r})"


def _scalar_is_negative(c: CycNum) -> bool:
    # sign convention for printing only
    if c.is_rational:
        return c.as_fraction() < 0
    if len(c.c) == 1:
        return next(iter(c.c.values())) < 0
    return False


@lru_cache(maxsize=None)
def graded_monomials(degree: int, nvars: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of total degree d, in graded lexicographic order."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in graded_monomials(degree - first, nvars - 1):
            out.append((first,) + rest)
    assert len(out) == comb(degree + nvars - 1, nvars - 1)
    return tuple(out)


def act(g: Matrix, f: MPoly) -> MPoly:
    """Group action on polynomials by substitution, f |-> f(g.x)."""
    return f.act(g)


def jacobian_det(polys: list[MPoly]) -> MPoly:
    """Determinant of the Jacobian matrix (d f_i / d x_j)."""
    n = len(polys)
    if any(p.nvars != n for p in polys):
        raise ValueError("need n polynomials in n variables")
    rows = [[polys[i].deriv(j) for j in range(n)] for i in range(n)]
    if n <= 4:
        return _det_cofactor(rows)
    return _det_bareiss(rows)


def _det_cofactor(rows: list[list[MPoly]]) -> MPoly:
    n = len(rows)
    nv = rows[0][0].nvars
    if n == 1:
        return rows[0][0]
    det = MPoly.zero(nv)
    for j, top in enumerate(rows[0]):
        if not top:
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = top * _det_cofactor(minor)
        det = det + term if j % 2 == 0 else det - term
    return det


def _det_bareiss(rows: list[list[MPoly]]) -> MPoly:
    # fraction-free elimination; every division is exact over the polynomial ring
    n = len(rows)
    nv = rows[0][0].nvars
    a = [row[:] for row in rows]
    prev = MPoly.constant(nv, 1)
    sign = 1
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((r for r in range(k + 1, n) if a[r][k]), None)
            if piv is None:
                return MPoly.zero(nv)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev) if prev.degree() > 0 or prev != 1 else num
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


_MONO_ATOM = re.compile(r"^([a-zA-Z]+)(\d+)(?:\^(\d+))?$")


def parse_poly(text: str, nvars: int, prefix: str = "x") -> MPoly:
    """Parse a polynomial literal such as "x1^2*x2 - 3/2*x3" or "(1+z4)*x1"."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial literal")
    out = MPoly.zero(nvars)
    i = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    while i <= len(s):
        # scan one term up to the next top-level +/-
        j = i
        depth = 0
        while j < len(s):
            ch = s[j]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch in "+-" and depth == 0:
                break
            j += 1
        term = s[i:j]
        if not term:
            raise ValueError(f"bad polynomial literal {text!r}")
        out = out + _parse_poly_term(term, nvars, prefix) * sign
        if j >= len(s):
            break
        sign = -1 if s[j] == "-" else 1
        i = j + 1
    return out


def _parse_poly_term(term: str, nvars: int, prefix: str) -> MPoly:
    coeff = ONE
    exps = [0] * nvars
    for atom in _split_atoms(term):
        if atom.startswith("("):
            if not atom.endswith(")"):
                raise ValueError(f"unbalanced parentheses in {term!r}")
            coeff = coeff * parse_scalar(atom[1:-1])
            continue
        m = _MONO_ATOM.fullmatch(atom)
        if m and m.group(1) == prefix:
            idx = int(m.group(2)) - 1
            if not 0 <= idx < nvars:
                raise ValueError(f"variable {atom!r} out of range for {nvars} variables")
            exps[idx] += int(m.group(3)) if m.group(3) else 1
        else:
            coeff = coeff * parse_scalar(atom)
    return MPoly.monomial(nvars, exps, coeff)


def _split_atoms(term: str) -> list[str]:
    atoms = []
    i = 0
    while i < len(term):
        if term[i] == "(":
            depth = 1
            j = i + 1
            while j < len(term) and depth:
                if term[j] == "(":
                    depth += 1
                elif term[j] == ")":
                    depth -= 1
                j += 1
            atoms.append(term[i:j])
            i = j
        else:
            j = i
            while j < len(term) and term[j] != "*" and term[j] != "(":
                j += 1
            if j > i:
                atoms.append(term[i:j])
            i = j
        if i < len(term) and term[i] == "*":
            i += 1
    return atoms
