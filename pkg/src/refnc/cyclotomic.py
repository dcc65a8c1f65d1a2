"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value is a Q-linear combination of powers of zeta_N = exp(2*pi*i/N),
stored as a sparse coefficient dict on the power basis 1, z, ..., z^(phi(N)-1)
of Q[x]/(Phi_N(x)).  Every value is kept reduced modulo Phi_N *and* rewritten
at its minimal conductor, so equal field elements always have identical
representations (and consistent hashes) no matter how they were produced.
Rationals live at conductor 1 and take fast paths throughout.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

__all__ = [
    "CycNum",
    "ZERO",
    "ONE",
    "parse_scalar",
    "euler_phi",
    "cyclotomic_poly",
]

_F0 = Fraction(0)
_F1 = Fraction(1)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _exact_int_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; the division must be exact
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("polynomial division was not exact")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending degree."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_int_div(num, cyclotomic_poly(d))
    return tuple(num)


# x^k mod Phi_n for k >= phi(n), grown on demand.  Coefficients stay integral
# because Phi_n is monic with integer coefficients.
_POWER_TABLES: dict[int, list[tuple[int, ...]]] = {}


def _power_row(n: int, k: int) -> tuple[int, ...]:
    ph = euler_phi(n)
    table = _POWER_TABLES.setdefault(n, [])
    if not table:
        phi_coeffs = cyclotomic_poly(n)
        table.append(tuple(-c for c in phi_coeffs[:ph]))
    base = table[0]
    while len(table) <= k - ph:
        prev = table[-1]
        row = [0] * ph
        for i in range(ph - 1):
            row[i + 1] = prev[i]
        top = prev[ph - 1]
        if top:
            for i in range(ph):
                row[i] += top * base[i]
        table.append(tuple(row))
    return table[k - ph]


def _reduce(n: int, raw: dict[int, Fraction]) -> dict[int, Fraction]:
    """Reduce a raw exponent->coefficient dict modulo Phi_n."""
    ph = euler_phi(n)
    out: dict[int, Fraction] = {}
    for e, c in raw.items():
        if not c:
            continue
        if e < ph:
            out[e] = out.get(e, _F0) + c
        else:
            for i, r in enumerate(_power_row(n, e)):
                if r:
                    out[i] = out.get(i, _F0) + c * r
    return {e: c for e, c in out.items() if c}


def _galois_raw(n: int, coeffs: dict[int, Fraction], j: int) -> dict[int, Fraction]:
    # zeta^e -> zeta^(j*e); exponents j*e mod n are distinct since gcd(j,n)=1
    return _reduce(n, {(e * j) % n: c for e, c in coeffs.items()})


def _kernel_fixes(n: int, m: int, coeffs: dict[int, Fraction]) -> bool:
    # Gal(Q(zeta_n)/Q(zeta_m)) = {sigma_j : j = 1 mod m, gcd(j,n)=1}
    for j in range(1 + m, n, m):
        if gcd(j, n) == 1 and _galois_raw(n, coeffs, j) != coeffs:
            return False
    return True


@lru_cache(maxsize=None)
def _descent_solver(n: int, m: int):
    """Pivot rows and inverse block for rewriting a conductor-n value in Q(zeta_m).

    The promotion zeta_m^e -> zeta_n^(e*n/m) is an injective linear map
    Q^phi(m) -> Q^phi(n); we cache phi(m) independent rows of its matrix
    together with the inverse of that square block.
    """
    ph_n, ph_m = euler_phi(n), euler_phi(m)
    step = n // m
    cols = []
    for e in range(ph_m):
        vec = [_F0] * ph_n
        for i, c in _reduce(n, {e * step: _F1}).items():
            vec[i] = c
        cols.append(vec)

    rows: list[int] = []
    work: list[list[Fraction]] = []  # row-reduced copies of the selected rows
    for r in range(ph_n):
        cand = [cols[j][r] for j in range(ph_m)]
        vec = list(cand)
        for w in work:
            lead = next(i for i, v in enumerate(w) if v)
            if vec[lead]:
                f = vec[lead]
                for i in range(ph_m):
                    vec[i] -= f * w[i]
        if any(vec):
            lead = next(i for i, v in enumerate(vec) if v)
            f = vec[lead]
            vec = [v / f for v in vec]
            work.append(vec)
            rows.append(r)
            if len(rows) == ph_m:
                break

    # invert the phi(m) x phi(m) block via Gauss-Jordan
    a = [[cols[j][r] for j in range(ph_m)] for r in rows]
    inv = [[_F1 if i == j else _F0 for j in range(ph_m)] for i in range(ph_m)]
    for col in range(ph_m):
        piv = next(r for r in range(col, ph_m) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = a[col][col]
        a[col] = [v / f for v in a[col]]
        inv[col] = [v / f for v in inv[col]]
        for r in range(ph_m):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
                inv[r] = [v - f * w for v, w in zip(inv[r], inv[col])]
    return tuple(rows), tuple(tuple(row) for row in inv)


def _descend(n: int, m: int, coeffs: dict[int, Fraction]) -> dict[int, Fraction]:
    rows, inv = _descent_solver(n, m)
    vec = [coeffs.get(r, _F0) for r in rows]
    out: dict[int, Fraction] = {}
    for e, inv_row in enumerate(inv):
        val = sum((f * v for f, v in zip(inv_row, vec) if v), _F0)
        if val:
            out[e] = val
    return out


def _canonical(n: int, coeffs: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    """Rewrite a reduced representation at its minimal conductor."""
    while n > 1:
        if not coeffs:
            return 1, {}
        if len(coeffs) == 1 and 0 in coeffs:
            return 1, dict(coeffs)
        for p in _prime_factors(n):
            m = n // p
            if _kernel_fixes(n, m, coeffs):
                coeffs = _descend(n, m, coeffs)
                n = m
                break
        else:
            break
    return n, coeffs


class CycNum:
    """An element of some cyclotomic field Q(zeta_N), with exact arithmetic."""

    __slots__ = ("n", "c", "_hash")

    def __init__(self, value=0):
        if isinstance(value, CycNum):
            self.n = value.n
            self.c = value.c
            self._hash = value._hash
            return
        if isinstance(value, float):
            raise TypeError("floats are not exact; pass int, Fraction or CycNum")
        q = Fraction(value)
        self.n = 1
        self.c = {0: q} if q else {}
        self._hash = None

    @classmethod
    def _make(cls, n: int, raw: dict[int, Fraction]) -> "CycNum":
        coeffs = _reduce(n, raw)
        n, coeffs = _canonical(n, coeffs)
        obj = object.__new__(cls)
        obj.n = n
        obj.c = coeffs
        obj._hash = None
        return obj

    @classmethod
    def zeta(cls, n: int, e: int = 1) -> "CycNum":
        """The root of unity zeta_n^e."""
        if n < 1:
            raise ValueError("conductor must be positive")
        return cls._make(n, {e % n: _F1})

    # -- predicates and conversions ------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.c

    @property
    def is_rational(self) -> bool:
        return self.n == 1

    def as_fraction(self) -> Fraction:
        if self.n != 1:
            raise ValueError(f"{self} is not rational")
        return self.c.get(0, _F0)

    def as_int(self) -> int:
        q = self.as_fraction()
        if q.denominator != 1:
            raise ValueError(f"{self} is not an integer")
        return q.numerator

    def __bool__(self) -> bool:
        return bool(self.c)

    # -- representation at a larger conductor --------------------------

    def _at(self, big: int) -> dict[int, Fraction]:
        if big == self.n:
            return self.c
        if big % self.n:
            raise ValueError("target conductor must be a multiple")
        step = big // self.n
        return _reduce(big, {e * step: c for e, c in self.c.items()})

    def key_in(self, big: int) -> tuple:
        """Deterministic sort key: coefficient vector in the zeta_big power basis."""
        at = self._at(big)
        return tuple(
            (at.get(e, _F0).numerator, at.get(e, _F0).denominator)
            for e in range(euler_phi(big))
        )

    def canonical_key(self) -> tuple:
        return (self.n, tuple(sorted((e, c.numerator, c.denominator) for e, c in self.c.items())))

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.n == 1 and other.n == 1:
            return _from_fraction(self.c.get(0, _F0) + other.c.get(0, _F0))
        big = lcm(self.n, other.n)
        raw = dict(self._at(big))
        for e, v in other._at(big).items():
            raw[e] = raw.get(e, _F0) + v
        return CycNum._make(big, raw)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(CycNum)
        obj.n = self.n
        obj.c = {e: -v for e, v in self.c.items()}
        obj._hash = None
        return obj

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.n == 1:
            return other._scaled(self.c.get(0, _F0))
        if other.n == 1:
            return self._scaled(other.c.get(0, _F0))
        big = lcm(self.n, other.n)
        a = self._at(big)
        b = other._at(big)
        raw: dict[int, Fraction] = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                raw[e] = raw.get(e, _F0) + v1 * v2
        return CycNum._make(big, raw)

    __rmul__ = __mul__

    def _scaled(self, q: Fraction) -> "CycNum":
        if not q:
            return ZERO
        obj = object.__new__(CycNum)
        obj.n = self.n
        obj.c = {e: v * q for e, v in self.c.items()}
        obj._hash = None
        return obj

    def inverse(self) -> "CycNum":
        if not self.c:
            raise ZeroDivisionError("division by zero")
        if self.n == 1:
            return _from_fraction(1 / self.c[0])
        n = self.n
        ph = euler_phi(n)
        # columns of multiplication-by-self on the power basis
        cols = []
        for e in range(ph):
            col = [_F0] * ph
            for i, c in _reduce(n, {k + e: v for k, v in self.c.items()}).items():
                col[i] = c
            cols.append(col)
        mat = [[cols[e][i] for e in range(ph)] for i in range(ph)]
        rhs = [_F1] + [_F0] * (ph - 1)
        sol = _solve_fraction(mat, rhs)
        return CycNum._make(n, {e: v for e, v in enumerate(sol) if v})

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.n == 1:
            q = other.c.get(0, _F0)
            if not q:
                raise ZeroDivisionError("division by zero")
            return self._scaled(1 / q)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, j: int) -> "CycNum":
        """Apply the Galois automorphism zeta_n -> zeta_n^j (gcd(j, n) = 1)."""
        if self.n == 1:
            return self
        j %= self.n
        if gcd(j, self.n) != 1:
            raise ValueError("automorphism index not coprime to the conductor")
        return CycNum._make(self.n, _galois_raw(self.n, self.c, j))

    def conjugate(self) -> "CycNum":
        """Complex conjugation, zeta -> zeta^-1."""
        if self.n == 1:
            return self
        return self.galois(self.n - 1)

    # -- comparison and hashing -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self.n == other.n and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.n == 1 and self.c.get(0, _F0) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.n == 1:
                self._hash = hash(self.c.get(0, _F0))
            else:
                self._hash = hash((self.n, frozenset(self.c.items())))
        return self._hash

    # -- text -------------------------------------------------------------

    def __str__(self):
        if self.n == 1:
            return str(self.c.get(0, _F0))
        parts = []
        for e in sorted(self.c):
            q = self.c[e]
            if e == 0:
                txt = str(abs(q))
            else:
                base = f"z{self.n}" if e == 1 else f"z{self.n}^{e}"
                txt = base if abs(q) == 1 else f"{abs(q)}*{base}"
            parts.append(("-" if q < 0 else "+", txt))
        sign, first = parts[0]
        out = ("-" + first) if sign == "-" else first
        for sign, txt in parts[1:]:
            out += f" {sign} {txt}"
        return out

    def __repr__(self):
        return f"CycNum({str(self)!r})"


def _coerce(value) -> "CycNum":
    if isinstance(value, CycNum):
        return value
    if isinstance(value, (int, Fraction)):
        return CycNum(value)
    return NotImplemented


def _from_fraction(q: Fraction) -> CycNum:
    obj = object.__new__(CycNum)
    obj.n = 1
    obj.c = {0: q} if q else {}
    obj._hash = None
    return obj


def _solve_fraction(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular Fraction system by Gaussian elimination."""
    n = len(mat)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        f = a[col][col]
        a[col] = [v / f for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


ZERO = CycNum(0)
ONE = CycNum(1)


_TERM_RE = re.compile(r"^([+-]?)(?:(\d+(?:/\d+)?)\*?)?(?:z(\d+)(?:\^(\d+))?)?$")


def _parse_scalar_term(term: str) -> CycNum:
    m = _TERM_RE.fullmatch(term)
    if m is None or (m.group(2) is None and m.group(3) is None):
        raise ValueError(f"bad scalar term {term!r}")
    sign = -1 if m.group(1) == "-" else 1
    coef = Fraction(m.group(2)) if m.group(2) else _F1
    coef *= sign
    if m.group(3) is None:
        return _from_fraction(coef)
    n = int(m.group(3))
    e = int(m.group(4)) if m.group(4) else 1
    return CycNum.zeta(n, e)._scaled(coef)


def parse_scalar(text: str) -> CycNum:
    """Parse a scalar literal like "3/2", "z8^3" or "-1/2*z3 + z3^2"."""
    stripped = "".join(text.split())
    if not stripped:
        raise ValueError("empty scalar literal")
    parts = re.findall(r"[+-]?[^+-]+", stripped)
    if "".join(parts) != stripped:
        raise ValueError(f"bad scalar literal {text!r}")
    total = ZERO
    for part in parts:
        total = total + _parse_scalar_term(part)
    return total
