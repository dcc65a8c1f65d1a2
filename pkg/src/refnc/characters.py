"""Exact irreducible character tables of closed finite matrix groups.

The general path is Dixon's method: the class-multiplication coefficient
matrices are simultaneously diagonalized modulo a prime p = 1 (mod exponent)
with p > 2*sqrt(|G|), and each character value is lifted back to the
cyclotomic field Q(zeta_exponent) through the discrete Fourier sum over
eigenvalue multiplicities.  Diagonal abelian groups take a direct
dual-group enumeration instead.  Both row and column orthogonality are
verified exactly before a table is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .cyclotomic import CycNum, ONE, ZERO
from .groups import MatGroup

__all__ = [
    "CharTable",
    "character_table",
    "inner_product",
    "natural_character",
    "det_character",
    "regular_character",
    "TableVerificationError",
]

ClassFunction = tuple  # CycNum values indexed by conjugacy class


class TableVerificationError(RuntimeError):
    """Internal error: a computed table failed its exactness checks."""


@dataclass(frozen=True)
class CharTable:
    group: MatGroup
    rows: tuple[ClassFunction, ...]
    dims: tuple[int, ...]
    trivial_index: int
    det_index: int

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.group.classes)

    def row_of(self, values: ClassFunction) -> int | None:
        for i, row in enumerate(self.rows):
            if row == tuple(values):
                return i
        return None


def inner_product(a: ClassFunction, b: ClassFunction, group: MatGroup) -> CycNum:
    """(1/|G|) sum over classes of |C| a(C) conj(b(C))."""
    if len(a) != len(group.classes) or len(b) != len(group.classes):
        raise ValueError("class function length mismatch")
    acc = ZERO
    for size_c, av, bv in zip((len(c) for c in group.classes), a, b):
        acc = acc + av * bv.conjugate() * size_c
    return acc / group.order


def natural_character(group: MatGroup) -> ClassFunction:
    """Trace of a representative of each conjugacy class."""
    return tuple(group.elements[r].trace() for r in group.class_reps)


def det_character(group: MatGroup) -> ClassFunction:
    return tuple(group.dets[r] for r in group.class_reps)


def regular_character(group: MatGroup) -> ClassFunction:
    return tuple(CycNum(group.order) if r == 0 else ZERO for r in group.class_reps)


def character_table(group: MatGroup) -> CharTable:
    if group.order == 1:
        rows = ((ONE,),)
        return CharTable(group, rows, (1,), 0, 0)
    if _is_diagonal_group(group):
        rows = _diagonal_dual_table(group)
    else:
        rows = _dixon_table(group)
    _verify_orthogonality(group, rows)
    return _assemble(group, rows)


# -- assembly and verification -------------------------------------------------


def _assemble(group: MatGroup, rows: list[ClassFunction]) -> CharTable:
    exp = group.exponent
    trivial = tuple(ONE for _ in group.classes)

    def key(row):
        dim = row[0].as_int()
        return (dim,) + tuple(v.key_in(exp) for v in row)

    ordered = [trivial] + sorted((r for r in rows if r != trivial), key=key)
    dims = tuple(r[0].as_int() for r in ordered)
    det_row = det_character(group)
    det_index = None
    for i, r in enumerate(ordered):
        if r == det_row:
            det_index = i
            break
    if det_index is None:
        raise TableVerificationError("determinant character missing from the table")
    if sum(d * d for d in dims) != group.order:
        raise TableVerificationError("sum of squared dimensions is not |G|")
    return CharTable(group, tuple(ordered), dims, 0, det_index)


def _verify_orthogonality(group: MatGroup, rows: list[ClassFunction]) -> None:
    k = len(group.classes)
    if len(rows) != k:
        raise TableVerificationError(f"expected {k} characters, got {len(rows)}")
    for i in range(k):
        for j in range(i, k):
            val = inner_product(rows[i], rows[j], group)
            if val != (ONE if i == j else ZERO):
                raise TableVerificationError("row orthogonality fails exactly")
    sizes = [len(c) for c in group.classes]
    for c1 in range(k):
        for c2 in range(c1, k):
            acc = ZERO
            for row in rows:
                acc = acc + row[c1] * row[c2].conjugate()
            want = CycNum(group.order // sizes[c1]) if c1 == c2 else ZERO
            if acc != want:
                raise TableVerificationError("column orthogonality fails exactly")


# -- abelian diagonal fast path -------------------------------------------------


def _is_diagonal_group(group: MatGroup) -> bool:
    return all(g.is_diagonal() for g in group.elements)


def _diagonal_dual_table(group: MatGroup) -> list[ClassFunction]:
    # classes are singletons; coordinate characters generate the dual group
    if any(len(c) != 1 for c in group.classes):
        raise TableVerificationError("diagonal group with non-singleton classes")
    reps = group.class_reps
    coords = [tuple(group.elements[r][i, i] for r in reps) for i in range(group.n)]
    found = {tuple(ONE for _ in reps)}
    frontier = [tuple(ONE for _ in reps)]
    while frontier:
        nxt = []
        for row in frontier:
            for lam in coords:
                new = tuple(a * b for a, b in zip(row, lam))
                if new not in found:
                    found.add(new)
                    nxt.append(new)
        frontier = nxt
    if len(found) != group.order:
        raise TableVerificationError("dual enumeration did not close at |G| characters")
    return sorted(found, key=lambda r: tuple(v.key_in(group.exponent) for v in r))


# -- Dixon's method ---------------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def dixon_prime(exponent: int, order: int) -> int:
    """Smallest prime p = 1 (mod exponent) with p > 2*sqrt(|G|)."""
    bound = 2 * isqrt(order)
    p = exponent + 1
    while True:
        if p > bound and _is_prime(p):
            return p
        p += exponent


def _primitive_root(p: int) -> int:
    factors = []
    n = p - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise RuntimeError("no primitive root found")


def _nullspace_mod_p(mat: list[list[int]], p: int) -> list[list[int]]:
    rows = [r[:] for r in mat]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, n) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    basis = []
    for free in range(m):
        if free in pivots:
            continue
        vec = [0] * m
        vec[free] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-rows[i][free]) % p
        basis.append(vec)
    return basis


def _class_constant_matrices(group: MatGroup) -> list[list[list[int]]]:
    k = len(group.classes)
    sizes = [len(c) for c in group.classes]
    counts = [[[0] * k for _ in range(k)] for _ in range(k)]
    class_of = group.class_of
    for x in range(group.order):
        cx = class_of[x]
        row = group.mult[x]
        for y in range(group.order):
            counts[cx][class_of[y]][class_of[row[y]]] += 1
    for i in range(k):
        for j in range(k):
            for l in range(k):
                counts[i][j][l] //= sizes[l]
    return counts


def _common_eigenvectors(mats: list[list[list[int]]], p: int) -> list[list[int]]:
    k = len(mats[0])
    spaces = [[[1 if i == j else 0 for j in range(k)] for i in range(k)]]
    for mat in mats:
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            restricted = _restrict_mod_p(mat, basis, p)
            m = len(basis)
            split = []
            found = 0
            for lam in range(p):
                shifted = [[(restricted[i][j] - (lam if i == j else 0)) % p
                            for j in range(m)] for i in range(m)]
                ker = _nullspace_mod_p(shifted, p)
                if ker:
                    vecs = [[sum(kv[t] * basis[t][c] for t in range(m)) % p
                             for c in range(k)] for kv in ker]
                    split.append(vecs)
                    found += len(ker)
                    if found == m:
                        break
            if found != m:
                raise TableVerificationError("eigen refinement failed mod p")
            new_spaces.extend(split)
        spaces = new_spaces
        if all(len(b) == 1 for b in spaces):
            break
    if not all(len(b) == 1 for b in spaces):
        raise TableVerificationError("class matrices did not separate the characters")
    return [b[0] for b in spaces]


def _restrict_mod_p(mat: list[list[int]], basis: list[list[int]], p: int) -> list[list[int]]:
    k = len(mat)
    m = len(basis)
    images = [[sum(mat[i][j] * vec[j] for j in range(k)) % p for i in range(k)]
              for vec in basis]
    # solve image = sum coeff_t basis_t  for each image (basis rows independent)
    aug = [[basis[t][c] for t in range(m)] for c in range(k)]
    coords = []
    for img in images:
        coords.append(_solve_overdetermined_mod_p(aug, img, p))
    # restricted operator acts on coordinates: column t = coords of image of basis_t
    return [[coords[t][i] for t in range(m)] for i in range(m)]


def _solve_overdetermined_mod_p(a: list[list[int]], rhs: list[int], p: int) -> list[int]:
    rows = [a[i][:] + [rhs[i] % p] for i in range(len(a))]
    n = len(rows)
    m = len(a[0])
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, n) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    sol = [0] * m
    for i, pc in enumerate(pivots):
        sol[pc] = rows[i][m]
    for i in range(r, n):
        if rows[i][m] % p:
            raise TableVerificationError("inconsistent restriction system mod p")
    return sol


def _dixon_table(group: MatGroup) -> list[ClassFunction]:
    k = len(group.classes)
    sizes = [len(c) for c in group.classes]
    order = group.order
    exp = group.exponent
    p = dixon_prime(exp, order)
    root = pow(_primitive_root(p), (p - 1) // exp, p)

    mats = _class_constant_matrices(group)
    vecs = _common_eigenvectors(mats, p)

    inv_class = [group.class_of[group.inv[r]] for r in group.class_reps]
    rows = []
    for w in vecs:
        w0inv = pow(w[0], p - 2, p)
        w = [(v * w0inv) % p for v in w]
        denom = 0
        for j in range(k):
            denom = (denom + w[j] * w[inv_class[j]] * pow(sizes[j], p - 2, p)) % p
        d2 = (order * pow(denom, p - 2, p)) % p
        dim = next((r for r in range(1, (p + 1) // 2) if (r * r) % p == d2), None)
        if dim is None:
            raise TableVerificationError("no admissible dimension lift")
        theta = [(dim * w[j] * pow(sizes[j], p - 2, p)) % p for j in range(k)]
        rows.append(_lift_row(group, theta, dim, p, root))
    return rows


def _lift_row(group: MatGroup, theta: list[int], dim: int, p: int, root: int) -> ClassFunction:
    """Recover exact values from mod-p data via eigenvalue multiplicities."""
    exp = group.exponent
    values = []
    for rep in group.class_reps:
        m = group.element_orders[rep]
        zm = pow(root, exp // m, p)
        zm_inv = pow(zm, p - 2, p)
        m_inv = pow(m, p - 2, p)
        theta_pows = []
        x = 0
        for _ in range(m):
            theta_pows.append(theta[group.class_of[x]])
            x = group.mult[x][rep]
        mults = []
        for a in range(m):
            acc = 0
            for s in range(m):
                acc = (acc + theta_pows[s] * pow(zm_inv, (a * s) % exp, p)) % p
            mults.append((acc * m_inv) % p)
        if sum(mults) != dim:
            raise TableVerificationError("eigenvalue multiplicities do not sum to the dimension")
        val = ZERO
        for a, mu in enumerate(mults):
            if mu:
                val = val + CycNum.zeta(m, a) * mu
        values.append(val)
    return tuple(values)
