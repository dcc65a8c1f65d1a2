"""Finite matrix groups: closure from generators, conjugacy classes,
pseudo-reflection data, determinant-one subgroups, and a catalog of the
standard small groups (sign groups, symmetric groups, imprimitive groups
G(m,p,n), the binary polyhedral subgroups of SL(2)).

Element 0 is always the identity.  The multiplication table is built from
the BFS word structure of the closure, so only O(|G| * #generators) actual
matrix products are ever computed; everything after that is integer index
arithmetic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cyclotomic import CycNum, ONE
from .matrices import Matrix, rref
from .polynomials import MPoly

__all__ = [
    "MatGroup",
    "Mirror",
    "ReflectionData",
    "close_group",
    "reflection_data",
    "sl_subgroup",
    "catalog",
    "catalog_group",
    "parse_catalog_name",
    "group_from_json",
    "group_to_json",
    "ClosureLimitExceeded",
]


class ClosureLimitExceeded(RuntimeError):
    """The generated group exceeded the configured size bound."""


class MatGroup:
    """A closed finite matrix group with full index tables."""

    def __init__(self, elements: list[Matrix], mult: list[list[int]],
                 generators: list[int] | None, name: str = ""):
        self.n = elements[0].rows
        self.elements = tuple(elements)
        self.mult = tuple(tuple(row) for row in mult)
        self.name = name
        o = len(elements)
        self.inv = tuple(row.index(0) for row in self.mult)
        self.generators = tuple(generators) if generators else tuple(range(o))
        self.element_orders = tuple(self._order_of(i) for i in range(o))
        self.exponent = lcm(*self.element_orders) if o else 1
        self.dets = tuple(g.det() for g in self.elements)
        self.classes, self.class_of = self._conjugacy_classes()
        self.class_reps = tuple(c[0] for c in self.classes)

    # -- basic structure ---------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def _order_of(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.mult[x][i]
            k += 1
        return k

    def _conjugacy_classes(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        # orbits of conjugation by the generators
        o = len(self.elements)
        seen = [False] * o
        classes = []
        for start in range(o):
            if seen[start]:
                continue
            orbit = {start}
            queue = deque([start])
            seen[start] = True
            while queue:
                x = queue.popleft()
                for a in self.generators:
                    y = self.mult[self.mult[a][x]][self.inv[a]]
                    if not seen[y]:
                        seen[y] = True
                        orbit.add(y)
                        queue.append(y)
            classes.append(tuple(sorted(orbit)))
        classes.sort(key=lambda c: (len(c), c[0]))
        class_of = [0] * o
        for idx, c in enumerate(classes):
            for x in c:
                class_of[x] = idx
        return tuple(classes), tuple(class_of)

    def power_class(self, element: int, k: int) -> int:
        """Conjugacy class index of elements[element] ** k."""
        x = 0
        for _ in range(k):
            x = self.mult[x][element]
        return self.class_of[x]

    def is_in_sl(self) -> bool:
        return all(d == ONE for d in self.dets)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"MatGroup({self.name or 'unnamed'}, order {self.order}, dim {self.n})"


def close_group(generators: list[Matrix], max_order: int = 10000,
                name: str = "") -> MatGroup:
    """Close a finite matrix group from generators by BFS.

    Element order is deterministic: identity first, then breadth-first
    discovery with the generators applied in the order given.
    """
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].rows
    for g in generators:
        if g.rows != g.cols or g.rows != n:
            raise ValueError("generators must be square matrices of one size")
        if not g.det():
            raise ValueError("generators must be invertible")

    ident = Matrix.identity(n)
    elements = [ident]
    index = {ident: 0}
    parent: list[tuple[int, int]] = [(-1, -1)]
    genrows: list[list[int]] = [[] for _ in generators]
    queue = deque([0])
    while queue:
        j = queue.popleft()
        gj = elements[j]
        for a, ga in enumerate(generators):
            h = ga * gj
            i = index.get(h)
            if i is None:
                i = len(elements)
                if i >= max_order:
                    raise ClosureLimitExceeded(
                        f"closure exceeded {max_order} elements; "
                        "the group is too large or not finite"
                    )
                elements.append(h)
                index[h] = i
                parent.append((a, j))
                queue.append(i)
            genrows[a].append(i)

    o = len(elements)
    mult = [list(range(o))]
    for i in range(1, o):
        a, j = parent[i]
        row_j = mult[j]
        ga = genrows[a]
        mult.append([ga[r] for r in row_j])

    gen_indices = []
    for a in range(len(generators)):
        idx = genrows[a][0]
        if idx not in gen_indices and idx != 0:
            gen_indices.append(idx)
    if not gen_indices:
        gen_indices = [0]
    return MatGroup(elements, mult, gen_indices, name=name)


# -- pseudo-reflections ------------------------------------------------------


@dataclass(frozen=True)
class Mirror:
    """A reflecting hyperplane: its linear form, the order rho_H of the
    cyclic group fixing it, and the indices of the reflections doing so."""

    form: MPoly
    order: int
    reflections: tuple[int, ...]


@dataclass(frozen=True)
class ReflectionData:
    mirrors: tuple[Mirror, ...]

    @property
    def reflections(self) -> tuple[int, ...]:
        return tuple(sorted(i for m in self.mirrors for i in m.reflections))

    @property
    def count(self) -> int:
        return sum(len(m.reflections) for m in self.mirrors)

    def arrangement_poly(self, nvars: int) -> MPoly:
        z = MPoly.constant(nvars, 1)
        for m in self.mirrors:
            z = z * m.form
        return z


def _mirror_form(g: Matrix, ident: Matrix) -> MPoly:
    # The form vanishing on ker(g - 1) spans the row space of (g - 1).
    diff = g - ident
    rows, pivots = rref(diff)
    if len(pivots) != 1:
        raise ValueError("not a pseudo-reflection")
    coeffs = rows[0]
    n = g.rows
    return MPoly(n, {tuple(1 if j == i else 0 for j in range(n)): coeffs[i]
                     for i in range(n) if coeffs[i]})


def reflection_data(group: MatGroup) -> ReflectionData:
    """All pseudo-reflections of the group, grouped by mirror.

    A pseudo-reflection is an element with rank(g - 1) = 1; its mirror form
    is normalized to leading coefficient 1, and rho_H is the largest order
    among the reflections sharing the mirror.
    """
    ident = Matrix.identity(group.n)
    by_form: dict[str, tuple[MPoly, list[int]]] = {}
    for i, g in enumerate(group.elements):
        if i == 0:
            continue
        diff = g - ident
        if diff.rank() != 1:
            continue
        form = _mirror_form(g, ident).monic()
        key = form.to_str()
        if key not in by_form:
            by_form[key] = (form, [])
        by_form[key][1].append(i)
    mirrors = []
    for key in sorted(by_form):
        form, refs = by_form[key]
        order = max(group.element_orders[i] for i in refs)
        mirrors.append(Mirror(form=form, order=order, reflections=tuple(sorted(refs))))
    return ReflectionData(mirrors=tuple(mirrors))


def sl_subgroup(group: MatGroup) -> tuple[MatGroup, int]:
    """The determinant-one subgroup, re-indexed, plus the quotient order |G|/|Gamma|."""
    keep = [i for i in range(group.order) if group.dets[i] == ONE]
    pos = {old: new for new, old in enumerate(keep)}
    elements = [group.elements[i] for i in keep]
    mult = [[pos[group.mult[i][j]] for j in keep] for i in keep]
    sub = MatGroup(elements, mult, None, name=f"{group.name}^SL" if group.name else "")
    return sub, group.order // sub.order


# -- catalog -----------------------------------------------------------------


def _zeta(n: int, e: int = 1) -> CycNum:
    return CycNum.zeta(n, e)


def _perm_matrix(n: int, i: int, j: int) -> Matrix:
    rows = [[1 if (r == c and r not in (i, j)) or (r, c) in ((i, j), (j, i)) else 0
             for c in range(n)] for r in range(n)]
    return Matrix.from_rows(rows)


def _sign_matrix(n: int, i: int) -> Matrix:
    return Matrix.diagonal([-1 if k == i else 1 for k in range(n)])


def _sn_reflection_generators(n: int) -> list[Matrix]:
    # simple reflections of A_{n-1} acting on simple-root coordinates
    dim = n - 1
    gens = []
    for i in range(dim):
        rows = [[0] * dim for _ in range(dim)]
        for r in range(dim):
            rows[r][r] = 1
        rows[i][i] = -1
        if i > 0:
            rows[i][i - 1] = 1
        if i < dim - 1:
            rows[i][i + 1] = 1
        gens.append(Matrix.from_rows(rows))
    return gens


def _gmpn_generators(m: int, p: int, n: int) -> list[Matrix]:
    if m < 1 or n < 1 or p < 1 or m % p:
        raise ValueError("G(m,p,n) needs positive m, n and p dividing m")
    gens: list[Matrix] = []
    for i in range(n - 1):
        gens.append(_perm_matrix(n, i, i + 1))
    if m > 1:
        if p < m:
            gens.append(Matrix.diagonal([_zeta(m) ** p] + [ONE] * (n - 1)))
        if p > 1:
            if n < 2:
                raise ValueError("G(m,p,1) with p > 1 needs p = m")
            gens.append(Matrix.diagonal([_zeta(m), _zeta(m, m - 1)] + [ONE] * (n - 2)))
    if not gens:  # the trivial group G(1,1,1)
        gens.append(Matrix.identity(n))
    return gens


def _quaternion_matrix(a: CycNum, b: CycNum, c: CycNum, d: CycNum) -> Matrix:
    # a + bi + cj + dk as an SU(2) matrix
    i = _zeta(4)
    return Matrix.from_rows([[a + b * i, c + d * i], [-c + d * i, a - b * i]])


def _binary_tetrahedral_generators() -> list[Matrix]:
    half = CycNum(Fraction(1, 2))
    zero = CycNum(0)
    one = ONE
    qi = _quaternion_matrix(zero, one, zero, zero)
    qj = _quaternion_matrix(zero, zero, one, zero)
    omega = _quaternion_matrix(-half, half, half, half)
    return [qi, qj, omega]


def _binary_octahedral_generators() -> list[Matrix]:
    return _binary_tetrahedral_generators() + [Matrix.diagonal([_zeta(8), _zeta(8, 7)])]


def _binary_icosahedral_generators() -> list[Matrix]:
    # golden ratio via sqrt(5) = z5 - z5^2 - z5^3 + z5^4
    sqrt5 = _zeta(5) - _zeta(5, 2) - _zeta(5, 3) + _zeta(5, 4)
    half = CycNum(Fraction(1, 2))
    phi = (1 + sqrt5) * half
    phi_inv = phi - 1
    zero = CycNum(0)
    omega = _quaternion_matrix(-half, half, half, half)
    psi = _quaternion_matrix(phi * half, phi_inv * half, half, zero)
    return [omega, psi]


_CATALOG_NAMES = (
    "mu2^n", "Sn", "G(m,p,n)", "binary-dihedral",
    "binary-tetrahedral", "binary-octahedral", "binary-icosahedral", "cyclic-sl2",
)


def catalog(name: str, params=None) -> list[Matrix]:
    """Generator matrices for a named group family."""
    if name == "mu2^n":
        n = int(params)
        if n < 1:
            raise ValueError("mu2^n needs n >= 1")
        return [_sign_matrix(n, i) for i in range(n)]
    if name == "Sn":
        if isinstance(params, tuple):
            n, rep = params
        else:
            n, rep = params, "refl"
        n = int(n)
        if n < 2:
            raise ValueError("Sn needs n >= 2")
        if rep == "perm":
            return [_perm_matrix(n, i, i + 1) for i in range(n - 1)]
        if rep == "refl":
            return _sn_reflection_generators(n)
        raise ValueError(f"unknown Sn representation {rep!r}")
    if name == "G(m,p,n)":
        m, p, n = (int(v) for v in params)
        return _gmpn_generators(m, p, n)
    if name == "binary-dihedral":
        m = int(params)
        if m < 1:
            raise ValueError("binary-dihedral needs m >= 1")
        a = Matrix.diagonal([_zeta(2 * m), _zeta(2 * m, 2 * m - 1)])
        b = Matrix.from_rows([[0, 1], [-1, 0]])
        return [a, b]
    if name == "binary-tetrahedral":
        return _binary_tetrahedral_generators()
    if name == "binary-octahedral":
        return _binary_octahedral_generators()
    if name == "binary-icosahedral":
        return _binary_icosahedral_generators()
    if name == "cyclic-sl2":
        n = int(params)
        if n < 1:
            raise ValueError("cyclic-sl2 needs n >= 1")
        return [Matrix.diagonal([_zeta(n), _zeta(n, n - 1)])]
    raise ValueError(f"unknown catalog name {name!r}; known: {', '.join(_CATALOG_NAMES)}")


def parse_catalog_name(spec: str) -> tuple[str, object]:
    """Parse CLI catalog specs like "G(2,1,3)", "mu2^n:3", "S3-refl",
    "binary-dihedral:2" (":" and "-" both accepted as parameter separators)."""
    import re as _re

    s = spec.strip()
    m = _re.fullmatch(r"G\((\d+),(\d+),(\d+)\)", s)
    if m:
        return "G(m,p,n)", tuple(int(v) for v in m.groups())
    m = _re.fullmatch(r"G\(m,p,n\):(\d+),(\d+),(\d+)", s)
    if m:
        return "G(m,p,n)", tuple(int(v) for v in m.groups())
    m = _re.fullmatch(r"S(\d+)(?:-(refl|perm))?", s)
    if m:
        return "Sn", (int(m.group(1)), m.group(2) or "refl")
    m = _re.fullmatch(r"Sn:(\d+)(?:,(refl|perm))?", s)
    if m:
        return "Sn", (int(m.group(1)), m.group(2) or "refl")
    m = _re.fullmatch(r"mu2\^n[:\-](\d+)", s)
    if m:
        return "mu2^n", int(m.group(1))
    m = _re.fullmatch(r"(binary-dihedral|cyclic-sl2)[:\-](\d+)", s)
    if m:
        return m.group(1), int(m.group(2))
    if s in ("binary-tetrahedral", "binary-octahedral", "binary-icosahedral"):
        return s, None
    raise ValueError(f"cannot parse catalog spec {spec!r}")


def catalog_group(spec: str, max_order: int = 10000) -> MatGroup:
    """Close the catalog group named by a CLI-style spec string."""
    name, params = parse_catalog_name(spec)
    return close_group(catalog(name, params), max_order=max_order, name=spec)


# -- JSON group files ----------------------------------------------------------


def group_from_json(data: dict, max_order: int = 10000) -> MatGroup:
    from .cyclotomic import parse_scalar

    n = int(data["dimension"])
    gens = []
    for rows in data["generators"]:
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("generator shape does not match the dimension")
        gens.append(Matrix.from_rows([[parse_scalar(v) for v in r] for r in rows]))
    return close_group(gens, max_order=max_order, name=data.get("name", ""))


def group_to_json(group: MatGroup) -> dict:
    gens = [group.elements[i] for i in group.generators]
    return {
        "dimension": group.n,
        "generators": [
            [[str(g[i, j]) for j in range(group.n)] for i in range(group.n)] for g in gens
        ],
        "name": group.name,
    }
