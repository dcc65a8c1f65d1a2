"""Invariant theory of finite (pseudo-)reflection groups.

Covers the Reynolds operator, plain and twisted Molien series, degrees and
basic invariants of reflection groups, the arrangement polynomial z, the
Jacobian J with its factorization through the mirror forms, the discriminant,
and exact rewriting of invariant polynomials in a chosen set of basic
invariants.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CycNum, ONE, ZERO
from .groups import MatGroup, ReflectionData, reflection_data
from .matrices import Matrix
from .polynomials import MPoly, graded_monomials
from .series import GradedSeries

__all__ = [
    "BasicInvariants",
    "DiscriminantData",
    "reynolds",
    "molien",
    "degrees_from_molien",
    "reflection_degrees",
    "basic_invariants",
    "invariant_basis",
    "arrangement_and_discriminant",
    "rewrite_in_invariants",
    "algebra_relation",
    "freeness_polynomial",
    "NotReflectionGroup",
]


class NotReflectionGroup(ValueError):
    """The group is not a pseudo-reflection group on this representation."""


@dataclass(frozen=True)
class BasicInvariants:
    """Algebraically independent homogeneous generators of the invariant ring."""

    polys: tuple[MPoly, ...]
    degrees: tuple[int, ...]


@dataclass(frozen=True)
class DiscriminantData:
    """Arrangement equation z, Jacobian J, and the discriminant.

    delta_x is normalized as the product of the monic mirror forms to their
    rho_H powers; the scalar relating J to the same product is recorded in
    jacobian_unit (J = jacobian_unit * prod l_H^(rho_H - 1)), never absorbed.
    """

    z: MPoly
    jacobian: MPoly
    jacobian_unit: CycNum
    delta_x: MPoly
    delta_f: MPoly
    weights: tuple[int, ...]


def reynolds(f: MPoly, group: MatGroup) -> MPoly:
    """Average of f over the group; projects onto the invariant ring."""
    acc = MPoly.zero(f.nvars)
    for g in group.elements:
        acc = acc + f.act(g)
    return acc * CycNum(1).as_fraction().__class__(1, group.order)


def _det_one_minus_tg(g: Matrix) -> list[CycNum]:
    """Coefficients of det(1 - t g) in t, ascending, by cofactor expansion."""
    n = g.rows
    entries = [[[ONE if i == j else ZERO, -g[i, j]] for j in range(n)] for i in range(n)]

    def det(rows, cols):
        if len(cols) == 1:
            return entries[rows[0]][cols[0]]
        out = [ZERO] * (len(cols) + 1)
        r = rows[0]
        for k, c in enumerate(cols):
            e = entries[r][c]
            if e[0].is_zero and e[1].is_zero:
                continue
            sub = det(rows[1:], cols[:k] + cols[k + 1:])
            sign = 1 if k % 2 == 0 else -1
            for i, a in enumerate(e):
                if a.is_zero:
                    continue
                for j, b in enumerate(sub):
                    if not b.is_zero:
                        term = a * b
                        out[i + j] = out[i + j] + (term if sign == 1 else -term)
        return out

    return det(tuple(range(n)), tuple(range(n)))


def _invert_series(coeffs: list[CycNum], cutoff: int) -> list[CycNum]:
    # constant term is 1 for det(1 - t g)
    out = [ONE] + [ZERO] * cutoff
    for k in range(1, cutoff + 1):
        acc = ZERO
        for j in range(1, min(k, len(coeffs) - 1) + 1):
            if not coeffs[j].is_zero:
                acc = acc + coeffs[j] * out[k - j]
        out[k] = -acc
    return out


def molien(group: MatGroup, twist=None, cutoff: int = 20) -> GradedSeries:
    """Molien series (1/|G|) sum_g conj(twist(g)) / det(1 - t g), truncated.

    With twist None (the trivial character) this is the Hilbert series of the
    invariant ring; with an irreducible character it counts that isotypic
    component of the polynomial ring degree by degree.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    acc = [ZERO] * (cutoff + 1)
    for ci, cls in enumerate(group.classes):
        rep = group.class_reps[ci]
        inv = _invert_series(_det_one_minus_tg(group.elements[rep]), cutoff)
        weight = CycNum(len(cls))
        if twist is not None:
            weight = weight * twist[ci].conjugate()
        if weight.is_zero:
            continue
        for d in range(cutoff + 1):
            if not inv[d].is_zero:
                acc[d] = acc[d] + weight * inv[d]
    order = group.order
    out = []
    for d, v in enumerate(acc):
        v = v / order
        if not v.is_rational or v.as_fraction().denominator != 1:
            raise ArithmeticError(f"non-integral Molien coefficient at degree {d}")
        out.append(v.as_int())
    return GradedSeries(out, cutoff)


def degrees_from_molien(series: GradedSeries, group_order: int, nvars: int) -> tuple[int, ...]:
    """Greedy factorization of an invariant-ring Hilbert series as
    prod 1/(1 - t^d_i); raises NotReflectionGroup when it does not factor."""
    work = list(series.coeffs)
    if work[0] != 1:
        raise NotReflectionGroup("series does not start at 1")
    degrees = []
    for _ in range(nvars):
        d = next((i for i in range(1, len(work)) if work[i]), None)
        if d is None or work[d] < 0:
            raise NotReflectionGroup(
                "group is not a pseudo-reflection group on this representation")
        degrees.append(d)
        for i in range(len(work) - 1, d - 1, -1):
            work[i] -= work[i - d]
    prod = 1
    for d in degrees:
        prod *= d
    if prod != group_order or any(work[1:]):
        raise NotReflectionGroup(
            "group is not a pseudo-reflection group on this representation")
    return tuple(degrees)


def reflection_degrees(group: MatGroup) -> tuple[int, ...]:
    """Degrees d_1 <= ... <= d_n of the basic invariants."""
    cutoff = group.order + group.n
    return degrees_from_molien(molien(group, None, cutoff), group.order, group.n)


def invariant_basis(group: MatGroup, degree: int) -> list[MPoly]:
    """Echelon basis of the degree-d invariant subspace, deglex-first pivots."""
    monos = graded_monomials(degree, group.n)
    rank = {m: i for i, m in enumerate(monos)}
    vectors = []
    for m in monos:
        image = reynolds(MPoly.monomial(group.n, m), group)
        if image:
            vec = [ZERO] * len(monos)
            for e, c in image.terms.items():
                vec[rank[e]] = c
            vectors.append(vec)
    # row reduce
    basis_rows = []
    for vec in vectors:
        vec = vec[:]
        for pivot, row in basis_rows:
            if vec[pivot]:
                f = vec[pivot]
                vec = [a - f * b for a, b in zip(vec, row)]
        lead = next((i for i, v in enumerate(vec) if v), None)
        if lead is None:
            continue
        inv = vec[lead].inverse()
        vec = [v * inv for v in vec]
        basis_rows.append((lead, vec))
        # back-substitute to reach reduced echelon form
        for k in range(len(basis_rows) - 1):
            pk, rk = basis_rows[k]
            if rk[lead]:
                f = rk[lead]
                basis_rows[k] = (pk, [a - f * b for a, b in zip(rk, vec)])
    basis_rows.sort(key=lambda pr: pr[0])
    out = []
    for _, row in basis_rows:
        out.append(MPoly(group.n, {monos[i]: v for i, v in enumerate(row) if v}))
    return out


def _power_sum(nvars: int, d: int) -> MPoly:
    terms = {}
    for i in range(nvars):
        e = [0] * nvars
        e[i] = d
        terms[tuple(e)] = ONE
    return MPoly(nvars, terms)


def _is_invariant(f: MPoly, group: MatGroup) -> bool:
    return all(f.act(group.elements[i]) == f for i in group.generators)


def basic_invariants(group: MatGroup) -> BasicInvariants:
    """Basic invariants f_1..f_n of a pseudo-reflection group.

    Degrees come from the Molien series.  For each degree the candidates are
    the power sum (when it is invariant and the degree occurs once) followed
    by the deglex-first echelon basis of the invariant subspace; candidate
    sets are accepted as soon as their Jacobian determinant is nonzero,
    backtracking otherwise.
    """
    from itertools import combinations, product as iproduct

    from .polynomials import jacobian_det

    degrees = reflection_degrees(group)
    multiplicity: dict[int, int] = {}
    for d in degrees:
        multiplicity[d] = multiplicity.get(d, 0) + 1

    per_degree: list[tuple[int, list[tuple]]] = []
    for d in sorted(multiplicity):
        count = multiplicity[d]
        candidates = []
        if count == 1:
            ps = _power_sum(group.n, d)
            if _is_invariant(ps, group):
                candidates.append(ps)
        for row in invariant_basis(group, d):
            candidates.append(row)
        if len(candidates) < count:
            raise RuntimeError(f"too few invariants found in degree {d}")
        per_degree.append((d, [
            [candidates[i] for i in combo]
            for combo in combinations(range(len(candidates)), count)
        ]))

    for selection in iproduct(*(choices for _, choices in per_degree)):
        polys = [p for group_choice in selection for p in group_choice]
        if jacobian_det(polys):
            ordered = sorted(zip(degrees_of(polys), polys), key=lambda t: t[0])
            return BasicInvariants(
                polys=tuple(p for _, p in ordered),
                degrees=tuple(d for d, _ in ordered),
            )
    raise RuntimeError("no algebraically independent invariant set found")


def degrees_of(polys) -> list[int]:
    return [p.homogeneous_degree() for p in polys]


def freeness_polynomial(group: MatGroup, degrees: tuple[int, ...],
                        cutoff: int | None = None) -> GradedSeries:
    """The quotient HS(S) * prod (1 - t^d_i), which must be the coinvariant
    Hilbert polynomial: nonnegative integers summing to |G|."""
    if cutoff is None:
        cutoff = sum(d - 1 for d in degrees) + 1
    hs = GradedSeries.geometric([1] * group.n, cutoff)
    for d in degrees:
        hs = hs.times_one_minus(d)
    return hs


def arrangement_and_discriminant(group: MatGroup, basic: BasicInvariants,
                                 refl: ReflectionData | None = None) -> DiscriminantData:
    """Arrangement polynomial, Jacobian, and discriminant of a reflection group.

    Verifies J = unit * prod l_H^(rho_H - 1) by exact division and, for true
    reflection groups, that the discriminant equals z^2 on the nose.
    """
    if refl is None:
        refl = reflection_data(group)
    if not refl.mirrors:
        raise NotReflectionGroup("the group has no pseudo-reflections")
    n = group.n
    z = refl.arrangement_poly(n)
    jac = jacobian_from(basic)
    quotient = jac
    delta = MPoly.constant(n, 1)
    for m in refl.mirrors:
        quotient = quotient.exact_div(m.form ** (m.order - 1))
        delta = delta * m.form ** m.order
    if quotient.degree() != 0:
        raise ValueError(
            "Jacobian does not factor through the mirror forms; "
            "wrong action convention or invariant bug")
    unit = next(iter(quotient.terms.values()))
    if all(m.order == 2 for m in refl.mirrors) and delta != z * z:
        raise ValueError("discriminant of a true reflection group must equal z^2")
    delta_f = rewrite_in_invariants(delta, basic)
    return DiscriminantData(z=z, jacobian=jac, jacobian_unit=unit,
                            delta_x=delta, delta_f=delta_f, weights=basic.degrees)


def jacobian_from(basic: BasicInvariants) -> MPoly:
    from .polynomials import jacobian_det

    return jacobian_det(list(basic.polys))


def weighted_monomials(weights, total: int) -> list[tuple[int, ...]]:
    """Exponent vectors a with sum a_i * w_i = total, deterministic order."""
    weights = list(weights)

    def rec(i, remaining):
        if i == len(weights):
            return [()] if remaining == 0 else []
        out = []
        w = weights[i]
        for a in range(remaining // w, -1, -1):
            for rest in rec(i + 1, remaining - a * w):
                out.append((a,) + rest)
        return out

    return rec(0, total)


def rewrite_in_invariants(target: MPoly, basic: BasicInvariants) -> MPoly:
    """Write a homogeneous invariant as a polynomial in the basic invariants.

    Sets up the exact linear system matching x-coefficients over the weighted
    monomials of the right degree; the solution must exist and be unique.
    """
    degree = target.homogeneous_degree()
    if degree < 0:
        return MPoly.zero(len(basic.polys))
    candidates = weighted_monomials(basic.degrees, degree)
    if not candidates:
        raise ValueError(f"no invariant monomials in weighted degree {degree}")
    expansions = []
    for exps in candidates:
        prod = MPoly.constant(target.nvars, 1)
        for p, a in zip(basic.polys, exps):
            if a:
                prod = prod * p ** a
        expansions.append(prod)
    x_monos = sorted({e for p in expansions for e in p.terms} | set(target.terms))
    rank = {m: i for i, m in enumerate(x_monos)}
    rows = [[ZERO] * len(candidates) for _ in x_monos]
    for c, p in enumerate(expansions):
        for e, v in p.terms.items():
            rows[rank[e]][c] = v
    rhs = [ZERO] * len(x_monos)
    for e, v in target.terms.items():
        rhs[rank[e]] = v
    sol = _solve_unique(rows, rhs)
    return MPoly(len(basic.polys),
                 {exps: v for exps, v in zip(candidates, sol) if v})


def _solve_unique(rows: list[list[CycNum]], rhs: list[CycNum]) -> list[CycNum]:
    m = len(rows[0])
    aug = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, len(aug)) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][col].inverse()
        aug[r] = [v * inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if len(pivots) < m:
        raise ValueError("solution is not unique; the invariants are dependent")
    for i in range(r, len(aug)):
        if aug[i][m]:
            raise ValueError("target is not in the span of the invariant monomials")
    sol = [ZERO] * m
    for i, pc in enumerate(pivots):
        sol[pc] = aug[i][m]
    return sol


def algebra_relation(gens: list[MPoly], rel_degree: int) -> MPoly | None:
    """A generating relation of weighted degree rel_degree among the given
    homogeneous polynomials, echelon-normalized, or None when they are
    independent at that degree.  More than one independent relation raises."""
    weights = [p.homogeneous_degree() for p in gens]
    if any(w <= 0 for w in weights):
        raise ValueError("generators must be homogeneous of positive degree")
    candidates = weighted_monomials(weights, rel_degree)
    if not candidates:
        return None
    expansions = []
    for exps in candidates:
        prod = MPoly.constant(gens[0].nvars, 1)
        for p, a in zip(gens, exps):
            if a:
                prod = prod * p ** a
        expansions.append(prod)
    x_monos = sorted({e for p in expansions for e in p.terms})
    rank = {m: i for i, m in enumerate(x_monos)}
    from .matrices import Matrix as _M, kernel_basis as _kb

    if x_monos:
        mat = _M.from_rows([
            [expansions[c].terms.get(m, ZERO) for c in range(len(candidates))]
            for m in x_monos
        ])
        kernel = _kb(mat)
    else:
        kernel = _kb(_M.zeros(1, len(candidates)))
    if not kernel:
        return None
    if len(kernel) > 1:
        raise ValueError(
            f"relation space at degree {rel_degree} has dimension {len(kernel)}; "
            "use a smaller degree")
    vec = kernel[0]
    return MPoly(len(gens), {exps: vec[i, 0] for i, exps in enumerate(candidates)
                             if vec[i, 0]})
