"""Triangular normal forms and exact solving of degenerate periodic systems.

A word whose factors are all triangular-shaped (triangular automorphisms or
affine maps with upper-triangular matrix, possibly formally inverted)
composes in closed normal form.  The fixed-point system of its n-th iterate
is itself triangular, so periodic points can be solved exactly back to
front, including the degenerate coordinates where a_i^n = 1 and Newton has
a singular Jacobian.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .autos import AffineAuto, AutoWord, HenonFactor, TriangularAuto
from .errors import DegreeOverflow, NotASimpleRoot
from .padic import FieldSpec, PadicElement, ResidueElement, hensel_lift_root
from .poly import MultiPoly

_NF_DEGREE_BUDGET = 2048


def factor_as_triangular(g, inverted: bool, max_degree: int = _NF_DEGREE_BUDGET) -> TriangularAuto | None:
    """Triangular normal form of a single word factor, or None."""
    if isinstance(g, HenonFactor):
        return None
    if isinstance(g, AffineAuto):
        r = g.dim
        spec = g.spec
        for i in range(r):
            if any(not g.matrix[i][j].is_zero() for j in range(i)):
                return None
            if g.matrix[i][i].is_zero():
                return None
        F = []
        for i in range(r):
            poly = MultiPoly.constant(g.translation[i], r)
            for j in range(i + 1, r):
                poly = poly + MultiPoly.variable(spec, r, j).scale(g.matrix[i][j])
            F.append(poly)
        t = TriangularAuto(r, tuple(g.matrix[i][i] for i in range(r)), tuple(F))
    else:
        t = g
    if inverted:
        t = invert_normal_form(t, max_degree)
    return t


def invert_normal_form(t: TriangularAuto, max_degree: int = _NF_DEGREE_BUDGET) -> TriangularAuto:
    """Inverse of a triangular automorphism, again in normal form."""
    spec = t.spec
    r = t.dim
    exprs: list[MultiPoly] = [None] * r  # type: ignore[list-item]
    inv_a = []
    F = [None] * r  # type: ignore[list-item]
    for i in range(r - 1, -1, -1):
        ai_inv = spec.one() / t.a[i]
        subs = [exprs[j] if j > i else MultiPoly.variable(spec, r, j) for j in range(r)]
        fi = t.F[i].substitute(subs, max_degree)
        F[i] = fi.scale(-ai_inv)
        exprs[i] = MultiPoly.variable(spec, r, i).scale(ai_inv) + F[i]
        inv_a.append(ai_inv)
    inv_a.reverse()
    return TriangularAuto(r, tuple(inv_a), tuple(F))


def compose_normal_forms(outer: TriangularAuto, inner: TriangularAuto, max_degree: int = _NF_DEGREE_BUDGET) -> TriangularAuto:
    """Normal form of outer . inner."""
    r = outer.dim
    spec = outer.spec
    inner_coords = [
        MultiPoly.variable(spec, r, j).scale(inner.a[j]) + inner.F[j] for j in range(r)
    ]
    a = []
    F = []
    for i in range(r):
        subs = [inner_coords[j] if j > i else MultiPoly.variable(spec, r, j) for j in range(r)]
        fi = inner.F[i].scale(outer.a[i]) + outer.F[i].substitute(subs, max_degree)
        a.append(outer.a[i] * inner.a[i])
        F.append(fi)
    return TriangularAuto(r, tuple(a), tuple(F))


def triangular_normal_form(word: AutoWord, max_degree: int = _NF_DEGREE_BUDGET) -> TriangularAuto | None:
    """Normal form of a whole word, or None if any factor is not triangular."""
    if word.conjugator is not None:
        return None
    nf = None
    try:
        for g, inv in word.application_sequence():
            t = factor_as_triangular(g, inv, max_degree)
            if t is None:
                return None
            nf = t if nf is None else compose_normal_forms(t, nf, max_degree)
    except DegreeOverflow:
        return None
    return nf


def power_normal_form(t: TriangularAuto, n: int, max_degree: int = _NF_DEGREE_BUDGET) -> TriangularAuto:
    """Normal form of the n-th iterate, by binary powering."""
    if n < 1:
        raise ValueError("need n >= 1")
    result = None
    base = t
    while n:
        if n & 1:
            result = base if result is None else compose_normal_forms(result, base, max_degree)
        n >>= 1
        if n:
            base = compose_normal_forms(base, base, max_degree)
    return result  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# exact solving of phi^n(X) = X above a residue-cycle representative

CERTIFIED = "certified"
NO_POINT = "no_point"
UNKNOWN = "unknown"


@dataclass
class TriangularSolve:
    status: str
    point: tuple[PadicElement, ...] | None = None


def solve_cycle_exact(
    nf_n: TriangularAuto,
    rep: Sequence[PadicElement],
    level: int,
    max_degree: int = _NF_DEGREE_BUDGET,
) -> TriangularSolve:
    """Solve phi^n(X) = X with X = rep mod p^level for triangular phi.

    nf_n is the normal form of phi^n.  Coordinates are solved back to
    front; a coordinate with a_i^n = 1 is free unless the accumulated shift
    forces a constraint, in which case single-variable constraints are
    solved exactly.  Returns a point, a proof that none exists over this
    representative, or UNKNOWN.
    """
    spec = nf_n.spec
    r = nf_n.dim
    one = spec.one()
    pk = spec.from_int(spec.p) ** level
    assignments: list[MultiPoly | None] = [None] * r
    forced = True

    def as_sub(j: int) -> MultiPoly:
        if assignments[j] is not None:
            return assignments[j]
        return MultiPoly.variable(spec, r, j)

    def residue_matches(x: PadicElement, j: int) -> bool:
        return (x - rep[j]).valuation() >= level

    for i in range(r - 1, -1, -1):
        c = nf_n.a[i] - one
        try:
            g = nf_n.F[i].substitute([as_sub(j) for j in range(r)], max_degree)
        except DegreeOverflow:
            return TriangularSolve(UNKNOWN)
        if not c.vanishes():
            assignments[i] = g.scale(-(one / c))
            continue
        # degenerate coordinate (a_i^n = 1 at precision): the equation is g = 0
        if g.is_zero():
            continue  # X_i stays free
        if g.is_constant():
            if g.constant_value().vanishes():
                continue  # indistinguishable from the free case
            # free choices cancelled out of g, so the obstruction is real
            return TriangularSolve(NO_POINT)
        free_vars = sorted(v for v in g.variables_used() if assignments[v] is None)
        if len(free_vars) != 1:
            return TriangularSolve(UNKNOWN)
        j = free_vars[0]
        outcome = _solve_univariate(g, j, rep[j], level)
        if outcome is None:
            return TriangularSolve(UNKNOWN)
        found, value = outcome
        if not found:
            return TriangularSolve(NO_POINT)
        assignments[j] = MultiPoly.constant(value, r)
        # X_i itself stays free

    values: list[PadicElement | None] = [None] * r
    for i in range(r - 1, -1, -1):
        if assignments[i] is None:
            values[i] = rep[i]
            forced = False
        else:
            point_so_far = [values[j] if j > i else spec.zero() for j in range(r)]
            values[i] = assignments[i].evaluate(point_so_far)
    point = tuple(values)  # type: ignore[arg-type]
    for i in range(r):
        if not point[i].is_integral() or not residue_matches(point[i], i):
            return TriangularSolve(NO_POINT if forced else UNKNOWN)
    return TriangularSolve(CERTIFIED, point)


def _solve_univariate(
    g: MultiPoly, j: int, target: PadicElement, level: int
) -> tuple[bool, PadicElement | None] | None:
    """Roots x = target mod p^level of g seen as univariate in variable j.

    Returns (True, x) for a root, (False, None) for certified nonexistence
    among integral points with the required residue, or None when the
    analysis is inconclusive.
    """
    spec = g.spec
    coeffs: dict[int, PadicElement] = {}
    for e, c in g.terms.items():
        coeffs[e[j]] = c
    degree = max(coeffs)
    clist = [coeffs.get(d, spec.zero()) for d in range(degree + 1)]
    if degree == 1:
        c0, c1 = clist
        x = -(c0 / c1)
        if x.is_integral() and (x - target).valuation() >= level:
            return (True, x)
        return (False, None)
    vmin = min(int(c.valuation()) for c in clist if not c.is_zero())
    scale = spec.from_int(spec.p) ** (-vmin)
    clist = [c * scale for c in clist]
    res = [c.residue() for c in clist]
    target_res = target.residue()
    matches: list[PadicElement] = []
    for rr in ResidueElement.all_elements(spec):
        if not _res_eval(res, rr).is_zero():
            continue
        try:
            x = hensel_lift_root(clist, rr)
        except NotASimpleRoot:
            if rr == target_res:
                return None  # cannot rule the fibre out
            continue
        if (x - target).valuation() >= level:
            matches.append(x)
    if matches:
        return (True, matches[0])
    return (False, None)


def _res_eval(coeffs: Sequence[ResidueElement], x: ResidueElement) -> ResidueElement:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc
