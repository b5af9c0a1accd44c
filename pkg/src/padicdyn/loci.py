"""Indeterminacy loci at infinity and the regular / special predicates.

The birational extension of a plane automorphism to P^2 is undefined exactly
where all homogeneous components vanish; after homogenising to the common
degree D this happens on T = 0 at the common roots of the top-degree forms
of the two coordinates.  Top forms are computed exactly through a truncated
(leading-slices-only) composition, with full expansion as a fallback.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .autos import AutoWord, HenonFactor, TriangularAuto, compose_symbolic, reduce_word
from .errors import DegenerateReduction, DegreeOverflow, NonIntegralCoefficient, NotASimpleRoot
from .padic import FieldSpec, PadicElement, ResidueElement, hensel_lift_root
from .poly import MultiPoly, TruncatedPoly, WindowExhausted, substitute_truncated

InfinityPoint = tuple[PadicElement, PadicElement, PadicElement]


@dataclass(frozen=True)
class ProjectivePointSet:
    """Finite set of points [X:Y:T] on the line T = 0, normalized so the
    first nonzero coordinate is 1."""

    spec: FieldSpec
    where: str  # "generic" or "special"
    points: frozenset[InfinityPoint]

    def is_disjoint_from(self, other: "ProjectivePointSet") -> bool:
        return not (self.points & other.points)

    def __len__(self) -> int:
        return len(self.points)

    def sorted_points(self) -> list[InfinityPoint]:
        return sorted(self.points, key=lambda pt: tuple(c.to_literal() for c in pt))

    def to_literals(self) -> list[list[str]]:
        return [[c.to_literal() for c in pt] for pt in self.sorted_points()]

    def __repr__(self) -> str:
        inner = ", ".join("[" + ":".join(c.to_literal() for c in pt) + "]" for pt in self.sorted_points())
        return "{" + inner + "}"


def _infinity_point(spec: FieldSpec, x: PadicElement, y: PadicElement) -> InfinityPoint:
    zero = spec.zero()
    if not x.is_zero():
        return (spec.one(), y / x, zero)
    return (zero, spec.one(), zero)


# ---------------------------------------------------------------------------
# top forms of a composed word

def _compose_truncated(word: AutoWord, cap: int) -> tuple[TruncatedPoly, ...]:
    spec = word.spec
    coords = tuple(
        TruncatedPoly.exact(MultiPoly.variable(spec, word.dim, i)) for i in range(word.dim)
    )
    for g, inv in word.application_sequence():
        if isinstance(g, TriangularAuto):
            outer = g.coordinate_polys(inv, None)
        else:
            outer = g.coordinate_polys(inv)
        coords = tuple(substitute_truncated(op, coords, cap) for op in outer)
    return coords


def composed_top_forms(
    word: AutoWord, max_degree: int = 4096
) -> list[tuple[int, list[PadicElement]]]:
    """(degree, top binary form coefficients) for each coordinate.

    Coefficient i of a form of degree d multiplies X^(d-i) Y^i.
    """
    for cap in (1, 4, 16):
        try:
            coords = _compose_truncated(word, cap)
        except WindowExhausted:
            continue
        return [
            (c.degree, _binary_coeffs(c.poly.homogeneous_part(c.degree), c.degree))
            for c in coords
        ]
    polys = compose_symbolic(word, max_degree)
    return [
        (p.total_degree(), _binary_coeffs(p.homogeneous_part(p.total_degree()), p.total_degree()))
        for p in polys
    ]


def composed_degree(word: AutoWord, max_degree: int = 4096) -> int:
    return max(d for d, _ in composed_top_forms(word, max_degree))


def _binary_coeffs(form: MultiPoly, degree: int) -> list[PadicElement]:
    spec = form.spec
    out = [spec.zero()] * (degree + 1)
    for (e0, e1), c in form.terms.items():
        out[e1] = c
    return out


# ---------------------------------------------------------------------------
# roots of binary forms

def binary_form_roots(coeffs: Sequence[PadicElement], spec: FieldSpec) -> set[tuple[PadicElement, PadicElement]]:
    """Rational points [X:Y] of a nonzero binary form over the spec's field.

    Over the residue field (N = 1) this is exhaustive over P^1(F_q).  Over K
    the exact monomial factors X^a, Y^b are split off, the remaining part is
    content-normalised and its simple residue roots are Hensel-lifted;
    multiple non-monomial residue roots raise DegenerateReduction.
    """
    D = len(coeffs) - 1
    if all(c.is_zero() for c in coeffs):
        raise DegenerateReduction("cannot solve the zero form")
    if spec.N == 1:
        return _residue_form_roots(coeffs, spec)

    roots: set[tuple[PadicElement, PadicElement]] = set()
    lo = next(i for i, c in enumerate(coeffs) if not c.is_zero())
    hi = next(i for i in range(D, -1, -1) if not coeffs[i].is_zero())
    one, zero = spec.one(), spec.zero()
    if lo > 0:  # Y^lo divides the form
        roots.add((one, zero))
    if hi < D:  # X^(D-hi) divides the form
        roots.add((zero, one))
    mid = list(coeffs[lo : hi + 1])
    if len(mid) == 1:
        return roots
    # content normalisation: all coefficients integral, at least one a unit
    vmin = min(int(c.valuation()) for c in mid if not c.is_zero())
    scale = spec.from_int(spec.p) ** (-vmin)
    mid = [c * scale for c in mid]
    d = len(mid) - 1
    res = [c.residue() for c in mid]
    for r in ResidueElement.all_elements(spec):
        if _residue_poly_eval(res, r).is_zero():
            try:
                u = hensel_lift_root(mid, r)
            except NotASimpleRoot as exc:
                raise DegenerateReduction("multiple residue root of a top form") from exc
            roots.add((one, u))
    if res[d].is_zero():
        # a root escapes the finite chart: switch to s = X/Y around s = 0
        rev = list(reversed(mid))
        try:
            s = hensel_lift_root(rev, ResidueElement(spec, (0,) * spec.f))
        except NotASimpleRoot as exc:
            raise DegenerateReduction("multiple residue root of a top form") from exc
        roots.add((one, one / s))
    return roots


def _residue_form_roots(coeffs: Sequence[PadicElement], spec: FieldSpec) -> set[tuple[PadicElement, PadicElement]]:
    D = len(coeffs) - 1
    one, zero = spec.one(), spec.zero()
    roots = set()
    for r in ResidueElement.all_elements(spec):
        t = spec.from_vector(r.vec, 0)
        acc = coeffs[D]
        for i in range(D - 1, -1, -1):
            acc = acc * t + coeffs[i]
        if acc.is_zero():
            roots.add((one, t))
    if coeffs[D].is_zero():
        roots.add((zero, one))
    return roots


def _residue_poly_eval(coeffs: Sequence[ResidueElement], x: ResidueElement) -> ResidueElement:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _form_value(coeffs: Sequence[PadicElement], x: PadicElement, y: PadicElement) -> PadicElement:
    D = len(coeffs) - 1
    spec = coeffs[0].spec
    acc = spec.zero()
    xe = [spec.one()]
    ye = [spec.one()]
    for _ in range(D):
        xe.append(xe[-1] * x)
        ye.append(ye[-1] * y)
    for i, c in enumerate(coeffs):
        if not c.is_zero():
            acc = acc + c * xe[D - i] * ye[i]
    return acc


# ---------------------------------------------------------------------------
# the loci and the predicates

def indeterminacy_locus(
    word: AutoWord, where: str = "generic", max_degree: int = 4096
) -> ProjectivePointSet:
    """Non-definition locus of the projective extension, on the line T = 0."""
    if word.dim != 2:
        raise ValueError("indeterminacy loci are computed on the plane only")
    if where not in ("generic", "special"):
        raise ValueError("where must be 'generic' or 'special'")
    target = reduce_word(word) if where == "special" else word
    spec = target.spec
    forms = composed_top_forms(target, max_degree)
    D = max(d for d, _ in forms)
    live = [c for d, c in forms if d == D and not all(x.is_zero() for x in c)]
    if not live:
        raise DegenerateReduction("all top forms vanish identically")
    primary, rest = live[0], live[1:]
    pts = set()
    for x, y in binary_form_roots(primary, spec):
        if all(_form_value(c, x, y).vanishes() for c in rest):
            pts.add(_infinity_point(spec, x, y))
    return ProjectivePointSet(spec, where, frozenset(pts))


def is_regular(word: AutoWord, max_degree: int = 4096) -> bool:
    """Nonlinear with Z(w) and Z(w^-1) disjoint over K."""
    if word.dim != 2:
        raise ValueError("regularity is decided on the plane only")
    if composed_degree(word, max_degree) < 2:
        return False
    z = indeterminacy_locus(word, "generic", max_degree)
    zi = indeterminacy_locus(word.inverse(), "generic", max_degree)
    return z.is_disjoint_from(zi)


def henon_coefficient_criterion(word: AutoWord) -> bool:
    """Unit a and integral polynomial coefficients in every Henon factor."""
    if word.dim != 2 or not word.factors:
        return False
    for g, inv in word.factors:
        if inv or not isinstance(g, HenonFactor):
            return False
        if g.a.is_zero() or g.a.valuation() != 0:
            return False
        if not all(c.is_integral() for c in g.coeffs):
            return False
    return True


def is_special_henon(word: AutoWord, max_degree: int = 4096) -> bool:
    """Henon product whose reductions have disjoint loci on the special fiber.

    Words with a conjugator are judged by their core product.  Returns False
    (never raises) on words outside the Henon-product class or with
    degenerate reduction.
    """
    if word.dim != 2 or not word.factors:
        return False
    if any(inv or not isinstance(g, HenonFactor) for g, inv in word.factors):
        return False
    core = word.core
    try:
        reduced = reduce_word(core)
        z = indeterminacy_locus(reduced, "generic", max_degree)
        zi = indeterminacy_locus(reduced.inverse(), "generic", max_degree)
    except (NonIntegralCoefficient, DegenerateReduction):
        return False
    return z.is_disjoint_from(zi)


def check_iterate_locus(word: AutoWord, n_max: int, max_degree: int = 65536) -> bool:
    """Z(w^n) == Z(w) and Z(w^-n) == Z(w^-1) for 1 <= n <= n_max."""
    if n_max <= 0:
        return True
    base = indeterminacy_locus(word, "generic", max_degree)
    base_inv = indeterminacy_locus(word.inverse(), "generic", max_degree)
    for n in range(1, n_max + 1):
        wn = word.power(n)
        if indeterminacy_locus(wn, "generic", max_degree).points != base.points:
            return False
        if indeterminacy_locus(wn.inverse(), "generic", max_degree).points != base_inv.points:
            return False
    return True
