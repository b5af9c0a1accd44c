"""Sparse multivariate polynomials over a p-adic field, plus Newton lifting.

Terms are kept in a dict from exponent tuples to nonzero coefficients.  A
lightweight truncated form (top homogeneous slices only) supports cheap
exact computation of leading forms of long compositions.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DegreeOverflow, NonIntegralCoefficient, ResidueNotASolution, SingularJacobian
from .padic import FieldSpec, PadicElement, solve_linear


class MultiPoly:
    """Polynomial in `arity` variables with PadicElement coefficients."""

    __slots__ = ("spec", "arity", "terms")

    def __init__(self, spec: FieldSpec, arity: int, terms: Mapping[tuple[int, ...], PadicElement]):
        self.spec = spec
        self.arity = arity
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, spec: FieldSpec, arity: int) -> "MultiPoly":
        return cls(spec, arity, {})

    @classmethod
    def constant(cls, c: PadicElement, arity: int) -> "MultiPoly":
        return cls(c.spec, arity, {(0,) * arity: c})

    @classmethod
    def variable(cls, spec: FieldSpec, arity: int, i: int) -> "MultiPoly":
        e = [0] * arity
        e[i] = 1
        return cls(spec, arity, {tuple(e): spec.one()})

    @classmethod
    def from_univariate(cls, coeffs: Sequence[PadicElement], arity: int, i: int) -> "MultiPoly":
        spec = coeffs[0].spec
        terms = {}
        for d, c in enumerate(coeffs):
            if not c.is_zero():
                e = [0] * arity
                e[i] = d
                terms[tuple(e)] = c
        return cls(spec, arity, terms)

    # -- queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> PadicElement:
        return self.terms.get((0,) * self.arity, self.spec.zero())

    def total_degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def variables_used(self) -> set[int]:
        used = set()
        for e in self.terms:
            for i, ei in enumerate(e):
                if ei:
                    used.add(i)
        return used

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.terms.values())

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.spec, self.arity, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                s = terms[e] + c
                if s.is_zero():
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = c
        return MultiPoly(self.spec, self.arity, terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.spec, self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, PadicElement):
            return self.scale(other)
        out: dict[tuple[int, ...], PadicElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in out:
                    s = out[e] + c
                    if s.is_zero():
                        del out[e]
                    else:
                        out[e] = s
                elif not c.is_zero():
                    out[e] = c
        return MultiPoly(self.spec, self.arity, out)

    def scale(self, c: PadicElement) -> "MultiPoly":
        if c.is_zero():
            return MultiPoly.zero(self.spec, self.arity)
        return MultiPoly(self.spec, self.arity, {e: coef * c for e, coef in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.constant(self.spec.one(), self.arity)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    # -- evaluation and substitution -------------------------------------------

    def evaluate(self, point: Sequence[PadicElement]) -> PadicElement:
        acc = self.spec.zero()
        for e, c in self.terms.items():
            term = c
            for i, ei in enumerate(e):
                if ei:
                    term = term * point[i] ** ei
            acc = acc + term
        return acc

    def partial(self, i: int) -> "MultiPoly":
        terms: dict[tuple[int, ...], PadicElement] = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                terms[tuple(d)] = c * e[i]
        return MultiPoly(self.spec, self.arity, terms)

    def substitute(self, polys: Sequence["MultiPoly"], max_degree: int | None = None) -> "MultiPoly":
        """Full expansion of self(polys[0], ..., polys[arity-1])."""
        if max_degree is not None:
            degs = [max(p.total_degree(), 0) for p in polys]
            worst = max(
                (sum(ei * degs[i] for i, ei in enumerate(e)) for e in self.terms),
                default=0,
            )
            if worst > max_degree:
                raise DegreeOverflow(f"composition degree {worst} exceeds budget {max_degree}")
        arity = polys[0].arity if polys else self.arity
        out = MultiPoly.zero(self.spec, arity)
        powers: list[dict[int, MultiPoly]] = [dict() for _ in range(self.arity)]

        def power(i: int, e: int) -> MultiPoly:
            if e == 0:
                return MultiPoly.constant(self.spec.one(), arity)
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * polys[i] if e > 1 else polys[i]
            return cache[e]

        for e, c in self.terms.items():
            term = MultiPoly.constant(c, arity)
            for i, ei in enumerate(e):
                if ei:
                    term = term * power(i, ei)
            out = out + term
        return out

    def map_coefficients(self, fn: Callable[[PadicElement], PadicElement], spec: FieldSpec) -> "MultiPoly":
        return MultiPoly(spec, self.arity, {e: fn(c) for e, c in self.terms.items()})

    def __repr__(self) -> str:
        if self.is_zero():
            return "poly(0)"
        bits = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t), reverse=True):
            mono = "*".join(f"x{i}^{ei}" for i, ei in enumerate(e) if ei) or "1"
            bits.append(f"{self.terms[e].to_literal()}*{mono}")
        return "poly(" + " + ".join(bits) + ")"


# ---------------------------------------------------------------------------
# truncated polynomials: top homogeneous slices of a composition, kept exact

class WindowExhausted(Exception):
    """Internal: too much top-degree cancellation for the tracked window."""


class TruncatedPoly:
    """A polynomial known only through its top `width` homogeneous slices.

    `width` = math.inf means the polynomial is stored exactly.  Sums and
    products propagate the window soundly; if leading slices cancel past
    the window the computation aborts with WindowExhausted.
    """

    __slots__ = ("poly", "degree", "width")

    def __init__(self, poly: MultiPoly, degree: int, width: float):
        self.poly = poly
        self.degree = degree
        self.width = width

    @classmethod
    def exact(cls, poly: MultiPoly) -> "TruncatedPoly":
        return cls(poly, poly.total_degree(), math.inf)

    def _trim(self, cap: float) -> "TruncatedPoly":
        width = min(self.width, cap)
        if width is math.inf:
            return self
        cut = self.degree - width
        terms = {e: c for e, c in self.poly.terms.items() if sum(e) > cut}
        return TruncatedPoly(MultiPoly(self.poly.spec, self.poly.arity, terms), self.degree, width)

    def _normalized(self) -> "TruncatedPoly":
        """Strip vanished top slices, shrinking the window accordingly."""
        poly, degree, width = self.poly, self.degree, self.width
        if width is math.inf:
            return TruncatedPoly(poly, poly.total_degree(), math.inf)
        while degree >= 0 and poly.homogeneous_part(degree).is_zero():
            degree -= 1
            width -= 1
            if width <= 0:
                raise WindowExhausted
        if degree < 0:
            raise WindowExhausted
        return TruncatedPoly(poly, degree, width)

    def add(self, other: "TruncatedPoly", cap: float) -> "TruncatedPoly":
        if self.poly.is_zero() and self.width is math.inf:
            return other._trim(cap)
        if other.poly.is_zero() and other.width is math.inf:
            return self._trim(cap)
        d = max(self.degree, other.degree)
        width = min(self.width + d - self.degree, other.width + d - other.degree, cap)
        out = TruncatedPoly(self.poly + other.poly, d, width)._normalized()
        return out._trim(cap)

    def mul(self, other: "TruncatedPoly", cap: float) -> "TruncatedPoly":
        if self.poly.is_zero() or other.poly.is_zero():
            for side in (self, other):
                if side.poly.is_zero() and side.width is not math.inf:
                    raise WindowExhausted
            return TruncatedPoly(MultiPoly.zero(self.poly.spec, self.poly.arity), -1, math.inf)
        width = min(self.width, other.width, cap)
        prod = TruncatedPoly(self.poly * other.poly, self.degree + other.degree, width)
        return prod._trim(cap)._normalized()

    def scale(self, c: PadicElement) -> "TruncatedPoly":
        if c.is_zero():
            return TruncatedPoly(MultiPoly.zero(self.poly.spec, self.poly.arity), -1, math.inf)
        return TruncatedPoly(self.poly.scale(c), self.degree, self.width)


def substitute_truncated(
    outer: MultiPoly, args: Sequence[TruncatedPoly], cap: float
) -> TruncatedPoly:
    """outer(args...) as a TruncatedPoly with window at most cap."""
    spec = outer.spec
    arity = args[0].poly.arity
    zero = TruncatedPoly(MultiPoly.zero(spec, arity), -1, math.inf)
    acc = zero
    powers: list[dict[int, TruncatedPoly]] = [dict() for _ in range(outer.arity)]

    def power(i: int, e: int) -> TruncatedPoly:
        if e == 1:
            return args[i]
        cache = powers[i]
        if e not in cache:
            cache[e] = power(i, e - 1).mul(args[i], cap)
        return cache[e]

    for e, c in outer.terms.items():
        term: TruncatedPoly | None = None
        for i, ei in enumerate(e):
            if ei:
                term = power(i, ei) if term is None else term.mul(power(i, ei), cap)
        if term is None:
            term = TruncatedPoly(MultiPoly.constant(c, arity), 0, math.inf)
        else:
            term = term.scale(c)
        acc = acc.add(term, cap)
    return acc


# ---------------------------------------------------------------------------
# multivariate Newton lifting

def newton_lift_system(
    system: Sequence[MultiPoly], start: Sequence, spec: FieldSpec | None = None
) -> tuple[PadicElement, ...]:
    """Unique solution of `system` congruent to `start` mod p.

    `system` is r polynomials in r variables over O; `start` is a residue
    point (ResidueElement entries or integral PadicElements).  Requires the
    Jacobian at the start to be invertible over the residue field.
    """
    if not system:
        return ()
    spec = spec or system[0].spec
    r = system[0].arity
    if len(system) != r:
        raise ValueError("need as many equations as variables")
    for g in system:
        if not g.is_integral():
            raise NonIntegralCoefficient("system coefficients must be integral")
    point = []
    for x in start:
        if isinstance(x, PadicElement):
            point.append(x)
        else:
            point.append(x.lift())
    values = [g.evaluate(point) for g in system]
    if not all(v.is_zero() or v.valuation() >= 1 for v in values):
        raise ResidueNotASolution("start is not a solution mod p")
    jac = [[g.partial(j) for j in range(r)] for g in system]
    start_rows = [[jac[i][j].evaluate(point) for j in range(r)] for i in range(r)]
    if not _residue_det_ok(start_rows):
        raise SingularJacobian("Jacobian is singular over the residue field")
    for _ in range(spec.N.bit_length() + 3):
        if all(v.vanishes() for v in values):
            return tuple(point)
        rows = [[jac[i][j].evaluate(point) for j in range(r)] for i in range(r)]
        det_val = _residue_det_ok(rows)
        if not det_val:
            raise SingularJacobian("Jacobian is singular over the residue field")
        delta = solve_linear(rows, values)
        point = [x - d for x, d in zip(point, delta)]
        values = [g.evaluate(point) for g in system]
    if all(v.vanishes() for v in values):
        return tuple(point)
    raise SingularJacobian("Newton iteration failed to converge")


def _residue_det_ok(rows: Sequence[Sequence[PadicElement]]) -> bool:
    from .padic import mat_det

    d = mat_det(rows)
    return (not d.is_zero()) and d.valuation() == 0
