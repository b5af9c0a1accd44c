"""Polynomial automorphisms of affine r-space as words of invertible factors.

A word stores a sequence of factors, each optionally formally inverted, and
an optional conjugator word f, in which case it represents f^(-1) . core . f.
Evaluation applies factors right-to-left; inversion reverses the sequence and
flips the inversion flags, so round trips are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    DegenerateReduction,
    DegreeOverflow,
    NonIntegralCoefficient,
    SingularMatrix,
)
from .padic import FieldSpec, PadicElement, mat_det, mat_inv, solve_linear
from .poly import MultiPoly

Point = tuple[PadicElement, ...]


# ---------------------------------------------------------------------------
# factors

@dataclass(frozen=True)
class HenonFactor:
    """Generalised Henon map (x, y) -> (p(x) - a*y, x) on the plane.

    `coeffs` are the coefficients of the monic polynomial p, low-to-high,
    degree >= 2; `a` is nonzero.
    """

    a: PadicElement
    coeffs: tuple[PadicElement, ...]

    def __post_init__(self) -> None:
        if self.a.is_zero():
            raise ValueError("Henon coefficient a must be nonzero")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) < 3:
            raise ValueError("Henon polynomial must have degree >= 2")
        if self.coeffs[-1] != self.a.spec.one():
            raise ValueError("Henon polynomial must be monic (leading coefficient 1)")

    @property
    def dim(self) -> int:
        return 2

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    def _p_at(self, x: PadicElement) -> PadicElement:
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def _dp_at(self, x: PadicElement) -> PadicElement:
        acc = self.spec.zero()
        for i in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * x + self.coeffs[i] * i
        return acc

    def apply(self, P: Point) -> Point:
        x, y = P
        return (self._p_at(x) - self.a * y, x)

    def apply_inverse(self, P: Point) -> Point:
        x, y = P
        return (y, (self._p_at(y) - x) / self.a)

    def coordinate_polys(self, inverted: bool = False) -> tuple[MultiPoly, ...]:
        spec = self.spec
        if not inverted:
            p_of_x = MultiPoly.from_univariate(self.coeffs, 2, 0)
            x1 = MultiPoly.variable(spec, 2, 1)
            return (p_of_x - x1.scale(self.a), MultiPoly.variable(spec, 2, 0))
        inv_a = spec.one() / self.a
        p_of_y = MultiPoly.from_univariate(self.coeffs, 2, 1)
        x0 = MultiPoly.variable(spec, 2, 0)
        return (MultiPoly.variable(spec, 2, 1), (p_of_y - x0).scale(inv_a))

    def jacobian_at(self, P: Point) -> list[list[PadicElement]]:
        x, _ = P
        spec = self.spec
        return [[self._dp_at(x), -self.a], [spec.one(), spec.zero()]]

    def coefficients(self) -> Iterator[PadicElement]:
        yield self.a
        yield from self.coeffs

    def map_coefficients(self, fn) -> "HenonFactor":
        return HenonFactor(fn(self.a), tuple(fn(c) for c in self.coeffs))


@dataclass(frozen=True)
class TriangularAuto:
    """Map X_i -> a_i X_i + F_i(X_{i+1}, ..., X_r) with F_r constant."""

    dim: int
    a: tuple[PadicElement, ...]
    F: tuple[MultiPoly, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "F", tuple(self.F))
        if self.dim < 1 or len(self.a) != self.dim or len(self.F) != self.dim:
            raise ValueError("need one scaling and one shift polynomial per coordinate")
        for i, (ai, fi) in enumerate(zip(self.a, self.F)):
            if ai.is_zero():
                raise ValueError("triangular scalings must be nonzero")
            if fi.arity != self.dim:
                raise ValueError("shift polynomials must use the word arity")
            if any(j <= i for j in fi.variables_used()):
                raise ValueError(f"F_{i + 1} may only involve later variables")

    @property
    def spec(self) -> FieldSpec:
        return self.a[0].spec

    def apply(self, P: Point) -> Point:
        return tuple(self.a[i] * P[i] + self.F[i].evaluate(P) for i in range(self.dim))

    def apply_inverse(self, P: Point) -> Point:
        out: list[PadicElement] = [None] * self.dim  # type: ignore[list-item]
        for i in range(self.dim - 1, -1, -1):
            shifted = P[i] - self.F[i].evaluate(tuple(out))
            out[i] = shifted / self.a[i]
        return tuple(out)

    def coordinate_polys(self, inverted: bool = False, max_degree: int | None = None) -> tuple[MultiPoly, ...]:
        spec = self.spec
        if not inverted:
            return tuple(
                MultiPoly.variable(spec, self.dim, i).scale(self.a[i]) + self.F[i]
                for i in range(self.dim)
            )
        exprs: list[MultiPoly] = [None] * self.dim  # type: ignore[list-item]
        for i in range(self.dim - 1, -1, -1):
            yi = MultiPoly.variable(spec, self.dim, i)
            subs = [
                exprs[j] if j > i else MultiPoly.variable(spec, self.dim, j)
                for j in range(self.dim)
            ]
            fi = self.F[i].substitute(subs, max_degree)
            exprs[i] = (yi - fi).scale(spec.one() / self.a[i])
        return tuple(exprs)

    def jacobian_at(self, P: Point) -> list[list[PadicElement]]:
        spec = self.spec
        rows = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                if j == i:
                    row.append(self.a[i])
                elif j > i:
                    row.append(self.F[i].partial(j).evaluate(P))
                else:
                    row.append(spec.zero())
            rows.append(row)
        return rows

    def coefficients(self) -> Iterator[PadicElement]:
        yield from self.a
        for fi in self.F:
            yield from fi.terms.values()

    def map_coefficients(self, fn) -> "TriangularAuto":
        spec = fn(self.a[0]).spec
        return TriangularAuto(
            self.dim,
            tuple(fn(c) for c in self.a),
            tuple(f.map_coefficients(fn, spec) for f in self.F),
        )


@dataclass(frozen=True)
class AffineAuto:
    """Invertible affine map X -> M X + t."""

    matrix: tuple[tuple[PadicElement, ...], ...]
    translation: tuple[PadicElement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in self.matrix))
        object.__setattr__(self, "translation", tuple(self.translation))
        r = len(self.matrix)
        if r == 0 or any(len(row) != r for row in self.matrix) or len(self.translation) != r:
            raise ValueError("matrix must be square and match the translation")
        if mat_det(self.matrix).is_zero():
            raise SingularMatrix("affine factor requires an invertible matrix")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def spec(self) -> FieldSpec:
        return self.matrix[0][0].spec

    def apply(self, P: Point) -> Point:
        out = []
        for i in range(self.dim):
            acc = self.translation[i]
            for j in range(self.dim):
                acc = acc + self.matrix[i][j] * P[j]
            out.append(acc)
        return tuple(out)

    def apply_inverse(self, P: Point) -> Point:
        rhs = [P[i] - self.translation[i] for i in range(self.dim)]
        return tuple(solve_linear(self.matrix, rhs))

    def coordinate_polys(self, inverted: bool = False) -> tuple[MultiPoly, ...]:
        spec = self.spec
        if inverted:
            rows = mat_inv(self.matrix)
            shift = self.apply_inverse(tuple(spec.zero() for _ in range(self.dim)))
        else:
            rows = [list(row) for row in self.matrix]
            shift = self.translation
        out = []
        for i in range(self.dim):
            poly = MultiPoly.constant(shift[i], self.dim)
            for j in range(self.dim):
                poly = poly + MultiPoly.variable(spec, self.dim, j).scale(rows[i][j])
            out.append(poly)
        return tuple(out)

    def jacobian_at(self, P: Point) -> list[list[PadicElement]]:
        return [list(row) for row in self.matrix]

    def coefficients(self) -> Iterator[PadicElement]:
        for row in self.matrix:
            yield from row
        yield from self.translation

    def map_coefficients(self, fn) -> "AffineAuto":
        return AffineAuto(
            tuple(tuple(fn(c) for c in row) for row in self.matrix),
            tuple(fn(c) for c in self.translation),
        )


Factor = HenonFactor | TriangularAuto | AffineAuto


# ---------------------------------------------------------------------------
# words

@dataclass(frozen=True)
class AutoWord:
    """Composition word g_1 . g_2 . ... . g_m, optionally conjugated by f."""

    spec: FieldSpec
    dim: int
    factors: tuple[tuple[Factor, bool], ...]
    conjugator: "AutoWord | None" = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "factors",
            tuple((g, bool(inv)) for g, inv in self.factors),
        )
        for g, _ in self.factors:
            if g.dim != self.dim:
                raise ValueError("all factors must share the word dimension")
            if isinstance(g, HenonFactor) and self.dim != 2:
                raise ValueError("Henon factors live on the plane")
        if self.conjugator is not None:
            if self.conjugator.dim != self.dim:
                raise ValueError("conjugator must share the word dimension")
            if self.conjugator.conjugator is not None:
                raise ValueError("conjugators may not be nested")

    @classmethod
    def of(cls, spec: FieldSpec, *factors, conjugator: "AutoWord | None" = None) -> "AutoWord":
        """Build a word from factors or (factor, inverted) pairs."""
        norm = []
        dim = None
        for item in factors:
            g, inv = item if isinstance(item, tuple) else (item, False)
            norm.append((g, inv))
            dim = g.dim if dim is None else dim
        if dim is None:
            raise ValueError("a word needs at least one factor")
        return cls(spec, dim, tuple(norm), conjugator)

    @property
    def core(self) -> "AutoWord":
        return AutoWord(self.spec, self.dim, self.factors, None)

    def with_conjugator(self, f: "AutoWord | None") -> "AutoWord":
        return AutoWord(self.spec, self.dim, self.factors, f)

    def inverse(self) -> "AutoWord":
        flipped = tuple((g, not inv) for g, inv in reversed(self.factors))
        return AutoWord(self.spec, self.dim, flipped, self.conjugator)

    def power(self, n: int) -> "AutoWord":
        if n == 0:
            raise ValueError("the empty word is not representable; use n != 0")
        base = self if n > 0 else self.inverse()
        return AutoWord(self.spec, self.dim, base.factors * abs(n), self.conjugator)

    def application_sequence(self) -> Iterator[tuple[Factor, bool]]:
        """Factors in the order they act on a point."""
        if self.conjugator is not None:
            yield from self.conjugator.application_sequence()
        for g, inv in reversed(self.factors):
            yield (g, inv)
        if self.conjugator is not None:
            yield from self.conjugator.inverse().application_sequence()

    def apply(self, P: Point) -> Point:
        for g, inv in self.application_sequence():
            P = g.apply_inverse(P) if inv else g.apply(P)
        return P

    def orbit(self, P: Point, n: int) -> list[Point]:
        """[P, w(P), ..., w^(n-1)(P)]."""
        out = [P]
        for _ in range(n - 1):
            out.append(self.apply(out[-1]))
        return out

    def jacobian_at(self, P: Point) -> list[list[PadicElement]]:
        """Chain-rule Jacobian of the whole word at P."""
        jac = None
        for g, inv in self.application_sequence():
            if inv:
                Q = g.apply_inverse(P)
                step = mat_inv(g.jacobian_at(Q))
                P = Q
            else:
                step = g.jacobian_at(P)
                P = g.apply(P)
            jac = step if jac is None else _mat_mul(step, jac)
        if jac is None:
            one, zero = self.spec.one(), self.spec.zero()
            jac = [[one if i == j else zero for j in range(self.dim)] for i in range(self.dim)]
        return jac

    def coefficients(self) -> Iterator[PadicElement]:
        for g, _ in self.factors:
            yield from g.coefficients()
        if self.conjugator is not None:
            yield from self.conjugator.coefficients()

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.coefficients())

    def __repr__(self) -> str:
        names = []
        for g, inv in self.factors:
            names.append(type(g).__name__ + ("^-1" if inv else ""))
        tag = ".".join(names)
        if self.conjugator is not None:
            tag = f"conj({tag})"
        return f"word({tag})"


def _dot(row, col):
    acc = row[0] * col[0]
    for x, y in zip(row[1:], col[1:]):
        acc = acc + x * y
    return acc


def _mat_mul(a, b):
    n = len(a)
    return [[_dot(a[i], [b[k][j] for k in range(n)]) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# symbolic composition

def compose_symbolic(word: AutoWord, max_degree: int = 4096) -> tuple[MultiPoly, ...]:
    """Fully expanded coordinate polynomials of the word."""
    spec = word.spec
    coords = tuple(MultiPoly.variable(spec, word.dim, i) for i in range(word.dim))
    for g, inv in word.application_sequence():
        if isinstance(g, TriangularAuto):
            outer = g.coordinate_polys(inv, max_degree)
        else:
            outer = g.coordinate_polys(inv)
        coords = tuple(op.substitute(coords, max_degree) for op in outer)
    return coords


def reduce_word(word: AutoWord) -> AutoWord:
    """Factor-wise reduction to the residue field (precision-1 spec).

    Raises NonIntegralCoefficient when a coefficient is not in O, and
    DegenerateReduction when a reduced factor stops being invertible.
    """
    spec1 = word.spec.residue_spec()

    def red(c: PadicElement) -> PadicElement:
        if not c.is_integral():
            raise NonIntegralCoefficient("word has a coefficient outside O")
        return spec1.from_vector(c.residue().vec, 0)

    def reduce_factor(g: Factor) -> Factor:
        for c in g.coefficients():
            if not c.is_integral():
                raise NonIntegralCoefficient("word has a coefficient outside O")
        if isinstance(g, HenonFactor):
            if g.a.residue().is_zero():
                raise DegenerateReduction("Henon coefficient a vanishes mod p")
        elif isinstance(g, TriangularAuto):
            if any(ai.residue().is_zero() for ai in g.a):
                raise DegenerateReduction("triangular scaling vanishes mod p")
        else:
            det = mat_det(g.matrix)
            if det.is_zero() or det.valuation() != 0:
                raise DegenerateReduction("affine determinant vanishes mod p")
        return g.map_coefficients(red)

    factors = tuple((reduce_factor(g), inv) for g, inv in word.factors)
    conj = reduce_word(word.conjugator) if word.conjugator is not None else None
    return AutoWord(spec1, word.dim, factors, conj)
