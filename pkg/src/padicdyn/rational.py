"""Words with rational coefficients and the rational certification workflow.

A rational word is the exact-arithmetic mirror of an AutoWord: it can be
embedded into Q_p for any prime not dividing a denominator, and it can be
iterated with Fraction arithmetic, which gives an oracle for rational
periodic points that is independent of all p-adic code paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .autos import AffineAuto, AutoWord, HenonFactor, TriangularAuto
from .dynamics import BoundReport, empirical_period_bound, DEFAULT_BUDGET
from .errors import NoGoodPrime, NotStabilized, NonIntegralCoefficient, DegenerateReduction
from .loci import is_special_henon
from .padic import FieldSpec
from .poly import MultiPoly
from .triangular import triangular_normal_form

QPoint = tuple[Fraction, ...]


@dataclass(frozen=True)
class RationalHenon:
    a: Fraction
    coeffs: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return 2

    def apply(self, P: QPoint) -> QPoint:
        x, y = P
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return (acc - self.a * y, x)

    def apply_inverse(self, P: QPoint) -> QPoint:
        x, y = P
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return (y, (acc - x) / self.a)

    def fractions(self):
        yield self.a
        yield from self.coeffs

    def embed(self, spec: FieldSpec) -> HenonFactor:
        return HenonFactor(
            spec.from_fraction(self.a), tuple(spec.from_fraction(c) for c in self.coeffs)
        )


@dataclass(frozen=True)
class RationalTriangular:
    dim: int
    a: tuple[Fraction, ...]
    F: tuple[dict[tuple[int, ...], Fraction], ...]  # term maps, one per coordinate

    def apply(self, P: QPoint) -> QPoint:
        out = []
        for i in range(self.dim):
            acc = self.a[i] * P[i]
            for e, c in self.F[i].items():
                t = c
                for j, ej in enumerate(e):
                    if ej:
                        t *= P[j] ** ej
                acc += t
            out.append(acc)
        return tuple(out)

    def apply_inverse(self, P: QPoint) -> QPoint:
        out: list[Fraction] = [Fraction(0)] * self.dim
        for i in range(self.dim - 1, -1, -1):
            acc = Fraction(0)
            for e, c in self.F[i].items():
                t = c
                for j, ej in enumerate(e):
                    if ej:
                        t *= out[j] ** ej
                acc += t
            out[i] = (P[i] - acc) / self.a[i]
        return tuple(out)

    def fractions(self):
        yield from self.a
        for f in self.F:
            yield from f.values()

    def embed(self, spec: FieldSpec) -> TriangularAuto:
        polys = []
        for f in self.F:
            polys.append(
                MultiPoly(
                    spec,
                    self.dim,
                    {e: spec.from_fraction(c) for e, c in f.items()},
                )
            )
        return TriangularAuto(
            self.dim, tuple(spec.from_fraction(c) for c in self.a), tuple(polys)
        )


@dataclass(frozen=True)
class RationalAffine:
    matrix: tuple[tuple[Fraction, ...], ...]
    translation: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def apply(self, P: QPoint) -> QPoint:
        return tuple(
            sum(self.matrix[i][j] * P[j] for j in range(self.dim)) + self.translation[i]
            for i in range(self.dim)
        )

    def apply_inverse(self, P: QPoint) -> QPoint:
        # exact Gaussian elimination over Q
        n = self.dim
        a = [list(row) + [P[i] - self.translation[i]] for i, row in enumerate(self.matrix)]
        for col in range(n):
            piv = next(i for i in range(col, n) if a[i][col] != 0)
            a[col], a[piv] = a[piv], a[col]
            for i in range(n):
                if i != col and a[i][col]:
                    f = a[i][col] / a[col][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        return tuple(a[i][n] / a[i][i] for i in range(n))

    def fractions(self):
        for row in self.matrix:
            yield from row
        yield from self.translation

    def embed(self, spec: FieldSpec) -> AffineAuto:
        return AffineAuto(
            tuple(tuple(spec.from_fraction(c) for c in row) for row in self.matrix),
            tuple(spec.from_fraction(c) for c in self.translation),
        )


RationalFactor = RationalHenon | RationalTriangular | RationalAffine


@dataclass(frozen=True)
class RationalWord:
    dim: int
    factors: tuple[tuple[RationalFactor, bool], ...]
    conjugator: "RationalWord | None" = None

    def application_sequence(self):
        if self.conjugator is not None:
            yield from self.conjugator.application_sequence()
        for g, inv in reversed(self.factors):
            yield (g, inv)
        if self.conjugator is not None:
            for g, inv in self.conjugator.factors:
                yield (g, not inv)

    def apply(self, P: QPoint) -> QPoint:
        for g, inv in self.application_sequence():
            P = g.apply_inverse(P) if inv else g.apply(P)
        return P

    def fractions(self):
        for g, _ in self.factors:
            yield from g.fractions()
        if self.conjugator is not None:
            yield from self.conjugator.fractions()

    def is_p_integral(self, p: int) -> bool:
        return all(c.denominator % p != 0 for c in self.fractions())

    def embed(self, spec: FieldSpec) -> AutoWord:
        factors = tuple((g.embed(spec), inv) for g, inv in self.factors)
        conj = self.conjugator.embed(spec) if self.conjugator is not None else None
        return AutoWord(spec, self.dim, factors, conj)


def detect_period_exact(word: RationalWord, P: QPoint, max_iter: int) -> int | None:
    """Minimal period of a rational point under exact Fraction iteration."""
    Q = P
    for n in range(1, max_iter + 1):
        Q = word.apply(Q)
        if Q == P:
            return n
    return None


# ---------------------------------------------------------------------------
# certification

@dataclass
class Certificate:
    prime: int
    word_class: str
    report: BoundReport
    statement: str
    checked_points: list[dict]
    rejected_primes: list[tuple[int, str]]

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "word_class": self.word_class,
            "bound_report": self.report.to_dict(),
            "statement": self.statement,
            "checked_points": self.checked_points,
            "rejected_primes": [list(t) for t in self.rejected_primes],
        }


def certify_rational(
    word: RationalWord,
    primes: Sequence[int],
    levels: Sequence[int] = (1, 2, 3),
    precision: int = 10,
    budget: int = DEFAULT_BUDGET,
    claimed_points: Sequence[QPoint] = (),
) -> Certificate:
    """Bound the periods of all rational periodic points via one good prime.

    A prime qualifies if every coefficient is p-integral and the embedded
    word is a special Henon product or an integrally-reducing triangular
    word.  The first qualifying prime must produce a stabilized bound
    report; its M then bounds the period of every rational periodic point.
    """
    if not primes:
        raise NoGoodPrime("empty candidate prime list")
    rejected: list[tuple[int, str]] = []
    for p in primes:
        if not word.is_p_integral(p):
            rejected.append((p, "coefficient denominator divisible by p"))
            continue
        spec = FieldSpec(p, 1, precision)
        embedded = word.embed(spec)
        if is_special_henon(embedded):
            word_class = "special_henon"
        elif triangular_normal_form(embedded) is not None:
            word_class = "triangular"
        else:
            rejected.append((p, "reduction is not special or triangular"))
            continue
        try:
            report = empirical_period_bound(embedded, levels, budget)
        except (NonIntegralCoefficient, DegenerateReduction) as exc:
            rejected.append((p, str(exc)))
            continue
        if not report.stabilized:
            raise NotStabilized(
                f"period spectra did not stabilise over levels {list(levels)} at p = {p}"
            )
        m = report.m_empirical
        checked = []
        cap = max(m, 1) * 4 + 16
        for P in claimed_points:
            n = detect_period_exact(word, tuple(Fraction(c) for c in P), cap)
            checked.append(
                {
                    "point": [str(c) for c in P],
                    "period": n,
                    "periodic": n is not None,
                    "within_bound": n is not None and n <= m,
                }
            )
        statement = (
            f"every K-rational periodic point of this word over Q_{p} has period"
            f" <= {m}; hence every rational periodic point has period <= {m}"
        )
        return Certificate(p, word_class, report, statement, checked, rejected)
    raise NoGoodPrime(
        "no candidate prime gives a special or triangular integral reduction: "
        + "; ".join(f"p={p}: {why}" for p, why in rejected)
    )
