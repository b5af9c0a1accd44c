"""Periodic points of automorphism words through residue-level cycle data.

The induced map on (O/p^k)^r is a bijection whenever the word reduces
invertibly, so its functional graph is a disjoint union of cycles.  Cycles
are enumerated exhaustively, then lifted: Newton when the Jacobian of
phi^n - id is invertible mod p, an exact check of the plain lift, and the
exact triangular solver for degenerate triangular words.  A certified
record always satisfies phi^period(P) = P exactly at the working precision.
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .autos import AffineAuto, AutoWord, HenonFactor, TriangularAuto, _mat_mul
from .errors import (
    BudgetExceeded,
    DegenerateReduction,
    NoConvergence,
    NonIntegralCoefficient,
    SingularJacobian,
)
from .padic import FieldSpec, PadicElement, mat_det, root_of_unity_order, solve_linear
from .triangular import (
    CERTIFIED,
    NO_POINT,
    TriangularSolve,
    power_normal_form,
    solve_cycle_exact,
    triangular_normal_form,
)

DEFAULT_BUDGET = 10**8

Point = tuple[PadicElement, ...]


def points_equal(P: Point, Q: Point) -> bool:
    """Coordinatewise congruence mod p^N."""
    return all(a.congruent_to(b) for a, b in zip(P, Q))


# ---------------------------------------------------------------------------
# value objects

@dataclass(frozen=True)
class CycleStructure:
    """Multiset of cycle lengths of the permutation on (O/p^k)^r."""

    level: int
    dim: int
    spec: FieldSpec
    counts: dict[int, int]

    def total_points(self) -> int:
        return sum(length * count for length, count in self.counts.items())

    def expected_points(self) -> int:
        return self.spec.p ** (self.spec.f * self.level * self.dim)

    def to_rows(self) -> list[tuple[int, int]]:
        return sorted(self.counts.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, CycleStructure) and self.counts == other.counts and self.level == other.level

    def __hash__(self) -> int:
        return hash((self.level, tuple(sorted(self.counts.items()))))


@dataclass(frozen=True)
class PeriodicPointRecord:
    """A K-periodic point with exact minimal period at the working precision."""

    point: Point
    period: int
    certified: bool
    residue_cycle_length: int
    level: int = 1
    method: str = "newton"

    def point_literals(self) -> list[str]:
        return [c.to_literal() for c in self.point]

    def to_dict(self) -> dict:
        return {
            "point": self.point_literals(),
            "period": self.period,
            "certified": self.certified,
            "residue_cycle_length": self.residue_cycle_length,
            "level": self.level,
            "method": self.method,
        }


@dataclass
class EnumerationResult:
    """Certified records plus the cycles that could not be certified."""

    records: list[PeriodicPointRecord]
    uncertified: list[tuple[int, int]]
    empty_cycles: list[tuple[int, int]]

    def periods(self) -> set[int]:
        return {r.period for r in self.records}


@dataclass
class BoundReport:
    """Empirical uniform-bound evidence across residue levels."""

    spec: FieldSpec
    word_digest: str
    levels: list[int]
    per_level: list[dict]
    m_empirical: int
    stabilized: bool
    no_certified_points: bool
    uncertified_cycles: list[tuple[int, int]]
    empty_cycles: list[tuple[int, int]]
    records: list[PeriodicPointRecord]

    def to_dict(self) -> dict:
        return {
            "field": {
                "p": self.spec.p,
                "extension_degree": self.spec.f,
                "precision": self.spec.N,
            },
            "word_digest": self.word_digest,
            "levels": list(self.levels),
            "per_level": self.per_level,
            "m_empirical": self.m_empirical,
            "stabilized": self.stabilized,
            "no_certified_points": self.no_certified_points,
            "uncertified_cycles": [list(t) for t in self.uncertified_cycles],
            "cycles_without_points": [list(t) for t in self.empty_cycles],
            "records": [r.to_dict() for r in sorted(self.records, key=lambda r: (r.period, r.point_literals()))],
        }


def word_digest(word: AutoWord) -> str:
    bits: list[str] = [str(word.dim)]

    def emit(w: AutoWord) -> None:
        for g, inv in w.factors:
            bits.append(type(g).__name__ + ("~" if inv else ""))
            for c in g.coefficients():
                bits.append(c.to_literal())
            if isinstance(g, TriangularAuto):
                for f in g.F:
                    for e in sorted(f.terms):
                        bits.append(str(e) + ":" + f.terms[e].to_literal())

    emit(word)
    if word.conjugator is not None:
        bits.append("conj")
        emit(word.conjugator)
    return hashlib.sha256("|".join(bits).encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# the induced permutation on (O/p^k)^r

class _ModEvaluator:
    """Applies a word to points of (O/p^k)^r with plain integer arithmetic."""

    def __init__(self, word: AutoWord, level: int, budget: int = DEFAULT_BUDGET):
        spec = word.spec
        self.word = word
        self.level = level
        self.m = spec.p**level
        self.f = spec.f
        self.dim = word.dim
        self.size = spec.p ** (spec.f * level * word.dim)
        if self.size > budget:
            raise BudgetExceeded(
                f"{self.size} points at level {level} exceed the budget of {budget}"
            )
        _check_reducible(word)
        if spec.f == 1:
            self._steps = [self._compile(g, inv) for g, inv in word.application_sequence()]
            self.apply = self._apply_int
        else:
            self._spec_k = spec.with_precision(min(level, spec.N))
            if level > spec.N:
                raise ValueError("level exceeds the working precision")
            self._word_k = _word_at_precision(word, self._spec_k)
            self.apply = self._apply_generic

    # -- integer path (f == 1) ----------------------------------------------

    def _to_int(self, c: PadicElement) -> int:
        if c.is_zero() or c.val >= self.level:
            return 0
        return c.vec[0] * self.word.spec.p**c.val % self.m

    def _compile(self, g, inv: bool):
        m = self.m
        if isinstance(g, HenonFactor):
            coeffs = [self._to_int(c) for c in g.coeffs]
            a = self._to_int(g.a)
            if not inv:
                def step(P, coeffs=coeffs, a=a, m=m):
                    x, y = P
                    acc = 0
                    for c in reversed(coeffs):
                        acc = (acc * x + c) % m
                    return ((acc - a * y) % m, x)
            else:
                ainv = pow(a, -1, m)

                def step(P, coeffs=coeffs, ainv=ainv, m=m):
                    x, y = P
                    acc = 0
                    for c in reversed(coeffs):
                        acc = (acc * y + c) % m
                    return (y, (acc - x) * ainv % m)
            return step
        if isinstance(g, TriangularAuto):
            r = g.dim
            a = [self._to_int(c) for c in g.a]
            terms = [
                [(self._to_int(c), e) for e, c in sorted(f.terms.items())] for f in g.F
            ]
            if not inv:
                def step(P, a=a, terms=terms, r=r, m=m):
                    out = []
                    for i in range(r):
                        acc = a[i] * P[i]
                        for c, e in terms[i]:
                            t = c
                            for j, ej in enumerate(e):
                                if ej:
                                    t = t * pow(P[j], ej, m) % m
                            acc += t
                        out.append(acc % m)
                    return tuple(out)
            else:
                ainv = [pow(c, -1, m) for c in a]

                def step(P, ainv=ainv, terms=terms, r=r, m=m):
                    out = [0] * r
                    for i in range(r - 1, -1, -1):
                        acc = 0
                        for c, e in terms[i]:
                            t = c
                            for j, ej in enumerate(e):
                                if ej:
                                    t = t * pow(out[j], ej, m) % m
                            acc += t
                        out[i] = (P[i] - acc) * ainv[i] % m
                    return tuple(out)
            return step
        # affine
        r = g.dim
        mat = [[self._to_int(c) for c in row] for row in g.matrix]
        tr = [self._to_int(c) for c in g.translation]
        if not inv:
            def step(P, mat=mat, tr=tr, r=r, m=m):
                return tuple(
                    (sum(mat[i][j] * P[j] for j in range(r)) + tr[i]) % m for i in range(r)
                )
        else:
            inv_mat = _int_mat_inv(mat, self.word.spec.p, self.level)

            def step(P, inv_mat=inv_mat, tr=tr, r=r, m=m):
                shifted = [(P[j] - tr[j]) % m for j in range(r)]
                return tuple(
                    sum(inv_mat[i][j] * shifted[j] for j in range(r)) % m for i in range(r)
                )
        return step

    def _apply_int(self, P):
        for step in self._steps:
            P = step(P)
        return P

    # -- generic path (f > 1): exact arithmetic at precision `level` ---------

    def _apply_generic(self, P):
        spec_k = self._spec_k
        elems = tuple(spec_k.from_vector(coord, 0) for coord in P)
        image = self._word_k.apply(elems)
        return tuple(self._canonical(c) for c in image)

    def _canonical(self, c: PadicElement) -> tuple[int, ...]:
        if c.is_zero() or c.val >= self.level:
            return (0,) * self.f
        shift = self.word.spec.p**c.val
        return tuple(x * shift % self.m for x in c.vec)

    # -- index encoding --------------------------------------------------------

    def encode(self, P) -> int:
        idx = 0
        if self.f == 1:
            for coord in reversed(P):
                idx = idx * self.m + coord
        else:
            for coord in reversed(P):
                for digit in reversed(coord):
                    idx = idx * self.m + digit
        return idx

    def decode(self, idx: int):
        if self.f == 1:
            out = []
            for _ in range(self.dim):
                out.append(idx % self.m)
                idx //= self.m
            return tuple(out)
        out = []
        for _ in range(self.dim):
            digits = []
            for _ in range(self.f):
                digits.append(idx % self.m)
                idx //= self.m
            out.append(tuple(digits))
        return tuple(out)

    def lift_point(self, P) -> Point:
        """Plain digit lift into the full-precision field."""
        spec = self.word.spec
        if self.f == 1:
            return tuple(spec.from_int(coord) for coord in P)
        return tuple(spec.from_vector(coord, 0) for coord in P)


def _check_reducible(word: AutoWord) -> None:
    for c in word.coefficients():
        if not c.is_integral():
            raise NonIntegralCoefficient("word has a coefficient outside O")
    for g, _ in word.factors:
        if isinstance(g, HenonFactor):
            if g.a.valuation() != 0:
                raise DegenerateReduction("Henon coefficient a vanishes mod p")
        elif isinstance(g, TriangularAuto):
            if any(ai.valuation() != 0 for ai in g.a):
                raise DegenerateReduction("triangular scaling vanishes mod p")
        else:
            det = mat_det(g.matrix)
            if det.is_zero() or det.valuation() != 0:
                raise DegenerateReduction("affine determinant vanishes mod p")
    if word.conjugator is not None:
        _check_reducible(word.conjugator)


def _word_at_precision(word: AutoWord, spec_k: FieldSpec) -> AutoWord:
    def trunc(c: PadicElement) -> PadicElement:
        return c.truncate(spec_k)

    factors = tuple((g.map_coefficients(trunc), inv) for g, inv in word.factors)
    conj = _word_at_precision(word.conjugator, spec_k) if word.conjugator is not None else None
    return AutoWord(spec_k, word.dim, factors, conj)


def _int_mat_inv(mat: list[list[int]], p: int, level: int) -> list[list[int]]:
    """Inverse of an integer matrix with unit determinant, mod p^level."""
    n = len(mat)
    m = p**level
    # invert mod p by Gauss-Jordan, then Newton-double the precision
    a = [[mat[i][j] % p for j in range(n)] + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] % p)
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [x * inv % p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[col])]
    b = [[a[i][n + j] for j in range(n)] for i in range(n)]
    k = p
    while k < m:
        k = min(k * k, m)
        mb = [[sum(mat[i][t] * b[t][j] for t in range(n)) % k for j in range(n)] for i in range(n)]
        two_minus = [[(2 if i == j else 0) - mb[i][j] for j in range(n)] for i in range(n)]
        b = [[sum(b[i][t] * two_minus[t][j] for t in range(n)) % k for j in range(n)] for i in range(n)]
    return b


def iter_cycles(
    word: AutoWord, level: int, budget: int = DEFAULT_BUDGET
) -> Iterator[tuple[int, tuple]]:
    """Yields (length, representative) over all cycles at the given level."""
    ev = _ModEvaluator(word, level, budget)
    visited = bytearray(ev.size)
    for idx in range(ev.size):
        if visited[idx]:
            continue
        start = ev.decode(idx)
        visited[idx] = 1
        length = 1
        P = ev.apply(start)
        while P != start:
            visited[ev.encode(P)] = 1
            length += 1
            P = ev.apply(P)
        yield length, start


def permutation_cycles(
    word: AutoWord, level: int, budget: int = DEFAULT_BUDGET
) -> CycleStructure:
    """Exact cycle decomposition of the induced permutation on (O/p^k)^r."""
    counts: Counter[int] = Counter()
    for length, _ in iter_cycles(word, level, budget):
        counts[length] += 1
    return CycleStructure(level, word.dim, word.spec, dict(counts))


# ---------------------------------------------------------------------------
# period detection and lifting

def detect_period(word: AutoWord, P: Point, max_iter: int) -> int | None:
    """Minimal n <= max_iter with word^n(P) = P at working precision."""
    Q = P
    for n in range(1, max_iter + 1):
        Q = word.apply(Q)
        if points_equal(Q, P):
            return n
    return None


def _cycle_jacobian(word: AutoWord, orbit: Sequence[Point]) -> list[list[PadicElement]]:
    jac = None
    for Q in orbit:
        step = word.jacobian_at(Q)
        jac = step if jac is None else _mat_mul(step, jac)
    return jac


def _jacobian_minus_identity(word: AutoWord, orbit: Sequence[Point]) -> list[list[PadicElement]]:
    spec = word.spec
    jac = _cycle_jacobian(word, orbit)
    one, zero = spec.one(), spec.zero()
    return [
        [jac[i][j] - (one if i == j else zero) for j in range(word.dim)]
        for i in range(word.dim)
    ]


def _newton_cycle(word: AutoWord, start: Point, n: int) -> Point:
    """Newton refinement of a residue-cycle representative to a fixed point
    of word^n at full precision.  Raises SingularJacobian / NoConvergence."""
    spec = word.spec
    P = start
    for _ in range(spec.N.bit_length() + 4):
        orbit = word.orbit(P, n)
        image = word.apply(orbit[-1])
        residual = [a - b for a, b in zip(image, P)]
        if all(x.vanishes() for x in residual):
            return tuple(P)
        A = _jacobian_minus_identity(word, orbit)
        det = mat_det(A)
        if det.is_zero() or det.valuation() != 0:
            raise SingularJacobian("Jacobian of word^n - id is singular mod p")
        delta = solve_linear(A, residual)
        P = tuple(x - d for x, d in zip(P, delta))
    raise NoConvergence("cycle lift did not converge")


def _minimal_period(word: AutoWord, P: Point, n: int) -> int:
    divisors = sorted(d for d in range(1, n + 1) if n % d == 0)
    for d in divisors:
        Q = P
        for _ in range(d):
            Q = word.apply(Q)
        if points_equal(Q, P):
            return d
    return n


def lift_periodic(word: AutoWord, start, n: int, level: int = 1) -> PeriodicPointRecord:
    """Newton lift of a residue-cycle representative of length n.

    `start` may hold ResidueElements, integers (f = 1), coefficient tuples
    or integral PadicElements.  Raises SingularJacobian for degenerate
    cycles and NoConvergence if the refinement stalls.
    """
    spec = word.spec
    P = _as_point(spec, start)
    orbit = word.orbit(P, n)
    A = _jacobian_minus_identity(word, orbit)
    det = mat_det(A)
    if det.is_zero() or det.valuation() != 0:
        raise SingularJacobian("Jacobian of word^n - id is singular mod p")
    lifted = _newton_cycle(word, P, n)
    period = _minimal_period(word, lifted, n)
    return PeriodicPointRecord(lifted, period, True, n, level, "newton")


def _as_point(spec: FieldSpec, start) -> Point:
    out = []
    for x in start:
        if isinstance(x, PadicElement):
            out.append(x)
        elif isinstance(x, int):
            out.append(spec.from_int(x))
        elif isinstance(x, tuple):
            out.append(spec.from_vector(x, 0))
        else:  # ResidueElement
            out.append(spec.from_vector(x.vec, 0))
    return tuple(out)


# ---------------------------------------------------------------------------
# certification pipeline per residue cycle

@dataclass
class _CycleAttempt:
    status: str  # "certified" | "uncertified" | "no_point"
    record: PeriodicPointRecord | None = None


class _Lifter:
    """Shared state for lifting many cycles of one word."""

    def __init__(self, word: AutoWord):
        self.word = word
        self.spec = word.spec
        self.nf = triangular_normal_form(word)
        self._nf_powers: dict[int, TriangularAuto | None] = {}

    def _nf_power(self, n: int) -> TriangularAuto | None:
        if self.nf is None:
            return None
        if n not in self._nf_powers:
            try:
                self._nf_powers[n] = power_normal_form(self.nf, n)
            except DegreeOverflow:
                self._nf_powers[n] = None
        return self._nf_powers[n]

    def attempt(self, rep: Point, n: int, level: int) -> _CycleAttempt:
        word = self.word
        orbit = word.orbit(rep, n)
        A = _jacobian_minus_identity(word, orbit)
        det = mat_det(A)
        if not det.is_zero() and det.valuation() == 0:
            try:
                lifted = _newton_cycle(word, rep, n)
            except (SingularJacobian, NoConvergence):
                return _CycleAttempt("uncertified")
            period = _minimal_period(word, lifted, n)
            return _CycleAttempt(
                "certified", PeriodicPointRecord(lifted, period, True, n, level, "newton")
            )
        # degenerate cycle: accept the plain lift only when it is periodic on
        # the nose (representational equality), since with a singular
        # Jacobian a mod-p^N return is no evidence of a true K-point
        image = word.apply(orbit[-1])
        if all((a - b).is_zero() for a, b in zip(image, rep)):
            period = _minimal_period(word, rep, n)
            return _CycleAttempt(
                "certified", PeriodicPointRecord(rep, period, True, n, level, "exact")
            )
        nf_n = self._nf_power(n)
        if nf_n is not None:
            solve = solve_cycle_exact(nf_n, rep, level)
            if solve.status == NO_POINT:
                return _CycleAttempt("no_point")
            if solve.status == CERTIFIED and solve.point is not None:
                P = solve.point
                image = P
                for _ in range(n):
                    image = word.apply(image)
                if points_equal(image, P):
                    period = _minimal_period(word, P, n)
                    return _CycleAttempt(
                        "certified",
                        PeriodicPointRecord(P, period, True, n, level, "triangular"),
                    )
        return _CycleAttempt("uncertified")


def enumerate_periodic_points(
    word: AutoWord, n_max: int, budget: int = DEFAULT_BUDGET
) -> EnumerationResult:
    """One lift attempt per level-1 residue cycle of length <= n_max."""
    ev = _ModEvaluator(word, 1, budget)
    lifter = _Lifter(word)
    records: list[PeriodicPointRecord] = []
    uncertified: list[tuple[int, int]] = []
    empty: list[tuple[int, int]] = []
    for length, rep in iter_cycles(word, 1, budget):
        if length > n_max:
            continue
        attempt = lifter.attempt(ev.lift_point(rep), length, 1)
        if attempt.status == "certified":
            records.append(attempt.record)
        elif attempt.status == "no_point":
            empty.append((1, length))
        else:
            uncertified.append((1, length))
    records.sort(key=lambda r: (r.period, r.point_literals()))
    return EnumerationResult(records, uncertified, empty)


# ---------------------------------------------------------------------------
# empirical uniform bound

def empirical_period_bound(
    word: AutoWord, levels: Sequence[int], budget: int = DEFAULT_BUDGET
) -> BoundReport:
    """Cycle tables at each level with lift attempts for every cycle.

    The report stabilises when the two highest levels certify the same
    period spectrum; M_empirical is the largest certified minimal period.
    """
    levels = list(levels)
    if not levels or any(b <= a for a, b in zip(levels, levels[1:])):
        raise ValueError("levels must be ascending and nonempty")
    lifter = _Lifter(word)
    per_level: list[dict] = []
    spectra: list[set[int]] = []
    uncertified: list[tuple[int, int]] = []
    empty: list[tuple[int, int]] = []
    by_point: dict[tuple, PeriodicPointRecord] = {}
    for k in levels:
        ev = _ModEvaluator(word, k, budget)
        counts: Counter[int] = Counter()
        certified: set[int] = set()
        max_lifted = 0
        for length, rep in iter_cycles(word, k, budget):
            counts[length] += 1
            attempt = lifter.attempt(ev.lift_point(rep), length, k)
            if attempt.status == "certified":
                rec = attempt.record
                certified.add(rec.period)
                max_lifted = max(max_lifted, rec.period)
                key = rec.point
                if key not in by_point or by_point[key].level > rec.level:
                    by_point[key] = rec
            elif attempt.status == "no_point":
                empty.append((k, length))
            else:
                uncertified.append((k, length))
        spectra.append(certified)
        per_level.append(
            {
                "level": k,
                "cycle_counts": {str(n): c for n, c in sorted(counts.items())},
                "certified_periods": sorted(certified),
                "max_lifted_period": max_lifted,
            }
        )
    records = sorted(by_point.values(), key=lambda r: (r.period, r.point_literals()))
    m_emp = max((r.period for r in records), default=0)
    stabilized = len(spectra) >= 2 and spectra[-1] == spectra[-2]
    return BoundReport(
        spec=word.spec,
        word_digest=word_digest(word),
        levels=levels,
        per_level=per_level,
        m_empirical=m_emp,
        stabilized=stabilized,
        no_certified_points=not records,
        uncertified_cycles=uncertified,
        empty_cycles=empty,
        records=records,
    )


# ---------------------------------------------------------------------------
# triangular period analysis

@dataclass
class TriangularPeriodReport:
    realized: set[int]
    mu_bound: int
    exponent: int
    violations: list[int]
    records: list[PeriodicPointRecord]
    uncertified: list[tuple[int, int]]

    def to_dict(self) -> dict:
        return {
            "realized_periods": sorted(self.realized),
            "mu_bound": self.mu_bound,
            "p_power_exponent": self.exponent,
            "violations": sorted(self.violations),
            "records": [r.to_dict() for r in self.records],
            "uncertified_cycles": [list(t) for t in self.uncertified],
        }


def triangular_periods(
    t: TriangularAuto, n_max: int, budget: int = DEFAULT_BUDGET
) -> TriangularPeriodReport:
    """Certified periods of a triangular map against the root-of-unity bound.

    mu_bound is the lcm of the multiplicative orders of those scalings a_i
    that are roots of unity (1 if none are).  Realized periods that exceed
    mu_bound by a p-power are recorded through `exponent`; realized periods
    whose prime-to-p part does not divide mu_bound are flagged as violations.
    """
    spec = t.spec
    word = AutoWord.of(spec, t)
    enum = enumerate_periodic_points(word, n_max, budget)
    realized = enum.periods()
    mu = 1
    for ai in t.a:
        if ai.is_zero() or ai.valuation() != 0:
            continue
        order = root_of_unity_order(ai)
        if order is not None:
            mu = math.lcm(mu, order)
    p = spec.p
    exponent = 0
    violations = []
    for n in realized:
        reduced = n
        e = 0
        while reduced % p == 0:
            reduced //= p
            e += 1
        mu_free = mu
        while mu_free % p == 0:
            mu_free //= p
        if mu_free % reduced != 0:
            violations.append(n)
        mu_p = 0
        m = mu
        while m % p == 0:
            m //= p
            mu_p += 1
        exponent = max(exponent, max(0, e - mu_p))
    return TriangularPeriodReport(realized, mu, exponent, violations, enum.records, enum.uncertified)


# ---------------------------------------------------------------------------
# conjugation transport

def conjugation_transport(
    word: AutoWord, conjugator: AutoWord, samples: int = 20, n_max: int = 8,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """Check that periodic structure transports along psi = f^-1 phi f.

    Compares level-1 cycle spectra of the conjugated word and the core, and
    verifies that f maps certified periodic points of psi to phi-periodic
    points with identical minimal period.
    """
    core = word.core
    conj = core.with_conjugator(conjugator)
    if permutation_cycles(conj, 1, budget) != permutation_cycles(core, 1, budget):
        return False
    enum_conj = enumerate_periodic_points(conj, n_max, budget)
    enum_core = enumerate_periodic_points(core, n_max, budget)
    if enum_conj.periods() != enum_core.periods():
        return False
    for rec in enum_conj.records[:samples]:
        image = conjugator.apply(rec.point)
        if detect_period(core, image, rec.period) != rec.period:
            return False
    return True
