"""Cycle structures, period detection, lifting, bounds, transport."""

import random
from fractions import Fraction

import pytest

from padicdyn import (
    AffineAuto,
    AutoWord,
    BudgetExceeded,
    FieldSpec,
    HenonFactor,
    MultiPoly,
    SingularJacobian,
    TriangularAuto,
    conjugation_transport,
    detect_period,
    empirical_period_bound,
    enumerate_periodic_points,
    lift_periodic,
    permutation_cycles,
    triangular_periods,
)
from padicdyn.dynamics import iter_cycles, points_equal

Q3 = FieldSpec(3, N=10)
Q5 = FieldSpec(5, N=10)
ONE, ZERO = Q3.one(), Q3.zero()
G = AutoWord.of(Q3, HenonFactor(ONE, (ZERO, ZERO, ONE)))


def triangular_q5():
    one, zero = Q5.one(), Q5.zero()
    return TriangularAuto(
        2,
        (Q5.from_int(-1), Q5.from_int(-1)),
        (MultiPoly.from_univariate([zero, zero, one], 2, 1), MultiPoly.constant(one, 2)),
    )


def brute_force_cycles(step, points):
    """Independent oracle: cycle table of a permutation given pointwise."""
    seen = set()
    table = {}
    for start in points:
        if start in seen:
            continue
        cycle = [start]
        q = step(start)
        while q != start:
            cycle.append(q)
            q = step(q)
        for z in cycle:
            seen.add(z)
        table[len(cycle)] = table.get(len(cycle), 0) + 1
    return table


class TestPermutationCycles:
    def test_henon_f3_against_oracle(self):
        def step(pt):
            x, y = pt
            return ((x * x - y) % 3, x)

        oracle = brute_force_cycles(step, [(x, y) for x in range(3) for y in range(3)])
        assert oracle == {1: 2, 7: 1}
        assert permutation_cycles(G, 1).counts == oracle

    def test_identity_word(self):
        ident = AutoWord.of(Q3, AffineAuto(((ONE, ZERO), (ZERO, ONE)), (ZERO, ZERO)))
        for k in (1, 2):
            cs = permutation_cycles(ident, k)
            assert cs.counts == {1: 9**k}

    def test_triangular_q5_against_oracle(self):
        def step(pt):
            x, y = pt
            return ((-x + y * y) % 5, (1 - y) % 5)

        oracle = brute_force_cycles(step, [(x, y) for x in range(5) for y in range(5)])
        w = AutoWord.of(Q5, triangular_q5())
        cs = permutation_cycles(w, 1)
        assert cs.counts == oracle
        assert cs.total_points() == 25

    def test_totality_invariant(self):
        for word, k in ((G, 1), (G, 2), (G, 3)):
            cs = permutation_cycles(word, k)
            assert cs.total_points() == cs.expected_points()

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            permutation_cycles(G, 3, budget=100)

    def test_extension_field_cycles(self):
        F9 = FieldSpec(3, f=2, N=4)
        g = AutoWord.of(F9, HenonFactor(F9.one(), (F9.zero(), F9.zero(), F9.one())))
        cs = permutation_cycles(g, 1)
        assert cs.total_points() == 81  # q^2 with q = 9


class TestTowerDivisibility:
    def test_henon_levels_1_to_3(self):
        from padicdyn.dynamics import _ModEvaluator

        lengths = {}
        for k in (1, 2, 3):
            lengths[k] = {}
            for length, rep in iter_cycles(G, k):
                lengths[k][rep] = length
            # also map every point of every cycle to its length
        for k in (2, 3):
            ev_lo = _ModEvaluator(G, k - 1)
            lo_lengths = {}
            for length, rep in iter_cycles(G, k - 1):
                # walk the cycle, recording each point
                pt = rep
                for _ in range(length):
                    lo_lengths[pt] = length
                    pt = ev_lo.apply(pt)
            m = 3 ** (k - 1)
            for length, rep in iter_cycles(G, k):
                reduced = tuple(c % m for c in rep)
                assert length % lo_lengths[reduced] == 0


class TestDetectPeriod:
    def test_fixed_points(self):
        assert detect_period(G, (ZERO, ZERO), 5) == 1
        assert detect_period(G, (Q3.from_int(2), Q3.from_int(2)), 5) == 1

    def test_escaping_point(self):
        assert detect_period(G, (Q3.from_int(1), ZERO), 10) is None


class TestLiftPeriodic:
    def test_fixed_point_two_two(self):
        rec = lift_periodic(G, (2, 2), 1)
        assert rec.certified and rec.period == 1
        assert rec.point == (Q3.from_int(2), Q3.from_int(2))

    def test_origin(self):
        rec = lift_periodic(G, (0, 0), 1)
        assert rec.period == 1 and all(c.is_zero() for c in rec.point)

    def test_seven_cycle(self):
        rec = lift_periodic(G, (0, 1), 7)
        assert rec.certified and rec.period == 7
        img = rec.point
        for _ in range(7):
            img = G.apply(img)
        assert points_equal(img, rec.point)

    def test_singular_cycle_raises(self):
        w = AutoWord.of(Q5, triangular_q5())
        # (0, 3) lies on a 2-cycle with unipotent Jacobian
        with pytest.raises(SingularJacobian):
            lift_periodic(w, (0, 3), 2)


class TestEnumerate:
    def test_henon_fixed_points_exactly(self):
        enum = enumerate_periodic_points(G, 1)
        pts = sorted(r.point_literals() for r in enum.records)
        assert pts == [["0", "0"], ["2", "2"]]
        assert all(r.certified and r.period == 1 for r in enum.records)

    def test_linear_involution(self):
        w = AutoWord.of(
            Q3, AffineAuto(((Q3.from_int(-1), ZERO), (ZERO, Q3.from_int(-1))), (ZERO, ZERO))
        )
        enum = enumerate_periodic_points(w, 2)
        assert enum.periods() == {1, 2}

    def test_triangular_example(self):
        w = AutoWord.of(Q5, triangular_q5())
        enum = enumerate_periodic_points(w, 2)
        assert enum.periods() == {1, 2}
        fixed = [r for r in enum.records if r.period == 1]
        assert len(fixed) == 1
        x, y = fixed[0].point
        # the exact fixed point is (1/8, 1/2), which is (2, 3) mod 5
        assert x == Q5.from_fraction(Fraction(1, 8))
        assert y == Q5.from_fraction(Fraction(1, 2))
        for r in enum.records:
            if r.period == 2:
                assert r.point[1].congruent_to(Q5.from_int(3), 1)

    def test_lift_soundness(self):
        enum = enumerate_periodic_points(G, 7)
        for r in enum.records:
            img = r.point
            for _ in range(r.period):
                img = G.apply(img)
            assert points_equal(img, r.point)
            for d in range(1, r.period):
                if r.period % d == 0:
                    img = r.point
                    for _ in range(d):
                        img = G.apply(img)
                    assert not points_equal(img, r.point)

    def test_reduction_compatibility(self):
        # reduction of a certified point lies on a cycle of dividing length
        from padicdyn.dynamics import _ModEvaluator

        enum = enumerate_periodic_points(G, 7)
        ev = _ModEvaluator(G, 1)
        cycle_len = {}
        for length, rep in iter_cycles(G, 1):
            pt = rep
            for _ in range(length):
                cycle_len[pt] = length
                pt = ev.apply(pt)
        for r in enum.records:
            reduced = tuple(0 if c.is_zero() or c.val >= 1 else c.vec[0] % 3 for c in r.point)
            assert r.period % cycle_len[reduced] == 0


class TestEmpiricalBound:
    def test_henon_q3(self):
        report = empirical_period_bound(G, [1, 2, 3])
        assert report.stabilized
        assert report.m_empirical == 7
        pts = sorted(r.point_literals() for r in report.records if r.period == 1)
        assert pts == [["0", "0"], ["2", "2"]]

    def test_linear_involution(self):
        w = AutoWord.of(
            Q3, AffineAuto(((Q3.from_int(-1), ZERO), (ZERO, Q3.from_int(-1))), (ZERO, ZERO))
        )
        report = empirical_period_bound(w, [1, 2])
        assert report.m_empirical == 2 and report.stabilized

    def test_translation_has_no_certified_points(self):
        one5 = Q5.one()
        t = TriangularAuto(2, (one5, one5), (MultiPoly.zero(Q5, 2), MultiPoly.constant(one5, 2)))
        report = empirical_period_bound(AutoWord.of(Q5, t), [1, 2])
        assert report.m_empirical == 0
        assert report.no_certified_points
        assert report.stabilized  # the empty spectrum is stable

    def test_levels_must_ascend(self):
        with pytest.raises(ValueError):
            empirical_period_bound(G, [2, 1])


class TestTriangularPeriods:
    def test_reflection_example(self):
        report = triangular_periods(triangular_q5(), 2)
        assert report.realized == {1, 2}
        assert report.mu_bound == 2
        assert report.exponent == 0
        assert report.violations == []

    def test_non_torsion_scalings(self):
        one5 = Q5.one()
        t = TriangularAuto(
            2,
            (Q5.from_int(2), Q5.from_int(3)),
            (MultiPoly.constant(one5, 2), MultiPoly.constant(one5, 2)),
        )
        report = triangular_periods(t, 4)
        assert report.realized == {1}
        assert report.mu_bound == 1
        # the unique fixed point is (-1, -1/2)
        rec = report.records[0]
        assert rec.point[0] == Q5.from_int(-1)
        assert rec.point[1] == Q5.from_fraction(Fraction(-1, 2))

    def test_translation(self):
        one5 = Q5.one()
        t = TriangularAuto(2, (one5, one5), (MultiPoly.zero(Q5, 2), MultiPoly.constant(one5, 2)))
        report = triangular_periods(t, 4)
        assert report.realized == set()

    def test_dimension_three(self):
        one5, zero5 = Q5.one(), Q5.zero()
        F1 = MultiPoly.from_univariate([zero5, zero5, one5], 3, 2)  # X_3^2
        F2 = MultiPoly.from_univariate([zero5, one5], 3, 2)  # X_3
        F3 = MultiPoly.constant(one5, 3)
        t = TriangularAuto(3, (Q5.from_int(-1), Q5.from_int(-1), Q5.from_int(-1)), (F1, F2, F3))
        report = triangular_periods(t, 2)
        assert report.mu_bound == 2
        assert report.realized <= {1, 2} and report.realized


class TestConjugationTransport:
    def test_identity_conjugator(self):
        ident = AutoWord.of(Q3, AffineAuto(((ONE, ZERO), (ZERO, ONE)), (ZERO, ZERO)))
        assert conjugation_transport(G, ident)

    def test_seeded_affine_conjugators(self):
        rng = random.Random(1234)
        for _ in range(20):
            f = _random_unit_affine_word(rng, Q3)
            assert conjugation_transport(G, f, n_max=7)


def _random_unit_affine_word(rng, spec):
    while True:
        rows = [[spec.from_int(rng.randint(-4, 4)) for _ in range(2)] for _ in range(2)]
        det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        if not det.is_zero() and det.valuation() == 0:
            break
    tr = tuple(spec.from_int(rng.randint(-4, 4)) for _ in range(2))
    return AutoWord.of(spec, AffineAuto(tuple(tuple(r) for r in rows), tr))
