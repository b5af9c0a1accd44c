"""Automorphism words: evaluation, inversion, composition, reduction."""

import random
from fractions import Fraction

import pytest

from padicdyn import (
    AffineAuto,
    AutoWord,
    DegenerateReduction,
    FieldSpec,
    HenonFactor,
    MultiPoly,
    NonIntegralCoefficient,
    TriangularAuto,
    compose_symbolic,
    reduce_word,
)

Q3 = FieldSpec(3, N=10)
Q5 = FieldSpec(5, N=10)
ONE, ZERO = Q3.one(), Q3.zero()


def henon_word(spec=Q3, a=1, coeffs=(0, 0, 1)):
    g = HenonFactor(spec.from_int(a), tuple(spec.from_int(c) for c in coeffs))
    return AutoWord.of(spec, g)


def triangular_example(spec=Q5):
    # (-x + y^2, 1 - y)
    one, zero = spec.one(), spec.zero()
    return AutoWord.of(
        spec,
        TriangularAuto(
            2,
            (spec.from_int(-1), spec.from_int(-1)),
            (MultiPoly.from_univariate([zero, zero, one], 2, 1), MultiPoly.constant(one, 2)),
        ),
    )


def pt(spec, *vals):
    return tuple(spec.from_int(v) for v in vals)


class TestApply:
    def test_identity_word(self):
        ident = AffineAuto(((ONE, ZERO), (ZERO, ONE)), (ZERO, ZERO))
        w = AutoWord.of(Q3, ident)
        P = pt(Q3, 5, -7)
        assert w.apply(P) == P

    def test_henon_at_simple_point(self):
        w = henon_word()
        assert w.apply(pt(Q3, 1, 0)) == pt(Q3, 1, 1)

    def test_henon_fixed_point(self):
        w = henon_word()
        assert w.apply(pt(Q3, 2, 2)) == pt(Q3, 2, 2)


class TestInverse:
    def test_identity_inverse(self):
        ident = AffineAuto(((ONE, ZERO), (ZERO, ONE)), (ZERO, ZERO))
        w = AutoWord.of(Q3, ident)
        assert w.inverse().apply(pt(Q3, 3, 4)) == pt(Q3, 3, 4)

    def test_henon_closed_form(self):
        w = henon_word()
        assert w.inverse().apply(pt(Q3, 0, 1)) == pt(Q3, 1, 1)

    def test_involution(self):
        w = henon_word()
        again = w.inverse().inverse()
        assert again.factors == w.factors

    def test_round_trip_random_words(self):
        rng = random.Random(20240811)
        specs = (Q3, Q5)
        for trial in range(50):
            spec = specs[trial % 2]
            word = _random_word(rng, spec)
            for _ in range(20):
                P = tuple(spec.from_int(rng.randint(-50, 50)) for _ in range(2))
                Q = word.inverse().apply(word.apply(P))
                assert all(a.congruent_to(b) for a, b in zip(Q, P))


def _random_word(rng, spec):
    factors = []
    for _ in range(rng.randint(1, 4)):
        kind = rng.choice(("henon", "affine", "triangular"))
        inverted = rng.random() < 0.5
        if kind == "henon":
            a = spec.from_int(rng.choice([1, -1, 2, spec.p + 1]))
            degree = rng.randint(2, 3)
            coeffs = [spec.from_int(rng.randint(-3, 3)) for _ in range(degree)] + [spec.one()]
            factors.append((HenonFactor(a, tuple(coeffs)), inverted))
        elif kind == "affine":
            while True:
                rows = [[spec.from_int(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]
                det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
                if not det.is_zero() and det.valuation() == 0:
                    break
            tr = tuple(spec.from_int(rng.randint(-3, 3)) for _ in range(2))
            factors.append((AffineAuto(tuple(tuple(r) for r in rows), tr), inverted))
        else:
            a = tuple(spec.from_int(rng.choice([1, -1, 2])) for _ in range(2))
            f1 = MultiPoly.from_univariate(
                [spec.from_int(rng.randint(-2, 2)) for _ in range(3)], 2, 1
            )
            f2 = MultiPoly.constant(spec.from_int(rng.randint(-2, 2)), 2)
            factors.append((TriangularAuto(2, a, (f1, f2)), inverted))
    return AutoWord(spec, 2, tuple(factors))


class TestComposeSymbolic:
    def test_single_henon(self):
        w = henon_word()
        p1, p2 = compose_symbolic(w)
        assert p1.terms == {(2, 0): ONE, (0, 1): Q3.from_int(-1)}
        assert p2.terms == {(1, 0): ONE}

    def test_square_against_hand_expansion(self):
        # g(g(x,y)) = ((x^2-y)^2 - x, x^2 - y) expanded by an independent path
        w = henon_word().power(2)
        p1, p2 = compose_symbolic(w)
        expected1 = _dict_poly_square({(2, 0): 1, (0, 1): -1})
        expected1[(1, 0)] = expected1.get((1, 0), 0) - 1
        assert _to_int_terms(p1) == {e: c % 3**10 for e, c in expected1.items() if c % 3**10}
        assert _to_int_terms(p2) == {(2, 0): 1, (0, 1): 3**10 - 1}

    def test_degree_multiplicativity(self):
        g2 = HenonFactor(Q3.from_int(2), tuple(Q3.from_int(c) for c in (1, 0, 0, 1)))
        w = AutoWord.of(Q3, henon_word().factors[0][0], g2)
        polys = compose_symbolic(w)
        assert max(p.total_degree() for p in polys) == 6

    def test_conjugated_composition_matches_pointwise(self):
        f = AutoWord.of(Q3, AffineAuto(((ONE, ONE), (ZERO, ONE)), (ONE, ZERO)))
        w = henon_word().with_conjugator(f)
        polys = compose_symbolic(w)
        for vals in [(0, 0), (1, 2), (-3, 5)]:
            P = pt(Q3, *vals)
            direct = w.apply(P)
            symbolic = tuple(p.evaluate(P) for p in polys)
            assert all(a.congruent_to(b) for a, b in zip(direct, symbolic))


def _dict_poly_square(terms):
    out = {}
    for e1, c1 in terms.items():
        for e2, c2 in terms.items():
            e = (e1[0] + e2[0], e1[1] + e2[1])
            out[e] = out.get(e, 0) + c1 * c2
    return out


def _to_int_terms(poly):
    out = {}
    for e, c in poly.terms.items():
        assert c.val >= 0
        out[e] = (c.vec[0] * 3**c.val) % 3**10
    return out


class TestJacobian:
    def test_matches_symbolic_partials(self):
        rng = random.Random(99)
        for _ in range(10):
            word = _random_word(rng, Q3)
            polys = compose_symbolic(word, max_degree=100000)
            P = tuple(Q3.from_int(rng.randint(-5, 5)) for _ in range(2))
            jac = word.jacobian_at(P)
            for i in range(2):
                for j in range(2):
                    expected = polys[i].partial(j).evaluate(P)
                    assert jac[i][j].congruent_to(expected)


class TestReduceWord:
    def test_coefficient_reduction(self):
        g = HenonFactor(ONE, (Q3.from_int(3), ZERO, ONE))  # x^2 + 3
        rw = reduce_word(AutoWord.of(Q3, g))
        spec1 = rw.spec
        assert spec1.N == 1
        factor = rw.factors[0][0]
        assert factor.coeffs[0].is_zero()  # 3 = 0 mod 3
        assert factor.coeffs[2] == spec1.one()

    def test_degenerate_a(self):
        g = HenonFactor(Q3.from_int(3), (ZERO, ZERO, ONE))
        with pytest.raises(DegenerateReduction):
            reduce_word(AutoWord.of(Q3, g))

    def test_non_integral(self):
        g = HenonFactor(Q3.from_fraction(Fraction(1, 3)), (ZERO, ZERO, ONE))
        with pytest.raises(NonIntegralCoefficient):
            reduce_word(AutoWord.of(Q3, g))

    def test_triangular_reduction(self):
        one5, zero5 = Q5.one(), Q5.zero()
        t = TriangularAuto(
            2,
            (Q5.from_int(2), Q5.from_int(4)),
            (MultiPoly.from_univariate([zero5, zero5, one5], 2, 1), MultiPoly.constant(one5, 2)),
        )
        rw = reduce_word(AutoWord.of(Q5, t))
        factor = rw.factors[0][0]
        assert factor.a[0] == rw.spec.from_int(2) and factor.a[1] == rw.spec.from_int(4)

    def test_commutes_with_inverse(self):
        rng = random.Random(4)
        for _ in range(10):
            word = _random_word(rng, Q3)
            if not word.is_integral():
                continue
            try:
                left = reduce_word(word.inverse())
                right = reduce_word(word).inverse()
            except DegenerateReduction:
                continue
            assert len(left.factors) == len(right.factors)
            for (g1, i1), (g2, i2) in zip(left.factors, right.factors):
                assert i1 == i2 and type(g1) is type(g2)
                assert list(g1.coefficients()) == list(g2.coefficients())


class TestValidation:
    def test_henon_requires_monic(self):
        with pytest.raises(ValueError):
            HenonFactor(ONE, (ZERO, ZERO, Q3.from_int(2)))

    def test_henon_requires_degree_two(self):
        with pytest.raises(ValueError):
            HenonFactor(ONE, (ZERO, ONE))

    def test_henon_only_on_the_plane(self):
        g = HenonFactor(ONE, (ZERO, ZERO, ONE))
        with pytest.raises(ValueError):
            AutoWord(Q3, 3, ((g, False),))

    def test_triangular_variable_discipline(self):
        bad = MultiPoly.from_univariate([ZERO, ONE], 2, 0)  # F_1 may not use X_1
        with pytest.raises(ValueError):
            TriangularAuto(2, (ONE, ONE), (bad, MultiPoly.constant(ZERO, 2)))

    def test_affine_needs_invertible_matrix(self):
        from padicdyn import SingularMatrix

        with pytest.raises(SingularMatrix):
            AffineAuto(((ONE, ONE), (ONE, ONE)), (ZERO, ZERO))
