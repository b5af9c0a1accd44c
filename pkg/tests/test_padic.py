"""Scalar arithmetic, Teichmueller lifts, roots of unity, Hensel lifting."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padicdyn import (
    DivisionByZero,
    FieldSpec,
    NegativeValuation,
    NotASimpleRoot,
    NotAUnit,
    ParseError,
    ResidueNotASolution,
    SpecMismatch,
    ZeroResidue,
    hensel_lift_root,
    root_of_unity_order,
    teichmueller,
)

Q5_2 = FieldSpec(5, N=2)
Q5_3 = FieldSpec(5, N=3)
Q3 = FieldSpec(3, N=10)
Q2 = FieldSpec(2, N=8)
F9 = FieldSpec(3, f=2, N=6)


def _xgcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = _xgcd(b, a % b)
    return g, y, x - (a // b) * y


class TestFieldArith:
    def test_additive_identity(self):
        a = Q5_2.from_int(17)
        assert Q5_2.zero() + a == a

    def test_carry_into_valuation(self):
        s = Q5_2.from_int(2) + Q5_2.from_int(3)
        assert s == Q5_2.from_int(5)
        assert s.valuation() == 1

    def test_division_oracle(self):
        # solve 2u = 1 mod 25 with extended Euclid, independently of the library
        g, u, _ = _xgcd(2, 25)
        assert g == 1
        expected = u % 25
        assert expected == 13
        assert Q5_2.one() / Q5_2.from_int(2) == Q5_2.from_int(expected)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            Q5_2.one() / Q5_2.zero()

    def test_spec_mismatch(self):
        with pytest.raises(SpecMismatch):
            Q5_2.one() + Q3.one()

    def test_fraction_embedding(self):
        x = Q5_2.from_fraction(Fraction(1, 2))
        assert x * Q5_2.from_int(2) == Q5_2.one()

    def test_negative_power(self):
        x = Q3.from_int(7)
        assert x**-2 * x**2 == Q3.one()


class TestValuation:
    def test_zero(self):
        assert Q3.zero().valuation() == math.inf

    def test_p(self):
        assert Q3.from_int(3).valuation() == 1

    def test_ultrametric_sum(self):
        x = Q3.from_int(9) + Q3.from_int(27)
        assert x.valuation() == 2

    def test_product_additivity(self):
        x, y = Q3.from_int(6), Q3.from_int(45)
        assert (x * y).valuation() == x.valuation() + y.valuation()


class TestResidue:
    def test_p_reduces_to_zero(self):
        assert Q5_2.from_int(5).residue().is_zero()

    def test_seven_mod_five(self):
        assert Q5_2.from_int(7).residue() == Q5_2.from_int(2).residue()

    def test_one(self):
        r = Q5_2.one().residue()
        assert r.vec == (1,)

    def test_negative_valuation_rejected(self):
        with pytest.raises(NegativeValuation):
            Q5_2.from_fraction(Fraction(1, 5)).residue()


class TestTeichmueller:
    def test_one_lifts_to_one(self):
        assert teichmueller(Q5_2.one().residue()) == Q5_2.one()

    @pytest.mark.parametrize("r,expected", [(2, 7), (4, 24)])
    def test_q5_values_against_powering(self, r, expected):
        # oracle: iterate a -> a^5 mod 25 to its fixed point
        a = r
        for _ in range(6):
            a = pow(a, 5, 25)
        assert a == expected
        assert teichmueller(Q5_2.from_int(r).residue()) == Q5_2.from_int(expected)

    def test_omega_2_at_higher_precision(self):
        a = 2
        for _ in range(10):
            a = pow(a, 5, 125)
        assert a == 57
        assert teichmueller(Q5_3.from_int(2).residue()) == Q5_3.from_int(57)

    def test_zero_rejected(self):
        with pytest.raises(ZeroResidue):
            teichmueller(Q5_2.zero().residue())

    def test_defining_property(self):
        for spec in (Q5_2, Q3, F9):
            for r in list(_nonzero_residues(spec))[:8]:
                w = teichmueller(r)
                assert w ** (spec.q - 1) == spec.one()
                assert w.residue() == r

    def test_order_matches_residue_order(self):
        for r in _nonzero_residues(F9):
            assert root_of_unity_order(teichmueller(r)) == r.multiplicative_order()


def _nonzero_residues(spec):
    from padicdyn import ResidueElement

    return (r for r in ResidueElement.all_elements(spec) if not r.is_zero())


class TestRootOfUnityOrder:
    def test_one(self):
        assert root_of_unity_order(Q5_2.one()) == 1

    def test_minus_one_odd_p(self):
        assert root_of_unity_order(Q5_2.from_int(-1)) == 2
        assert root_of_unity_order(Q3.from_int(-1)) == 2

    def test_seven_at_two_digits(self):
        assert pow(7, 4, 25) == 1
        assert root_of_unity_order(Q5_2.from_int(7)) == 4

    def test_seven_at_three_digits_is_none(self):
        assert root_of_unity_order(Q5_3.from_int(7)) is None

    def test_non_unit_rejected(self):
        with pytest.raises(NotAUnit):
            root_of_unity_order(Q5_2.from_int(5))

    def test_p_equals_two(self):
        assert root_of_unity_order(Q2.from_int(-1)) == 2
        assert root_of_unity_order(Q2.one()) == 1
        assert root_of_unity_order(Q2.from_int(3)) is None
        # group order 2(q-1): in an unramified extension -omega has even order
        F4 = FieldSpec(2, f=2, N=5)
        gen = next(r for r in _nonzero_residues(F4) if r.multiplicative_order() == 3)
        omega = teichmueller(gen)
        assert root_of_unity_order(-omega) == 6


class TestHensel:
    def test_square_root_of_one(self):
        g = [Q3.from_int(-1), Q3.zero(), Q3.one()]  # X^2 - 1
        assert hensel_lift_root(g, Q3.one().residue()) == Q3.one()

    def test_sqrt_of_minus_one_mod_25(self):
        g = [Q5_2.one(), Q5_2.zero(), Q5_2.one()]  # X^2 + 1
        x = hensel_lift_root(g, Q5_2.from_int(2).residue())
        assert (7 * 7 + 1) % 25 == 0
        assert x == Q5_2.from_int(7)

    def test_zero_root(self):
        g = [Q3.zero(), Q3.from_int(-1), Q3.one()]  # X^2 - X
        assert hensel_lift_root(g, Q3.zero().residue()) == Q3.zero()

    def test_multiple_root_rejected(self):
        g = [Q3.zero(), Q3.zero(), Q3.one()]  # X^2
        with pytest.raises(NotASimpleRoot):
            hensel_lift_root(g, Q3.zero().residue())

    def test_non_root_rejected(self):
        g = [Q3.one(), Q3.zero(), Q3.one()]  # X^2 + 1 has no root mod 3
        with pytest.raises(ResidueNotASolution):
            hensel_lift_root(g, Q3.one().residue())

    def test_result_is_a_root_and_reduces_back(self):
        spec = FieldSpec(7, N=9)
        g = [spec.from_int(-2), spec.zero(), spec.one()]  # X^2 - 2
        r = next(
            r for r in _nonzero_residues(spec) if (r * r) == spec.from_int(2).residue()
        )
        x = hensel_lift_root(g, r)
        assert (x * x - spec.from_int(2)).vanishes()
        assert x.residue() == r

    def test_precision_monotonicity(self):
        hi = FieldSpec(5, N=8)
        lo = FieldSpec(5, N=3)
        g_hi = [hi.one(), hi.zero(), hi.one()]
        g_lo = [lo.one(), lo.zero(), lo.one()]
        x_hi = hensel_lift_root(g_hi, hi.from_int(2).residue())
        x_lo = hensel_lift_root(g_lo, lo.from_int(2).residue())
        assert x_hi.truncate(lo) == x_lo


class TestExtensionFields:
    def test_default_polynomial_is_validated(self):
        spec = FieldSpec(3, f=2, N=4)
        assert len(spec.h) == 3 and spec.h[-1] == 1

    def test_reducible_polynomial_rejected(self):
        with pytest.raises(ValueError):
            FieldSpec(3, f=2, N=4, h=(2, 0, 1))  # X^2 + 2 = (X-1)(X+1) mod 3

    def test_non_prime_rejected(self):
        with pytest.raises(ValueError):
            FieldSpec(6, N=2)

    def test_field_inverse(self):
        u = F9.from_vector([1, 1])
        assert u / u == F9.one()
        v = F9.from_vector([2, 1], val=-1)
        assert (v * (F9.one() / v)) == F9.one()

    def test_frobenius_count(self):
        # the residue field has q = 9 elements, 8 of them units
        from padicdyn import ResidueElement

        assert sum(1 for _ in ResidueElement.all_elements(F9)) == 9


class TestLiterals:
    @pytest.mark.parametrize("text", ["0", "7", "-4", "1/3", "45"])
    def test_round_trip_via_value(self, text):
        x = Q3.parse(text)
        assert Q3.parse(x.to_literal()) == x

    def test_digit_list(self):
        x = F9.parse("[2,1]@3^-1")
        assert x.valuation() == -1
        assert F9.parse(x.to_literal()) == x

    def test_fraction_literal_emission(self):
        x = Q3.from_fraction(Fraction(2, 9))
        assert x.to_literal().endswith("/9")
        assert Q3.parse(x.to_literal()) == x

    @pytest.mark.parametrize("bad", ["", "x", "1/0", "[1,2]@7^0", "2/"])
    def test_bad_literals(self, bad):
        with pytest.raises(ParseError):
            Q3.parse(bad)


# ---------------------------------------------------------------------------
# ring axioms.  With small nonnegative representatives no reduction mod p^N
# ever fires, so the identities hold on the stored representatives; for
# arbitrary integral data the guarantee is the exact congruence mod p^N
# (still equality of classes, never a tolerance).

SMALL = st.integers(min_value=0, max_value=200)
SIGNED = st.integers(min_value=-(10**9), max_value=10**9)
PROP_SPEC = FieldSpec(5, N=12)


@st.composite
def small_elements(draw):
    return PROP_SPEC.from_int(draw(SMALL))


@st.composite
def integral_elements(draw):
    return PROP_SPEC.from_int(draw(SIGNED))


@given(small_elements(), small_elements(), small_elements())
def test_ring_axioms_exact_on_small_representatives(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == PROP_SPEC.zero()


@given(integral_elements(), integral_elements(), integral_elements())
def test_ring_axioms_mod_pN(a, b, c):
    assert ((a + b) + c).congruent_to(a + (b + c))
    assert ((a * b) * c).congruent_to(a * (b * c))
    assert (a * (b + c)).congruent_to(a * b + a * c)
    assert (a - a).is_zero()
    assert (a * b).congruent_to(b * a)


@given(st.integers(min_value=-10**6, max_value=10**6), st.integers(min_value=-10**6, max_value=10**6))
def test_valuation_rules(m, n):
    x, y = PROP_SPEC.from_int(m), PROP_SPEC.from_int(n)
    if m and n:
        assert (x * y).valuation() == x.valuation() + y.valuation()
    if m or n:
        s = x + y
        assert s.valuation() >= min(x.valuation(), y.valuation())
        if x.valuation() != y.valuation():
            assert s.valuation() == min(x.valuation(), y.valuation())


@given(small_elements())
def test_multiplicative_inverse(a):
    if not a.is_zero():
        assert a * (PROP_SPEC.one() / a) == PROP_SPEC.one()
