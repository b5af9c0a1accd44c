"""Sparse polynomials, truncated composition, multivariate Newton lifting."""

import pytest

from padicdyn import (
    DegreeOverflow,
    FieldSpec,
    MultiPoly,
    ResidueNotASolution,
    SingularJacobian,
    newton_lift_system,
)

Q3 = FieldSpec(3, N=8)


def xvar(i, arity=2, spec=Q3):
    return MultiPoly.variable(spec, arity, i)


class TestMultiPoly:
    def test_no_zero_terms_stored(self):
        p = xvar(0) - xvar(0)
        assert p.is_zero() and p.terms == {}

    def test_arithmetic_and_eval(self):
        p = xvar(0) * xvar(0) - xvar(1)  # x^2 - y
        pt = (Q3.from_int(4), Q3.from_int(7))
        assert p.evaluate(pt).congruent_to(Q3.from_int(9))

    def test_partial(self):
        p = (xvar(0) ** 3) * xvar(1)
        d = p.partial(0)
        assert d.terms == {(2, 1): Q3.from_int(3)}

    def test_substitute(self):
        p = xvar(0) * xvar(0) + xvar(1)
        q = p.substitute((xvar(1), xvar(0)))  # swap variables
        assert q.terms == {(0, 2): Q3.one(), (1, 0): Q3.one()}

    def test_substitute_degree_guard(self):
        p = xvar(0) ** 4
        with pytest.raises(DegreeOverflow):
            p.substitute((xvar(0) ** 4, xvar(1)), max_degree=8)

    def test_total_degree(self):
        assert MultiPoly.zero(Q3, 2).total_degree() == -1
        assert (xvar(0) * xvar(1) ** 2).total_degree() == 3


class TestNewtonSystem:
    def test_identity_system(self):
        system = [xvar(0), xvar(1)]
        pt = newton_lift_system(system, (Q3.zero().residue(), Q3.zero().residue()))
        assert all(c.is_zero() for c in pt)

    def test_henon_fixed_point_system(self):
        # fixed points of (x^2 - y, x): x^2 - 2x = 0 with x = y
        system = [xvar(0) ** 2 - xvar(0) - xvar(0), xvar(0) - xvar(1)]
        pt = newton_lift_system(
            system, (Q3.from_int(2).residue(), Q3.from_int(2).residue())
        )
        assert pt[0] == Q3.from_int(2) and pt[1] == Q3.from_int(2)

    def test_origin(self):
        system = [xvar(0) ** 2 - xvar(0) - xvar(0), xvar(0) - xvar(1)]
        pt = newton_lift_system(
            system, (Q3.zero().residue(), Q3.zero().residue())
        )
        assert all(c.is_zero() for c in pt)

    def test_singular_jacobian(self):
        system = [xvar(0) ** 2, xvar(1)]
        with pytest.raises(SingularJacobian):
            newton_lift_system(system, (Q3.zero().residue(), Q3.zero().residue()))

    def test_residue_not_a_solution(self):
        system = [xvar(0) - MultiPoly.constant(Q3.one(), 2), xvar(1)]
        with pytest.raises(ResidueNotASolution):
            newton_lift_system(system, (Q3.from_int(2).residue(), Q3.zero().residue()))

    def test_precision_monotonicity(self):
        hi = FieldSpec(3, N=9)
        lo = FieldSpec(3, N=4)

        def system(spec):
            x = MultiPoly.variable(spec, 2, 0)
            y = MultiPoly.variable(spec, 2, 1)
            return [x * x - MultiPoly.constant(spec.from_int(7), 2), y - x]

        r_hi = lambda n: hi.from_int(n).residue()  # noqa: E731
        r_lo = lambda n: lo.from_int(n).residue()  # noqa: E731
        pt_hi = newton_lift_system(system(hi), (r_hi(1), r_hi(1)))
        pt_lo = newton_lift_system(system(lo), (r_lo(1), r_lo(1)))
        assert [c.truncate(lo) for c in pt_hi] == list(pt_lo)
