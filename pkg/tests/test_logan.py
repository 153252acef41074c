from fractions import Fraction

from hypothesis import given, strategies as st

from quatrot.logan import (
    LOGAN_CENSUS,
    compute_intermediates,
    logan_double_product,
    logan_product,
    op_census_logan,
    rotmat_logan,
)
from quatrot.profiles import RATIONAL, counted
from quatrot.quaternion import Quaternion, norm_squared, rotmat_direct

small_ints = st.integers(min_value=-10, max_value=10)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
quaternions = st.tuples(small_ints, small_ints, small_ints, small_ints).map(
    lambda t: Quaternion(*t)
)


class TestLoganProduct:
    def test_three_times_four(self):
        assert logan_product(3, 4, RATIONAL) == 12

    def test_negative_operand(self):
        # oracle: plain multiplication
        assert logan_product(-5, 7, RATIONAL) == -5 * 7

    @given(rationals)
    def test_annihilator(self, a):
        assert logan_product(a, Fraction(0), RATIONAL) == 0

    @given(rationals, rationals)
    def test_equals_multiplication(self, a, b):
        assert logan_product(a, b, RATIONAL) == a * b
        assert logan_double_product(a, b, RATIONAL) == 2 * a * b

    def test_double_product_examples(self):
        assert logan_double_product(3, 4, RATIONAL) == 24
        assert logan_double_product(-1, 1, RATIONAL) == -2

    @given(rationals)
    def test_double_product_of_equal_operands(self, a):
        assert logan_double_product(a, a, RATIONAL) == 2 * a * a

    def test_double_product_census(self):
        p = counted(RATIONAL)
        logan_double_product(Fraction(3), Fraction(4), p)
        assert p.ledger.as_dict() == {
            "mul": 0, "square": 3, "addsub": 3, "double": 0, "halve": 0
        }


class TestIntermediates:
    def test_integer_example(self):
        inter = compute_intermediates(Quaternion(1, 2, 3, 4), RATIONAL)
        assert (inter.phi0, inter.phi1, inter.phi2) == (25, 25, 49)
        assert (inter.phi3, inter.phi4, inter.phi5) == (9, 36, 16)
        assert (inter.theta0, inter.theta1) == (13, 17)
        assert (inter.theta3, inter.theta4) == (-5, -15)
        assert inter.lam == 30

    def test_identity_quaternion(self):
        inter = compute_intermediates(Quaternion(1, 0, 0, 0), RATIONAL)
        assert (inter.phi0, inter.phi1, inter.phi2) == (0, 1, 0)
        assert (inter.phi3, inter.phi4, inter.phi5) == (1, 0, 1)
        assert (inter.theta0, inter.theta1, inter.theta3, inter.theta4) == (0, 1, 0, 1)
        assert inter.lam == 1

    def test_zero_quaternion(self):
        inter = compute_intermediates(Quaternion(0, 0, 0, 0), RATIONAL)
        assert all(
            getattr(inter, f) == 0
            for f in ("phi0", "phi1", "phi2", "phi3", "phi4", "phi5",
                      "theta0", "theta1", "theta3", "theta4", "lam")
        )

    def test_census(self):
        p = counted(RATIONAL)
        compute_intermediates(Quaternion(1, 2, 3, 4), p)
        assert p.ledger.as_dict() == {
            "mul": 0, "square": 10, "addsub": 11, "double": 0, "halve": 0
        }

    @given(quaternions)
    def test_lambda_is_norm_squared(self, q):
        inter = compute_intermediates(q, RATIONAL)
        assert inter.lam == norm_squared(q, RATIONAL)

    @given(quaternions)
    def test_nonnegative_fields(self, q):
        inter = compute_intermediates(q, RATIONAL)
        assert min(inter.phi0, inter.phi1, inter.phi2,
                   inter.phi3, inter.phi4, inter.phi5) >= 0
        assert inter.theta0 >= 0 and inter.theta1 >= 0 and inter.lam >= 0


class TestLoganKernel:
    def test_integer_example(self):
        m = rotmat_logan(Quaternion(1, 2, 3, 4), RATIONAL)
        assert m.rows == ((-20, 4, 22), (20, -10, 20), (10, 28, 4))
        # spot-check the reuse identity c01 = (phi0 - phi1) + c22
        assert m.entry(0, 1) == (25 - 25) + m.entry(2, 2)

    def test_identity_quaternion(self):
        m = rotmat_logan(Quaternion(1, 0, 0, 0), RATIONAL)
        assert m.rows == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_half_turn_about_x(self):
        m = rotmat_logan(Quaternion(0, 1, 0, 0), RATIONAL)
        assert m.rows == ((1, 0, 0), (0, -1, 0), (0, 0, -1))

    @given(quaternions)
    def test_equals_direct_kernel(self, q):
        assert rotmat_logan(q, RATIONAL).flat() == rotmat_direct(q, RATIONAL).flat()

    @given(quaternions)
    def test_diagonal_and_reuse_identities(self, q):
        inter = compute_intermediates(q, RATIONAL)
        m = rotmat_logan(q, RATIONAL)
        assert m.entry(0, 0) == inter.theta3 + inter.theta4
        assert m.entry(1, 1) == inter.theta4 - inter.theta3
        assert m.entry(2, 2) == inter.theta1 - inter.theta0
        assert m.entry(0, 1) == (inter.phi0 - inter.phi1) + m.entry(2, 2)
        assert m.entry(1, 2) == (inter.phi2 - inter.phi3) + m.entry(0, 0)
        assert m.entry(2, 0) == (inter.phi4 - inter.phi5) + m.entry(1, 1)
        assert m.entry(1, 0) == (inter.phi0 + inter.phi1) - inter.lam
        assert m.entry(2, 1) == (inter.phi2 + inter.phi3) - inter.lam
        assert m.entry(0, 2) == (inter.phi4 + inter.phi5) - inter.lam


class TestCensus:
    def test_matches_contract(self):
        ledger = op_census_logan()
        assert ledger.as_dict() == LOGAN_CENSUS
        assert ledger.addsub_count <= 29

    def test_no_multiply_double_or_halve_for_any_input(self):
        for q in (Quaternion(0, 0, 0, 0), Quaternion(5, -3, 2, 8)):
            p = counted(RATIONAL)
            rotmat_logan(q, p)
            assert p.ledger.mul_count == 0
            assert p.ledger.double_count == 0
            assert p.ledger.halve_count == 0
            assert p.ledger.square_count == 10
