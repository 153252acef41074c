from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quatrot.logan import logan_product
from quatrot.profiles import (
    FLOAT64,
    RATIONAL,
    CountingProfile,
    FixedPointFormat,
    FixedPointProfile,
    OpCountLedger,
    counted,
    fx_add,
    fx_halve,
    fx_quantize,
    fx_square,
    parse_q_format,
)

Q16_8 = FixedPointFormat(16, 8)
Q8_4 = FixedPointFormat(8, 4)


def oracle_quantize(x, fmt):
    # independent nearest-even quantizer built on Fraction rounding
    scaled = Fraction(x) * (1 << fmt.frac_bits)
    lower = scaled.numerator // scaled.denominator
    candidates = [lower, lower + 1]
    best = min(candidates, key=lambda r: (abs(Fraction(r) - scaled), r % 2))
    best = max(fmt.raw_min, min(fmt.raw_max, best))
    return best


class TestFormat:
    def test_q_format_string_round_trip(self):
        fmt = parse_q_format("Q3.12")
        assert (fmt.total_bits, fmt.frac_bits) == (16, 12)
        assert str(fmt) == "Q3.12"

    def test_range(self):
        assert Q16_8.value_min == -128
        assert Q16_8.value_max == Fraction(32767, 256)

    def test_invalid(self):
        with pytest.raises(ValueError):
            FixedPointFormat(8, 8)
        with pytest.raises(ValueError):
            parse_q_format("Q3-12")
        with pytest.raises(ValueError):
            FixedPointFormat(16, 8, overflow="wibble")


class TestQuantize:
    def test_exact_value(self):
        raw, sat = fx_quantize(0.75, Q16_8)
        assert (raw, sat) == (192, False)

    def test_zero(self):
        for fmt in (Q16_8, Q8_4, parse_q_format("Q3.12")):
            assert fx_quantize(0, fmt) == (0, False)

    def test_in_range_value_is_exact(self):
        raw, sat = fx_quantize(10.0, Q16_8)
        assert (Q16_8.to_float(raw), sat) == (10.0, False)

    def test_saturation_to_max(self):
        raw, sat = fx_quantize(200.0, Q16_8)
        assert sat
        assert Q16_8.to_float(raw) == 127.99609375

    def test_wraparound_mode(self):
        fmt = FixedPointFormat(16, 8, overflow="wrap")
        raw, flagged = fx_quantize(128.0, fmt)
        assert flagged
        assert fmt.to_float(raw) == -128.0

    def test_representable_is_identity(self):
        for raw in range(Q8_4.raw_min, Q8_4.raw_max + 1):
            assert fx_quantize(Q8_4.to_fraction(raw), Q8_4) == (raw, False)

    @given(st.floats(min_value=-120.0, max_value=120.0))
    def test_quantization_error_bound(self, x):
        raw, sat = fx_quantize(x, Q16_8)
        assert not sat
        assert abs(Q16_8.to_fraction(raw) - Fraction(x)) <= Fraction(1, 2**9)

    @given(st.fractions(min_value=-120, max_value=120, max_denominator=10**6))
    def test_matches_independent_oracle(self, x):
        raw, _ = fx_quantize(x, Q16_8)
        assert raw == oracle_quantize(x, Q16_8)


class TestFixedOps:
    def test_square_exact(self):
        raw, _ = fx_quantize(1.5, Q16_8)
        out, sat = fx_square(raw, Q16_8)
        assert Q16_8.to_float(out) == 2.25
        assert not sat

    def test_square_in_range_q8_4(self):
        # 2.5^2 = 6.25 fits in [-8, 7.9375]; oracle: quantize the exact square
        raw, _ = fx_quantize(2.5, Q8_4)
        expected = oracle_quantize(Fraction(2.5) ** 2, Q8_4)
        out, sat = fx_square(raw, Q8_4)
        assert out == expected
        assert Q8_4.to_float(out) == 6.25
        assert not sat

    def test_square_saturates(self):
        raw, _ = fx_quantize(3.0, Q8_4)
        out, sat = fx_square(raw, Q8_4)
        assert sat
        assert Q8_4.to_float(out) == 7.9375

    @given(st.integers(min_value=-2**15, max_value=2**15 - 1))
    def test_add_identity(self, a):
        assert fx_add(a, 0, Q16_8) == (a, False)

    def test_halve_rounds_to_even(self):
        assert fx_halve(3, Q16_8) == (2, False)
        assert fx_halve(5, Q16_8) == (2, False)
        assert fx_halve(-3, Q16_8) == (-2, False)

    def test_profile_counts_saturations(self):
        p = FixedPointProfile(Q8_4)
        a = p.from_real(3.0)
        p.square(a)
        assert p.saturations == 1


class TestCounting:
    def test_fresh_ledger_all_zero(self):
        assert OpCountLedger().as_dict() == {
            "mul": 0, "square": 0, "addsub": 0, "double": 0, "halve": 0
        }

    def test_square_of_sum(self):
        p = counted(RATIONAL)
        p.square(p.add(Fraction(2), Fraction(3)))
        assert p.ledger.as_dict() == {
            "mul": 0, "square": 1, "addsub": 1, "double": 0, "halve": 0
        }

    def test_logan_product_census(self):
        p = counted(RATIONAL)
        assert logan_product(Fraction(3), Fraction(4), p) == 12
        assert p.ledger.as_dict() == {
            "mul": 0, "square": 3, "addsub": 3, "double": 0, "halve": 1
        }

    def test_double_counts_separately(self):
        p = counted(FLOAT64)
        p.double(2.0)
        assert p.ledger.double_count == 1
        assert p.ledger.addsub_count == 0

    @given(st.fractions(max_denominator=100), st.fractions(max_denominator=100))
    def test_counting_is_transparent(self, a, b):
        p = counted(RATIONAL)
        expr = p.sub(p.square(p.add(a, b)), p.mul(a, b))
        bare = RATIONAL.sub(RATIONAL.square(RATIONAL.add(a, b)), RATIONAL.mul(a, b))
        assert expr == bare


class TestExactProfiles:
    @given(st.fractions(max_denominator=1000))
    def test_rational_shift_class_identities(self, a):
        assert RATIONAL.halve(RATIONAL.double(a)) == a
        assert RATIONAL.double(a) == RATIONAL.add(a, a)
        assert RATIONAL.square(a) == RATIONAL.mul(a, a)

    def test_rational_repeatable(self):
        expr = lambda: RATIONAL.square(RATIONAL.add(Fraction(1, 3), Fraction(1, 7)))
        assert expr() == expr()

    def test_constants(self):
        assert RATIONAL.zero == 0 and RATIONAL.one == 1
        assert FLOAT64.zero == 0.0 and FLOAT64.one == 1.0
        p = FixedPointProfile(Q16_8)
        assert p.zero == 0 and p.to_float(p.one) == 1.0
