"""Scalar arithmetic profiles.

Every kernel in this package is written once against the profile interface
and evaluated under exact rationals, binary64 floats, bit-true fixed point,
symbolic polynomials, or an op-counting wrapper, depending on what the
caller passes in.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction


class ScalarProfile:
    """Abstract arithmetic profile.

    Values are opaque to callers; all arithmetic goes through the profile so
    that a single kernel definition can be counted, quantized, or expanded
    symbolically.
    """

    name = "abstract"

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def square(self, a):
        raise NotImplementedError

    def double(self, a):
        raise NotImplementedError

    def halve(self, a):
        raise NotImplementedError

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def from_real(self, x):
        """Convert an int/float/Fraction into this profile's value set."""
        raise NotImplementedError

    def to_float(self, a) -> float:
        return float(a)


class RationalProfile(ScalarProfile):
    """Exact arithmetic over fractions.Fraction (ints are accepted)."""

    name = "rational"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def square(self, a):
        return a * a

    def double(self, a):
        return a + a

    def halve(self, a):
        return Fraction(a) / 2

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def from_real(self, x):
        return Fraction(x)


class Float64Profile(ScalarProfile):
    """IEEE binary64 arithmetic."""

    name = "f64"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def square(self, a):
        return a * a

    def double(self, a):
        return a + a

    def halve(self, a):
        return a * 0.5

    @property
    def zero(self):
        return 0.0

    @property
    def one(self):
        return 1.0

    def from_real(self, x):
        return float(x)


_Q_FORMAT_RE = re.compile(r"^Q(\d+)\.(\d+)$")


@dataclass(frozen=True)
class FixedPointFormat:
    """Two's-complement Q-format: 1 sign bit, (total - 1 - frac) integer bits.

    Rounding is round-to-nearest-even; overflow saturates by default (set
    overflow="wrap" for modular wraparound).
    """

    total_bits: int
    frac_bits: int
    overflow: str = "saturate"

    def __post_init__(self):
        if self.total_bits < 1:
            raise ValueError(f"total_bits must be >= 1, got {self.total_bits}")
        if not 0 <= self.frac_bits <= self.total_bits - 1:
            raise ValueError(
                f"frac_bits must be in [0, {self.total_bits - 1}], got {self.frac_bits}"
            )
        if self.overflow not in ("saturate", "wrap"):
            raise ValueError(f"unknown overflow policy {self.overflow!r}")

    @property
    def int_bits(self) -> int:
        return self.total_bits - 1 - self.frac_bits

    @property
    def raw_min(self) -> int:
        return -(1 << (self.total_bits - 1))

    @property
    def raw_max(self) -> int:
        return (1 << (self.total_bits - 1)) - 1

    @property
    def resolution(self) -> Fraction:
        return Fraction(1, 1 << self.frac_bits)

    @property
    def value_min(self) -> Fraction:
        return self.raw_min * self.resolution

    @property
    def value_max(self) -> Fraction:
        return self.raw_max * self.resolution

    def to_fraction(self, raw: int) -> Fraction:
        return Fraction(raw, 1 << self.frac_bits)

    def to_float(self, raw: int) -> float:
        return raw / (1 << self.frac_bits)

    def __str__(self) -> str:
        return f"Q{self.int_bits}.{self.frac_bits}"


def parse_q_format(text: str, overflow: str = "saturate") -> FixedPointFormat:
    """Parse "Q<int>.<frac>" (e.g. Q3.12 -> 1 sign + 3 integer + 12 fraction)."""
    m = _Q_FORMAT_RE.match(text.strip())
    if m is None:
        raise ValueError(f"invalid Q-format string {text!r}; expected e.g. Q3.12")
    int_bits, frac_bits = int(m.group(1)), int(m.group(2))
    return FixedPointFormat(1 + int_bits + frac_bits, frac_bits, overflow)


def _round_half_even(num: int, den: int) -> int:
    # Round num/den to the nearest integer, ties to even. den > 0.
    q, r = divmod(num, den)
    twice = 2 * r
    if twice > den or (twice == den and q & 1):
        q += 1
    return q


def _fit(raw: int, fmt: FixedPointFormat) -> tuple[int, bool]:
    if fmt.raw_min <= raw <= fmt.raw_max:
        return raw, False
    if fmt.overflow == "saturate":
        return (fmt.raw_max if raw > fmt.raw_max else fmt.raw_min), True
    span = 1 << fmt.total_bits
    return (raw - fmt.raw_min) % span + fmt.raw_min, True


def fx_quantize(x, fmt: FixedPointFormat) -> tuple[int, bool]:
    """Quantize a real number; returns (raw, overflowed)."""
    scaled = Fraction(x) * (1 << fmt.frac_bits)
    raw = _round_half_even(scaled.numerator, scaled.denominator)
    return _fit(raw, fmt)


def fx_add(a: int, b: int, fmt: FixedPointFormat) -> tuple[int, bool]:
    return _fit(a + b, fmt)


def fx_sub(a: int, b: int, fmt: FixedPointFormat) -> tuple[int, bool]:
    return _fit(a - b, fmt)


def fx_double(a: int, fmt: FixedPointFormat) -> tuple[int, bool]:
    return _fit(a + a, fmt)


def fx_halve(a: int, fmt: FixedPointFormat) -> tuple[int, bool]:
    return _fit(_round_half_even(a, 2), fmt)


def fx_mul(a: int, b: int, fmt: FixedPointFormat) -> tuple[int, bool]:
    # Exact double-width product, then requantize to frac_bits.
    return _fit(_round_half_even(a * b, 1 << fmt.frac_bits), fmt)


def fx_square(a: int, fmt: FixedPointFormat) -> tuple[int, bool]:
    return fx_mul(a, a, fmt)


class FixedPointProfile(ScalarProfile):
    """Bit-true fixed-point profile; values are raw two's-complement ints.

    The profile tallies overflow events in `saturations`. Like an op-count
    ledger, a profile instance is confined to one evaluation context; create
    a fresh instance per concurrent evaluation.
    """

    def __init__(self, fmt: FixedPointFormat):
        self.fmt = fmt
        self.saturations = 0

    @property
    def name(self):
        return f"fixed:{self.fmt}"

    def _note(self, result: tuple[int, bool]) -> int:
        raw, flagged = result
        if flagged:
            self.saturations += 1
        return raw

    def add(self, a, b):
        return self._note(fx_add(a, b, self.fmt))

    def sub(self, a, b):
        return self._note(fx_sub(a, b, self.fmt))

    def mul(self, a, b):
        return self._note(fx_mul(a, b, self.fmt))

    def square(self, a):
        return self._note(fx_square(a, self.fmt))

    def double(self, a):
        return self._note(fx_double(a, self.fmt))

    def halve(self, a):
        return self._note(fx_halve(a, self.fmt))

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        raw, _ = fx_quantize(1, self.fmt)
        return raw

    def from_real(self, x):
        return self._note(fx_quantize(x, self.fmt))

    def to_float(self, a) -> float:
        return self.fmt.to_float(a)


@dataclass
class OpCountLedger:
    """Tally of arithmetic operations performed under a counting profile.

    Halvings get their own field: doublings and halvings are both shift-class
    operations, distinct from true additions.
    """

    mul_count: int = 0
    square_count: int = 0
    addsub_count: int = 0
    double_count: int = 0
    halve_count: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "mul": self.mul_count,
            "square": self.square_count,
            "addsub": self.addsub_count,
            "double": self.double_count,
            "halve": self.halve_count,
        }

    def __str__(self) -> str:
        d = self.as_dict()
        return "{" + ", ".join(f"{k}:{v}" for k, v in d.items()) + "}"


class CountingProfile(ScalarProfile):
    """Delegates to a base profile while tallying every operation."""

    def __init__(self, base: ScalarProfile, ledger: OpCountLedger | None = None):
        self.base = base
        self.ledger = ledger if ledger is not None else OpCountLedger()

    @property
    def name(self):
        return f"counted({self.base.name})"

    def add(self, a, b):
        self.ledger.addsub_count += 1
        return self.base.add(a, b)

    def sub(self, a, b):
        self.ledger.addsub_count += 1
        return self.base.sub(a, b)

    def mul(self, a, b):
        self.ledger.mul_count += 1
        return self.base.mul(a, b)

    def square(self, a):
        self.ledger.square_count += 1
        return self.base.square(a)

    def double(self, a):
        self.ledger.double_count += 1
        return self.base.double(a)

    def halve(self, a):
        self.ledger.halve_count += 1
        return self.base.halve(a)

    @property
    def zero(self):
        return self.base.zero

    @property
    def one(self):
        return self.base.one

    def from_real(self, x):
        return self.base.from_real(x)

    def to_float(self, a) -> float:
        return self.base.to_float(a)


def counted(profile: ScalarProfile) -> CountingProfile:
    """Wrap a profile with a fresh all-zero ledger."""
    return CountingProfile(profile)


RATIONAL = RationalProfile()
FLOAT64 = Float64Profile()
