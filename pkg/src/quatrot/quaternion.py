"""Quaternion and rotation-matrix types plus the direct (product-form) kernel.

The direct kernel evaluates the direction cosine matrix the conventional way:
6 general multiplications, 4 squarings, 15 additions/subtractions and 6
doublings (shifts). Non-unit quaternions are accepted everywhere; the result
then scales with the squared norm, which keeps exact integer testing possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .profiles import FLOAT64, RATIONAL, OpCountLedger, ScalarProfile, counted

ENTRY_NAMES = ("c00", "c01", "c02", "c10", "c11", "c12", "c20", "c21", "c22")


class CensusMismatchError(AssertionError):
    """A kernel's operation count disagrees with its contract."""


class ZeroQuaternionError(ValueError):
    """Normalization was requested for the zero quaternion."""


@dataclass(frozen=True)
class Quaternion:
    """Scalar part q0, vector part (q1, q2, q3). Components are profile values."""

    q0: object
    q1: object
    q2: object
    q3: object

    @classmethod
    def from_iterable(cls, values) -> "Quaternion":
        q0, q1, q2, q3 = values
        return cls(q0, q1, q2, q3)

    def components(self) -> tuple:
        return (self.q0, self.q1, self.q2, self.q3)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.q0, -self.q1, -self.q2, -self.q3)


@dataclass(frozen=True)
class RotationMatrix3:
    """Row-major 3x3 matrix of profile values."""

    rows: tuple

    def __post_init__(self):
        if len(self.rows) != 3 or any(len(r) != 3 for r in self.rows):
            raise ValueError("RotationMatrix3 requires a 3x3 row structure")

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def flat(self) -> tuple:
        return tuple(v for row in self.rows for v in row)

    def entries(self) -> dict:
        return dict(zip(ENTRY_NAMES, self.flat()))

    def map(self, fn) -> "RotationMatrix3":
        return RotationMatrix3(tuple(tuple(fn(v) for v in row) for row in self.rows))


def norm_squared(q: Quaternion, profile: ScalarProfile = FLOAT64):
    """q0^2 + q1^2 + q2^2 + q3^2 (4 squarings, 3 additions)."""
    p = profile
    return p.add(
        p.add(p.square(q.q0), p.square(q.q1)),
        p.add(p.square(q.q2), p.square(q.q3)),
    )


def normalize(q: Quaternion) -> Quaternion:
    """Scale a float quaternion to unit norm. Zero quaternion is a domain error."""
    ns = float(q.q0) ** 2 + float(q.q1) ** 2 + float(q.q2) ** 2 + float(q.q3) ** 2
    if ns == 0.0:
        raise ZeroQuaternionError("cannot normalize the zero quaternion")
    inv = 1.0 / math.sqrt(ns)
    return Quaternion(
        float(q.q0) * inv, float(q.q1) * inv, float(q.q2) * inv, float(q.q3) * inv
    )


def rotmat_direct(q: Quaternion, profile: ScalarProfile = FLOAT64) -> RotationMatrix3:
    """Direct product-form kernel.

    Diagonal entries combine the four coefficient squares in balanced trees;
    off-diagonal entries are doubled sums/differences of the six pairwise
    products, so a counting profile reads {mul:6, square:4, addsub:15,
    double:6}.
    """
    p = profile
    q0, q1, q2, q3 = q.components()

    s0, s1, s2, s3 = p.square(q0), p.square(q1), p.square(q2), p.square(q3)

    c00 = p.sub(p.add(s0, s1), p.add(s2, s3))
    c11 = p.sub(p.add(s0, s2), p.add(s1, s3))
    c22 = p.sub(p.add(s0, s3), p.add(s1, s2))

    p01 = p.mul(q0, q1)
    p02 = p.mul(q0, q2)
    p03 = p.mul(q0, q3)
    p12 = p.mul(q1, q2)
    p13 = p.mul(q1, q3)
    p23 = p.mul(q2, q3)

    c01 = p.double(p.sub(p12, p03))
    c02 = p.double(p.add(p02, p13))
    c10 = p.double(p.add(p12, p03))
    c12 = p.double(p.sub(p23, p01))
    c20 = p.double(p.sub(p13, p02))
    c21 = p.double(p.add(p01, p23))

    return RotationMatrix3(((c00, c01, c02), (c10, c11, c12), (c20, c21, c22)))


DIRECT_CENSUS = {"mul": 6, "square": 4, "addsub": 15, "double": 6, "halve": 0}


def op_census_direct() -> OpCountLedger:
    """Count one direct-kernel evaluation; raises if the tally is off contract."""
    p = counted(RATIONAL)
    rotmat_direct(Quaternion(1, 2, 3, 4), p)
    got = p.ledger.as_dict()
    if got != DIRECT_CENSUS:
        raise CensusMismatchError(
            f"direct kernel census {got} != contract {DIRECT_CENSUS}"
        )
    return p.ledger
