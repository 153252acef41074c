"""Multiplication-free kernel via Logan's quarter-square identity.

a*b = ((a+b)^2 - a^2 - b^2) / 2, so every product in the rotation matrix can
be traded for squarings and additions. The matrix needs doubled products
2*a*b, so the final halving drops out and the whole kernel runs on squarers
and adders alone: 10 squarings and 26 additions/subtractions, under the
published bound of 29.

The published intermediate table contains typos (theta3 printed with q0^2
instead of q1^2, and several off-diagonal assignments permuted); the
assembly below is the corrected version, proved entrywise against the direct
kernel by the symbolic module. See ERRATA.md.
"""

from __future__ import annotations

from dataclasses import dataclass

from .profiles import FLOAT64, RATIONAL, OpCountLedger, ScalarProfile, counted
from .quaternion import CensusMismatchError, Quaternion, RotationMatrix3


def logan_product(a, b, profile: ScalarProfile = FLOAT64):
    """a*b as ((a+b)^2 - a^2 - b^2)/2: 3 squarings, 2 subs, 1 add, 1 halve."""
    p = profile
    return p.halve(p.sub(p.sub(p.square(p.add(a, b)), p.square(a)), p.square(b)))


def logan_double_product(a, b, profile: ScalarProfile = FLOAT64):
    """2*a*b as (a+b)^2 - a^2 - b^2: 3 squarings, 3 add/subs, no shift."""
    p = profile
    return p.sub(p.sub(p.square(p.add(a, b)), p.square(a)), p.square(b))


@dataclass(frozen=True)
class LoganIntermediates:
    """Shared values: squares of pairwise sums (phi), sums/differences of
    coefficient squares (theta), and the squared norm (lam)."""

    phi0: object  # (q1+q2)^2
    phi1: object  # (q0+q3)^2
    phi2: object  # (q2+q3)^2
    phi3: object  # (q0+q1)^2
    phi4: object  # (q1+q3)^2
    phi5: object  # (q0+q2)^2
    theta0: object  # q1^2 + q2^2
    theta1: object  # q0^2 + q3^2
    theta3: object  # q1^2 - q2^2  (corrected; printed source has q0^2 - q2^2)
    theta4: object  # q0^2 - q3^2
    lam: object  # theta0 + theta1 == norm_squared(q)


def compute_intermediates(
    q: Quaternion, profile: ScalarProfile = FLOAT64
) -> LoganIntermediates:
    """All shared intermediates: 10 squarings, 11 add/subs, no multiplies."""
    p = profile
    q0, q1, q2, q3 = q.components()

    phi0 = p.square(p.add(q1, q2))
    phi1 = p.square(p.add(q0, q3))
    phi2 = p.square(p.add(q2, q3))
    phi3 = p.square(p.add(q0, q1))
    phi4 = p.square(p.add(q1, q3))
    phi5 = p.square(p.add(q0, q2))

    s0, s1, s2, s3 = p.square(q0), p.square(q1), p.square(q2), p.square(q3)

    theta0 = p.add(s1, s2)
    theta1 = p.add(s0, s3)
    theta3 = p.sub(s1, s2)
    theta4 = p.sub(s0, s3)
    lam = p.add(theta0, theta1)

    return LoganIntermediates(
        phi0, phi1, phi2, phi3, phi4, phi5, theta0, theta1, theta3, theta4, lam
    )


def assemble(inter: LoganIntermediates, profile: ScalarProfile = FLOAT64) -> RotationMatrix3:
    """Assemble the nine entries from the intermediates: 15 add/subs.

    The diagonal entries are reused inside the difference-form off-diagonals,
    and the three sum-form off-diagonals share lam; that sharing is what
    brings the total from the published 29 additions down to 26.
    """
    p = profile

    c00 = p.add(inter.theta3, inter.theta4)
    c11 = p.sub(inter.theta4, inter.theta3)
    c22 = p.sub(inter.theta1, inter.theta0)

    c01 = p.add(p.sub(inter.phi0, inter.phi1), c22)
    c12 = p.add(p.sub(inter.phi2, inter.phi3), c00)
    c20 = p.add(p.sub(inter.phi4, inter.phi5), c11)

    c10 = p.sub(p.add(inter.phi0, inter.phi1), inter.lam)
    c21 = p.sub(p.add(inter.phi2, inter.phi3), inter.lam)
    c02 = p.sub(p.add(inter.phi4, inter.phi5), inter.lam)

    return RotationMatrix3(((c00, c01, c02), (c10, c11, c12), (c20, c21, c22)))


def rotmat_logan(q: Quaternion, profile: ScalarProfile = FLOAT64) -> RotationMatrix3:
    """Multiplication-free kernel: 10 squarings, 26 add/subs, no shifts."""
    return assemble(compute_intermediates(q, profile), profile)


LOGAN_CENSUS = {"mul": 0, "square": 10, "addsub": 26, "double": 0, "halve": 0}
LOGAN_ADDSUB_BOUND = 29  # published figure; our assembly shares more


def op_census_logan() -> OpCountLedger:
    """Count one Logan-kernel evaluation; raises if the tally is off contract."""
    p = counted(RATIONAL)
    rotmat_logan(Quaternion(1, 2, 3, 4), p)
    got = p.ledger.as_dict()
    ok = (
        got["mul"] == 0
        and got["double"] == 0
        and got["halve"] == 0
        and got["square"] == 10
        and got["addsub"] <= LOGAN_ADDSUB_BOUND
    )
    if not ok or got != LOGAN_CENSUS:
        raise CensusMismatchError(
            f"logan kernel census {got} != contract {LOGAN_CENSUS} "
            f"(addsub bound {LOGAN_ADDSUB_BOUND})"
        )
    return p.ledger
