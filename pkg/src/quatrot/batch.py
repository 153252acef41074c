"""Vectorized numpy implementations of both kernels.

The float64 versions apply the exact same operation order as the scalar
profile kernels, so results are bit-identical element for element. The
fixed-point engine works on raw int64 two's-complement words with the same
round-to-nearest-even / saturate semantics as the scalar profile; parity is
asserted in the test suite.
"""

from __future__ import annotations

import numpy as np

from .profiles import FixedPointFormat


def _check_input(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=np.float64)
    if q.ndim != 2 or q.shape[1] != 4:
        raise ValueError(f"expected an (n, 4) array, got shape {q.shape}")
    return q


def direct_batch(q: np.ndarray) -> np.ndarray:
    """Direct kernel over an (n, 4) float64 array; returns (n, 3, 3)."""
    q = _check_input(q)
    q0, q1, q2, q3 = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    s0, s1, s2, s3 = q0 * q0, q1 * q1, q2 * q2, q3 * q3

    c00 = (s0 + s1) - (s2 + s3)
    c11 = (s0 + s2) - (s1 + s3)
    c22 = (s0 + s3) - (s1 + s2)

    p01, p02, p03 = q0 * q1, q0 * q2, q0 * q3
    p12, p13, p23 = q1 * q2, q1 * q3, q2 * q3

    d01 = p12 - p03
    d02 = p02 + p13
    d10 = p12 + p03
    d12 = p23 - p01
    d20 = p13 - p02
    d21 = p01 + p23

    return _stack(c00, d01 + d01, d02 + d02, d10 + d10, c11, d12 + d12,
                  d20 + d20, d21 + d21, c22)


def logan_batch(q: np.ndarray) -> np.ndarray:
    """Squaring-only kernel over an (n, 4) float64 array; returns (n, 3, 3)."""
    q = _check_input(q)
    q0, q1, q2, q3 = q[:, 0], q[:, 1], q[:, 2], q[:, 3]

    t = q1 + q2
    phi0 = t * t
    t = q0 + q3
    phi1 = t * t
    t = q2 + q3
    phi2 = t * t
    t = q0 + q1
    phi3 = t * t
    t = q1 + q3
    phi4 = t * t
    t = q0 + q2
    phi5 = t * t

    s0, s1, s2, s3 = q0 * q0, q1 * q1, q2 * q2, q3 * q3
    theta0 = s1 + s2
    theta1 = s0 + s3
    theta3 = s1 - s2
    theta4 = s0 - s3
    lam = theta0 + theta1

    c00 = theta3 + theta4
    c11 = theta4 - theta3
    c22 = theta1 - theta0
    c01 = (phi0 - phi1) + c22
    c12 = (phi2 - phi3) + c00
    c20 = (phi4 - phi5) + c11
    c10 = (phi0 + phi1) - lam
    c21 = (phi2 + phi3) - lam
    c02 = (phi4 + phi5) - lam

    return _stack(c00, c01, c02, c10, c11, c12, c20, c21, c22)


def _stack(c00, c01, c02, c10, c11, c12, c20, c21, c22) -> np.ndarray:
    rows = np.stack(
        [
            np.stack([c00, c01, c02], axis=-1),
            np.stack([c10, c11, c12], axis=-1),
            np.stack([c20, c21, c22], axis=-1),
        ],
        axis=-2,
    )
    return rows


class FixedBatch:
    """Bit-true fixed-point ops over int64 raw arrays; tallies saturations.

    Only the saturate overflow policy is implemented here; the scalar profile
    covers wraparound.
    """

    def __init__(self, fmt: FixedPointFormat):
        if fmt.overflow != "saturate":
            raise ValueError("batch engine supports saturate overflow only")
        if fmt.total_bits > 31:
            raise ValueError("batch engine needs total_bits <= 31 for exact int64 products")
        self.fmt = fmt
        self.saturations = 0

    def _fit(self, wide: np.ndarray) -> np.ndarray:
        lo, hi = self.fmt.raw_min, self.fmt.raw_max
        clipped = np.clip(wide, lo, hi)
        self.saturations += int(np.count_nonzero(clipped != wide))
        return clipped

    def quantize(self, x: np.ndarray) -> np.ndarray:
        scaled = np.asarray(x, dtype=np.float64) * float(1 << self.fmt.frac_bits)
        rounded = np.rint(scaled)  # ties to even
        lo, hi = float(self.fmt.raw_min), float(self.fmt.raw_max)
        clipped = np.clip(rounded, lo, hi)
        self.saturations += int(np.count_nonzero(clipped != rounded))
        return clipped.astype(np.int64)

    def to_float(self, raw: np.ndarray) -> np.ndarray:
        return raw.astype(np.float64) / float(1 << self.fmt.frac_bits)

    def _requant(self, wide: np.ndarray) -> np.ndarray:
        f = self.fmt.frac_bits
        floor = wide >> f
        rem = wide - (floor << f)
        half = 1 << (f - 1) if f > 0 else 0
        if f > 0:
            inc = (rem > half) | ((rem == half) & ((floor & 1) == 1))
            floor = floor + inc.astype(np.int64)
        return self._fit(floor)

    def add(self, a, b):
        return self._fit(a + b)

    def sub(self, a, b):
        return self._fit(a - b)

    def square(self, a):
        return self._requant(a.astype(np.int64) * a)

    def mul(self, a, b):
        return self._requant(a.astype(np.int64) * b)

    def double(self, a):
        return self._fit(a + a)


def direct_fx_batch(raw: np.ndarray, engine: FixedBatch) -> np.ndarray:
    """Direct kernel on raw (n, 4) int64 words; returns raw (n, 3, 3)."""
    q0, q1, q2, q3 = raw[:, 0], raw[:, 1], raw[:, 2], raw[:, 3]
    e = engine
    s0, s1, s2, s3 = e.square(q0), e.square(q1), e.square(q2), e.square(q3)

    c00 = e.sub(e.add(s0, s1), e.add(s2, s3))
    c11 = e.sub(e.add(s0, s2), e.add(s1, s3))
    c22 = e.sub(e.add(s0, s3), e.add(s1, s2))

    p01, p02, p03 = e.mul(q0, q1), e.mul(q0, q2), e.mul(q0, q3)
    p12, p13, p23 = e.mul(q1, q2), e.mul(q1, q3), e.mul(q2, q3)

    c01 = e.double(e.sub(p12, p03))
    c02 = e.double(e.add(p02, p13))
    c10 = e.double(e.add(p12, p03))
    c12 = e.double(e.sub(p23, p01))
    c20 = e.double(e.sub(p13, p02))
    c21 = e.double(e.add(p01, p23))

    return _stack(c00, c01, c02, c10, c11, c12, c20, c21, c22)


def logan_fx_batch(raw: np.ndarray, engine: FixedBatch) -> np.ndarray:
    """Squaring-only kernel on raw (n, 4) int64 words; returns raw (n, 3, 3)."""
    q0, q1, q2, q3 = raw[:, 0], raw[:, 1], raw[:, 2], raw[:, 3]
    e = engine

    phi0 = e.square(e.add(q1, q2))
    phi1 = e.square(e.add(q0, q3))
    phi2 = e.square(e.add(q2, q3))
    phi3 = e.square(e.add(q0, q1))
    phi4 = e.square(e.add(q1, q3))
    phi5 = e.square(e.add(q0, q2))

    s0, s1, s2, s3 = e.square(q0), e.square(q1), e.square(q2), e.square(q3)
    theta0 = e.add(s1, s2)
    theta1 = e.add(s0, s3)
    theta3 = e.sub(s1, s2)
    theta4 = e.sub(s0, s3)
    lam = e.add(theta0, theta1)

    c00 = e.add(theta3, theta4)
    c11 = e.sub(theta4, theta3)
    c22 = e.sub(theta1, theta0)
    c01 = e.add(e.sub(phi0, phi1), c22)
    c12 = e.add(e.sub(phi2, phi3), c00)
    c20 = e.add(e.sub(phi4, phi5), c11)
    c10 = e.sub(e.add(phi0, phi1), lam)
    c21 = e.sub(e.add(phi2, phi3), lam)
    c02 = e.sub(e.add(phi4, phi5), lam)

    return _stack(c00, c01, c02, c10, c11, c12, c20, c21, c22)


FLOAT_KERNELS = {"direct": direct_batch, "logan": logan_batch}
FIXED_KERNELS = {"direct": direct_fx_batch, "logan": logan_fx_batch}
