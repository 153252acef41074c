"""Fixed-point error characterization of both kernels across Q-formats.

Each sampled unit quaternion is quantized into the format under test, run
bit-true through the kernel, and compared entrywise against the binary64
direct kernel evaluated on the *quantized* inputs. Comparing on quantized
inputs isolates arithmetic rounding from input quantization, which is
reported as its own column.
"""

from __future__ import annotations

import csv as _csv
import io
from dataclasses import dataclass, field

import numpy as np

from .batch import FIXED_KERNELS, FixedBatch, direct_batch
from .profiles import FixedPointFormat

KERNEL_NAMES = ("direct", "logan")


def sample_unit_quaternions(n: int, seed: int) -> np.ndarray:
    """n quaternions uniform on the unit 3-sphere, deterministic per seed."""
    if n < 1:
        raise ValueError("sample count must be >= 1")
    rng = np.random.default_rng(seed)
    samples = rng.standard_normal((n, 4))
    norms = np.linalg.norm(samples, axis=1)
    while np.any(norms == 0.0):  # pragma: no cover - essentially impossible
        bad = norms == 0.0
        samples[bad] = rng.standard_normal((int(bad.sum()), 4))
        norms = np.linalg.norm(samples, axis=1)
    return samples / norms[:, None]


@dataclass(frozen=True)
class ErrorRow:
    fmt: FixedPointFormat
    kernel: str
    max_abs_error: float
    mean_abs_error: float
    saturation_events: int
    input_quantization_max: float

    def as_dict(self) -> dict:
        return {
            "format": str(self.fmt),
            "kernel": self.kernel,
            "max_abs_error": self.max_abs_error,
            "mean_abs_error": self.mean_abs_error,
            "saturations": self.saturation_events,
            "input_quantization_max": self.input_quantization_max,
        }


def max_error(kernel: str, fmt: FixedPointFormat, samples: int, seed: int) -> ErrorRow:
    """One sweep row: bit-true kernel vs binary64 direct reference."""
    if kernel not in FIXED_KERNELS:
        raise ValueError(f"unknown kernel {kernel!r}")
    q = sample_unit_quaternions(samples, seed)

    engine = FixedBatch(fmt)
    raw = engine.quantize(q)
    quantized = engine.to_float(raw)  # exact dequantization
    input_quant_max = float(np.max(np.abs(quantized - q)))

    reference = direct_batch(quantized)
    fixed_raw = FIXED_KERNELS[kernel](raw, engine)
    err = np.abs(engine.to_float(fixed_raw) - reference)
    return ErrorRow(
        fmt=fmt,
        kernel=kernel,
        max_abs_error=float(err.max()),
        mean_abs_error=float(err.mean()),
        saturation_events=engine.saturations,
        input_quantization_max=input_quant_max,
    )


@dataclass(frozen=True)
class SweepConfig:
    frac_bits: tuple = (8, 12, 16, 20)
    int_bits: int = 3
    samples: int = 10000
    seed: int = 0
    kernel: str = "both"

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.kernel not in KERNEL_NAMES + ("both",):
            raise ValueError(f"kernel must be direct, logan, or both, got {self.kernel!r}")
        for f in self.frac_bits:
            FixedPointFormat(1 + self.int_bits + f, f)  # validates

    def formats(self) -> tuple:
        return tuple(
            FixedPointFormat(1 + self.int_bits + f, f) for f in self.frac_bits
        )

    def kernels(self) -> tuple:
        return KERNEL_NAMES if self.kernel == "both" else (self.kernel,)


@dataclass(frozen=True)
class ErrorReport:
    rows: tuple

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = _csv.writer(buf)
        writer.writerow(
            ["format", "kernel", "max_abs_error", "mean_abs_error", "saturations"]
        )
        for row in self.rows:
            writer.writerow(
                [
                    str(row.fmt),
                    row.kernel,
                    repr(row.max_abs_error),
                    repr(row.mean_abs_error),
                    row.saturation_events,
                ]
            )
        return buf.getvalue()

    def render_table(self) -> str:
        headers = ["format", "kernel", "max_abs_error", "mean_abs_error", "saturations"]
        table = [headers]
        for row in self.rows:
            table.append(
                [
                    str(row.fmt),
                    row.kernel,
                    f"{row.max_abs_error:.3e}",
                    f"{row.mean_abs_error:.3e}",
                    str(row.saturation_events),
                ]
            )
        widths = [max(len(r[i]) for r in table) for i in range(len(headers))]
        lines = [
            "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip()
            for r in table
        ]
        return "\n".join(lines) + "\n"


def sweep(cfg: SweepConfig) -> ErrorReport:
    """Full format x kernel cross product; rows ordered by (frac_bits, kernel)."""
    rows = []
    for fmt in cfg.formats():
        for kernel in cfg.kernels():
            rows.append(max_error(kernel, fmt, cfg.samples, cfg.seed))
    return ErrorReport(tuple(rows))
