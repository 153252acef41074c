"""quatrot: quaternion-to-rotation-matrix kernels, with and without multipliers.

The direct kernel computes the direction cosine matrix the usual way; the
Logan kernel trades every multiplication for squarings via the quarter-square
identity. A symbolic polynomial oracle proves them identical, counting
profiles instrument exact op censuses, a bit-true fixed-point profile models
hardware word widths, and the datapath module compiles either kernel into a
scheduled, costed arithmetic DAG.
"""

from .logan import (
    LoganIntermediates,
    compute_intermediates,
    logan_double_product,
    logan_product,
    op_census_logan,
    rotmat_logan,
)
from .polynomial import (
    Polynomial4,
    grid_equivalence,
    printed_errata_report,
    verify_entrywise_identity,
)
from .profiles import (
    FLOAT64,
    RATIONAL,
    CountingProfile,
    FixedPointFormat,
    FixedPointProfile,
    Float64Profile,
    OpCountLedger,
    RationalProfile,
    ScalarProfile,
    counted,
    fx_quantize,
    parse_q_format,
)
from .quaternion import (
    Quaternion,
    RotationMatrix3,
    ZeroQuaternionError,
    norm_squared,
    normalize,
    op_census_direct,
    rotmat_direct,
)
from .transformer import QuaternionToRotationMatrix

__version__ = "0.1.0"

__all__ = [
    "CountingProfile",
    "FixedPointFormat",
    "FixedPointProfile",
    "Float64Profile",
    "FLOAT64",
    "LoganIntermediates",
    "OpCountLedger",
    "Polynomial4",
    "Quaternion",
    "QuaternionToRotationMatrix",
    "RATIONAL",
    "RationalProfile",
    "RotationMatrix3",
    "ScalarProfile",
    "ZeroQuaternionError",
    "compute_intermediates",
    "counted",
    "fx_quantize",
    "grid_equivalence",
    "logan_double_product",
    "logan_product",
    "norm_squared",
    "normalize",
    "op_census_direct",
    "op_census_logan",
    "parse_q_format",
    "printed_errata_report",
    "rotmat_direct",
    "rotmat_logan",
    "verify_entrywise_identity",
]
