from .scalar import ONE, ZERO, Scalar, vq
from .laurent import LaurentPoly, q_shift
from .qseries import QSeries, pochhammer_truncated
from .parse import parse_scalar, q_denominator

__all__ = [
    "ONE",
    "ZERO",
    "Scalar",
    "vq",
    "LaurentPoly",
    "q_shift",
    "QSeries",
    "pochhammer_truncated",
    "parse_scalar",
    "q_denominator",
]
