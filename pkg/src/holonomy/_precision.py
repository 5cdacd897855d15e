"""Working-precision settings shared by every module.

All high-precision arithmetic goes through the global :data:`mpmath.mp`
context.  The default is 128 mantissa bits; ``HOLONOMY_PRECISION_BITS``
overrides it at import time and :func:`set_precision` at runtime.
Tolerances are expressed as "decimal digits at 128 bits" and scale
linearly with the configured precision.
"""

from __future__ import annotations

import contextlib
import os

import mpmath
from mpmath import mp, mpf

DEFAULT_PRECISION_BITS = 128
MIN_PRECISION_BITS = 64


def _env_precision() -> int:
    raw = os.environ.get("HOLONOMY_PRECISION_BITS")
    if raw is None:
        return DEFAULT_PRECISION_BITS
    bits = int(raw)
    if bits < MIN_PRECISION_BITS:
        raise ValueError(f"HOLONOMY_PRECISION_BITS must be >= {MIN_PRECISION_BITS}")
    return bits


def set_precision(bits: int) -> None:
    if bits < MIN_PRECISION_BITS:
        raise ValueError(f"precision must be >= {MIN_PRECISION_BITS} bits")
    mp.prec = bits


def precision_bits() -> int:
    return mp.prec


@contextlib.contextmanager
def working_precision(bits: int):
    with mp.workprec(bits):
        yield


def tol(digits_at_default: float) -> mpf:
    """``10**-digits`` at 128 bits, rescaled to the current precision."""
    return mpf(10) ** (-digits_at_default * mp.prec / DEFAULT_PRECISION_BITS)


def ulp() -> mpf:
    return mpf(2) ** (-mp.prec)


def decimal_places() -> int:
    # enough places to round-trip the mantissa
    return int(mp.prec * 0.30103) + 2


def fmt_decimal(x, places: int | None = None) -> str:
    """Fixed-point decimal string, never scientific notation."""
    if places is None:
        places = decimal_places()
    x = mpf(x)
    if not mpmath.isfinite(x):
        raise ValueError(f"cannot format non-finite value {x}")
    n = int(mpmath.nint(x * mpf(10) ** places))
    sign = "-" if n < 0 else ""
    digits = str(abs(n)).rjust(places + 1, "0")
    head, tail = digits[:-places], digits[-places:]
    if n == 0:
        sign = ""
    return f"{sign}{head}.{tail}" if places else f"{sign}{head}"


mp.prec = _env_precision()
