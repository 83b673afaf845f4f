"""Scaled real numbers and evaluation results.

Quantities such as ``e^x K_nu(x)`` are fine in double precision, but the
unscaled values, and products like ``e^{beta t} t^p I_nu(t)``, leave the
float range long before ``x`` reaches the working limits.  ``ScaledReal``
stores ``mantissa * 2**exponent`` with a normalised mantissa so that round
trips through ``float`` are exact whenever the value fits.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import total_ordering

# Cody-Waite split of ln 2; ``n * LN2_HI`` is exact for |n| < 2**20.
LN2_HI = 6.93147180369123816490e-01
LN2_LO = 1.90821492927058770002e-10
LN2 = math.log(2.0)

EPS = 2.220446049250313e-16


class DomainError(ValueError):
    """Raised by internal kernels when an argument lies outside the supported domain."""


class Status(str, enum.Enum):
    OK = "ok"
    REDUCED_ACCURACY = "reduced_accuracy"
    OUT_OF_DOMAIN = "out_of_domain"


@total_ordering
@dataclass(frozen=True)
class ScaledReal:
    """A real number ``mantissa * 2**exponent``.

    The mantissa is kept in ``[0.5, 1)`` in absolute value (or is zero), so it
    always lies inside the conventional ``[0.1, 10)`` band.  ``log_offset`` is
    the same exponent expressed in natural-log units.
    """

    mantissa: float
    exponent: int = 0

    def __post_init__(self) -> None:
        m = float(self.mantissa)
        if m == 0.0 or not math.isfinite(m):
            object.__setattr__(self, "mantissa", m)
            object.__setattr__(self, "exponent", 0)
            return
        fm, fe = math.frexp(m)
        object.__setattr__(self, "mantissa", fm)
        object.__setattr__(self, "exponent", int(self.exponent) + fe)

    # construction -------------------------------------------------------

    @classmethod
    def from_float(cls, value: float) -> "ScaledReal":
        return cls(value, 0)

    @classmethod
    def from_log(cls, log_abs: float, sign: float = 1.0) -> "ScaledReal":
        """Build ``sign * exp(log_abs)`` without overflow."""
        if log_abs == -math.inf or sign == 0:
            return cls(0.0)
        if not math.isfinite(log_abs):
            return cls(math.copysign(log_abs, sign) if log_abs > 0 else math.nan)
        n = round(log_abs / LN2)
        r = (log_abs - n * LN2_HI) - n * LN2_LO
        return cls(math.copysign(math.exp(r), sign), n)

    @classmethod
    def scaled(cls, mantissa: float, log_offset: float) -> "ScaledReal":
        """``mantissa * exp(log_offset)`` with the offset applied exactly in binary."""
        if mantissa == 0.0:
            return cls(0.0)
        n = round(log_offset / LN2)
        r = (log_offset - n * LN2_HI) - n * LN2_LO
        return cls(mantissa * math.exp(r), n)

    # views --------------------------------------------------------------

    @property
    def log_offset(self) -> float:
        return self.exponent * LN2

    def __float__(self) -> float:
        if self.mantissa == 0.0 or not math.isfinite(self.mantissa):
            return self.mantissa
        try:
            return math.ldexp(self.mantissa, self.exponent)
        except OverflowError:
            return math.copysign(math.inf, self.mantissa)

    def log(self) -> float:
        """Natural log of the absolute value."""
        if self.mantissa == 0.0:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.exponent * LN2

    @property
    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    def is_finite(self) -> bool:
        return math.isfinite(self.mantissa)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "ScaledReal":
        if isinstance(other, ScaledReal):
            return other
        return ScaledReal(float(other))

    def __mul__(self, other) -> "ScaledReal":
        o = self._coerce(other)
        return ScaledReal(self.mantissa * o.mantissa, self.exponent + o.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledReal":
        o = self._coerce(other)
        return ScaledReal(self.mantissa / o.mantissa, self.exponent - o.exponent)

    def __rtruediv__(self, other) -> "ScaledReal":
        return self._coerce(other) / self

    def __add__(self, other) -> "ScaledReal":
        o = self._coerce(other)
        if self.mantissa == 0.0:
            return o
        if o.mantissa == 0.0:
            return self
        e = max(self.exponent, o.exponent)
        m = math.ldexp(self.mantissa, self.exponent - e) + math.ldexp(o.mantissa, o.exponent - e)
        return ScaledReal(m, e)

    __radd__ = __add__

    def __neg__(self) -> "ScaledReal":
        return ScaledReal(-self.mantissa, self.exponent)

    def __sub__(self, other) -> "ScaledReal":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ScaledReal":
        return self._coerce(other) - self

    def __abs__(self) -> "ScaledReal":
        return ScaledReal(abs(self.mantissa), self.exponent)

    def __pow__(self, p: float) -> "ScaledReal":
        if self.mantissa <= 0.0:
            return ScaledReal(float(self) ** p)
        return ScaledReal.from_log(p * self.log())

    def times_exp(self, log_factor: float) -> "ScaledReal":
        """Multiply by ``exp(log_factor)``."""
        return self * ScaledReal.scaled(1.0, log_factor)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (ScaledReal, int, float)):
            return NotImplemented
        o = self._coerce(other)
        return self.mantissa == o.mantissa and self.exponent == o.exponent

    def __hash__(self) -> int:
        return hash((self.mantissa, self.exponent))

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        return (self - o).mantissa < 0.0

    def __repr__(self) -> str:
        return f"ScaledReal({self.mantissa!r}, {self.exponent})"

    def __str__(self) -> str:
        return format_scaled(self)


def scaled_sum(values) -> ScaledReal:
    """Sum an iterable of ScaledReal values on a common exponent."""
    vals = [v for v in values if v.mantissa != 0.0]
    if not vals:
        return ScaledReal(0.0)
    e = max(v.exponent for v in vals)
    return ScaledReal(math.fsum(math.ldexp(v.mantissa, v.exponent - e) for v in vals), e)


def format_scaled(v: ScaledReal, digits: int = 12) -> str:
    """Decimal rendering that works beyond the float range."""
    f = float(v)
    if math.isfinite(f) and (f == 0.0 or 1e-300 < abs(f) < 1e300):
        return f"{f:.{digits}g}"
    if not v.is_finite():
        return str(v.mantissa)
    log10 = v.log() / math.log(10.0)
    k = math.floor(log10)
    m = v.sign * 10.0 ** (log10 - k)
    return f"{m:.{digits - 1}f}e{k:+d}"


@dataclass(frozen=True)
class EvalResult:
    """A value with an absolute error estimate and a status flag."""

    value: ScaledReal
    err: ScaledReal
    status: Status = Status.OK

    @property
    def abs_err(self) -> float:
        return float(self.err)

    @property
    def rel_err(self) -> float:
        if self.value.mantissa == 0.0:
            return 0.0 if self.err.mantissa == 0.0 else math.inf
        return float(self.err / abs(self.value))

    def __float__(self) -> float:
        return float(self.value)

    @property
    def ok(self) -> bool:
        return self.status is Status.OK

    @classmethod
    def build(cls, value: ScaledReal, rel_err: float, ok_tol: float = 1e-12) -> "EvalResult":
        """Attach a relative error estimate; flag reduced accuracy above ``ok_tol``."""
        err = abs(value) * rel_err
        status = Status.OK if rel_err <= ok_tol else Status.REDUCED_ACCURACY
        return cls(value, err, status)

    @classmethod
    def out_of_domain(cls) -> "EvalResult":
        return cls(ScaledReal(math.nan), ScaledReal(math.nan), Status.OUT_OF_DOMAIN)
