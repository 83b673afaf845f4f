"""Relative errors of the Struve-Bessel bounds, laid out as two 6x7 tables.

``F_nu(x) = I_nu L_{nu-1} - I_{nu-1} L_nu`` is bracketed by
``L_nu(x) = x^{nu-1} I_{nu+1}(x) / (sqrt(pi) 2^{nu-1} Gamma(nu+1/2))`` and
``U_nu(x) = L_nu(x) {1 + (1 - I_{nu+3}/I_{nu+1}) / (2nu+1)}``.  Table T1
holds ``(F - L)/F`` and T2 holds ``(U - F)/F``.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from importlib import resources

from . import integrals as ig
from . import specfun as sf
from .scaled import ScaledReal

TABLE_NU = (-0.25, 0.0, 2.5, 5.0, 7.5, 10.0)
TABLE_X = (0.5, 5.0, 10.0, 15.0, 25.0, 50.0, 100.0)
COMPARE_BAND = 5e-4
FIXTURE = "paper_tables.csv"


class Table(str, enum.Enum):
    T1 = "T1"
    T2 = "T2"

    @classmethod
    def parse(cls, text: str | int) -> "Table":
        if isinstance(text, cls):
            return text
        s = str(text).strip().upper()
        return cls(s if s.startswith("T") else "T" + s)


@dataclass(frozen=True)
class TableCell:
    table: Table
    nu: float
    x: float
    rel_err: float
    reference: float | None = None

    @property
    def rounded(self) -> float:
        return round4(self.rel_err)

    @property
    def diff(self) -> float | None:
        if self.reference is None:
            return None
        return abs(self.rounded - self.reference)


def round4(v: float) -> float:
    """Round half-even to four decimals, on the decimal expansion of ``v``."""
    return float(Decimal(repr(v)).quantize(Decimal("0.0001"), rounding=ROUND_HALF_EVEN))


def bound_ratios(nu: float, x: float) -> tuple[float, float]:
    """(L/F, U/F) for the Struve-Bessel combination F_nu(x)."""
    f, _ = ig.struve_bessel_f(nu, x)
    i1, _ = sf.ive(nu + 1.0, x)
    pref = math.exp(0.5 * math.log(math.pi) + (nu - 1.0) * math.log(2.0) + math.lgamma(nu + 0.5))
    low = i1.times_exp(x) * ScaledReal.from_log((nu - 1.0) * math.log(x)) / pref
    d, _ = sf.ive_diff(nu + 1.0, 2.0, x)
    factor = 1.0 + float(d / i1) / (2.0 * nu + 1.0)
    ratio_l = float(low / f)
    return ratio_l, ratio_l * factor


def relative_error(which: Table | str, nu: float, x: float) -> float:
    which = Table.parse(which)
    rl, ru = bound_ratios(nu, x)
    return 1.0 - rl if which is Table.T1 else ru - 1.0


def load_reference() -> dict[tuple[Table, float, float], float]:
    """Transcribed reference cells, keyed by (table, nu, x)."""
    text = resources.files("besselineq.fixtures").joinpath(FIXTURE).read_text(encoding="utf-8")
    out = {}
    for row in csv.DictReader(io.StringIO(text)):
        out[(Table(row["table"]), float(row["nu"]), float(row["x"]))] = float(row["rel_err"])
    return out


def reproduce_table(which: Table | str, with_reference: bool = True) -> list[TableCell]:
    """The 6x7 grid for one table, row by row (nu outer, x inner)."""
    which = Table.parse(which)
    ref = load_reference() if with_reference else {}
    cells = []
    for nu in TABLE_NU:
        for x in TABLE_X:
            cells.append(TableCell(which, nu, x, relative_error(which, nu, x), ref.get((which, nu, x))))
    return cells


def max_reference_diff(cells: list[TableCell]) -> float:
    diffs = [c.diff for c in cells if c.diff is not None]
    return max(diffs) if diffs else math.nan
