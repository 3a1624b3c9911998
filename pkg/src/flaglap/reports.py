"""Spectrum report containers and their JSON/CSV renderings.

Decimal values are rendered with 15 significant digits; exact rational
isolating intervals ride along so consumers never depend on the decimal
rounding.
"""

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class EigenvalueEntry:
    value: float
    multiplicity: int
    isolating_interval: tuple | None = None  # (lo, hi) Fractions, exact route only
    block_k: int | None = None


@dataclass
class SpectrumReport:
    n: int
    q: int
    source: str  # "blocks" | "numeric"
    eigenvalues: list  # of EigenvalueEntry, ascending by value
    cluster_tol: float | None = None

    @property
    def total_multiplicity(self):
        return sum(e.multiplicity for e in self.eigenvalues)

    def to_json_dict(self):
        return {
            "n": self.n,
            "q": self.q,
            "source": self.source,
            "cluster_tol": self.cluster_tol,
            "eigenvalues": [
                {
                    "value_decimal": _dec(e.value),
                    "isolating_interval": _interval(e.isolating_interval),
                    "multiplicity": e.multiplicity,
                    "block_k": e.block_k,
                }
                for e in self.eigenvalues
            ],
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2)

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            ["n", "q", "source", "value_decimal", "interval_lo", "interval_hi",
             "multiplicity", "block_k"]
        )
        for e in self.eigenvalues:
            lo, hi = e.isolating_interval or ("", "")
            writer.writerow(
                [self.n, self.q, self.source, _dec(e.value), str(lo), str(hi),
                 e.multiplicity, "" if e.block_k is None else e.block_k]
            )
        return buf.getvalue()


def _dec(x):
    return f"{x:.15g}"


def _interval(iv):
    if iv is None:
        return None
    lo, hi = iv
    return [f"{Fraction(lo)}", f"{Fraction(hi)}"]
