"""CSV/JSON rows for located zeros."""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, fields
from typing import Iterable, TextIO

SIG_DIGITS = 12


def _fmt(x: float) -> str:
    return f"{x:.{SIG_DIGITS}g}"


def _round(x: float) -> float:
    return float(_fmt(x))


@dataclass(frozen=True)
class OutputRow:
    nu_re: float
    nu_im: float
    label: int
    z_re: float
    z_im: float
    rho: float
    phi: float
    sheet_index: int
    residual_abs: float
    iterations: int
    converged: bool

    @classmethod
    def from_record(cls, rec) -> "OutputRow":
        z = rec.z
        return cls(
            _round(rec.nu.real),
            _round(rec.nu.imag),
            rec.label,
            _round(z.real),
            _round(z.imag),
            _round(rec.w.rho),
            _round(rec.w.phi),
            rec.sheet_index,
            _round(rec.residual_abs),
            rec.iterations,
            rec.converged,
        )

    def csv_fields(self) -> list[str]:
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, bool):
                out.append("true" if v else "false")
            elif isinstance(v, int):
                out.append(str(v))
            else:
                out.append(_fmt(v))
        return out

    @classmethod
    def from_csv_fields(cls, row: dict) -> "OutputRow":
        kw = {}
        for f in fields(cls):
            raw = row[f.name]
            if f.type in ("bool", bool):
                kw[f.name] = raw.strip().lower() == "true"
            elif f.type in ("int", int):
                kw[f.name] = int(raw)
            else:
                kw[f.name] = float(raw)
        return cls(**kw)

    def to_json(self) -> dict:
        return asdict(self)


COLUMNS = [f.name for f in fields(OutputRow)]


def write_csv(rows: Iterable[OutputRow], fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow(row.csv_fields())


def read_csv(fh: TextIO) -> list[OutputRow]:
    return [OutputRow.from_csv_fields(r) for r in csv.DictReader(fh)]


def write_json(rows: Iterable[OutputRow], fh: TextIO) -> None:
    json.dump([r.to_json() for r in rows], fh, indent=1)
    fh.write("\n")
