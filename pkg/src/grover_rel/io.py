"""CSV/JSON emission for sweep records, single runs and trajectories.

Real numbers are written in scientific notation with 17 (standard) or 34
(extended) significant digits so output files diff cleanly.
"""

from __future__ import annotations

import csv
import json
from typing import IO, Iterable

from grover_rel.backend import ScalarBackend, get_backend
from grover_rel.collision import AlphaState
from grover_rel.sweep import SweepRecord
from grover_rel.transfer import TransferConfig, TrajectoryPoint

CSV_COLUMNS = ("N", "v0", "steps_to_max", "max_fraction", "classical_steps",
               "asymptote", "v0_ss", "M_b", "termination",
               "big_ball_reversed")

_REAL_COLUMNS = {"N", "v0", "max_fraction", "asymptote", "v0_ss", "M_b"}


class RawNumber(str):
    """Pre-formatted JSON number text."""


def _cell(name, value, backend: ScalarBackend):
    if value is not None and name in _REAL_COLUMNS:
        return RawNumber(backend.format(value))
    return value


def record_row(rec: SweepRecord, backend: ScalarBackend) -> dict:
    return {c: _cell(c, getattr(rec, c), backend) for c in CSV_COLUMNS}


def write_csv(records: Iterable[SweepRecord], stream: IO[str],
              backend: ScalarBackend) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        row = record_row(rec, backend)
        w.writerow([_csv_text(row[c]) for c in CSV_COLUMNS])


def _csv_text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text where ``RawNumber`` strings are emitted verbatim as numbers."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, RawNumber):
        return str(obj)
    if obj is None or isinstance(obj, (bool, int, str)):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def records_json(records: Iterable[SweepRecord], backend: ScalarBackend,
                 precision: str) -> str:
    rows = [record_row(r, backend) for r in records]
    return dumps({"precision": precision, "records": rows}) + "\n"


# -- trajectories -----------------------------------------------------------

def trajectory_document(cfg: TransferConfig,
                        points: Iterable[TrajectoryPoint]) -> dict:
    b = cfg.backend
    f = lambda x: RawNumber(b.format(x))  # noqa: E731
    if cfg.v0 is not None:
        start = {"v0": f(cfg.v0)}
    else:
        start = {"one_minus_v0": f(cfg.one_minus_v0)}
    recs = []
    for p in points:
        s = p.state
        recs.append({
            "k": p.k, "v1": f(s.v_big), "v2": f(s.v_small),
            "alpha1": f(s.a_big), "alpha2": f(s.a_small),
            "K1_frac": f(p.K1_fraction), "K2_frac": f(p.K2_fraction),
            "e_drift": f(p.energy_drift_cumulative),
            "p_drift": f(p.momentum_drift_cumulative),
        })
    return {"n": f(cfg.N), "v0_or_one_minus_v0": start,
            "precision": b.name, "records": recs}


def write_trajectory(cfg: TransferConfig, points, stream: IO[str]) -> None:
    stream.write(dumps(trajectory_document(cfg, points)) + "\n")


def read_trajectory(stream: IO[str]):
    """Parse a trajectory file back into ``(header, [TrajectoryPoint])``.

    Numbers are re-read at the precision named in the file; the state is
    rebuilt from the alpha columns.
    """
    doc = json.load(stream, parse_float=str)
    b = get_backend(doc["precision"])
    n = b.num(doc["n"])
    points = []
    for r in doc["records"]:
        state = AlphaState.from_alphas(b.num(r["alpha1"]), b.num(r["alpha2"]),
                                       n - 1, b)
        points.append(TrajectoryPoint(
            int(r["k"]), state, b.num(r["K1_frac"]), b.num(r["K2_frac"]),
            b.num(r["e_drift"]), b.num(r["p_drift"])))
    start = {k: b.num(v) for k, v in doc["v0_or_one_minus_v0"].items()}
    return {"n": n, "precision": b.name, **start}, points
