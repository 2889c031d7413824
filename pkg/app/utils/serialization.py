"""
Report JSON and CSV writers.

Floats are written with Python's shortest round-trip repr, so reloading a report gives
bit-identical values. NaN and infinities become null in JSON.
"""

import csv
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence

import numpy as np

from app.core.trace import SERIOUS, SolverTrace
from app.utils.logging_setup import TICK_ICON

logger = logging.getLogger("utils.serialization")

REPORT_FIELDS = ("command", "task", "problem", "mode", "norm", "status", "x_final", "f_final",
                 "serious_steps", "null_steps", "seed", "config", "extra")


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays and tuples to plain JSON types; non-finite floats to None."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def build_report(command: str, *, task: Optional[str] = None, problem: Optional[str] = None,
                 mode: Optional[str] = None, norm: Optional[str] = None, status: Optional[str] = None,
                 x_final: Optional[Sequence[float]] = None, f_final: Optional[float] = None,
                 serious_steps: int = 0, null_steps: int = 0, seed: Optional[int] = None,
                 config: Optional[Dict[str, Any]] = None, extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Assemble a report with the fixed field set; absent values are null.

    Returns:
        Dict[str, Any]: JSON-ready report
    """
    report = {
        "command": command,
        "task": task,
        "problem": problem,
        "mode": mode,
        "norm": norm,
        "status": status,
        "x_final": x_final,
        "f_final": f_final,
        "serious_steps": serious_steps,
        "null_steps": null_steps,
        "seed": seed,
        "config": config or {},
        "extra": extra or {},
    }
    return to_jsonable(report)


def write_report(report: Dict[str, Any], path: str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as handle:
        json.dump(to_jsonable(report), handle, indent=2, allow_nan=False)
    logger.info(f"{TICK_ICON} Report written to {path}")


def write_rows_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Write rows with float cells in round-trip repr."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])


def write_trajectory_csv(path: str, trace: SolverTrace, x0: Sequence[float], f0: float) -> None:
    """
    Serious iterates of a run, starting point first: columns j, x1..xn, f.

    Args:
        path: Output file
        trace: Solver trace
        x0: Start point
        f0: f(x0)
    """
    x0 = np.asarray(x0, dtype=float)
    header = ["j"] + [f"x{i + 1}" for i in range(x0.size)] + ["f"]
    rows = [[0, *x0.tolist(), float(f0)]]
    rows.extend([r.j, *np.asarray(r.x, dtype=float).tolist(), float(r.f)] for r in trace if r.kind == SERIOUS)
    write_rows_csv(path, header, rows)
