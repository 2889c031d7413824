"""
Per-step solver trace and its CSV export.
"""

import csv
from dataclasses import dataclass, field
from typing import Iterator, List

import numpy as np

TRACE_COLUMNS = ["j", "k", "kind", "f", "rho", "rho_tilde", "R", "g_norm"]

SERIOUS = "serious"
NULL = "null"


@dataclass(frozen=True)
class TraceRecord:
    """One inner iteration: a serious step (accepted trial) or a null step."""

    j: int
    k: int
    kind: str
    x: np.ndarray
    f: float
    rho: float
    rho_tilde: float
    R: float
    g_agg_norm: float


@dataclass
class SolverTrace:
    """Ordered list of trace records of one solver run."""

    records: List[TraceRecord] = field(default_factory=list)

    def append(self, record: TraceRecord) -> None:
        self.records.append(record)

    def __iter__(self) -> Iterator[TraceRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def serious(self) -> List[TraceRecord]:
        return [r for r in self.records if r.kind == SERIOUS]

    def nulls(self) -> List[TraceRecord]:
        return [r for r in self.records if r.kind == NULL]

    def to_csv(self, path: str) -> None:
        """
        Write the trace with header ``j,k,kind,f,rho,rho_tilde,R,g_norm``.

        For serious records ``f`` is the value at the accepted point, for null records
        the value at the rejected trial point.

        Args:
            path: Output file
        """
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(TRACE_COLUMNS)
            for r in self.records:
                writer.writerow([r.j, r.k, r.kind] + [
                    repr(float(v)) for v in (r.f, r.rho, r.rho_tilde, r.R, r.g_agg_norm)])
