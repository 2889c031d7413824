"""
Stopping tests of the trust-region bundle method.

Serious stop: after an accepted step,
    ||x - x+|| / (1 + ||x||) < tol1,  (f(x) - f(x+)) / (1 + |f(x)|) < tol2,
    min(||g_j||, ||g_j'||) / (1 + |f(x)|) < tol3.
Inner stall: k > k_max, or nu_max consecutive null steps passing the same triple with
the aggregate subgradient of the current tangent program.
"""

from dataclasses import dataclass

from app.core.settings import SolverConfig


@dataclass
class InnerCounters:
    """``k`` is the index of the next inner iteration, ``consecutive`` the current run of triple passes."""

    k: int = 1
    consecutive: int = 0


def _triple(step_rel: float, dec_rel: float, g_rel: float, cfg: SolverConfig) -> bool:
    return step_rel < cfg.tol1 and dec_rel < cfg.tol2 and g_rel < cfg.tol3


def stopping_serious(step_rel: float, dec_rel: float, g_min_rel: float, cfg: SolverConfig) -> bool:
    """
    Decide whether an accepted step ends the run with a criticality certificate.

    Args:
        step_rel: ||x - x+|| / (1 + ||x||)
        dec_rel: (f(x) - f(x+)) / (1 + |f(x)|)
        g_min_rel: Smallest relevant aggregate-subgradient norm over (1 + |f(x)|)
        cfg: Solver configuration

    Returns:
        bool: True iff all three tests pass
    """
    return _triple(step_rel, dec_rel, g_min_rel, cfg)


def stopping_inner(step_rel: float, dec_rel: float, g_rel: float, counters: InnerCounters,
                   cfg: SolverConfig) -> bool:
    """
    Record one null step's triple test in ``counters`` and decide whether the inner loop stalls.

    Args:
        step_rel: ||x - z|| / (1 + ||x||)
        dec_rel: (f(x) - f(z)) / (1 + |f(x)|)
        g_rel: ||g_k|| / (1 + |f(x)|)
        counters: Inner-loop counters (``consecutive`` is updated)
        cfg: Solver configuration

    Returns:
        bool: True when k exceeds k_max or the triple held nu_max times in a row
    """
    counters.consecutive = counters.consecutive + 1 if _triple(step_rel, dec_rel, g_rel, cfg) else 0
    return counters.k > cfg.k_max or counters.consecutive >= cfg.nu_max
