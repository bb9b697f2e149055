"""Agent-level Monte Carlo of the job-search process.

Validates the analytic steady state worker-by-worker: each period firms draw
investment shocks, employed workers separate, and unemployed (non-fresh)
workers apply to one open neighbor of their associated firm.  Time averages of
the per-firm stocks converge to the closed-form values; batch-means standard
errors quantify the Monte Carlo noise despite autocorrelation.

Two interchangeable kernels exist: a compiled extension (``laborflow._kernel``)
and a pure-NumPy fallback (``laborflow._kernel_py``).  They consume the random
stream identically and produce bit-identical results; the compiled one is
selected automatically when available.  Set ``LABORFLOW_KERNEL=python`` or
``cython`` to force a choice.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _kernel_py
from .errors import DegenerateHiring, LaborFlowError
from .graph import LaborFlowNetwork
from .params import EconomyParams
from .steady_state import as_hiring_array, steady_state

try:
    from . import _kernel as _kernel_cy
except ImportError:  # pragma: no cover - depends on build environment
    _kernel_cy = None

#: Batch length for autocorrelation-adjusted standard errors.
DEFAULT_BATCH_LEN = 1000


def available_backends() -> tuple[str, ...]:
    return ("python",) if _kernel_cy is None else ("cython", "python")


def _select_kernel(backend: str | None):
    choice = backend or os.environ.get("LABORFLOW_KERNEL") or "auto"
    if choice == "auto":
        return _kernel_cy if _kernel_cy is not None else _kernel_py
    if choice == "cython":
        if _kernel_cy is None:
            raise RuntimeError("compiled kernel requested but not built")
        return _kernel_cy
    if choice == "python":
        return _kernel_py
    raise ValueError(f"unknown kernel backend {choice!r}")


@dataclass(frozen=True)
class SimResult:
    """Per-firm time averages with batch-means standard errors.

    ``u_series`` holds the aggregate unemployment rate at the end of every
    period (burn-in included).  Standard errors are NaN when fewer than two
    complete batches fit in the post-burn-in window.
    """

    mean_L: np.ndarray
    mean_U: np.ndarray
    mean_A: np.ndarray
    mean_O: np.ndarray
    se_L: np.ndarray
    se_U: np.ndarray
    se_A: np.ndarray
    se_O: np.ndarray
    u_series: np.ndarray
    periods: int
    burnin: int
    seed: int
    backend: str
    n_batches: int


def initial_allocation(net: LaborFlowNetwork, params: EconomyParams,
                       h) -> np.ndarray:
    """Assign every worker an initial employer.

    Proportional to the analytic steady-state firm sizes (floor, remainder to
    the largest firms in descending-size order, ties to lower ids); falls back
    to degree-proportional weights when the analytic solution is undefined
    (e.g. lambda=0 or v=0).
    """
    h = as_hiring_array(h, net.n)
    try:
        weights = steady_state(net, h, params).L
        if not np.isfinite(weights).all() or weights.sum() <= 0:
            raise DegenerateHiring("steady-state sizes unusable")
    except LaborFlowError:
        weights = net.degrees.astype(float)
    total = weights.sum()
    base = np.floor(params.H * weights / total).astype(np.int64)
    remainder = params.H - int(base.sum())
    if remainder > 0:
        order = np.lexsort((np.arange(net.n), -weights))
        base[order[:remainder]] += 1
    return np.repeat(np.arange(net.n, dtype=np.int64), base)


def simulate(net: LaborFlowNetwork, params: EconomyParams, h, periods: int,
             burnin: int, seed: int, backend: str | None = None,
             batch_len: int = DEFAULT_BATCH_LEN) -> SimResult:
    """Run the agent-level simulation and average over post-burn-in periods."""
    if burnin < 0 or periods <= burnin:
        raise ValueError(f"need periods > burnin >= 0, got {periods}, {burnin}")
    h = as_hiring_array(h, net.n)
    assoc0 = initial_allocation(net, params, h)
    kernel = _select_kernel(backend)
    (sum_L, sum_U, sum_A, sum_O,
     b_L, b_U, b_A, b_O, u_tot) = kernel.run_kernel(
        net.indptr, net.indices, h, params.lam, params.v,
        int(periods), int(burnin), int(batch_len), assoc0, int(seed))

    post = periods - burnin
    means = [s / post for s in (sum_L, sum_U, sum_A, sum_O)]
    nb = b_L.shape[0]
    ses = []
    for batches in (b_L, b_U, b_A, b_O):
        if nb >= 2:
            bm = batches / batch_len
            ses.append(bm.std(axis=0, ddof=1) / np.sqrt(nb))
        else:
            ses.append(np.full(net.n, np.nan))
    return SimResult(
        mean_L=means[0], mean_U=means[1], mean_A=means[2], mean_O=means[3],
        se_L=ses[0], se_U=ses[1], se_A=ses[2], se_O=ses[3],
        u_series=u_tot / params.H, periods=int(periods), burnin=int(burnin),
        seed=int(seed), backend=kernel.BACKEND, n_batches=int(nb))


def synth_panel(net: LaborFlowNetwork, params: EconomyParams, h, periods: int,
                seed: int, backend: str | None = None):
    """Simulate and emit per-firm (mean size, mean outflow) rows shaped like
    the calibration input; burn-in is 10% of the requested periods."""
    from .calibration import FirmPanel

    result = simulate(net, params, h, periods, periods // 10, seed,
                      backend=backend)
    return FirmPanel(firm=np.arange(net.n, dtype=np.int64),
                     L=result.mean_L, O=result.mean_O)
