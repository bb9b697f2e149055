"""Calibration: separation-rate regression, investment-probability fitting,
and the homogeneous-network counterfactual.

``estimate_lambda`` runs the no-intercept regression O_i = beta L_i + e_i
(outflows on firm sizes), whose slope identifies the separation rate;
standard errors are HC1-robust.  ``fit_v`` searches the investment-shock
probability that reproduces a target aggregate unemployment rate, solving the
full equilibrium at every trial value.  ``counterfactual_regular`` evaluates
aggregate unemployment on a degree-homogeneous network with the same mean
degree — the gap to the heterogeneous model measures the contribution of the
network topology.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .equilibrium import regular_closed_form, solve_equilibrium
from .errors import DegeneratePanel, NoConvergence, OutOfRange, ParseError, TargetOutOfBracket
from .graph import LaborFlowNetwork
from .params import EconomyParams
from .steady_state import firm_unemployment_rate

#: Bisection refines the v-bracket to this width; needed because u(v) can be
#: nearly flat close to its minimum, where a u-tolerance alone would leave v
#: poorly determined.
_V_RESOLUTION = 1e-6
_V_LO = 1e-3
_V_HI = 1.0
_SCAN_POINTS = 41


@dataclass(frozen=True)
class FirmPanel:
    """Observed per-firm rows: id, mean size L_obs, mean outflow O_obs."""

    firm: np.ndarray
    L: np.ndarray
    O: np.ndarray

    def __post_init__(self):
        firm = np.asarray(self.firm, dtype=np.int64)
        L = np.asarray(self.L, dtype=float)
        O = np.asarray(self.O, dtype=float)
        if not (firm.shape == L.shape == O.shape) or L.ndim != 1:
            raise ValueError("firm, L, O must be 1-d arrays of equal length")
        if L.size < 3:
            raise ValueError(f"panel needs at least 3 rows, got {L.size}")
        if np.any(L < 0) or np.any(O < 0):
            raise ValueError("panel stocks and flows must be nonnegative")
        object.__setattr__(self, "firm", firm)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "O", O)

    def __len__(self):
        return self.L.size

    @classmethod
    def from_csv(cls, path) -> "FirmPanel":
        firms, Ls, Os = [], [], []
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [c.strip() for c in header] != ["firm", "L", "O"]:
                raise ParseError("line 1: expected header 'firm,L,O'", line=1)
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 3:
                    raise ParseError(
                        f"line {lineno}: expected 3 fields, got {len(row)}",
                        line=lineno)
                try:
                    firms.append(int(row[0]))
                    Ls.append(float(row[1]))
                    Os.append(float(row[2]))
                except ValueError:
                    raise ParseError(
                        f"line {lineno}: could not parse numeric fields",
                        line=lineno) from None
        return cls(firm=np.array(firms), L=np.array(Ls), O=np.array(Os))

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["firm", "L", "O"])
            for f, L, O in zip(self.firm, self.L, self.O):
                writer.writerow([int(f), repr(float(L)), repr(float(O))])


@dataclass(frozen=True)
class CalibrationResult:
    beta_lambda: float
    se_robust: float
    r2: float
    beta_daily: float
    v_hat: float
    u_model: float
    u_counterfactual: float

    def to_dict(self) -> dict:
        return {
            "beta_lambda": self.beta_lambda,
            "se_robust": self.se_robust,
            "r2": self.r2,
            "beta_daily": self.beta_daily,
            "v_hat": self.v_hat,
            "u_model": self.u_model,
            "u_counterfactual": self.u_counterfactual,
        }


def estimate_lambda(panel: FirmPanel) -> tuple[float, float, float]:
    """No-intercept least squares of outflows on sizes.

    Returns ``(beta, se, r2)`` with ``beta = sum(O L) / sum(L^2)``, an
    HC1-style robust standard error, and R^2 computed without intercept.
    """
    L, O = panel.L, panel.O
    sxx = float(L @ L)
    if sxx <= 0:
        raise DegeneratePanel("all observed firm sizes are zero")
    beta = float(L @ O) / sxx
    resid = O - beta * L
    n = L.size
    # HC1: small-sample scaled heteroskedasticity-robust variance, 1 regressor
    var = n / (n - 1) * float((L * L) @ (resid * resid)) / sxx ** 2
    se = float(np.sqrt(var))
    syy = float(O @ O)
    r2 = 1.0 - float(resid @ resid) / syy if syy > 0 else 1.0
    return beta, se, r2


def to_daily_rate(beta_annual: float) -> float:
    """Convert a per-year separation probability to the per-day equivalent:
    1 - (1-beta)^(1/365)."""
    if not 0.0 <= beta_annual < 1.0:
        raise OutOfRange(f"beta must lie in [0, 1), got {beta_annual}")
    return 1.0 - (1.0 - beta_annual) ** (1.0 / 365.0)


def _u_of_v(net: LaborFlowNetwork, params: EconomyParams, v: float,
            cache: dict, tol: float, max_iter: int) -> float:
    if v not in cache:
        sol = solve_equilibrium(net, params.replace(v=v), tol=tol,
                                max_iter=max_iter)
        cache[v] = sol.steady.u_agg
    return cache[v]


def fit_v(net: LaborFlowNetwork, params: EconomyParams, target_u: float,
          tol: float = 1e-5, solver_tol: float = 1e-10,
          max_iter: int = 500) -> tuple[float, float]:
    """Find v such that equilibrium aggregate unemployment matches a target.

    The incoming ``params.v`` is ignored.  ``u_agg(v)`` falls steeply from
    near 1 at tiny v but need not be monotone: network congestion can give it
    a shallow interior minimum below ``u_agg(1)``.  An ascending grid scan
    therefore locates the *first* downward sign change of
    ``u_agg(v) - target`` (the economically relevant falling branch), then
    bisection refines that bracket until its width falls below 1e-6 and the
    achieved u is within ``tol`` of the target.
    Returns ``(v_hat, u_achieved)``.

    Raises
    ------
    TargetOutOfBracket
        If the target exceeds ``u_agg`` at the smallest v, or lies below the
        curve everywhere on the scan grid.
    NoConvergence
        Propagated from the equilibrium solver, or if the bracket collapses
        without meeting the u tolerance.
    """
    if not 0.0 < target_u < 1.0:
        raise OutOfRange(f"target_u must lie in (0, 1), got {target_u}")
    cache: dict[float, float] = {}

    def f(v: float) -> float:
        return _u_of_v(net, params, v, cache, solver_tol, max_iter) - target_u

    f_lo = f(_V_LO)
    if f_lo <= 0.0:
        raise TargetOutOfBracket(
            f"target_u={target_u} is not below u({_V_LO})={f_lo + target_u:.6g}, "
            f"the maximum reachable unemployment rate",
            u_at_v_lo=f_lo + target_u)

    grid = np.linspace(_V_LO, _V_HI, _SCAN_POINTS)
    lo, hi = None, None
    prev_v, prev_f = grid[0], f_lo
    for v in grid[1:]:
        fv = f(float(v))
        if prev_f > 0.0 >= fv:
            lo, f_at_lo = float(prev_v), prev_f
            hi, f_at_hi = float(v), fv
            break
        prev_v, prev_f = v, fv
    if lo is None:
        u_min = min(cache.values())
        raise TargetOutOfBracket(
            f"target_u={target_u} lies below the curve everywhere on the "
            f"v-grid (minimum u found: {u_min:.6g})", u_min=u_min)

    while hi - lo > _V_RESOLUTION:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm <= 0.0:
            hi, f_at_hi = mid, fm
        else:
            lo, f_at_lo = mid, fm
    v_hat, f_hat = (lo, f_at_lo) if abs(f_at_lo) <= abs(f_at_hi) else (hi, f_at_hi)
    if abs(f_hat) > tol:
        raise NoConvergence(
            f"bracket collapsed at v={v_hat:.8f} but |u - target| = "
            f"{abs(f_hat):.3e} > tol={tol}", residual=abs(f_hat))
    return float(v_hat), float(f_hat + target_u)


def counterfactual_regular(params: EconomyParams, k_bar: float, n: int) -> float:
    """Aggregate unemployment when every firm has the (possibly non-integer)
    mean degree: closed-form equilibrium policy, then the firm unemployment
    rate at that degree."""
    h_star = regular_closed_form(params, k_bar, n)
    return float(firm_unemployment_rate(k_bar, h_star, params))


def run_calibration(panel: FirmPanel, net: LaborFlowNetwork,
                    params: EconomyParams, target_u: float,
                    tol: float = 1e-5) -> CalibrationResult:
    """Full pipeline: estimate the separation rate from the panel, adopt it as
    the model's lambda, fit v to the target unemployment rate, and evaluate
    the homogeneous-network counterfactual at the fitted parameters."""
    beta, se, r2 = estimate_lambda(panel)
    beta_daily = to_daily_rate(beta)
    fitted = params.replace(lam=beta)
    v_hat, u_model = fit_v(net, fitted, target_u, tol=tol)
    u_cf = counterfactual_regular(fitted.replace(v=v_hat), net.mean_degree, net.n)
    return CalibrationResult(
        beta_lambda=beta, se_robust=se, r2=r2, beta_daily=beta_daily,
        v_hat=v_hat, u_model=u_model, u_counterfactual=u_cf)
