"""Firm optimization: exogenous-wage closed forms and the endogenous-wage
fixed point over heterogeneous hiring policies.

With an exogenous wage ``w`` every firm's optimum is
``h* = clamp(psi (y-w) / (2 phi_cost))`` — independent of degree.  With
endogenous wages each firm internalizes the inverse labor supply
``w = y ell / (b + ell)``; its best response solves the quadratic

    2 phi_cost varphi hbar k h^2  +  2 phi_cost b h  -  psi y b = 0,

whose positive root is iterated Jacobi-style (all firms update simultaneously
from the incoming vector; ``varphi`` and the neighbor means are frozen within
a sweep) until the sup-norm fixed-point residual drops below tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CornerSolution, DegenerateHiring, InvalidDegree, NoConvergence
from .graph import LaborFlowNetwork
from .params import EconomyParams
from .steady_state import (
    HiringVector,
    SteadyStateSolution,
    as_hiring_array,
    compute_varphi,
    neighbor_means,
    steady_state,
)

_MIN_DAMPING = 1.0 / 16.0
_STALL_LIMIT = 10


@dataclass(frozen=True)
class EquilibriumSolution:
    h_star: np.ndarray
    w_star: np.ndarray
    ell: np.ndarray
    profit: np.ndarray
    iterations: int
    residual: float
    corner_count: int
    steady: SteadyStateSolution


def optimal_hiring_exogenous(params: EconomyParams, w: float) -> float:
    """h* = clamp( psi (y - w) / (2 phi_cost) ); independent of degree."""
    raw = params.psi * (params.y - w) / (2.0 * params.phi_cost)
    return float(min(1.0, max(0.0, raw)))


def profit_at_optimum(k, params: EconomyParams, w: float, varphi: float) -> float:
    """Interior-optimum profit (varphi psi^3 / (8 lambda phi_cost^2)) (y-w)^3 k.

    Valid only when the unclamped optimum lies strictly below 1; raises
    ``CornerSolution`` otherwise (evaluate the profit function directly at
    h=1 in that case).
    """
    if params.lam <= 0:
        raise DegenerateHiring("lambda=0: interior-profit formula undefined")
    raw = params.psi * (params.y - w) / (2.0 * params.phi_cost)
    if raw >= 1.0:
        raise CornerSolution(
            f"unclamped optimum {raw:.6g} >= 1; interior profit formula invalid")
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr < 1):
        raise InvalidDegree(f"k must be >= 1, got {k}")
    out = (varphi * params.psi ** 3 / (8.0 * params.lam * params.phi_cost ** 2)
           * (params.y - w) ** 3 * k_arr)
    return float(out) if np.ndim(out) == 0 else out


def profit_direct(h, k, hbar, params: EconomyParams, w, varphi: float):
    """Per-period profit at an arbitrary policy:
    (1-lam)(y-w)L + v(y-w)hA - v c L h - (1-v) kappa c L h,
    with L = (varphi/lam) h hbar k and A = varphi hbar k."""
    if params.lam <= 0:
        raise DegenerateHiring("lambda=0: steady-state profit undefined")
    h = np.asarray(h, dtype=float)
    k = np.asarray(k, dtype=float)
    hbar = np.asarray(hbar, dtype=float)
    w = np.asarray(w, dtype=float)
    L = (varphi / params.lam) * h * hbar * k
    A = varphi * hbar * k
    surplus = params.y - w
    out = ((1.0 - params.lam) * surplus * L
           + params.v * surplus * h * A
           - params.v * params.c * L * h
           - (1.0 - params.v) * params.kappa * params.c * L * h)
    return float(out) if np.ndim(out) == 0 else out


def supply_wage(ell, params: EconomyParams):
    """Inverse labor supply w = y ell / (b + ell), in [0, y)."""
    ell = np.asarray(ell, dtype=float)
    if np.any(ell < 0):
        raise ValueError("ell must be nonnegative")
    out = params.y * ell / (params.b + ell)
    return float(out) if np.ndim(out) == 0 else out


def _sweep(h: np.ndarray, net: LaborFlowNetwork, params: EconomyParams) -> np.ndarray:
    """One simultaneous best-response update from the incoming vector."""
    hbar = neighbor_means(net, h)
    varphi = compute_varphi(net, h, params)
    phi = params.phi_cost
    a = 2.0 * phi * varphi * hbar * net.degrees
    B = 2.0 * phi * params.b
    C = params.psi * params.y * params.b
    # rationalized positive root of a h^2 + B h - C = 0; no cancellation as a -> 0
    root = 2.0 * C / (B + np.sqrt(B * B + 4.0 * a * C))
    return np.minimum(1.0, np.maximum(0.0, root))


def best_response_sweep(h, net: LaborFlowNetwork, params: EconomyParams) -> HiringVector:
    """Simultaneous (Jacobi) best response of every firm to the incoming
    hiring-policy vector; varphi is recomputed once from that vector and then
    frozen for the sweep."""
    h = as_hiring_array(h, net.n)
    return HiringVector(_sweep(h, net, params))


def solve_equilibrium(net: LaborFlowNetwork, params: EconomyParams, init=None,
                      tol: float = 1e-10, max_iter: int = 500,
                      damping: float = 1.0) -> EquilibriumSolution:
    """Iterate the best-response map to its fixed point.

    Updates are damped as ``h <- (1-alpha) h + alpha T(h)``; ``alpha`` starts
    at ``damping`` and is halved (down to 1/16) whenever the residual fails to
    improve for 10 consecutive sweeps.  Success requires the *undamped*
    fixed-point residual ``||T(h) - h||_inf < tol``, so the reported solution
    satisfies ``best_response_sweep(h*) = h*`` within tolerance.

    Raises
    ------
    NoConvergence
        Carries the last iterate and residual for diagnosis.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if init is None:
        h = np.full(net.n, 0.5)
    else:
        h = as_hiring_array(init, net.n).copy()
    alpha = float(damping)
    if not 0 < alpha <= 1:
        raise ValueError("damping must lie in (0, 1]")
    best = math.inf
    stall = 0
    residual = math.inf
    for iteration in range(1, max_iter + 1):
        target = _sweep(h, net, params)
        residual = float(np.abs(target - h).max())
        if residual < tol:
            return _finalize(net, params, h, iteration, residual)
        if residual >= best:
            stall += 1
            if stall >= _STALL_LIMIT:
                alpha = max(alpha / 2.0, _MIN_DAMPING)
                stall = 0
        else:
            best = residual
            stall = 0
        h = (1.0 - alpha) * h + alpha * target
    raise NoConvergence(
        f"no fixed point after {max_iter} sweeps (residual {residual:.3e})",
        h_last=h, residual=residual, iterations=max_iter)


def _finalize(net: LaborFlowNetwork, params: EconomyParams, h: np.ndarray,
              iterations: int, residual: float) -> EquilibriumSolution:
    ss = steady_state(net, h, params)
    w_star = supply_wage(params.lam * ss.L, params)
    ell = h * ss.A
    hbar = neighbor_means(net, h)
    profit = profit_direct(h, net.degrees, hbar, params, w_star, ss.varphi)
    return EquilibriumSolution(
        h_star=h, w_star=np.asarray(w_star), ell=ell,
        profit=np.asarray(profit), iterations=iterations, residual=residual,
        corner_count=int(np.count_nonzero(h >= 1.0)), steady=ss)


def solve_exogenous(net: LaborFlowNetwork, params: EconomyParams,
                    w: float) -> EquilibriumSolution:
    """Equilibrium with a common exogenous wage: every firm sets the same
    closed-form policy and the steady state follows directly."""
    if not 0 <= w <= params.y:
        raise ValueError(f"w must lie in [0, y], got {w}")
    h_star = optimal_hiring_exogenous(params, w)
    h = np.full(net.n, h_star)
    ss = steady_state(net, h, params)
    hbar = neighbor_means(net, h)
    w_vec = np.full(net.n, float(w))
    profit = profit_direct(h, net.degrees, hbar, params, w_vec, ss.varphi)
    return EquilibriumSolution(
        h_star=h, w_star=w_vec, ell=h * ss.A, profit=np.asarray(profit),
        iterations=0, residual=0.0,
        corner_count=int(np.count_nonzero(h >= 1.0)), steady=ss)


def regular_closed_form(params: EconomyParams, k, n: int) -> float:
    """Equilibrium hiring policy on an n-firm k-regular network (real k >= 1
    allowed), clamped to [0, 1]."""
    k = float(k)
    if k < 1:
        raise InvalidDegree(f"k must be >= 1, got {k}")
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    lam, y, b, H = params.lam, params.y, params.b, params.H
    psi, phi = params.psi, params.phi_cost
    theta = params.theta(k)
    radicand = (b * n) ** 2 * (2 * lam * phi + y * psi * theta) ** 2 \
        + 8 * b * y * n * H * lam ** 2 * phi * psi * theta
    numerator = b * n * (y * psi * theta - 2 * lam * phi) + math.sqrt(radicand)
    denominator = 4 * phi * theta * (b * n + H * lam)
    return float(min(1.0, max(0.0, numerator / denominator)))
