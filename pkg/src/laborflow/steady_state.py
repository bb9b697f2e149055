"""Closed-form steady state of the worker flow process, plus an exact
Markov-chain oracle.

Given a network, parameters, and a per-firm hiring-policy vector ``h``, the
stationary per-firm quantities are

* ``varphi``  — normalizing constant enforcing population conservation:
  ``varphi = H / sum_i h_i hbar_i k_i [1/lambda + 1/(hbar_i theta(k_i))]``
* ``L_i = (varphi/lambda) h_i hbar_i k_i``    — expected firm size
* ``A_i = varphi hbar_i k_i``                 — expected applications received
* ``U_i = varphi h_i k_i / theta(k_i)``       — unemployed associated with i
* ``O_i = varphi h_i hbar_i k_i``             — outflow to employment (= lambda L_i)
* ``u_i = U_i / (U_i + L_i)``                 — firm-specific unemployment rate
* ``t_u_i = 1 / (hbar_i theta(k_i))``         — mean unemployment duration

where ``hbar_i`` is the mean hiring policy over i's neighbors and
``theta(k) = 1-(1-v)^k``.  ``exact_chain_oracle`` independently computes the
same stationary distribution from the full per-worker Markov chain by
enumerating every open/closed neighbor configuration — no closed-form
shortcuts — and is the ground truth the algebra is tested against.

All operations are pure functions of immutable inputs; per-firm reductions use
numpy's fixed-order vectorized sums, so results are deterministic and
independent of thread count.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateHiring, DegreeTooLarge, InvalidDegree, SingularSystem
from .graph import DegreeDistribution, LaborFlowNetwork
from .params import EconomyParams

_MAX_ORACLE_DEGREE = 12


class HiringVector:
    """Per-firm hiring probabilities ``h_i`` in [0, 1]."""

    __slots__ = ("h",)

    def __init__(self, h):
        h = np.ascontiguousarray(h, dtype=float)
        if h.ndim != 1:
            raise ValueError("h must be one-dimensional")
        if np.any((h < 0) | (h > 1)):
            raise ValueError("every hiring probability must lie in [0, 1]")
        self.h = h
        self.h.flags.writeable = False

    def __len__(self):
        return self.h.size

    def neighbor_mean(self, net: LaborFlowNetwork) -> np.ndarray:
        return neighbor_means(net, self.h)


def as_hiring_array(h, n: int) -> np.ndarray:
    """Validate and normalize a hiring-policy argument (scalar, array, or
    HiringVector) to a length-n float array."""
    if isinstance(h, HiringVector):
        arr = h.h
    else:
        arr = np.asarray(h, dtype=float)
        if arr.ndim == 0:
            arr = np.full(n, float(arr))
    if arr.shape != (n,):
        raise ValueError(f"hiring vector has shape {arr.shape}, expected ({n},)")
    if np.any((arr < 0) | (arr > 1)):
        raise ValueError("every hiring probability must lie in [0, 1]")
    return arr


def neighbor_means(net: LaborFlowNetwork, h) -> np.ndarray:
    """hbar_i: mean hiring policy over the neighbors of each firm."""
    h = as_hiring_array(h, net.n)
    sums = np.add.reduceat(h[net.indices], net.indptr[:-1])
    return sums / net.degrees


@dataclass(frozen=True)
class SteadyStateSolution:
    varphi: float
    p: np.ndarray
    q: np.ndarray
    L: np.ndarray
    U: np.ndarray
    A: np.ndarray
    O: np.ndarray
    u_firm: np.ndarray
    t_u: np.ndarray
    u_agg: float


def _check_hiring(params: EconomyParams, h: np.ndarray, hbar: np.ndarray) -> None:
    if params.lam <= 0.0:
        raise DegenerateHiring(
            "lambda=0: no separations, steady-state normalization undefined")
    if params.v <= 0.0:
        raise DegenerateHiring(
            "v=0: no firm ever opens, no worker can ever be hired")
    if not np.any(h > 0):
        raise DegenerateHiring("all hiring policies are zero")
    bad = np.flatnonzero((hbar == 0) & (h > 0))
    if bad.size:
        raise DegenerateHiring(
            f"firm(s) {bad.tolist()} hire but all their neighbors have h=0; "
            f"unemployment there would grow without bound", nodes=bad.tolist())


def compute_varphi(net: LaborFlowNetwork, h, params: EconomyParams) -> float:
    """Normalizing constant that makes employment plus unemployment stocks sum
    to the population H."""
    h = as_hiring_array(h, net.n)
    hbar = neighbor_means(net, h)
    _check_hiring(params, h, hbar)
    theta = params.theta(net.degrees)
    denom = float(np.sum(h * hbar * net.degrees) / params.lam
                  + np.sum(h * net.degrees / theta))
    if denom <= 0 or not np.isfinite(denom):
        raise DegenerateHiring("population-conservation denominator is degenerate")
    return params.H / denom


def steady_state(net: LaborFlowNetwork, h, params: EconomyParams) -> SteadyStateSolution:
    """Stationary per-firm stocks and rates for hiring policy ``h``."""
    h = as_hiring_array(h, net.n)
    hbar = neighbor_means(net, h)
    varphi = compute_varphi(net, h, params)
    k = net.degrees.astype(float)
    theta = params.theta(net.degrees)
    L = (varphi / params.lam) * h * hbar * k
    A = varphi * hbar * k
    U = varphi * h * k / theta
    O = h * A  # hires = hiring rate x applications, bit-exact by construction
    with np.errstate(divide="ignore", invalid="ignore"):
        t_u = 1.0 / (hbar * theta)
        u_firm = np.where(L + U > 0, U / (L + U), 0.0)
    p = L / params.H
    q = U / params.H
    u_agg = float(U.sum() / params.H)
    return SteadyStateSolution(varphi=varphi, p=p, q=q, L=L, U=U, A=A, O=O,
                               u_firm=u_firm, t_u=t_u, u_agg=u_agg)


def firm_unemployment_rate(k, h_star, params: EconomyParams):
    """u = lambda / (lambda + h* theta(k)); accepts real-valued k >= 1.

    Strictly decreasing and convex in k, strictly decreasing in h*.
    """
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr < 1):
        raise InvalidDegree(f"k must be >= 1, got {k}")
    theta = params.theta(k_arr)
    out = params.lam / (params.lam + np.asarray(h_star, dtype=float) * theta)
    return float(out) if np.ndim(out) == 0 else out


def aggregate_unemployment(dist: DegreeDistribution, h_star: float,
                           params: EconomyParams) -> float:
    """Expected firm unemployment rate over a degree distribution with a
    common hiring policy h*."""
    u = firm_unemployment_rate(dist.support, h_star, params)
    return float(np.asarray(u) @ dist.mass)


# --- exact per-worker Markov-chain oracle ------------------------------------

def _transition_matrix(net: LaborFlowNetwork, h: np.ndarray,
                       params: EconomyParams) -> np.ndarray:
    """Column-stochastic transition matrix over the 2N per-worker states
    (employed at i | unemployed associated with i), built by enumerating every
    open/closed configuration of each firm's neighborhood."""
    n = net.n
    lam, v = params.lam, params.v
    M = np.zeros((2 * n, 2 * n))
    for i in range(n):
        # employed at i: separate or stay
        M[n + i, i] = lam
        M[i, i] = 1.0 - lam
        # unemployed associated with i: enumerate open subsets of neighbors
        nbrs = net.neighbors(i)
        k = nbrs.size
        stay = 0.0
        for mask in range(1 << k):
            size = mask.bit_count()
            prob = (v ** size) * ((1.0 - v) ** (k - size))
            if size == 0:
                stay += prob
                continue
            pick = prob / size
            for b in range(k):
                if mask >> b & 1:
                    j = nbrs[b]
                    M[j, n + i] += pick * h[j]
                    stay += pick * (1.0 - h[j])
        M[n + i, n + i] = stay
    return M


def exact_chain_oracle(net: LaborFlowNetwork, h,
                       params: EconomyParams) -> tuple[np.ndarray, np.ndarray]:
    """Per-firm stationary probabilities (p, q) that a worker is employed at /
    unemployed associated with each firm, from the exact per-worker chain.

    Enumeration is 2^k per node, hence the max-degree cap.
    """
    if net.max_degree > _MAX_ORACLE_DEGREE:
        raise DegreeTooLarge(
            f"max degree {net.max_degree} exceeds oracle cap {_MAX_ORACLE_DEGREE}")
    h = as_hiring_array(h, net.n)
    M = _transition_matrix(net, h, params)
    dim = 2 * net.n
    # stationary distribution: solve (M - I) pi = 0 with sum(pi) = 1
    A = np.vstack([M - np.eye(dim), np.ones((1, dim))])
    rhs = np.zeros(dim + 1)
    rhs[-1] = 1.0
    pi, _, rank, _ = np.linalg.lstsq(A, rhs, rcond=None)
    if rank < dim:
        raise SingularSystem(f"stationary system rank {rank} < {dim}")
    residual = float(np.abs(M @ pi - pi).max())
    if residual > 1e-10 or abs(pi.sum() - 1.0) > 1e-10:
        raise SingularSystem(
            f"stationary solve residual {residual:.2e} too large")
    return pi[:net.n].copy(), pi[net.n:].copy()
