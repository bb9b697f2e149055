"""Pure-NumPy simulation kernel (fallback for the compiled extension).

Both kernels consume the PCG64 uniform stream in an identical fixed layout per
period — N firm-open draws, then H separation draws, then H pick draws, then H
hire draws — regardless of how many are actually used, so the compiled and
fallback kernels produce bit-identical trajectories for the same seed.

Per period, in order:

1. each firm opens with probability v;
2. each employed worker separates with probability lambda and is flagged as a
   fresh separation;
3. each unemployed, non-fresh worker looks at the open neighbors of its
   associated firm (in CSR order); if any, it picks index ``trunc(u * count)``
   uniformly and is hired with probability ``h_j`` (one application per worker
   per period), re-associating to ``j`` on success;
4. fresh flags are cleared.

Stocks L (employed), U (unemployed association) are measured at period end;
A counts applications received and O counts workers leaving unemployment per
source firm within the period.
"""
from __future__ import annotations

import numpy as np

#: Identifies which kernel ran (mirrored by the compiled extension).
BACKEND = "python"


def run_kernel(indptr, indices, h, lam, v, periods, burnin, batch_len, assoc0,
               seed, transition_log=None):
    """Run the agent-level simulation.

    Parameters mirror the compiled kernel.  ``transition_log``, if a list, is
    appended with ``(period, worker, from_firm, to_firm)`` for every hire —
    fallback-only instrumentation used to verify that every job change moves
    along a network edge.

    Returns
    -------
    tuple
        ``(sum_L, sum_U, sum_A, sum_O)`` int64 per-firm sums over post-burn-in
        periods, ``(batch_L, batch_U, batch_A, batch_O)`` int64 per-batch
        per-firm sums over complete post-burn-in batches, and ``u_tot`` int64
        unemployed head-count at the end of every period.
    """
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int64)
    h = np.asarray(h, dtype=np.float64)
    n = indptr.size - 1
    workers = np.asarray(assoc0, dtype=np.int64)
    H = workers.size

    rng = np.random.Generator(np.random.PCG64(seed))

    assoc = workers.copy()
    employed = np.ones(H, dtype=bool)
    L_count = np.bincount(assoc, minlength=n).astype(np.int64)
    U_count = np.zeros(n, dtype=np.int64)

    post = periods - burnin
    nb = post // batch_len if batch_len > 0 else 0
    sum_L = np.zeros(n, dtype=np.int64)
    sum_U = np.zeros(n, dtype=np.int64)
    sum_A = np.zeros(n, dtype=np.int64)
    sum_O = np.zeros(n, dtype=np.int64)
    batch_L = np.zeros((nb, n), dtype=np.int64)
    batch_U = np.zeros((nb, n), dtype=np.int64)
    batch_A = np.zeros((nb, n), dtype=np.int64)
    batch_O = np.zeros((nb, n), dtype=np.int64)
    u_tot = np.zeros(periods, dtype=np.int64)

    for t in range(periods):
        u_open = rng.random(n)
        u_sep = rng.random(H)
        u_pick = rng.random(H)
        u_hire = rng.random(H)

        open_ = u_open < v

        sep = employed & (u_sep < lam)
        if sep.any():
            employed[sep] = False
            moved = np.bincount(assoc[sep], minlength=n)
            L_count -= moved
            U_count += moved
        fresh = sep

        A_t = np.zeros(n, dtype=np.int64)
        O_t = np.zeros(n, dtype=np.int64)
        searching = ~employed & ~fresh
        if searching.any():
            sw = np.flatnonzero(searching)
            open_slots = open_[indices]
            cum = np.cumsum(open_slots, dtype=np.int64)
            before = np.concatenate(([0], cum))
            open_count = before[indptr[1:]] - before[indptr[:-1]]
            f = assoc[sw]
            c = open_count[f]
            has = c > 0
            sw, f, c = sw[has], f[has], c[has]
            if sw.size:
                r = (u_pick[sw] * c).astype(np.int64)
                np.minimum(r, c - 1, out=r)
                # slot of the (r+1)-th open neighbor within firm f's CSR block
                slot = np.searchsorted(cum, before[indptr[f]] + r + 1, side="left")
                j = indices[slot]
                A_t += np.bincount(j, minlength=n)
                hired = u_hire[sw] < h[j]
                if hired.any():
                    src = f[hired]
                    dst = j[hired]
                    who = sw[hired]
                    O_t += np.bincount(src, minlength=n)
                    U_count -= np.bincount(src, minlength=n)
                    L_count += np.bincount(dst, minlength=n)
                    employed[who] = True
                    assoc[who] = dst
                    if transition_log is not None:
                        transition_log.extend(
                            zip([t] * who.size, who.tolist(),
                                src.tolist(), dst.tolist()))

        u_tot[t] = H - int(employed.sum())
        if t >= burnin:
            sum_L += L_count
            sum_U += U_count
            sum_A += A_t
            sum_O += O_t
            bi = (t - burnin) // batch_len if batch_len > 0 else nb
            if bi < nb:
                batch_L[bi] += L_count
                batch_U[bi] += U_count
                batch_A[bi] += A_t
                batch_O[bi] += O_t

    return (sum_L, sum_U, sum_A, sum_O,
            batch_L, batch_U, batch_A, batch_O, u_tot)
