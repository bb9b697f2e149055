# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled simulation kernel — bit-identical twin of ``_kernel_py``.

Consumes the PCG64 uniform stream in the same fixed per-period layout as the
fallback (N firm-open draws, H separation draws, H pick draws, H hire draws),
so both kernels produce identical trajectories for identical seeds.
"""
import numpy as np

cimport numpy as cnp
from cpython.pycapsule cimport PyCapsule_GetPointer, PyCapsule_IsValid
from numpy.random cimport bitgen_t

cnp.import_array()

BACKEND = "cython"

cdef const char *_CAPSULE_NAME = "BitGenerator"


def run_kernel(indptr, indices, h, double lam, double v, long periods,
               long burnin, long batch_len, assoc0, seed):
    """See ``_kernel_py.run_kernel`` for the contract (no transition log here)."""
    ip_arr = np.ascontiguousarray(indptr, dtype=np.int64)
    ix_arr = np.ascontiguousarray(indices, dtype=np.int64)
    h_arr = np.ascontiguousarray(h, dtype=np.float64)
    assoc_arr = np.array(assoc0, dtype=np.int64)

    cdef const cnp.int64_t[::1] ip = ip_arr
    cdef const cnp.int64_t[::1] ix = ix_arr
    cdef const double[::1] hv = h_arr
    cdef cnp.int64_t[::1] assoc = assoc_arr
    cdef Py_ssize_t n = ip.shape[0] - 1
    cdef Py_ssize_t H = assoc.shape[0]

    rng = np.random.Generator(np.random.PCG64(seed))
    capsule = rng.bit_generator.capsule
    if not PyCapsule_IsValid(capsule, _CAPSULE_NAME):
        raise ValueError("invalid BitGenerator capsule")
    cdef bitgen_t *bg = <bitgen_t *> PyCapsule_GetPointer(capsule, _CAPSULE_NAME)

    cdef Py_ssize_t post = periods - burnin
    cdef Py_ssize_t nb = post // batch_len if batch_len > 0 else 0

    employed_arr = np.ones(H, dtype=np.uint8)
    fresh_arr = np.zeros(H, dtype=np.uint8)
    is_open_arr = np.zeros(n, dtype=np.uint8)
    L_arr = np.bincount(assoc_arr, minlength=n).astype(np.int64)
    U_arr = np.zeros(n, dtype=np.int64)
    A_arr = np.zeros(n, dtype=np.int64)
    O_arr = np.zeros(n, dtype=np.int64)
    sum_L_arr = np.zeros(n, dtype=np.int64)
    sum_U_arr = np.zeros(n, dtype=np.int64)
    sum_A_arr = np.zeros(n, dtype=np.int64)
    sum_O_arr = np.zeros(n, dtype=np.int64)
    batch_L_arr = np.zeros((nb, n), dtype=np.int64)
    batch_U_arr = np.zeros((nb, n), dtype=np.int64)
    batch_A_arr = np.zeros((nb, n), dtype=np.int64)
    batch_O_arr = np.zeros((nb, n), dtype=np.int64)
    u_tot_arr = np.zeros(periods, dtype=np.int64)
    buf_open_arr = np.zeros(n, dtype=np.float64)
    buf_sep_arr = np.zeros(H, dtype=np.float64)
    buf_pick_arr = np.zeros(H, dtype=np.float64)
    buf_hire_arr = np.zeros(H, dtype=np.float64)

    cdef cnp.uint8_t[::1] employed = employed_arr
    cdef cnp.uint8_t[::1] fresh = fresh_arr
    cdef cnp.uint8_t[::1] is_open = is_open_arr
    cdef cnp.int64_t[::1] L_count = L_arr
    cdef cnp.int64_t[::1] U_count = U_arr
    cdef cnp.int64_t[::1] A_t = A_arr
    cdef cnp.int64_t[::1] O_t = O_arr
    cdef cnp.int64_t[::1] sum_L = sum_L_arr
    cdef cnp.int64_t[::1] sum_U = sum_U_arr
    cdef cnp.int64_t[::1] sum_A = sum_A_arr
    cdef cnp.int64_t[::1] sum_O = sum_O_arr
    cdef cnp.int64_t[:, ::1] batch_L = batch_L_arr
    cdef cnp.int64_t[:, ::1] batch_U = batch_U_arr
    cdef cnp.int64_t[:, ::1] batch_A = batch_A_arr
    cdef cnp.int64_t[:, ::1] batch_O = batch_O_arr
    cdef cnp.int64_t[::1] u_tot = u_tot_arr
    cdef double[::1] buf_open = buf_open_arr
    cdef double[::1] buf_sep = buf_sep_arr
    cdef double[::1] buf_pick = buf_pick_arr
    cdef double[::1] buf_hire = buf_hire_arr

    cdef Py_ssize_t t, i, w, s, start, end, bi
    cdef cnp.int64_t f, j, c, r, cnt, cur_unemp = 0

    with nogil:
        for t in range(periods):
            for i in range(n):
                buf_open[i] = bg.next_double(bg.state)
            for w in range(H):
                buf_sep[w] = bg.next_double(bg.state)
            for w in range(H):
                buf_pick[w] = bg.next_double(bg.state)
            for w in range(H):
                buf_hire[w] = bg.next_double(bg.state)

            for i in range(n):
                is_open[i] = buf_open[i] < v
                A_t[i] = 0
                O_t[i] = 0

            for w in range(H):
                if employed[w] and buf_sep[w] < lam:
                    employed[w] = 0
                    fresh[w] = 1
                    f = assoc[w]
                    L_count[f] -= 1
                    U_count[f] += 1
                    cur_unemp += 1

            for w in range(H):
                if employed[w] or fresh[w]:
                    continue
                f = assoc[w]
                start = ip[f]
                end = ip[f + 1]
                c = 0
                for s in range(start, end):
                    if is_open[ix[s]]:
                        c += 1
                if c == 0:
                    continue
                r = <cnp.int64_t> (buf_pick[w] * c)
                if r > c - 1:
                    r = c - 1
                cnt = 0
                j = -1
                for s in range(start, end):
                    if is_open[ix[s]]:
                        if cnt == r:
                            j = ix[s]
                            break
                        cnt += 1
                A_t[j] += 1
                if buf_hire[w] < hv[j]:
                    O_t[f] += 1
                    U_count[f] -= 1
                    L_count[j] += 1
                    employed[w] = 1
                    assoc[w] = j
                    cur_unemp -= 1

            for w in range(H):
                fresh[w] = 0

            u_tot[t] = cur_unemp
            if t >= burnin:
                for i in range(n):
                    sum_L[i] += L_count[i]
                    sum_U[i] += U_count[i]
                    sum_A[i] += A_t[i]
                    sum_O[i] += O_t[i]
                if batch_len > 0:
                    bi = (t - burnin) // batch_len
                    if bi < nb:
                        for i in range(n):
                            batch_L[bi, i] += L_count[i]
                            batch_U[bi, i] += U_count[i]
                            batch_A[bi, i] += A_t[i]
                            batch_O[bi, i] += O_t[i]

    return (sum_L_arr, sum_U_arr, sum_A_arr, sum_O_arr,
            batch_L_arr, batch_U_arr, batch_A_arr, batch_O_arr, u_tot_arr)
