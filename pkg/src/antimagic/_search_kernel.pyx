# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled backtracking kernel over int64 keys.

Same contract as ``_search_py.search_first``; the caller guarantees that no
intermediate vertex value overflows 63 bits.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t


def search_first(keys, init, eu, ev, sat_ptr, sat_v, bint product):
    cdef Py_ssize_t m = len(keys)
    cdef Py_ssize_t n = len(init)
    cdef Py_ssize_t i, j, k, c, top, t
    cdef int u, w, v
    cdef int64_t x
    cdef bint ok, placed

    if m == 0:
        return [] if len(set(init)) == n else None

    cdef int64_t *K = <int64_t *> malloc(m * sizeof(int64_t))
    cdef int64_t *val = <int64_t *> malloc(n * sizeof(int64_t))
    cdef int *EU = <int *> malloc(m * sizeof(int))
    cdef int *EV = <int *> malloc(m * sizeof(int))
    cdef int *SP = <int *> malloc((m + 1) * sizeof(int))
    cdef int *SV = <int *> malloc((len(sat_v) + 1) * sizeof(int))
    cdef char *used = <char *> malloc(m)
    cdef int *choice = <int *> malloc(m * sizeof(int))
    cdef int64_t *su = <int64_t *> malloc(m * sizeof(int64_t))
    cdef int64_t *sw = <int64_t *> malloc(m * sizeof(int64_t))
    # values of saturated vertices, kept as a stack in saturation order
    cdef int64_t *closed = <int64_t *> malloc((n + 1) * sizeof(int64_t))
    cdef int *closed_top = <int *> malloc((m + 1) * sizeof(int))

    try:
        for i in range(m):
            K[i] = keys[i]
            EU[i] = eu[i]
            EV[i] = ev[i]
            used[i] = 0
            choice[i] = -1
        for i in range(m + 1):
            SP[i] = sat_ptr[i]
        for i in range(len(sat_v)):
            SV[i] = sat_v[i]
        for i in range(n):
            val[i] = init[i]

        top = 0
        k = 0
        closed_top[0] = 0
        while True:
            if choice[k] >= 0:
                used[choice[k]] = 0
                top = closed_top[k]
                val[EU[k]] = su[k]
                val[EV[k]] = sw[k]
            c = choice[k] + 1
            placed = False
            while c < m:
                if not used[c]:
                    u = EU[k]
                    w = EV[k]
                    su[k] = val[u]
                    sw[k] = val[w]
                    if product:
                        val[u] *= K[c]
                        val[w] *= K[c]
                    else:
                        val[u] += K[c]
                        val[w] += K[c]
                    ok = True
                    t = top
                    for j in range(SP[k], SP[k + 1]):
                        x = val[SV[j]]
                        for i in range(t):
                            if closed[i] == x:
                                ok = False
                                break
                        if not ok:
                            break
                        closed[t] = x
                        t += 1
                    if ok:
                        used[c] = 1
                        choice[k] = c
                        closed_top[k] = top
                        top = t
                        placed = True
                        break
                    val[u] = su[k]
                    val[w] = sw[k]
                c += 1
            if placed:
                if k == m - 1:
                    return [choice[i] for i in range(m)]
                k += 1
                choice[k] = -1
            else:
                choice[k] = -1
                k -= 1
                if k < 0:
                    return None
    finally:
        free(K); free(val); free(EU); free(EV); free(SP); free(SV)
        free(used); free(choice); free(su); free(sw); free(closed); free(closed_top)
