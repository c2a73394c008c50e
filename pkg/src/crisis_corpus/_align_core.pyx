# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled alignment DP. Same contract as ``_align_py.align_lengths``."""
from libc.math cimport sqrt, log, erfc, fabs, INFINITY
from libc.stdlib cimport malloc, free

from ._cost import MOVES, NEG_LOG_PRIOR, SQRT2, SQRT_PI, TAIL_SWITCH


cdef inline double _penalty(long src_len, long tgt_len, double c, double s2,
                            double sqrt2, double sqrt_pi, double switch) nogil:
    cdef long denom_len = src_len if src_len > 1 else 1
    cdef double delta = (<double>tgt_len - <double>src_len * c) / sqrt(<double>denom_len * s2)
    cdef double x = fabs(delta) / sqrt2
    cdef double inv, series
    if x <= switch:
        return -log(erfc(x))
    inv = 1.0 / (x * x)
    series = 1.0 - 0.5 * inv + 0.75 * inv * inv - 1.875 * inv * inv * inv
    return x * x + log(x * sqrt_pi) - log(series)


def align_lengths(src_lens, tgt_lens, bint allow_22=True, double c=1.0, double s2=6.8):
    cdef Py_ssize_t m = len(src_lens), n = len(tgt_lens)
    cdef Py_ssize_t width = n + 1
    cdef Py_ssize_t i, j, k, pi, pj
    cdef int n_moves
    cdef int di[6]
    cdef int dj[6]
    cdef double prior[6]
    cdef double sqrt2 = SQRT2, sqrt_pi = SQRT_PI, switch = TAIL_SWITCH
    cdef double best, prev, bead, total
    cdef int best_k

    moves = [mv for mv in MOVES if allow_22 or mv != (2, 2)]
    n_moves = len(moves)
    for k in range(n_moves):
        di[k] = moves[k][0]
        dj[k] = moves[k][1]
        prior[k] = NEG_LOG_PRIOR[moves[k]]

    cdef long *src_pre = <long *> malloc((m + 1) * sizeof(long))
    cdef long *tgt_pre = <long *> malloc((n + 1) * sizeof(long))
    cdef double *cost = <double *> malloc((m + 1) * width * sizeof(double))
    cdef signed char *back = <signed char *> malloc((m + 1) * width * sizeof(signed char))
    if not src_pre or not tgt_pre or not cost or not back:
        free(src_pre); free(tgt_pre); free(cost); free(back)
        raise MemoryError()

    try:
        src_pre[0] = 0
        for i in range(m):
            src_pre[i + 1] = src_pre[i] + <long> src_lens[i]
        tgt_pre[0] = 0
        for j in range(n):
            tgt_pre[j + 1] = tgt_pre[j] + <long> tgt_lens[j]

        with nogil:
            for i in range(m + 1):
                for j in range(n + 1):
                    if i == 0 and j == 0:
                        cost[0] = 0.0
                        back[0] = -1
                        continue
                    best = INFINITY
                    best_k = -1
                    for k in range(n_moves):
                        pi = i - di[k]
                        pj = j - dj[k]
                        if pi < 0 or pj < 0:
                            continue
                        prev = cost[pi * width + pj]
                        if prev == INFINITY:
                            continue
                        bead = prior[k] + _penalty(src_pre[i] - src_pre[pi], tgt_pre[j] - tgt_pre[pj],
                                                   c, s2, sqrt2, sqrt_pi, switch)
                        total = prev + bead
                        if total < best:
                            best = total
                            best_k = k
                    cost[i * width + j] = best
                    back[i * width + j] = best_k

        path = []
        i = m
        j = n
        while i or j:
            k = back[i * width + j]
            path.append(moves[k])
            i -= di[k]
            j -= dj[k]
        path.reverse()
        return cost[m * width + n], path
    finally:
        free(src_pre)
        free(tgt_pre)
        free(cost)
        free(back)
