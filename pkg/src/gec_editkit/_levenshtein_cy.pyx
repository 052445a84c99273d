# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Levenshtein kernel.

Same DP and backtrace preferences (MATCH, SUBSTITUTE, DELETE, INSERT) as the
pure-Python twin in ``_levenshtein``; the hot loops run without the GIL so
threaded batch alignment scales.
"""

from libc.stdlib cimport free, malloc

cdef enum:
    C_MATCH = 0
    C_SUBSTITUTE = 1
    C_DELETE = 2
    C_INSERT = 3

OP_MATCH = C_MATCH
OP_SUBSTITUTE = C_SUBSTITUTE
OP_DELETE = C_DELETE
OP_INSERT = C_INSERT


def backtrace_ops(src_ids, tgt_ids):
    """Minimal-cost edit op stream between two id sequences (forward order)."""
    cdef Py_ssize_t n = len(src_ids)
    cdef Py_ssize_t m = len(tgt_ids)
    cdef Py_ssize_t width = m + 1
    cdef Py_ssize_t i, j
    cdef int *src = NULL
    cdef int *tgt = NULL
    cdef int *dp = NULL
    cdef unsigned char *ops = NULL
    cdef Py_ssize_t nops = 0
    cdef int s, best, diag, above, left, cost

    src = <int *>malloc((n if n > 0 else 1) * sizeof(int))
    tgt = <int *>malloc((m if m > 0 else 1) * sizeof(int))
    dp = <int *>malloc((n + 1) * width * sizeof(int))
    ops = <unsigned char *>malloc((n + m if n + m > 0 else 1) * sizeof(unsigned char))
    if src == NULL or tgt == NULL or dp == NULL or ops == NULL:
        free(src); free(tgt); free(dp); free(ops)
        raise MemoryError()
    try:
        for i in range(n):
            src[i] = src_ids[i]
        for j in range(m):
            tgt[j] = tgt_ids[j]

        with nogil:
            for j in range(width):
                dp[j] = <int>j
            for i in range(1, n + 1):
                dp[i * width] = <int>i
                s = src[i - 1]
                for j in range(1, width):
                    diag = dp[(i - 1) * width + j - 1]
                    above = dp[(i - 1) * width + j]
                    left = dp[i * width + j - 1]
                    if s == tgt[j - 1]:
                        best = diag
                    else:
                        best = diag + 1
                    if above + 1 < best:
                        best = above + 1
                    if left + 1 < best:
                        best = left + 1
                    dp[i * width + j] = best

            i = n
            j = m
            while i > 0 or j > 0:
                cost = dp[i * width + j]
                if i > 0 and j > 0 and src[i - 1] == tgt[j - 1] and dp[(i - 1) * width + j - 1] == cost:
                    ops[nops] = C_MATCH
                    i -= 1
                    j -= 1
                elif i > 0 and j > 0 and dp[(i - 1) * width + j - 1] + 1 == cost:
                    ops[nops] = C_SUBSTITUTE
                    i -= 1
                    j -= 1
                elif i > 0 and dp[(i - 1) * width + j] + 1 == cost:
                    ops[nops] = C_DELETE
                    i -= 1
                else:
                    ops[nops] = C_INSERT
                    j -= 1
                nops += 1

        out = bytearray(nops)
        for i in range(nops):
            out[i] = ops[nops - 1 - i]
        return bytes(out)
    finally:
        free(src)
        free(tgt)
        free(dp)
        free(ops)
