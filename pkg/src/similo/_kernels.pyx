# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled edit-distance kernel (hot loop of the similarity scorer)."""

from libc.stdlib cimport free, malloc

BACKEND = "cython"


def levenshtein(str a, str b):
    """Unit-cost Levenshtein distance between two strings."""
    if a == b:
        return 0

    cdef Py_ssize_t lo = 0
    cdef Py_ssize_t hi_a = len(a)
    cdef Py_ssize_t hi_b = len(b)

    # Strip shared prefix/suffix; both are distance-neutral at unit cost.
    while lo < hi_a and lo < hi_b and a[lo] == b[lo]:
        lo += 1
    while hi_a > lo and hi_b > lo and a[hi_a - 1] == b[hi_b - 1]:
        hi_a -= 1
        hi_b -= 1

    cdef Py_ssize_t la = hi_a - lo
    cdef Py_ssize_t lb = hi_b - lo
    if la == 0:
        return lb
    if lb == 0:
        return la

    # Keep the DP row on the shorter string.
    cdef str sa = a
    cdef str sb = b
    cdef Py_ssize_t off_a = lo
    cdef Py_ssize_t off_b = lo
    cdef Py_ssize_t tmp
    if la < lb:
        sa, sb = sb, sa
        tmp = la
        la = lb
        lb = tmp

    cdef Py_ssize_t *row = <Py_ssize_t *> malloc((lb + 1) * sizeof(Py_ssize_t))
    if row == NULL:
        raise MemoryError()

    cdef Py_ssize_t i, j, above, diag, cell, best
    cdef Py_UCS4 ca, cb
    try:
        for j in range(lb + 1):
            row[j] = j
        for i in range(1, la + 1):
            ca = sa[off_a + i - 1]
            diag = row[0]
            row[0] = i
            for j in range(1, lb + 1):
                cb = sb[off_b + j - 1]
                above = row[j]
                cell = diag + (1 if ca != cb else 0)
                best = above + 1
                if row[j - 1] + 1 < best:
                    best = row[j - 1] + 1
                if cell < best:
                    best = cell
                row[j] = best
                diag = above
        return row[lb]
    finally:
        free(row)
