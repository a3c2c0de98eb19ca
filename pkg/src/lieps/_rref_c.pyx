# cython: boundscheck=False, wraparound=False
"""Compiled twin of _rref_py.rref_int_rows.

Same one-step fraction-free Gauss-Jordan, same pivot choices, same output;
entries are python ints (arbitrary precision), cython only strips the loop
and indexing overhead.  Keep in sync with _rref_py.py line for line.
"""


def rref_int_rows(m, Py_ssize_t ncols):
    cdef Py_ssize_t nrows, r, c, i, j, p
    rows = [list(row) for row in m]
    nrows = len(rows)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        p = -1
        for i in range(r, nrows):
            if (<list>rows[i])[c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv_row = <list>rows[r]
        piv = piv_row[c]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>rows[i]
            f = row[c]
            for j in range(ncols):
                row[j] = (piv * row[j] - f * piv_row[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots
