"""Pure-python fraction-free row reduction kernel.

One-step fraction-free Gauss-Jordan over python integers: at every pivot step
all other rows are updated by (piv*row - f*pivrow) // prev, where prev is the
previous pivot.  The division is exact (entries stay minors of the input), so
values never leave Z.  The caller scales away denominators first and divides
each returned row by its own pivot entry afterwards to reach the RREF.

The update must touch every non-pivot row, including rows with a zero
multiplier; skipping the rescale would break exactness of later divisions.

Mirror of _rref_c.pyx; keep the two in sync line for line.
"""


def rref_int_rows(m, ncols):
    """Reduce integer rows, returning (rows, pivots).

    Dividing returned row t by its entry in column pivots[t] yields the RREF.
    Rows past the last pivot come back identically zero.
    """
    rows = [list(r) for r in m]
    nrows = len(rows)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        p = -1
        for i in range(r, nrows):
            if rows[i][c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv_row = rows[r]
        piv = piv_row[c]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            for j in range(ncols):
                row[j] = (piv * row[j] - f * piv_row[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots
