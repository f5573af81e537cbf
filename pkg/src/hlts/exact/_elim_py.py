"""Pure-Python fraction-free Gauss-Jordan elimination over the integers.

Rows are integer lists.  The echelon basis is kept fully reduced: every
pivot row is primitive (content 1), has a positive pivot entry, and is zero
in every other pivot column.  Rows are inserted one at a time, so zero and
dependent rows cost a single reduction pass and are then discarded.
"""

from math import gcd


def _primitive(r, lead):
    g = gcd(*r)
    if g > 1:
        r = [x // g for x in r]
    if r[lead] < 0:
        r = [-x for x in r]
    return r


def rref_int(rows, ncols):
    """Return ``(basis, pivots)`` for the row space of ``rows``.

    ``basis`` is sorted by pivot column and ``pivots[i]`` is the pivot column
    of ``basis[i]``.
    """
    piv = {}
    for src in rows:
        if len(src) != ncols:
            raise ValueError("row length does not match column count")
        r = list(src)
        if not any(r):
            continue
        for c, p in piv.items():
            a = r[c]
            if a:
                pc = p[c]
                r = [x * pc - a * y for x, y in zip(r, p)]
        lead = next((j for j, x in enumerate(r) if x), None)
        if lead is None:
            continue
        r = _primitive(r, lead)
        rl = r[lead]
        for c in list(piv):
            p = piv[c]
            a = p[lead]
            if a:
                p = [x * rl - a * y for x, y in zip(p, r)]
                piv[c] = _primitive(p, c)
        piv[lead] = r
    pivots = sorted(piv)
    return [piv[c] for c in pivots], pivots
