# cython: boundscheck=False, wraparound=False
"""Compiled row reduction kernel on numerator/denominator pair matrices.

Same contract and algorithm as _rref_py.rref_pairs; entries are Python ints
(arbitrary precision), kept reduced with positive denominators.  The speedup
comes from typed loop indices and from doing rational arithmetic on int pairs
instead of Fraction objects.
"""

from math import gcd


cdef inline tuple _reduce(object n, object d):
    if n == 0:
        return 0, 1
    if d < 0:
        n = -n
        d = -d
    g = gcd(n, d)
    if g > 1:
        n = n // g
        d = d // g
    return n, d


def rref_pairs(list num, list den):
    """Reduce (num[i][j]/den[i][j]) to reduced row echelon form, in place."""
    cdef Py_ssize_t m = len(num)
    cdef Py_ssize_t n = len(<list>num[0]) if m else 0
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef list pivots = []
    cdef list row_n, row_d, tn, td
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if (<list>num[i])[c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            num[r], num[pr] = num[pr], num[r]
            den[r], den[pr] = den[pr], den[r]
        row_n = <list>num[r]
        row_d = <list>den[r]
        pn = row_n[c]
        pd = row_d[c]
        for j in range(c, n):
            nj, dj = _reduce(row_n[j] * pd, row_d[j] * pn)
            row_n[j] = nj
            row_d[j] = dj
        for i in range(m):
            if i == r:
                continue
            tn = <list>num[i]
            if tn[c] == 0:
                continue
            td = <list>den[i]
            fn = tn[c]
            fd = td[c]
            for j in range(c, n):
                if row_n[j] == 0:
                    continue
                an = tn[j] * fd * row_d[j] - fn * row_n[j] * td[j]
                ad = td[j] * fd * row_d[j]
                nj, dj = _reduce(an, ad)
                tn[j] = nj
                td[j] = dj
        pivots.append(c)
        r += 1
        if r == m:
            break
    return num, den, pivots
