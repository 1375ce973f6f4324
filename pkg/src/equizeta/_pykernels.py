"""Pure-Python versions of the dense series kernels.

Arrays are indexed ``[degree][character]`` where ``degree`` is |k| and the
character is a flat index into the dual of the finite group; ``table[i][j]``
is the flat index of the product of characters i and j.  Every function
returns a fresh object-dtype array of exact Python ints.
"""

import numpy as np


def _out(rows):
    arr = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        arr[i, :] = row
    return arr


def count_monomials(q, xchar, table, D):
    """Count monomials by (weighted degree <= D, character)."""
    size = len(table)
    counts = [[0] * size for _ in range(D + 1)]
    n = len(q)

    def rec(i, deg, ch):
        if i == n:
            counts[deg][ch] += 1
            return
        step, c = q[i], xchar[i]
        while deg <= D:
            rec(i + 1, deg, ch)
            deg += step
            ch = table[ch][c]

    rec(0, 0, 0)
    return _out(counts)


def mul_geometric(arr, shift, char, table):
    """Multiply by 1/(1 - [alpha]) with alpha of degree ``shift`` and character ``char``."""
    rows = arr.tolist()
    D = len(rows) - 1
    for k in range(shift, D + 1):
        src, dst = rows[k - shift], rows[k]
        for i, v in enumerate(src):
            if v:
                dst[table[i][char]] += v
    return _out(rows)


def mul_one_minus(arr, shift, char, table):
    """Multiply by (1 - [alpha])."""
    rows = arr.tolist()
    D = len(rows) - 1
    for k in range(D, shift - 1, -1):
        src, dst = rows[k - shift], rows[k]
        for i, v in enumerate(src):
            if v:
                dst[table[i][char]] -= v
    return _out(rows)


def convolve(a, b, table):
    A, B = a.tolist(), b.tolist()
    D = len(A) - 1
    size = len(table)
    out = [[0] * size for _ in range(D + 1)]
    for k1 in range(D + 1):
        for i, x in enumerate(A[k1]):
            if not x:
                continue
            trow = table[i]
            for k2 in range(D + 1 - k1):
                dst = out[k1 + k2]
                for j, y in enumerate(B[k2]):
                    if y:
                        dst[trow[j]] += x * y
    return _out(out)
