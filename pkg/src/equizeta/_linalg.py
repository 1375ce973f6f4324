"""Small exact linear algebra over Z and Q.

Matrices are lists of rows.  Entries are Python ints or Fractions; nothing
here ever touches floating point.
"""

from fractions import Fraction
from math import lcm


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def rref(rows, ncols=None):
    """Reduced row echelon form over Q.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    M = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def _integer_rows(rows):
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank(rows):
    """Rank over Q by fraction-free (Bareiss) elimination."""
    M = _integer_rows(rows)
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        for i in range(r + 1, len(M)):
            a = M[i][c]
            M[i] = [(p * x - a * y) // prev for x, y in zip(M[i], M[r])]
        prev = p
        r += 1
        if r == len(M):
            break
    return r


def nullspace(rows, ncols):
    """Basis of {v in Q^ncols : rows . v = 0}."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def inverse(A):
    n = len(A)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(A)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def det(A):
    """Exact determinant (Bareiss) of a square integer or rational matrix."""
    n = len(A)
    if n == 0:
        return 1
    den = 1
    for row in A:
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
    M = [[int(x * den) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return Fraction(sign * M[n - 1][n - 1], den ** n)


def solve_left(B, v):
    """Solve ``c . B = v`` for c, B of full row rank.  Returns None if no solution."""
    k = len(B)
    n = len(v)
    # columns of the system are the rows of B
    aug = [[Fraction(B[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(n)]
    R, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    if len(pivots) < k:
        raise ValueError("B does not have full row rank")
    c = [Fraction(0)] * k
    for row, pc in zip(R, pivots):
        c[pc] = row[k]
    return c
