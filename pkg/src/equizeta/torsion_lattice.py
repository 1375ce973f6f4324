"""Elements and finite subgroups of (Q/Z)^n.

A diagonal matrix diag(exp(2 pi i r_1), ..., exp(2 pi i r_n)) of finite order
is stored additively as the torsion vector (r_1, ..., r_n) with 0 <= r_j < 1.
A finite subgroup is stored as a lattice L with N Z^n <= L <= Z^n, the group
being L / N Z^n scaled by 1/N.  ``N`` is always the exponent of the group and
``basis`` the lower-triangular Hermite normal form of L, so two equal
subgroups always have identical fields.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd, lcm, prod

from . import _linalg


class DimensionMismatch(ValueError):
    pass


class InfiniteKernel(ValueError):
    """The exponent rows do not span Q^n, so the solution group is infinite."""


def _frac_mod1(x):
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class TorsionVector:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_frac_mod1(c) for c in self.coords))

    @classmethod
    def of(cls, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (int, Fraction, str)):
            coords = tuple(coords[0])
        return cls(tuple(Fraction(c) for c in coords))

    @classmethod
    def zero(cls, n):
        return cls((Fraction(0),) * n)

    @property
    def n(self):
        return len(self.coords)

    @property
    def order(self):
        return lcm(1, *(c.denominator for c in self.coords))

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def integer_vector(self, N):
        """The integer vector N*coords; N must be a multiple of the order."""
        out = []
        for c in self.coords:
            v = c * N
            if v.denominator != 1:
                raise ValueError(f"{N} is not a multiple of the element order")
            out.append(int(v))
        return out

    def _check(self, other):
        if other.n != self.n:
            raise DimensionMismatch(f"dimension {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        return TorsionVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return TorsionVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return TorsionVector(tuple(-a for a in self.coords))

    def __mul__(self, k):
        return TorsionVector(tuple(a * k for a in self.coords))

    __rmul__ = __mul__

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


# --- integer normal forms -------------------------------------------------


def hermite_normal_form(rows, n):
    """Lower-triangular row HNF of a full-rank lattice in Z^n.

    Pivots sit on the diagonal and are positive; entries below a pivot are
    reduced into [0, pivot).  Raises ValueError if the rows do not have rank n.
    """
    work = [list(r) for r in rows if any(r)]
    basis = [None] * n
    for c in range(n - 1, -1, -1):
        active = [r for r in work if r[c] != 0]
        rest = [r for r in work if r[c] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[c] // p[c]
                r2 = [a - q * b for a, b in zip(r, p)]
                if r2[c]:
                    nxt.append(r2)
                elif any(r2):
                    rest.append(r2)
            active = nxt
        if not active:
            raise ValueError("lattice is not of full rank")
        p = active[0]
        if p[c] < 0:
            p = [-a for a in p]
        basis[c] = p
        work = rest
    for i in range(n):
        for j in range(i - 1, -1, -1):
            q = basis[i][j] // basis[j][j]
            if q:
                basis[i] = [a - q * b for a, b in zip(basis[i], basis[j])]
    return basis


def smith_normal_form(M):
    """Return (U, D, V) with U*M*V = D diagonal, d_1 | d_2 | ..., U, V unimodular."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, row)) for row in M]
    U = _linalg.identity(m)
    V = _linalg.identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
            left = [(abs(A[i][t]), i, None) for i in range(t + 1, m) if A[i][t]]
            left += [(abs(A[t][j]), None, j) for j in range(t + 1, n) if A[t][j]]
            if left:
                _, i, j = min(left, key=lambda e: e[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


def integer_left_kernel(M, nrows):
    """Basis (as rows) of {x in Z^nrows : x . M = 0}."""
    if not M or not M[0]:
        return _linalg.identity(nrows)
    U, D, _ = smith_normal_form(M)
    r = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
    return [list(row) for row in U[r:]]


# --- finite subgroups ------------------------------------------------------


@dataclass(frozen=True)
class FiniteDiagonalGroup:
    """Finite subgroup L/(N Z^n) of (Q/Z)^n in canonical form; build with ``canonicalize``."""

    n: int
    N: int
    basis: tuple

    @classmethod
    def _from_lattice(cls, rows, N, n):
        gens = [list(r) for r in rows] + [[N * int(i == j) for j in range(n)] for i in range(n)]
        B = hermite_normal_form(gens, n)
        e = 1
        for row in B:
            e = lcm(e, N // gcd(N, *row))
        if e != N:
            B = hermite_normal_form(
                [[a * e // N for a in row] for row in B]
                + [[e * int(i == j) for j in range(n)] for i in range(n)], n)
            N = e
        return cls(n, N, tuple(tuple(r) for r in B))

    @classmethod
    def trivial(cls, n):
        return cls._from_lattice([], 1, n)

    @property
    def order(self):
        return prod(self.N // self.basis[i][i] for i in range(self.n))

    @property
    def exponent(self):
        return self.N

    @property
    def key(self):
        return (self.N, self.basis)

    def __lt__(self, other):
        return (self.n,) + self.key < (other.n,) + other.key

    def generators(self):
        gens = []
        for row in self.basis:
            v = TorsionVector(tuple(Fraction(a, self.N) for a in row))
            if not v.is_zero():
                gens.append(v)
        return gens

    def elements(self):
        ranges = [range(self.N // self.basis[i][i]) for i in range(self.n)]
        for cs in product(*ranges):
            vec = [0] * self.n
            for c, row in zip(cs, self.basis):
                if c:
                    for j, a in enumerate(row):
                        vec[j] += c * a
            yield TorsionVector(tuple(Fraction(v, self.N) for v in vec))

    def lattice_coefficients(self, x):
        """Integer c with c . basis = N x (with x lifted to [0,1)^n), or None."""
        if x.n != self.n:
            raise DimensionMismatch(f"dimension {x.n} vs {self.n}")
        v = []
        for c in x.coords:
            t = c * self.N
            if t.denominator != 1:
                return None
            v.append(int(t))
        coeffs = [0] * self.n
        for col in range(self.n - 1, -1, -1):
            p = self.basis[col][col]
            if v[col] % p:
                return None
            k = v[col] // p
            coeffs[col] = k
            if k:
                v = [a - k * b for a, b in zip(v, self.basis[col])]
        return coeffs

    def __contains__(self, x):
        return self.lattice_coefficients(x) is not None

    # -- structure as an abstract group

    @cached_property
    def _snf(self):
        if self.n == 0:
            return [], [], []
        Binv = _linalg.inverse([list(r) for r in self.basis])
        R = [[int(x * self.N) for x in row] for row in Binv]
        U, D, V = smith_normal_form(R)
        Vinv = [[int(x) for x in row] for row in _linalg.inverse(V)]
        gens, orders, cols = [], [], []
        for j in range(self.n):
            e = D[j][j]
            if e == 1:
                continue
            coeff = Vinv[j]
            vec = [sum(c * self.basis[i][k] for i, c in enumerate(coeff)) for k in range(self.n)]
            gens.append(TorsionVector(tuple(Fraction(a, self.N) for a in vec)))
            orders.append(e)
            cols.append(j)
        return gens, orders, (V, cols)

    @property
    def invariant_factors(self):
        """Orders e_1 | e_2 | ... of a cyclic decomposition (trivial factors dropped)."""
        return tuple(self._snf[1])

    @property
    def snf_generators(self):
        return list(self._snf[0])

    def snf_coordinates(self, x):
        """Coordinates of x with respect to ``snf_generators``, reduced mod the orders."""
        c = self.lattice_coefficients(x)
        if c is None:
            raise ValueError(f"{x} is not in the group")
        _, orders, (V, cols) = self._snf
        out = []
        for e, j in zip(orders, cols):
            out.append(sum(c[i] * V[i][j] for i in range(self.n)) % e)
        return tuple(out)

    def is_cyclic(self):
        return len(self.invariant_factors) <= 1

    def __str__(self):
        gens = ", ".join(str(g) for g in self.generators())
        return f"<{gens}> (order {self.order})"


def canonicalize(generators, n=None):
    """Canonical form of the subgroup generated by torsion vectors."""
    generators = list(generators)
    if n is None:
        if not generators:
            raise ValueError("dimension needed for an empty generator list")
        n = generators[0].n
    for g in generators:
        if g.n != n:
            raise DimensionMismatch(f"generator of dimension {g.n} in dimension {n}")
    N = lcm(1, *(g.order for g in generators))
    return FiniteDiagonalGroup._from_lattice([g.integer_vector(N) for g in generators], N, n)


def cyclic(x):
    return canonicalize([x], x.n)


def _same_dim(A, B):
    if A.n != B.n:
        raise DimensionMismatch(f"dimension {A.n} vs {B.n}")


def _dual_rows(A):
    """Integer rows m spanning {m : <m, a> in Z for all a in A}."""
    if A.n == 0:
        return []
    Binv = _linalg.inverse([list(r) for r in A.basis])
    return _linalg.transpose([[int(x * A.N) for x in row] for row in Binv])


def kernel_mod_1(E, n=None):
    """{r in (Q/Z)^n : E r = 0 mod 1} for an integer matrix E (rows = exponent vectors)."""
    E = [list(map(int, row)) for row in E]
    if n is None:
        n = len(E[0]) if E else 0
    if any(len(row) != n for row in E):
        raise DimensionMismatch("rows of E have inconsistent length")
    if n == 0:
        return FiniteDiagonalGroup.trivial(0)
    if not E:
        raise InfiniteKernel("no equations")
    U, D, V = smith_normal_form(E)
    diag = [D[i][i] if i < len(D) else 0 for i in range(n)]
    if any(x == 0 for x in diag):
        raise InfiniteKernel("rows of E do not span Q^n")
    gens = [TorsionVector(tuple(Fraction(V[k][i], diag[i]) for k in range(n))) for i in range(n)]
    return canonicalize(gens, n)


def join(A, B):
    _same_dim(A, B)
    return canonicalize(A.generators() + B.generators(), A.n)


def intersect(A, B):
    _same_dim(A, B)
    rows = _dual_rows(A) + _dual_rows(B)
    if not rows:
        return FiniteDiagonalGroup.trivial(A.n)
    return kernel_mod_1(rows, A.n)


def contains(A, B):
    """True iff B is a subgroup of A."""
    _same_dim(A, B)
    if A.N % B.N:
        return False
    return all(g in A for g in B.generators())


def member(A, x):
    return x in A


def coordinate_kernel(A, J):
    """Elements of A whose coordinates indexed by J (0-based) vanish."""
    J = set(J)
    box = canonicalize(
        [TorsionVector(tuple(Fraction(int(i == j), A.N) for j in range(A.n)))
         for i in range(A.n) if i not in J], A.n)
    return intersect(A, box)
