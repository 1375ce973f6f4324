"""Characters of C*.G, the completed ring of non-positive representations,
Exp/Log, equivariant Poincare series and the tautological map into K(Gbar).

A character alpha of Gbar = C*.G is the pair (k, chi): alpha(lambda) =
lambda^k on C* and chi on G, given by its values c_j/e_j on the cyclic
(Smith) generators of G.  The two parts must agree on C* cap G = <h>:
chi(h) = k/d mod 1.  Functions act by (a*g)(x) = g(a^-1 x), so the monomial
x^m spans the character k = -<q, m>, chi(g) = -<g, m>.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

from . import kernels
from .burnside import ExtBurnsideElement
from .torsion_lattice import canonicalize


class MalformedConstantTerm(ValueError):
    pass


class NonNegativeCharacter(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ExtCharacter:
    k: int
    chi: tuple

    def __str__(self):
        return f"[{self.k}|{','.join(map(str, self.chi))}]"


class CharacterSpace:
    """Character bookkeeping for one extended group Gbar."""

    def __init__(self, Gbar):
        self.Gbar = Gbar
        G = Gbar.finite_part
        self.G = G
        self.d = Gbar.weights.d
        self.q = Gbar.weights.q
        self.orders = tuple(G.invariant_factors)
        self.gens = G.snf_generators
        self.size = prod(self.orders)
        self.h_coords = G.snf_coordinates(Gbar.monodromy)
        self._table = None

    # -- construction and checks

    def chi_value(self, chi, g):
        """chi(g) in [0, 1) for g in G."""
        coords = self.G.snf_coordinates(g)
        return sum((Fraction(c * x, e) for c, x, e in zip(chi, coords, self.orders)),
                   Fraction(0)) % 1

    def compatible(self, k, chi):
        val = sum((Fraction(c * x, e) for c, x, e in zip(chi, self.h_coords, self.orders)),
                  Fraction(0))
        return (val - Fraction(k, self.d)).denominator == 1

    def make(self, k, chi):
        chi = tuple(int(c) % e for c, e in zip(chi, self.orders))
        if not self.compatible(k, chi):
            raise ValueError(f"character ({k}, {chi}) is not defined on C*.G")
        return ExtCharacter(int(k), chi)

    def char_of_monomial(self, m):
        if any(e < 0 for e in m):
            raise ValueError("negative exponent")
        k = -sum(a * b for a, b in zip(self.q, m))
        chi = []
        for g, e in zip(self.gens, self.orders):
            val = -sum((a * b for a, b in zip(g.coords, m)), Fraction(0))
            chi.append(int(val * e) % e)
        return self.make(k, chi)

    def alpha_x(self, i):
        m = [0] * len(self.q)
        m[i] = 1
        return self.char_of_monomial(m)

    def alpha_f(self, p):
        chars = {self.char_of_monomial(m) for m in p.support}
        assert len(chars) == 1, "monomials of f span different characters"
        return chars.pop()

    def mul(self, a, b):
        return ExtCharacter(a.k + b.k, tuple((x + y) % e for x, y, e in zip(a.chi, b.chi, self.orders)))

    def inverse(self, a):
        return ExtCharacter(-a.k, tuple((-x) % e for x, e in zip(a.chi, self.orders)))

    def power(self, a, j):
        return ExtCharacter(a.k * j, tuple((x * j) % e for x, e in zip(a.chi, self.orders)))

    # -- flat indexing for the dense kernels

    def flat(self, chi):
        idx = 0
        for c, e in zip(chi, self.orders):
            idx = idx * e + c
        return idx

    def unflat(self, idx):
        out = []
        for e in reversed(self.orders):
            out.append(idx % e)
            idx //= e
        return tuple(reversed(out))

    @property
    def table(self):
        if self._table is None:
            chis = [self.unflat(i) for i in range(self.size)]
            self._table = np.array(
                [[self.flat(tuple((x + y) % e for x, y, e in zip(a, b, self.orders)))
                  for b in chis] for a in chis], dtype=np.int64).reshape(self.size, self.size)
        return self._table

    def kernel(self, alpha):
        """ker(alpha) as a finite subgroup of (Q/Z)^n; alpha must have k != 0."""
        if alpha.k == 0:
            raise NonNegativeCharacter("kernel of a degree-0 character is infinite")
        w = self.Gbar.weights
        gens = [w.line_element(Fraction(1, abs(alpha.k)))]
        for g, c, e in zip(self.gens, alpha.chi, self.orders):
            gens.append(g - w.line_element(Fraction(c, e * alpha.k)))
        H = canonicalize(gens, len(self.q))
        assert H.order * self.d == abs(alpha.k) * self.G.order
        assert self.Gbar.contains_subgroup(H)
        return H


# --- series ----------------------------------------------------------------


class NegSeries:
    """Truncated element of the completion: coefficients on characters with -D <= k <= 0."""

    def __init__(self, space, D, coeffs=None):
        self.space = space
        self.D = int(D)
        self.coeffs = {}
        for a, c in (coeffs or {}).items():
            if a.k > 0:
                raise ValueError(f"positive character {a}")
            if -a.k <= self.D and c:
                self.coeffs[a] = self.coeffs.get(a, 0) + int(c)
        self.coeffs = {a: c for a, c in self.coeffs.items() if c}

    @classmethod
    def one(cls, space, D):
        return cls(space, D, {space.make(0, (0,) * len(space.orders)): 1})

    @classmethod
    def from_dense(cls, space, arr):
        D = arr.shape[0] - 1
        coeffs = {}
        for deg in range(D + 1):
            for idx in range(space.size):
                v = int(arr[deg, idx])
                if v:
                    coeffs[ExtCharacter(-deg, space.unflat(idx))] = v
        return cls(space, D, coeffs)

    def dense(self):
        arr = np.zeros((self.D + 1, self.space.size), dtype=object)
        arr[:, :] = 0
        for a, c in self.coeffs.items():
            arr[-a.k, self.space.flat(a.chi)] = c
        return arr

    def degree_part(self, deg):
        """Coefficients at k = -deg."""
        return {a: c for a, c in self.coeffs.items() if a.k == -deg}

    def constant_term(self):
        return sum(self.degree_part(0).values()), self.degree_part(0)

    def truncate(self, D):
        return NegSeries(self.space, D, self.coeffs)

    def _check(self, other):
        if other.space is not self.space:
            raise ValueError("series over different groups")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, 0) + c
        return NegSeries(self.space, min(self.D, other.D), out)

    def __neg__(self):
        return NegSeries(self.space, self.D, {a: -c for a, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        D = min(self.D, other.D)
        a, b = self.truncate(D).dense(), other.truncate(D).dense()
        return NegSeries.from_dense(self.space, kernels.convolve(a, b, self.space.table))

    def __eq__(self, other):
        return (isinstance(other, NegSeries) and self.space is other.space
                and self.D == other.D and self.coeffs == other.coeffs)

    def __repr__(self):
        terms = " + ".join(f"{c}{a}" for a, c in sorted(self.coeffs.items(), key=lambda t: (-t[0].k, t[0].chi)))
        return f"NegSeries(D={self.D}: {terms or '0'})"

    def specialize(self):
        """Forget the finite part: coefficients of t^0..t^D."""
        out = [0] * (self.D + 1)
        for a, c in self.coeffs.items():
            out[-a.k] += c
        return out


def _apply_factor(arr, space, alpha, s):
    """Multiply a dense series by (1 - [alpha])^(-s)."""
    shift, char = -alpha.k, space.flat(alpha.chi)
    if shift <= 0:
        raise ValueError("factor must have a negative character")
    step = kernels.mul_geometric if s > 0 else kernels.mul_one_minus
    for _ in range(abs(s)):
        arr = step(arr, shift, char, space.table)
    return arr


def exp_map(a):
    """Exp(sum s_alpha [alpha]) = prod (1 - [alpha])^(-s_alpha)."""
    space = a.space
    if any(al.k >= 0 for al in a.coeffs):
        raise ValueError("Exp needs support in strictly negative degrees")
    arr = NegSeries.one(space, a.D).dense()
    for alpha, s in sorted(a.coeffs.items()):
        arr = _apply_factor(arr, space, alpha, s)
    return NegSeries.from_dense(space, arr)


def log_map(P):
    """Inverse of Exp on 1 + I, computed degree by degree."""
    space = P.space
    total, part = P.constant_term()
    if part != NegSeries.one(space, 0).coeffs:
        raise MalformedConstantTerm(f"constant term {part} is not 1")
    target = P.dense()
    cur = NegSeries.one(space, P.D).dense()
    out = {}
    for deg in range(1, P.D + 1):
        for idx in range(space.size):
            c = int(target[deg, idx]) - int(cur[deg, idx])
            if c:
                alpha = ExtCharacter(-deg, space.unflat(idx))
                out[alpha] = c
                cur = _apply_factor(cur, space, alpha, c)
    return NegSeries(space, P.D, out)


# --- Poincare series -------------------------------------------------------


def poincare_counted(p, space, D, which="hypersurface"):
    """Equivariant Poincare series by direct enumeration of monomials."""
    xchar = [space.flat(space.alpha_x(i).chi) for i in range(len(space.q))]
    counts = kernels.count_monomials(space.q, xchar, space.table, D)
    ambient = NegSeries.from_dense(space, counts)
    if which == "ambient":
        return ambient
    if which != "hypersurface":
        raise ValueError(f"unknown ring {which!r}")
    af = space.alpha_f(p)
    inv = space.inverse(af)
    out = {}
    for alpha, c in ambient.coeffs.items():
        out[alpha] = out.get(alpha, 0) + c
        beta = space.mul(alpha, inv)
        if beta.k <= 0:
            out[alpha] -= ambient.coeffs.get(beta, 0)
    return NegSeries(space, D, out)


@dataclass(frozen=True)
class ClosedForm:
    """prod (1 - [a])^{+1} over numerator / prod (1 - [b]) over denominator."""

    numerator: tuple
    denominator: tuple


def poincare_closed(p, space, which="hypersurface"):
    den = tuple(space.alpha_x(i) for i in range(len(space.q)))
    num = (space.alpha_f(p),) if which == "hypersurface" else ()
    return ClosedForm(num, den)


def expand(closed, space, D):
    arr = NegSeries.one(space, D).dense()
    for a in closed.numerator:
        arr = kernels.mul_one_minus(arr, -a.k, space.flat(a.chi), space.table)
    for b in closed.denominator:
        arr = kernels.mul_geometric(arr, -b.k, space.flat(b.chi), space.table)
    return NegSeries.from_dense(space, arr)


class FiniteRepElement(dict):
    """Finite integer combination of characters (an element of R_-)."""

    def __init__(self, space, coeffs=()):
        super().__init__()
        self.space = space
        for a, c in dict(coeffs).items():
            if c:
                self[a] = self.get(a, 0) + int(c)
        for a in [a for a, c in self.items() if not c]:
            del self[a]

    def as_series(self, D):
        return NegSeries(self.space, D, self)


def log_poincare(p, space):
    """sum [alpha_{x_i}] - [alpha_f]."""
    coeffs = {}
    for i in range(len(space.q)):
        a = space.alpha_x(i)
        coeffs[a] = coeffs.get(a, 0) + 1
    af = space.alpha_f(p)
    coeffs[af] = coeffs.get(af, 0) - 1
    return FiniteRepElement(space, coeffs)


def tau(a):
    """Tau[alpha] = [Gbar / ker alpha], extended additively."""
    space = a.space
    out = ExtBurnsideElement(space.Gbar)
    for alpha, c in a.items():
        if alpha.k >= 0:
            raise NonNegativeCharacter(f"{alpha} is not negative")
        out = out + ExtBurnsideElement(space.Gbar, {space.kernel(alpha): c})
    return out


def classical_poincare(p, D):
    """Quasidegree Poincare series of C[x]/(f), counted monomial by monomial."""
    from .strata_euler import monomials_of_degree

    w = p.weights
    amb = [len(monomials_of_degree(w.q, j)) for j in range(D + 1)]
    return [amb[j] - (amb[j - w.d] if j >= w.d else 0) for j in range(D + 1)]
