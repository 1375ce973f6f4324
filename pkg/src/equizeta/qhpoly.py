"""Quasihomogeneous polynomials, their weights and diagonal symmetry groups."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm

from . import _linalg
from .torsion_lattice import (
    FiniteDiagonalGroup,
    InfiniteKernel,
    TorsionVector,
    canonicalize,
    contains,
    cyclic,
    join,
    kernel_mod_1,
)


class NotQuasihomogeneous(ValueError):
    pass


class WeightsNotUnique(ValueError):
    pass


class NonPositiveWeight(ValueError):
    pass


@dataclass(frozen=True)
class WeightSystem:
    q: tuple
    d: int

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(int(x) for x in self.q))
        if self.d < 1 or any(x < 1 for x in self.q):
            raise NonPositiveWeight(f"weights {self.q}, degree {self.d}")
        if self.q and gcd(*self.q) != 1:
            raise ValueError(f"weights {self.q} are not primitive")

    @property
    def n(self):
        return len(self.q)

    def degree(self, exps):
        return sum(a * b for a, b in zip(self.q, exps))

    def line_element(self, t):
        """The point t*q of the additive C*-line, reduced mod 1."""
        return TorsionVector(tuple(Fraction(t) * x for x in self.q))


@dataclass(frozen=True)
class QuasiPolynomial:
    """A polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero Fractions.  For a nonzero
    polynomial the weights are inferred unless given explicitly (restrictions
    carry the weights induced from the parent polynomial).  The zero
    polynomial keeps the induced weight data as ``(q, d)`` in ``induced``.
    """

    n: int
    terms: tuple
    variables: tuple = None
    induced: tuple = field(default=None, compare=False)

    def __post_init__(self):
        terms = {}
        for exps, coeff in (self.terms.items() if isinstance(self.terms, dict) else self.terms):
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.n:
                raise ValueError(f"exponent {exps} has wrong length for n={self.n}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if exps in terms:
                raise ValueError(f"repeated exponent {exps}")
            coeff = Fraction(coeff)
            if coeff:
                terms[exps] = coeff
        object.__setattr__(self, "terms", tuple(sorted(terms.items())))
        if self.variables is None:
            names = ("x", "y", "z", "w") if self.n <= 4 else tuple(f"x{i+1}" for i in range(self.n))
            object.__setattr__(self, "variables", names[: self.n])
        else:
            object.__setattr__(self, "variables", tuple(self.variables))

    @classmethod
    def from_dict(cls, terms, variables=None):
        terms = dict(terms)
        n = len(next(iter(terms))) if terms else len(variables or ())
        return cls(n, terms, variables)

    @property
    def support(self):
        return [e for e, _ in self.terms]

    @property
    def coefficients(self):
        return dict(self.terms)

    def is_zero(self):
        return not self.terms

    @cached_property
    def weights(self):
        if self.induced is not None:
            q, d = self.induced
            return WeightSystem(q, d)
        return infer_weights(self)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms:
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e)
            if c == 1 and mono:
                parts.append(mono)
            elif mono:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts)


def infer_weights(p):
    """The unique primitive weight system (q; d) with <q, k> = d on the support."""
    if p.is_zero():
        raise NotQuasihomogeneous("zero polynomial")
    supp = p.support
    for i in range(p.n):
        if all(k[i] == 0 for k in supp):
            raise WeightsNotUnique(f"variable {p.variables[i]} does not occur")
    rows = [list(k) + [-1] for k in supp]
    null = _linalg.nullspace(rows, p.n + 1)
    if not null:
        raise NotQuasihomogeneous(f"no weight system fits {p}")
    if len(null) > 1:
        raise WeightsNotUnique(f"support of {p} spans less than a hyperplane")
    v = null[0]
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    if ints[-1] == 0:
        raise NotQuasihomogeneous(f"support of {p} lies on a hyperplane through 0")
    q, d = ints[:-1], ints[-1]
    if any(x <= 0 for x in q):
        raise NonPositiveWeight(f"weights {q} for {p}")
    return WeightSystem(tuple(q), d)


def exponent_matrix(p):
    return [list(k) for k in p.support]


def symmetry_group(p):
    """G_f: diagonal elements preserving every monomial of f."""
    p.weights  # validates the uniqueness condition
    try:
        return kernel_mod_1(exponent_matrix(p), p.n)
    except InfiniteKernel as exc:  # excluded by the uniqueness condition
        raise AssertionError(f"infinite symmetry group for {p}") from exc


def monodromy_element(p):
    w = p.weights
    h = w.line_element(Fraction(1, w.d))
    for k in p.support:
        assert sum(a * b for a, b in zip(h.coords, k)).denominator == 1
    return h


def restrict(p, J):
    """f with x_i := 0 for i outside J (0-based), as a polynomial in the J variables."""
    J = sorted(set(J))
    if any(j < 0 or j >= p.n for j in J):
        raise IndexError(f"index set {J} outside 0..{p.n - 1}")
    w = p.weights
    terms = {}
    for exps, c in p.terms:
        if all(exps[i] == 0 for i in range(p.n) if i not in J):
            terms[tuple(exps[i] for i in J)] = c
    qJ = tuple(w.q[i] for i in J)
    variables = tuple(p.variables[i] for i in J)
    if not terms:
        return QuasiPolynomial(len(J), {}, variables, induced=(qJ, w.d))
    g = gcd(*qJ)
    return QuasiPolynomial(len(J), terms, variables,
                           induced=(tuple(x // g for x in qJ), w.d // g))


@dataclass(frozen=True)
class ExtendedGroup:
    """The group C* . G inside the extended symmetry group, G finite with h in G."""

    weights: WeightSystem
    finite_part: FiniteDiagonalGroup

    def __post_init__(self):
        if self.finite_part.n != self.weights.n:
            raise ValueError("dimension mismatch between weights and finite part")
        if self.monodromy not in self.finite_part:
            raise ValueError("the monodromy element must lie in the finite part")

    @property
    def n(self):
        return self.weights.n

    @property
    def monodromy(self):
        return self.weights.line_element(Fraction(1, self.weights.d))

    def line_subgroup(self, M):
        """The cyclic subgroup <q/M> of the C*-line."""
        return cyclic(self.weights.line_element(Fraction(1, M)))

    def torsion_cover(self, M):
        """G + <q/M>: a finite subgroup of this group."""
        return join(self.finite_part, self.line_subgroup(M))

    def contains_subgroup(self, H):
        M = lcm(H.N, self.finite_part.N)
        return contains(self.torsion_cover(M), H)

    def __contains__(self, a):
        return ext_member(self, a)

    def isotropy(self, J):
        """Elements fixing the coordinate torus indexed by the nonempty set J (0-based)."""
        from .torsion_lattice import coordinate_kernel

        J = sorted(set(J))
        if not J:
            raise ValueError("isotropy of the origin stratum is infinite")
        M = self.weights.q[J[0]] * self.finite_part.N
        return coordinate_kernel(self.torsion_cover(M), J)


def ext_member(Gbar, a):
    """Is there a rational t with a - t*q in G (mod 1)?"""
    if a.n != Gbar.n:
        return False
    M = lcm(a.order, Gbar.finite_part.N)
    return a in Gbar.torsion_cover(M)


def full_symmetry_group(p):
    return ExtendedGroup(p.weights, symmetry_group(p))


def monodromy_group(p):
    return ExtendedGroup(p.weights, cyclic(monodromy_element(p)))


def generated_group(p, generators):
    """C* . <generators, h>; raises ValueError if a generator is not in G_f."""
    Gf = symmetry_group(p)
    for g in generators:
        if g not in Gf:
            raise ValueError(f"{g} does not preserve f")
    return ExtendedGroup(p.weights, canonicalize(list(generators) + [monodromy_element(p)], p.n))
