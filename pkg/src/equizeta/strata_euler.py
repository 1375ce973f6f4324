"""Euler characteristics of the torus strata of the Milnor fibre and of X/G.

Index sets J are sorted tuples of 0-based variable indices.  Two routes give
chi(V_f cap (C*)^J): Moebius inversion of affine-fibre Euler characteristics
(from the Milnor-Orlik formula), and the Newton-polytope volume formula.  The
orbit-space values chi((X cap (C*)^J)/G) come from the polytope formula on the
quotient torus, which never looks at the Milnor fibre.
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm

from . import _linalg
from .polytope import normalized_volume
from .qhpoly import restrict
from .torsion_lattice import hermite_normal_form, integer_left_kernel

DEFAULT_RESOURCE_LIMIT = 20000


class UnsupportedRestriction(ValueError):
    def __init__(self, J, reason):
        super().__init__(f"restriction to J={tuple(j + 1 for j in J)}: {reason}")
        self.J = J


class ResourceLimit(RuntimeError):
    pass


class _NotIsolated:
    def __repr__(self):
        return "NotIsolated"


NOT_ISOLATED = _NotIsolated()


def resource_limit():
    return int(os.environ.get("EQUIZETA_RESOURCE_LIMIT", DEFAULT_RESOURCE_LIMIT))


def subsets(n):
    """All index sets of {0..n-1}, by size then lexicographically."""
    for k in range(n + 1):
        yield from combinations(range(n), k)


def monomials_of_degree(q, delta):
    """Exponent vectors m >= 0 with <q, m> = delta."""
    n = len(q)
    out = []

    def rec(i, rem, acc):
        if i == n - 1:
            if rem % q[i] == 0:
                out.append(tuple(acc) + (rem // q[i],))
            return
        for e in range(rem // q[i] + 1):
            acc.append(e)
            rec(i + 1, rem - e * q[i], acc)
            acc.pop()

    if delta < 0:
        return []
    if n == 0:
        return [()] if delta == 0 else []
    rec(0, delta, [])
    return out


def milnor_number(p):
    """prod (d - q_i)/q_i as an exact rational."""
    w = p.weights
    mu = Fraction(1)
    for qi in w.q:
        mu *= Fraction(w.d - qi, qi)
    return mu


def _partial(p, i):
    out = {}
    for exps, c in p.terms:
        if exps[i]:
            e = list(exps)
            e[i] -= 1
            out[tuple(e)] = c * exps[i]
    return out


def milnor_algebra_oracle(p):
    """dim C[x]/(df/dx_i) by graded rank computation, or NOT_ISOLATED."""
    w = p.weights
    q, d = w.q, w.d
    top = sum(d - 2 * qi for qi in q)
    guard = max(q) if q else 1
    limit = resource_limit()
    partials = [(_partial(p, i), d - q[i]) for i in range(p.n)]
    total = 0
    for delta in range(0, top + guard + 1):
        basis = monomials_of_degree(q, delta)
        if len(basis) > limit:
            raise ResourceLimit(f"{len(basis)} monomials in degree {delta}")
        if not basis:
            continue
        index = {m: j for j, m in enumerate(basis)}
        rows = []
        for dpoly, ddeg in partials:
            if not dpoly:
                continue
            for mult in monomials_of_degree(q, delta - ddeg):
                row = [0] * len(basis)
                for exps, c in dpoly.items():
                    row[index[tuple(a + b for a, b in zip(exps, mult))]] += c
                rows.append(row)
        dim = len(basis) - (_linalg.rank(rows) if rows else 0)
        if delta <= top:
            total += dim
        elif dim:
            return NOT_ISOLATED
    return total


def _effective(fJ):
    """Drop the variables that do not occur in fJ."""
    used = [i for i in range(fJ.n) if any(k[i] for k in fJ.support)]
    return restrict(fJ, used)


def chi_affine_fibre(p, J):
    """chi({f_J = 1} in C^J)."""
    J = tuple(sorted(J))
    if not J:
        return 0
    fJ = restrict(p, J)
    if fJ.is_zero():
        return 0
    # variables absent from f_J split off a contractible factor C
    g = _effective(fJ)
    if milnor_algebra_oracle(g) is NOT_ISOLATED:
        raise UnsupportedRestriction(J, f"{g} has a non-isolated singularity")
    mu = milnor_number(g)
    if mu.denominator != 1 or mu < 0:
        raise UnsupportedRestriction(J, f"Milnor-Orlik value {mu} is not a nonnegative integer")
    return 1 + (-1) ** (g.n - 1) * int(mu)


def chi_torus_strata(p, affine=None):
    """chi(V_f cap (C*)^J) for every J by Moebius inversion over subsets."""
    cache = {} if affine is None else dict(affine)
    out = {}
    for J in subsets(p.n):
        total = 0
        for k in range(len(J) + 1):
            for K in combinations(J, k):
                if K not in cache:
                    cache[K] = chi_affine_fibre(p, K)
                total += (-1) ** (len(J) - k) * cache[K]
        out[J] = total
    return out


def chi_polytope_oracle(p, J):
    """(-1)^(|J|-1) |J|! vol(conv(supp f_J + {0})); assumes nondegenerate coefficients."""
    J = tuple(sorted(J))
    if not J:
        raise ValueError("empty index set")
    fJ = restrict(p, J)
    if fJ.is_zero():
        raise ValueError("f vanishes identically on the stratum")
    pts = fJ.support + [(0,) * len(J)]
    return (-1) ** (len(J) - 1) * normalized_volume(pts, len(J))


def quotient_character_lattice(Gbar, J):
    """Basis (rows in Z^J) of the characters of (C*)^J trivial on the image of Gbar."""
    J = tuple(sorted(J))
    qJ = [Gbar.weights.q[j] for j in J]
    K = integer_left_kernel([[x] for x in qJ], len(J))
    k = len(K)
    if k == 0:
        return []
    gens = [[g.coords[j] for j in J] for g in Gbar.finite_part.generators()]
    if not gens:
        C = _linalg.identity(k)
    else:
        W = [[sum(a * b for a, b in zip(row, g)) for g in gens] for row in K]
        N = lcm(1, *(Fraction(x).denominator for r in W for x in r))
        A = [[int(x * N) for x in r] for r in W]
        s = len(gens)
        stacked = A + [[N * int(i == j) for j in range(s)] for i in range(s)]
        ker = integer_left_kernel(stacked, k + s)
        C = hermite_normal_form([row[:k] for row in ker], k)
    return [[sum(C[i][t] * K[t][j] for t in range(k)) for j in range(len(J))] for i in range(k)]


def chi_orbit_space(p, Gbar, J):
    """chi((X cap (C*)^J) / Gbar) via the quotient torus."""
    J = tuple(sorted(J))
    if not J:
        raise ValueError("empty index set")
    fJ = restrict(p, J)
    if fJ.is_zero():
        return 1 if len(J) == 1 else 0
    supp = fJ.support
    if len(supp) == 1:
        return 0
    basis = quotient_character_lattice(Gbar, J)
    k = len(basis)
    m0 = supp[0]
    pts = []
    for m in supp:
        c = _linalg.solve_left(basis, [a - b for a, b in zip(m, m0)])
        if c is None or any(x.denominator != 1 for x in c):
            raise AssertionError(f"monomial ratio {m} / {m0} is not invariant")
        pts.append(tuple(int(x) for x in c))
    return (-1) ** (k - 1) * normalized_volume(pts, k)


@dataclass
class StrataChi:
    """Per-stratum Euler characteristics with provenance tags."""

    n: int
    chi_V: dict = field(default_factory=dict)
    chi_Y: dict = field(default_factory=dict)
    prov_V: dict = field(default_factory=dict)
    prov_Y: dict = field(default_factory=dict)
    chi_V_polytope: dict = field(default_factory=dict)

    def route_disagreements(self):
        """Strata where both chi_V routes apply and differ."""
        return {J: (self.chi_V[J], v) for J, v in self.chi_V_polytope.items()
                if self.prov_V.get(J) == "milnor-orlik" and self.chi_V[J] != v}

    @property
    def independent(self):
        return all(tag in ("quotient", "special") for tag in self.prov_Y.values())

    def euler_characteristic(self):
        return sum(self.chi_V.values())


def compute_strata(p, Gbar, overrides=None):
    """Fill chi_V and chi_Y for every index set; overrides map 'chi_V'/'chi_Y' to {J: int}."""
    overrides = overrides or {}
    ov_V = {tuple(sorted(J)): int(v) for J, v in overrides.get("chi_V", {}).items()}
    ov_Y = {tuple(sorted(J)): int(v) for J, v in overrides.get("chi_Y", {}).items()}
    st = StrataChi(p.n)
    affine = {}
    for J in subsets(p.n):
        fJ = restrict(p, J)
        if J and not fJ.is_zero():
            st.chi_V_polytope[J] = chi_polytope_oracle(p, J)
        if J in ov_V:
            st.chi_V[J], st.prov_V[J] = ov_V[J], "override"
        elif not J or fJ.is_zero():
            st.chi_V[J], st.prov_V[J] = 0, "empty"
        else:
            try:
                total = 0
                for k in range(len(J) + 1):
                    for K in combinations(J, k):
                        if K not in affine:
                            affine[K] = chi_affine_fibre(p, K)
                        total += (-1) ** (len(J) - k) * affine[K]
                st.chi_V[J], st.prov_V[J] = total, "milnor-orlik"
            except UnsupportedRestriction:
                st.chi_V[J], st.prov_V[J] = st.chi_V_polytope[J], "polytope"
        if not J:
            continue
        if J in ov_Y:
            st.chi_Y[J], st.prov_Y[J] = ov_Y[J], "override"
        else:
            special = fJ.is_zero() or len(fJ.support) == 1
            st.chi_Y[J] = chi_orbit_space(p, Gbar, J)
            st.prov_Y[J] = "special" if special else "quotient"
    return st
