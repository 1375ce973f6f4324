"""Burnside rings of finite abelian diagonal groups and the extended group K(Gbar).

An element is a finite integer combination of classes [G/H], stored as a dict
from canonical subgroups H to coefficients.  All groups are abelian, so
conjugacy plays no role and every subgroup is its own class.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .torsion_lattice import FiniteDiagonalGroup, contains, coordinate_kernel, cyclic, intersect


class AmbientMismatch(ValueError):
    pass


class MonodromyNotInGroup(ValueError):
    pass


class NonIntegralCoefficient(ValueError):
    pass


def _clean(coeffs):
    return {H: int(c) for H, c in coeffs.items() if c}


class _Combination:
    def __init__(self, ambient, coeffs=None):
        self.ambient = ambient
        merged = {}
        for H, c in (coeffs or {}).items():
            self._check_key(H)
            merged[H] = merged.get(H, 0) + int(c)
        self.coeffs = _clean(merged)

    def _check_key(self, H):
        raise NotImplementedError

    def _same(self, other):
        if type(other) is not type(self) or other.ambient != self.ambient:
            raise AmbientMismatch("elements over different groups")

    def _new(self, coeffs):
        out = object.__new__(type(self))
        out.ambient = self.ambient
        out.coeffs = _clean(coeffs)
        return out

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for H, c in other.coeffs.items():
            out[H] = out.get(H, 0) + c
        return self._new(out)

    def __neg__(self):
        return self._new({H: -c for H, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scalar_mul(self, k):
        return self._new({H: k * c for H, c in self.coeffs.items()})

    def __eq__(self, other):
        return (type(other) is type(self) and other.ambient == self.ambient
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.ambient, frozenset(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    def items(self):
        """(subgroup, coefficient) pairs in canonical order."""
        return sorted(self.coeffs.items(), key=lambda t: t[0].key)

    def coefficient(self, H):
        return self.coeffs.get(H, 0)


class BurnsideElement(_Combination):
    """Element of the Burnside ring K(G) of a finite abelian group G."""

    def _check_key(self, H):
        if not contains(self.ambient, H):
            raise ValueError(f"{H} is not a subgroup of {self.ambient}")

    @classmethod
    def one(cls, G):
        return cls(G, {G: 1})

    @classmethod
    def basis(cls, G, H):
        return cls(G, {H: 1})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scalar_mul(other)
        self._same(other)
        G = self.ambient.order
        out = {}
        for H, a in self.coeffs.items():
            for K, b in other.coeffs.items():
                HK = intersect(H, K)
                mult, rem = divmod(G * HK.order, H.order * K.order)
                assert rem == 0
                out[HK] = out.get(HK, 0) + a * b * mult
        return self._new(out)

    __rmul__ = __mul__

    def cardinality(self):
        """Virtual number of points."""
        return sum(c * (self.ambient.order // H.order) for H, c in self.coeffs.items())

    def __repr__(self):
        return f"BurnsideElement({format_element(self)})"


class ExtBurnsideElement(_Combination):
    """Element of the Grothendieck group of Gbar-sets with finite isotropy."""

    def _check_key(self, H):
        if not isinstance(H, FiniteDiagonalGroup) or not self.ambient.contains_subgroup(H):
            raise ValueError(f"{H} is not a finite subgroup of the extended group")

    def __mul__(self, other):
        raise TypeError("K(Gbar) has no ring structure")

    def __repr__(self):
        return f"ExtBurnsideElement({format_element(self)})"


def format_element(a):
    if not a.coeffs:
        return "0"
    return " + ".join(f"{c}*[{H}]" for H, c in a.items())


# --- maps --------------------------------------------------------------------


def finite_characters(G):
    """All characters of G as tuples of numerators over the invariant factors."""
    return list(product(*(range(e) for e in G.invariant_factors)))


def _trivial_on(G, chi, H):
    orders = G.invariant_factors
    for g in H.generators():
        x = G.snf_coordinates(g)
        if sum(Fraction(c * v, e) for c, v, e in zip(chi, x, orders)).denominator != 1:
            return False
    return True


def to_repr_ring(a):
    """Image in R(G): {character: multiplicity}; [G/H] gives the characters trivial on H."""
    G = a.ambient
    chars = finite_characters(G)
    out = {}
    for H, c in a.coeffs.items():
        for chi in chars:
            if _trivial_on(G, chi, H):
                out[chi] = out.get(chi, 0) + c
    return {chi: c for chi, c in out.items() if c}


def repr_product(G, u, v):
    """Product of two elements of R(G) given as character multisets."""
    orders = G.invariant_factors
    out = {}
    for a, x in u.items():
        for b, y in v.items():
            ab = tuple((s + t) % e for s, t, e in zip(a, b, orders))
            out[ab] = out.get(ab, 0) + x * y
    return {chi: c for chi, c in out.items() if c}


def res(a, H):
    """Restriction from K(G) to K(H)."""
    G = a.ambient
    if not contains(G, H):
        raise ValueError("not a subgroup")
    out = {}
    for K, c in a.coeffs.items():
        HK = intersect(H, K)
        mult, rem = divmod(G.order * HK.order, K.order * H.order)
        assert rem == 0
        out[HK] = out.get(HK, 0) + c * mult
    return BurnsideElement(H, out)


def ind(a, G):
    """Induction from K(H) to K(G): [H/H'] -> [G/H']."""
    if not contains(G, a.ambient):
        raise ValueError("not a subgroup")
    return BurnsideElement(G, dict(a.coeffs))


def ind_ext(a, Gbar):
    """K(G) -> K(Gbar), [G/H] -> [Gbar/H]."""
    if a.ambient != Gbar.finite_part:
        raise AmbientMismatch("element is not over the finite part of Gbar")
    return ExtBurnsideElement(Gbar, dict(a.coeffs))


def red(a):
    """K(Gbar) -> K(G), [Gbar/H] -> [G/(H cap G)]."""
    G = a.ambient.finite_part
    out = {}
    for H, c in a.coeffs.items():
        HG = intersect(H, G)
        out[HG] = out.get(HG, 0) + c
    return BurnsideElement(G, out)


# --- zeta function and orbit invariant ----------------------------------------


def zeta_equivariant(strata, G, monodromy=None):
    """sum over strata J of chi(V_f cap (C*)^J)/|G/G^J| * [G/G^J]."""
    if monodromy is not None and monodromy not in G:
        raise MonodromyNotInGroup(f"{monodromy} is not in {G}")
    out = {}
    for J, chi in strata.chi_V.items():
        if not J or not chi:
            continue
        GJ = coordinate_kernel(G, J)
        coeff, rem = divmod(chi * GJ.order, G.order)
        if rem:
            raise NonIntegralCoefficient(
                f"chi={chi} on J={tuple(j + 1 for j in J)} is not divisible by |G/G^J|")
        out[GJ] = out.get(GJ, 0) + coeff
    return BurnsideElement(G, out)


def orbit_invariant(strata, Gbar):
    """sum over nonempty J of chi(Y^J) [Gbar/Gbar^J]."""
    out = {}
    for J, chi in strata.chi_Y.items():
        if not J or not chi:
            continue
        H = Gbar.isotropy(J)
        out[H] = out.get(H, 0) + chi
    return ExtBurnsideElement(Gbar, out)


# --- cyclotomic functions -------------------------------------------------------


@dataclass(frozen=True)
class CyclotomicFunction:
    """prod_m (1 - t^m)^{s_m}; ``d`` is the modulus when the function lives on Z_d."""

    s: tuple  # sorted (m, s_m) pairs with s_m != 0
    d: int = None

    @classmethod
    def from_exponents(cls, s, d=None):
        items = tuple(sorted((int(m), int(e)) for m, e in dict(s).items() if e))
        if d is not None and any(d % m for m, _ in items):
            raise ValueError(f"exponent index not dividing {d}")
        return cls(items, d)

    @property
    def exponents(self):
        return dict(self.s)

    def __mul__(self, other):
        out = self.exponents
        for m, e in other.s:
            out[m] = out.get(m, 0) + e
        return CyclotomicFunction.from_exponents(out, self.d or other.d)

    def inverse(self):
        return CyclotomicFunction.from_exponents({m: -e for m, e in self.s}, self.d)

    def __truediv__(self, other):
        return self * other.inverse()

    def reduced(self):
        """phi(t)/(1 - t)."""
        return self / CyclotomicFunction.from_exponents({1: 1}, self.d)

    def saito_dual(self, d=None):
        """prod (1 - t^{d/m})^{-s_m}."""
        d = d or self.d
        return CyclotomicFunction.from_exponents({d // m: -e for m, e in self.s}, d)

    def degree_sum(self):
        """sum m * s_m (the Euler characteristic for a zeta function)."""
        return sum(m * e for m, e in self.s)

    def series(self, D):
        """Power series coefficients up to t^D."""
        c = [0] * (D + 1)
        c[0] = 1
        for m, e in self.s:
            for _ in range(abs(e)):
                if e > 0:
                    for j in range(D, m - 1, -1):
                        c[j] -= c[j - m]
                else:
                    for j in range(m, D + 1):
                        c[j] += c[j - m]
        return c

    def __str__(self):
        if not self.s:
            return "1"
        num = [f"(1-t^{m})" + (f"^{e}" if e > 1 else "") for m, e in self.s if e > 0]
        den = [f"(1-t^{m})" + (f"^{-e}" if e < -1 else "") for m, e in self.s if e < 0]
        out = "*".join(num) or "1"
        if den:
            out += "/(" + "*".join(den) + ")"
        return out


def _cyclic_order(G):
    if not G.is_cyclic():
        raise ValueError("ambient group is not cyclic")
    return G.order


def to_cyclotomic(a):
    """Element of K(Z_d) -> prod (1 - t^m)^{s_m}, with [Z_d/Z_{d/m}] in slot m."""
    d = _cyclic_order(a.ambient)
    return CyclotomicFunction.from_exponents(
        {d // H.order: c for H, c in a.coeffs.items()}, d)


def from_cyclotomic(phi, G):
    d = _cyclic_order(G)
    if phi.d is not None and phi.d != d:
        raise ValueError("modulus mismatch")
    gens = G.snf_generators
    out = {}
    for m, e in phi.s:
        if d % m:
            raise ValueError(f"{m} does not divide {d}")
        H = cyclic(gens[0] * m) if gens else G
        out[H] = out.get(H, 0) + e
    return BurnsideElement(G, out)
