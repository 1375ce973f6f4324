import random
from fractions import Fraction
import pytest

from equizeta.burnside import (
    AmbientMismatch, BurnsideElement, CyclotomicFunction, ExtBurnsideElement,
    MonodromyNotInGroup, NonIntegralCoefficient, from_cyclotomic, ind, ind_ext, red, repr_product,
    res, to_cyclotomic, to_repr_ring, zeta_equivariant,
)
from equizeta.qhpoly import full_symmetry_group, monodromy_group
from equizeta.strata_euler import compute_strata
from equizeta.torsion_lattice import TorsionVector, FiniteDiagonalGroup, canonicalize, cyclic

from conftest import poly
from oracles import GROUPS, Z2xZ4, Z30, Z6, orbit_decomposition, random_element, subgroups

@pytest.mark.parametrize("name", GROUPS)
def test_multiplication_matches_orbit_count(name):
    G = GROUPS[name]
    subs = subgroups(G)
    for H in subs:
        for K in subs:
            got = BurnsideElement.basis(G, H) * BurnsideElement.basis(G, K)
            assert got.coeffs == orbit_decomposition(G, H, K)


@pytest.mark.parametrize("name", GROUPS)
def test_ring_axioms(name):
    G = GROUPS[name]
    rnd = random.Random(7)
    one = BurnsideElement.one(G)
    for _ in range(10):
        a, b, c = (random_element(G, rnd) for _ in range(3))
        assert a * one == a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a * b).cardinality() == a.cardinality() * b.cardinality()


@pytest.mark.parametrize("name", GROUPS)
def test_repr_ring_is_multiplicative(name):
    G = GROUPS[name]
    rnd = random.Random(11)
    for _ in range(10):
        a, b = random_element(G, rnd), random_element(G, rnd)
        assert to_repr_ring(a * b) == repr_product(G, to_repr_ring(a), to_repr_ring(b))


def test_restriction_brute_force():
    G, H = Z2xZ4, canonicalize([TorsionVector.of(0, Fraction(1, 4))])
    for K in subgroups(G):
        r = res(BurnsideElement.basis(G, K), H)
        # count H-orbits on G/K with their stabilizers
        elems = list(G.elements())
        points = {frozenset(x + k for k in K.elements()) for x in elems}
        out = {}
        while points:
            a = next(iter(points))
            orbit = {frozenset(g + u for u in a) for g in H.elements()}
            points -= orbit
            stab = canonicalize([g for g in H.elements() if frozenset(g + u for u in a) == a], G.n)
            out[stab] = out.get(stab, 0) + 1
        assert r.coeffs == out
    # ind of [H/H'] is [G/H']; the point count scales by the index
    a = BurnsideElement.basis(H, FiniteDiagonalGroup.trivial(2))
    assert ind(a, G).cardinality() == a.cardinality() * (G.order // H.order)


def test_red_ind_ext_roundtrip(cusp):
    Gbar = full_symmetry_group(poly("x^2+y^4"))
    G = Gbar.finite_part
    rnd = random.Random(3)
    for _ in range(20):
        a = random_element(G, rnd)
        assert red(ind_ext(a, Gbar)) == a


def test_ambient_checks(cusp):
    Gbar = monodromy_group(cusp)
    with pytest.raises(AmbientMismatch):
        ind_ext(BurnsideElement.one(Z30), Gbar)
    with pytest.raises(AmbientMismatch):
        BurnsideElement.one(Z6) + BurnsideElement.one(Z30)
    with pytest.raises(TypeError):
        ExtBurnsideElement(Gbar) * ExtBurnsideElement(Gbar)


def test_cusp_zeta(cusp):
    Gbar = monodromy_group(cusp)
    G = Gbar.finite_part
    z = zeta_equivariant(compute_strata(cusp, Gbar), G, Gbar.monodromy)
    by_order = {H.order: c for H, c in z.coeffs.items()}
    assert by_order == {3: 1, 2: 1, 1: -1}
    assert str(to_cyclotomic(z)) == "(1-t^2)*(1-t^3)/((1-t^6))"
    assert from_cyclotomic(to_cyclotomic(z), G) == z


def test_zeta_errors(cusp):
    Gbar = monodromy_group(cusp)
    st = compute_strata(cusp, Gbar, {"chi_V": {(0, 1): -5}})
    with pytest.raises(NonIntegralCoefficient):
        zeta_equivariant(st, Gbar.finite_part)
    with pytest.raises(MonodromyNotInGroup):
        zeta_equivariant(st, cyclic(TorsionVector.of(Fraction(1, 2), 0)), Gbar.monodromy)


def test_cyclotomic_algebra():
    phi = CyclotomicFunction.from_exponents({2: 1, 3: 1, 6: -1}, 6)
    assert phi.degree_sum() == -1
    assert (phi / phi).s == ()
    assert phi.saito_dual().exponents == {3: -1, 2: -1, 1: 1}
    assert phi.series(6) == [1, 0, -1, -1, 0, 1, 1]
    with pytest.raises(ValueError):
        CyclotomicFunction.from_exponents({4: 1}, 6)
