import random

import pytest

from equizeta.burnside import ExtBurnsideElement
from equizeta.corpus import specs
from equizeta.qhpoly import full_symmetry_group, monodromy_group
from equizeta.repr_ring import (
    CharacterSpace, FiniteRepElement, MalformedConstantTerm, NegSeries, NonNegativeCharacter,
    classical_poincare, exp_map, expand, log_map, log_poincare, poincare_closed,
    poincare_counted, tau,
)
from equizeta.strata_euler import monomials_of_degree

from conftest import poly, random_sparse_series


@pytest.fixture
def cusp_space(cusp):
    return CharacterSpace(monodromy_group(cusp))


def test_monomial_characters(cusp_space):
    ax, ay = cusp_space.alpha_x(0), cusp_space.alpha_x(1)
    assert (ax.k, ay.k) == (-3, -2)
    af = cusp_space.alpha_f(poly("x^2+y^3"))
    assert af == cusp_space.power(ax, 2) == cusp_space.power(ay, 3)
    assert af.k == -6 and af.chi == (0,)


def test_incompatible_character_rejected(cusp_space):
    with pytest.raises(ValueError):
        cusp_space.make(-1, (0,))


def test_kernel_orders(cusp_space):
    ax, ay = cusp_space.alpha_x(0), cusp_space.alpha_x(1)
    assert cusp_space.kernel(ax).order == 3
    assert cusp_space.kernel(ay).order == 2
    assert cusp_space.kernel(cusp_space.mul(ax, ay)).order == 5 * 1
    with pytest.raises(NonNegativeCharacter):
        cusp_space.kernel(cusp_space.make(0, (0,)))


def test_cusp_tau(cusp, cusp_space):
    T = tau(log_poincare(cusp, cusp_space))
    assert {H.order: c for H, c in T.coeffs.items()} == {3: 1, 2: 1, 6: -1}


@pytest.mark.parametrize("group", ["monodromy-cyclic", "full-symmetry"])
def test_exp_log_roundtrip(group):
    rnd = random.Random(5)
    for spec in specs(group)[3:9]:
        space = CharacterSpace(spec.extended_group(spec.polynomial()))
        for _ in range(5):
            a = random_sparse_series(space, 12, rnd)
            assert log_map(exp_map(a)) == a


def test_exp_is_a_homomorphism(cusp_space):
    rnd = random.Random(2)
    for _ in range(10):
        a, b = random_sparse_series(cusp_space, 12, rnd), random_sparse_series(cusp_space, 12, rnd)
        assert exp_map(a + b) == exp_map(a) * exp_map(b)


def test_log_needs_unit_constant(cusp_space):
    with pytest.raises(MalformedConstantTerm):
        log_map(NegSeries.one(cusp_space, 4) + NegSeries.one(cusp_space, 4))


@pytest.mark.parametrize("spec", specs("full-symmetry"), ids=lambda s: s.name)
def test_closed_form_matches_count(spec):
    p = spec.polynomial()
    space = CharacterSpace(full_symmetry_group(p))
    counted = poincare_counted(p, space, 12)
    assert counted == expand(poincare_closed(p, space), space, 12)
    D = max(12, p.weights.d)
    assert dict(log_map(poincare_counted(p, space, D)).coeffs) == dict(log_poincare(p, space))
    assert counted.specialize() == classical_poincare(p, 12)


def test_ambient_poincare_counts_monomials():
    p = poly("x^2+y^3+z^5")
    space = CharacterSpace(full_symmetry_group(p))
    amb = poincare_counted(p, space, 20, which="ambient").specialize()
    assert amb == [len(monomials_of_degree(p.weights.q, j)) for j in range(21)]


def test_finite_rep_element_drops_zeros(cusp_space):
    a = cusp_space.alpha_x(0)
    e = FiniteRepElement(cusp_space, {a: 0})
    assert not e
    with pytest.raises(NonNegativeCharacter):
        tau(FiniteRepElement(cusp_space, {cusp_space.make(0, (0,)): 1}))
    assert tau(FiniteRepElement(cusp_space)) == ExtBurnsideElement(cusp_space.Gbar)
