from fractions import Fraction

import pytest

from equizeta.pipeline import parse_polynomial
from equizeta.qhpoly import QuasiPolynomial


def poly(text):
    variables, terms = parse_polynomial(text)
    return QuasiPolynomial(len(variables), terms, tuple(variables))


@pytest.fixture
def cusp():
    return poly("x^2+y^3")


def frac_vec(*xs):
    return tuple(Fraction(x) for x in xs)


def compatible_characters(space, D):
    """All characters of C*.G with -D <= k <= -1."""
    from itertools import product

    out = []
    for deg in range(1, D + 1):
        for chi in product(*(range(e) for e in space.orders)):
            if space.compatible(-deg, chi):
                out.append(space.make(-deg, chi))
    return out


def random_sparse_series(space, D, rnd, terms=4, bound=3):
    from equizeta.repr_ring import NegSeries

    chars = compatible_characters(space, D)
    return NegSeries(space, D, {rnd.choice(chars): rnd.choice([-bound, -1, 1, 2, bound])
                                for _ in range(terms)})


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
