"""Brute-force oracles shared by the unit and acceptance tests."""

from fractions import Fraction

from equizeta.burnside import BurnsideElement
from equizeta.torsion_lattice import TorsionVector, canonicalize, cyclic

Z6 = cyclic(TorsionVector.of(Fraction(1, 6)))
Z30 = cyclic(TorsionVector.of(Fraction(1, 30)))
Z2xZ4 = canonicalize([TorsionVector.of(Fraction(1, 2), 0), TorsionVector.of(0, Fraction(1, 4))])
GROUPS = {"Z6": Z6, "Z2xZ4": Z2xZ4, "Z30": Z30}


def subgroups(G):
    elems = list(G.elements())
    return sorted({canonicalize([a, b], G.n) for a in elems for b in elems}, key=lambda H: H.key)


_SUBGROUPS = {}


def random_element(G, rnd, size=4):
    if G not in _SUBGROUPS:
        _SUBGROUPS[G] = subgroups(G)
    subs = _SUBGROUPS[G]
    return BurnsideElement(G, {rnd.choice(subs): rnd.randint(-3, 3) for _ in range(size)})


def orbit_decomposition(G, H, K):
    """Decompose G/H x G/K into orbits by brute force; returns {stabilizer: count}."""
    N = G.N
    vec = lambda x: tuple(x.integer_vector(N))
    add = lambda a, b: tuple((s + t) % N for s, t in zip(a, b))
    elems = {vec(g): g for g in G.elements()}
    shift = lambda g, c: frozenset(add(g, u) for u in c)
    Hv = [vec(s) for s in H.elements()]
    Kv = [vec(s) for s in K.elements()]
    points = {(shift(x, Hv), shift(y, Kv)) for x in elems for y in elems}
    out = {}
    while points:
        a, b = next(iter(points))
        points -= {(shift(g, a), shift(g, b)) for g in elems}
        stab = canonicalize([elems[g] for g in elems if shift(g, a) == a and shift(g, b) == b], G.n)
        out[stab] = out.get(stab, 0) + 1
    return out
