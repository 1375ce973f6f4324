"""Exact normalized volumes of lattice polytopes.

The polytope is given by a finite point set; its volume is computed from a
pulling triangulation (cone from the first vertex over the facets that miss
it, recursively), with simplex volumes as exact integer determinants.
"""

from fractions import Fraction
from itertools import combinations

from . import _linalg


def _sub(a, b):
    return [x - y for x, y in zip(a, b)]


def _affine_frame(points):
    """(origin, basis vectors) of the affine hull, basis chosen among p - origin."""
    origin = points[0]
    vecs = [_sub(p, origin) for p in points[1:]]
    basis = []
    for v in vecs:
        if _linalg.rank(basis + [v]) > len(basis):
            basis.append(v)
    return origin, basis


def affine_dimension(points):
    points = _dedupe(points)
    if not points:
        return -1
    return len(_affine_frame(points)[1])


def _dedupe(points):
    return sorted({tuple(int(x) for x in p) for p in points})


def _local_coords(points):
    origin, basis = _affine_frame(points)
    if not basis:
        return [[] for _ in points], 0
    coords = []
    for p in points:
        c = _linalg.solve_left(basis, _sub(p, origin))
        coords.append(c)
    return coords, len(basis)


def _facets(points):
    """Facets of conv(points) as frozensets of point indices."""
    coords, dim = _local_coords(points)
    if dim == 0:
        return []
    if dim == 1:
        vals = [c[0] for c in coords]
        lo, hi = min(vals), max(vals)
        return [frozenset(i for i, v in enumerate(vals) if v == lo),
                frozenset(i for i, v in enumerate(vals) if v == hi)]
    found = set()
    for combo in combinations(range(len(points)), dim):
        base = coords[combo[0]]
        rows = [_sub(coords[i], base) for i in combo[1:]]
        null = _linalg.nullspace(rows, dim)
        if len(null) != 1:
            continue
        normal = null[0]
        vals = [sum(a * b for a, b in zip(normal, _sub(c, base))) for c in coords]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            found.add(frozenset(i for i, v in enumerate(vals) if v == 0))
    return sorted(found, key=sorted)


def pulling_triangulation(points):
    """Simplices (tuples of points) triangulating conv(points)."""
    points = _dedupe(points)
    if not points:
        return []
    dim = affine_dimension(points)
    if dim == 0:
        return [(points[0],)]
    apex = points[0]
    simplices = []
    for facet in _facets(points):
        if 0 in facet:
            continue
        for s in pulling_triangulation([points[i] for i in facet]):
            simplices.append((apex,) + s)
    return simplices


def normalized_volume(points, ambient_dim=None):
    """k! * vol(conv(points)) in Z^k; zero when the hull is not full-dimensional."""
    points = _dedupe(points)
    if not points:
        return 0
    k = len(points[0]) if ambient_dim is None else ambient_dim
    if k == 0:
        return 1
    if affine_dimension(points) < k:
        return 0
    total = Fraction(0)
    for simplex in pulling_triangulation(points):
        total += abs(_linalg.det([_sub(p, simplex[0]) for p in simplex[1:]]))
    assert total.denominator == 1
    return int(total)
