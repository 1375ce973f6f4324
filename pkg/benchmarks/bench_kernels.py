"""Compare the compiled and pure-Python series kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload runs on both backends; the outputs are compared before timing.
"""

import argparse
import timeit

import numpy as np

from equizeta import _pykernels, kernels
from equizeta.pipeline import ProblemSpec
from equizeta.repr_ring import CharacterSpace


def space_for(text, group="full-symmetry"):
    spec = ProblemSpec.from_json({"polynomial": text, "group": group})
    return CharacterSpace(spec.extended_group(spec.polynomial()))


def xchar(space):
    return [space.flat(space.alpha_x(i).chi) for i in range(len(space.q))]


def obj(a):
    return np.asarray(a, dtype=object)


def workloads(rng):
    """(label, callable taking a kernel module)."""
    e8 = space_for("x^2+y^3+z^5")
    p8 = space_for("x^3+y^3+z^3")
    loop = space_for("x^3*y+x*y^3")
    yield ("count_monomials E8 D=90",
           lambda m: m.count_monomials(list(e8.q), xchar(e8), e8.table, 90))
    yield ("count_monomials P8 D=60",
           lambda m: m.count_monomials(list(p8.q), xchar(p8), p8.table, 60))
    a = rng.integers(-9, 9, size=(41, p8.size))
    b = rng.integers(-9, 9, size=(41, p8.size))
    yield ("convolve P8 D=40 |G|=27",
           lambda m: m.convolve(*((a, b) if m is not _pykernels else (obj(a), obj(b))), p8.table))

    c = rng.integers(-9, 9, size=(61, loop.size))
    ch = xchar(loop)

    def product_of_factors(m):
        arr = c if m is not _pykernels else obj(c)
        for i in range(12):
            arr = m.mul_geometric(arr, 1 + i % 3, ch[i % 2], loop.table)
            arr = m.mul_one_minus(arr, 2, ch[(i + 1) % 2], loop.table)
        return arr
    yield ("12 x (geometric, 1-[a]) loop D=60", product_of_factors)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if not kernels.HAVE_EXTENSION:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")
    fast_mod = kernels._ckernels
    print(f"{'workload':36s} {'compiled':>11s} {'python':>11s} {'speedup':>8s}")
    for name, work in workloads(np.random.default_rng(1)):
        assert (obj(work(fast_mod)) == work(_pykernels)).all(), name
        t_fast = min(timeit.repeat(lambda: work(fast_mod), number=1, repeat=args.repeat))
        t_slow = min(timeit.repeat(lambda: work(_pykernels), number=1, repeat=args.repeat))
        print(f"{name:36s} {t_fast * 1e3:9.2f}ms {t_slow * 1e3:9.2f}ms {t_slow / t_fast:7.1f}x")


if __name__ == "__main__":
    main()
