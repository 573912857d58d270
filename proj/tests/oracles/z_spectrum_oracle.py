#!/usr/bin/env python3
"""Independent Z-eigenvalue oracle used to freeze expected values in the C++ tests.

Builds the dense adjacency tensor by explicit permutation expansion and solves
A x^{m-1} = lambda x, |x| = 1 with scipy's hybrid Powell root finder from many
random starts.  Shares no code path with the C++ library.
"""
import itertools
import math
import sys

import numpy as np
from scipy.optimize import root


def dense_adjacency(n, m, edges):
    a = np.zeros((n,) * m)
    w = 1.0 / math.factorial(m - 1)
    for e in edges:
        for perm in set(itertools.permutations([v - 1 for v in e])):
            a[perm] += w
    return a


def contract(a, x, times):
    t = a
    for _ in range(times):
        t = t @ x
    return t


def z_spectrum(n, m, edges, starts=3000, seed=7):
    a = dense_adjacency(n, m, edges)
    rng = np.random.default_rng(seed)

    def f(z):
        x, lam = z[:n], z[n]
        return np.concatenate([contract(a, x, m - 1) - lam * x, [x @ x - 1.0]])

    found = []
    for _ in range(starts):
        x0 = rng.normal(size=n)
        x0 /= np.linalg.norm(x0)
        z0 = np.concatenate([x0, [contract(a, x0, m)]])
        sol = root(f, z0, method="hybr", tol=1e-14)
        if not sol.success or np.linalg.norm(f(sol.x)) > 1e-10:
            continue
        lam = sol.x[n]
        if not any(abs(lam - l) < 1e-7 for l in found):
            found.append(lam)
    return sorted(found, reverse=True)


CASES = {
    "loose_path": (7, 3, [(1, 2, 3), (3, 4, 5), (5, 6, 7)]),
    "loop_pair": (2, 3, [(1, 1, 2), (2, 2, 2)]),
    "regular_loops": (2, 3, [(1, 1, 1), (1, 1, 2), (2, 2, 2)]),
    "two_edges": (5, 3, [(1, 2, 3), (3, 4, 5)]),
    "single_4edge": (4, 4, [(1, 2, 3, 4)]),
    "complete_3_4": (4, 3, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]),
    "complete_3_5": (5, 3, list(itertools.combinations(range(1, 6), 3))),
}

if __name__ == "__main__":
    names = sys.argv[1:] or list(CASES)
    for name in names:
        n, m, edges = CASES[name]
        print(name, ["%.12f" % v for v in z_spectrum(n, m, edges)])
