import itertools

import numpy as np
import pytest

from caforge import Interaction, Parameters


def brute_uncovered(array, p: Parameters):
    """Quadratic per-interaction scan; the independent coverage oracle."""
    array = np.asarray(array)
    missing = []
    for cols in itertools.combinations(range(p.k), p.t):
        for syms in itertools.product(range(p.v), repeat=p.t):
            hit = any(
                all(row[c] == s for c, s in zip(cols, syms)) for row in array
            )
            if not hit:
                missing.append(Interaction(cols, syms))
    return missing


def exact_chromatic_number(adjacency):
    """Smallest c admitting a proper coloring, by exhaustive backtracking."""
    n = len(adjacency)
    if n == 0:
        return 0

    def colorable(c):
        color = [-1] * n

        def place(u):
            if u == n:
                return True
            for col in range(c):
                if all(color[w] != col for w in adjacency[u]):
                    color[u] = col
                    if place(u + 1):
                        return True
                    color[u] = -1
            return False

        return place(0)

    for c in range(1, n + 1):
        if colorable(c):
            return c
    return n


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
