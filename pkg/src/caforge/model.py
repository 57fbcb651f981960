"""Shared domain vocabulary: parameters, interactions, arrays, coverage reports.

Symbols are 0-based everywhere.  A "partial" array is an ordinary integer
array in which flexible (not yet fixed) cells hold the sentinel ``FLEXIBLE``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from mpmath import mp, mpf

mp.dps = 40

#: Cell value marking a not-yet-fixed entry of a partial array.
FLEXIBLE = -1


def binomial(n: int, r: int) -> int:
    """Exact binomial coefficient C(n, r); 0 when r > n."""
    if n < 0 or r < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if r > n:
        return 0
    return math.comb(n, r)


@dataclass(frozen=True)
class Parameters:
    """The triple (t, k, v): strength, factor count, level count."""

    t: int
    k: int
    v: int

    def __post_init__(self):
        if self.t < 2:
            raise ValueError("strength t must be at least 2")
        if self.k < self.t:
            raise ValueError("factor count k must be at least t")
        if self.v < 2:
            raise ValueError("level count v must be at least 2")


@dataclass(frozen=True)
class DerivedConstants:
    """Constants derived from (t, k, v) used throughout the bound formulas.

    ``rho`` is the expected number of interactions left uncovered by the
    optimal-size random first stage, 1/ln(v^t/(v^t-1)); it always lies
    strictly between v^t - 1 and v^t.  ``dep_degree`` counts the column
    t-sets sharing at least one column with a fixed t-set.
    """

    vt: int
    rho: float
    eta: int
    dep_degree: int

    @classmethod
    def of(cls, p: Parameters) -> "DerivedConstants":
        vt = p.v**p.t
        rho = float(1 / mp.log(mpf(vt) / (vt - 1)))
        eta = binomial(p.k, p.t)
        dep = eta - binomial(p.k - p.t, p.t)
        return cls(vt=vt, rho=rho, eta=eta, dep_degree=dep)


def interaction_count(p: Parameters) -> int:
    """Total number of t-way interactions, C(k,t) * v^t."""
    return binomial(p.k, p.t) * p.v**p.t


@dataclass(frozen=True)
class Interaction:
    """An assignment of symbols to t distinct columns.

    ``columns`` is strictly increasing; ``symbols[i]`` is the symbol
    required in ``columns[i]``.
    """

    columns: tuple
    symbols: tuple

    def __post_init__(self):
        if len(self.columns) != len(self.symbols):
            raise ValueError("columns and symbols must have equal length")
        if any(a >= b for a, b in zip(self.columns, self.columns[1:])):
            raise ValueError("columns must be strictly increasing")


@dataclass
class CoverageReport:
    """Uncovered interactions (or orbit representatives) found in an array.

    When ``truncated`` the enumeration stopped after exceeding a cap and
    ``uncovered_count`` undercounts the true total.
    """

    uncovered: list = field(default_factory=list)
    uncovered_count: int = 0
    truncated: bool = False
