"""Closed-form and recurrence size bounds for covering arrays.

Every function is pure in (t, k, v) plus the group choice.  Closed forms are
evaluated with mpmath (40 significant digits) so that five-digit published
values round correctly; exhaustive integer scans use double precision, which
is ample for their minima.  All logarithms are natural.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf

from .groups import GroupKind, orbit_count, prime_power
from .model import DerivedConstants, Parameters, binomial


def _log_ratio(num: int, den: int):
    return mp.log(mpf(num) / den)


def _orbit_log_base(p: Parameters, group: GroupKind):
    """-ln(per-row miss probability of one full orbit) under the group."""
    if group is GroupKind.TRIVIAL:
        q = p.v**p.t
        return _log_ratio(q, q - 1)
    q = p.v ** (p.t - 1)
    if group is GroupKind.CYCLIC:
        return _log_ratio(q, q - 1)
    if prime_power(p.v) is None:
        raise ValueError(f"Frobenius group requires a prime-power v, got {p.v}")
    return _log_ratio(q, q - p.v + 1)


def slj_bound(p: Parameters) -> float:
    """Single-stage randomized existence bound."""
    vt = p.v**p.t
    num = mp.log(binomial(p.k, p.t)) + p.t * mp.log(p.v)
    return float(num / _log_ratio(vt, vt - 1))


def discrete_slj_bound(p: Parameters) -> int:
    """Rows needed when each row covers exactly ceil(u / v^t) new interactions.

    Exact integer recurrence; u can exceed 10^10 so no floating arithmetic
    is involved.
    """
    vt = p.v**p.t
    u = binomial(p.k, p.t) * vt
    n = 0
    while u > 0:
        u -= -(-u // vt)
        n += 1
    return n


def two_stage_bound(p: Parameters) -> float:
    """Optimal random-first-stage + one-row-per-leftover bound."""
    vt = p.v**p.t
    L = _log_ratio(vt, vt - 1)
    num = mp.log(binomial(p.k, p.t)) + p.t * mp.log(p.v) + mp.log(L) + 1
    return float(num / L)


def first_stage_n(p: Parameters, group: GroupKind, target_uncovered: float) -> int:
    """Rows so that the expected number of uncovered full orbits is at most
    ``target_uncovered``."""
    if target_uncovered <= 0:
        raise ValueError("target_uncovered must be positive")
    full, _ = orbit_count(p, group)
    if target_uncovered >= full:
        warnings.warn("target_uncovered >= total orbit count; no rows needed")
        return 0
    L = _orbit_log_base(p, group)
    return int(mp.ceil(mp.log(mpf(full) / mpf(target_uncovered)) / L))


def gss_bound(p: Parameters) -> float:
    """Local-lemma existence bound; requires k >= 2t."""
    if p.k < 2 * p.t:
        raise ValueError("gss_bound requires k >= 2t")
    vt = p.v**p.t
    num = (
        mp.log(binomial(p.k, p.t) - binomial(p.k - p.t, p.t))
        + p.t * mp.log(p.v)
        + 1
    )
    return float(num / _log_ratio(vt, vt - 1))


def cyclic_two_stage_bound(p: Parameters) -> float:
    """Two-stage bound for arrays developed over the cyclic symbol group."""
    q = p.v ** (p.t - 1)
    L = _log_ratio(q, q - 1)
    num = mp.log(binomial(p.k, p.t)) + (p.t - 1) * mp.log(p.v) + mp.log(L) + 1
    return float(p.v * num / L)


def frobenius_two_stage_bound(p: Parameters) -> float:
    """Two-stage bound for arrays developed over the Frobenius group."""
    if prime_power(p.v) is None:
        raise ValueError(f"Frobenius group requires a prime-power v, got {p.v}")
    q = p.v ** (p.t - 1)
    L = _log_ratio(q, q - p.v + 1)
    num = (
        mp.log(binomial(p.k, p.t))
        + mp.log(mpf(q - 1) / (p.v - 1))
        + mp.log(L)
        + 1
    )
    return float(p.v * (p.v - 1) * num / L + p.v)


def expected_incompat_edges(p: Parameters, n: int) -> float:
    """Expected number of symbol-conflict edges among the interactions left
    uncovered by n uniformly random rows."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    t, k, v = p.t, p.k, p.v
    vt = v**t
    total = 0.0
    for i in range(1, t + 1):
        pairs = binomial(t, i) * binomial(k - t, t - i) * (vt - v ** (t - i))
        decay = (1 - 1 / vt) ** n * (1 - 1 / (vt - v ** (t - i))) ** n
        total += pairs * decay
    return 0.5 * binomial(k, t) * vt * total


def chromatic_estimate(m_edges: float) -> float:
    """Worst-case colors needed for any graph with m edges."""
    if m_edges < 0:
        raise ValueError("edge count must be nonnegative")
    return 0.5 + math.sqrt(2 * m_edges + 0.25)


def coloring_two_stage_estimate(p: Parameters, mode: str = "conservative") -> float:
    """Minimum over n of n + chromatic_estimate(c * expected edges).

    ``mode`` is "optimistic" (c=1, edges at their mean) or "conservative"
    (c=2, edges at most twice the mean with probability > 1/2).
    """
    c = {"optimistic": 1, "conservative": 2}[mode]
    t, k, v = p.t, p.k, p.v
    vt = v**t
    n = np.arange(1, math.ceil(slj_bound(p)) + 1)
    gamma = np.zeros(len(n))
    for i in range(1, t + 1):
        pairs = binomial(t, i) * binomial(k - t, t - i) * (vt - v ** (t - i))
        log_decay = math.log1p(-1 / vt) + math.log1p(-1 / (vt - v ** (t - i)))
        gamma += pairs * np.exp(n * log_decay)
    gamma *= 0.5 * binomial(k, t) * vt
    return float(np.min(n + 0.5 + np.sqrt(2 * c * gamma + 0.25)))


def lll_first_stage_n(p: Parameters):
    """(n, m) minimizing the rows needed so every column t-set covers some
    m-subset of tuples while the expected leftover stays below v^t.

    Exhaustive scan over m in [1, v^t]; n is the ceiling of the larger of
    the two per-m row requirements.
    """
    if p.k < 2 * p.t:
        raise ValueError("lll_first_stage_n requires k >= 2t")
    d = DerivedConstants.of(p)
    vt = d.vt
    L = math.log(vt / (vt - 1))
    best = (math.inf, 0)
    for m in range(1, vt + 1):
        n1 = math.log(math.e * d.dep_degree * m) / L
        n2 = math.log(d.eta * math.e * (1 - m / vt)) / L if m < vt else -math.inf
        n = max(n1, n2)
        if n < best[0]:
            best = (n, m)
    return math.ceil(best[0]), best[1]


def lll_two_stage_bound(p: Parameters) -> float:
    """Local-lemma two-stage bound; only valid when the optimal tuple-subset
    size does not exceed v^t."""
    if p.k < 2 * p.t:
        raise ValueError("lll_two_stage_bound requires k >= 2t")
    d = DerivedConstants.of(p)
    vt = d.vt
    L = _log_ratio(vt, vt - 1)
    m_opt = mpf(d.eta) * vt * L / d.dep_degree
    if m_opt > vt:
        raise ValueError(
            f"side condition failed: optimal tuple-subset size {float(m_opt):.1f} "
            f"exceeds v^t = {vt}"
        )
    num = mp.log(d.eta) + p.t * mp.log(p.v) + mp.log(L) + 2
    return float(num / L - mpf(d.eta) / d.dep_degree)


@dataclass
class BoundReport:
    """All bound values for one parameter triple.

    Entries are None when their precondition fails (k < 2t, v not a prime
    power, or the LLL side condition).
    """

    slj: float
    discrete_slj: int
    two_stage: float
    gss: float | None
    cyclic_two_stage: float
    frobenius_two_stage: float | None
    lll_two_stage: float | None
    optimistic_coloring: float
    conservative_coloring: float


def bound_report(p: Parameters) -> BoundReport:
    gss = gss_bound(p) if p.k >= 2 * p.t else None
    frob = frobenius_two_stage_bound(p) if prime_power(p.v) else None
    try:
        lll = lll_two_stage_bound(p)
    except ValueError:
        lll = None
    return BoundReport(
        slj=slj_bound(p),
        discrete_slj=discrete_slj_bound(p),
        two_stage=two_stage_bound(p),
        gss=gss,
        cyclic_two_stage=cyclic_two_stage_bound(p),
        frobenius_two_stage=frob,
        lll_two_stage=lll,
        optimistic_coloring=coloring_two_stage_estimate(p, "optimistic"),
        conservative_coloring=coloring_two_stage_estimate(p, "conservative"),
    )
