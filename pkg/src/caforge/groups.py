"""Symbol-group actions: trivial, cyclic shift, and Frobenius (affine maps).

The cyclic group always acts by integer addition mod v, even when v is a
prime power.  The Frobenius group x -> a*x + b (a != 0) acts through
finite-field arithmetic and therefore requires v to be a prime power.
"""

from __future__ import annotations

import enum
import itertools
from functools import lru_cache

import numpy as np

from .model import Parameters, binomial

# Fixed irreducible polynomials for the small extension fields, written as
# coefficient lists [c0, c1, ..., 1] of c0 + c1*x + ... + x^e.  Any monic
# irreducible gives an isomorphic field; fixing one makes outputs reproducible.
_IRREDUCIBLE = {
    4: [1, 1, 1],            # x^2 + x + 1 over GF(2)
    8: [1, 1, 0, 1],         # x^3 + x + 1
    9: [1, 0, 1],            # x^2 + 1 over GF(3)
    16: [1, 1, 0, 0, 1],     # x^4 + x + 1
    25: [3, 0, 1],           # x^2 + 3 over GF(5)
    27: [1, 2, 0, 1],        # x^3 + 2x + 1
    49: [1, 0, 1],           # x^2 + 1 over GF(7)
}


class GroupKind(enum.Enum):
    TRIVIAL = "trivial"
    CYCLIC = "cyclic"
    FROBENIUS = "frobenius"

    def order(self, v: int) -> int:
        if self is GroupKind.TRIVIAL:
            return 1
        if self is GroupKind.CYCLIC:
            return v
        return v * (v - 1)


def prime_power(v: int):
    """Return (p, e) with v == p**e and p prime, or None."""
    if v < 2:
        return None
    for p in range(2, v + 1):
        if p * p > v and p != v:
            break
        if v % p:
            continue
        e = 0
        m = v
        while m % p == 0:
            m //= p
            e += 1
        return (p, e) if m == 1 else None
    return (v, 1)


class FiniteField:
    """GF(p^e) with full add/mul/neg/inverse lookup tables.

    Symbols are coefficient ranks: symbol s represents the polynomial
    sum_i c_i x^i where (c_0, c_1, ...) are the base-p digits of s.
    """

    def __init__(self, v: int):
        pe = prime_power(v)
        if pe is None:
            raise ValueError(f"{v} is not a prime power")
        self.v = v
        self.p, self.e = pe
        if self.e > 1:
            self.modulus = _IRREDUCIBLE.get(v) or _find_irreducible(self.p, self.e)
        else:
            self.modulus = None
        self.add = np.zeros((v, v), dtype=np.int64)
        self.mul = np.zeros((v, v), dtype=np.int64)
        for a in range(v):
            for b in range(v):
                self.add[a, b] = self._add(a, b)
                self.mul[a, b] = self._mul(a, b)
        self.neg = np.array(
            [next(b for b in range(v) if self.add[a, b] == 0) for a in range(v)],
            dtype=np.int64,
        )
        self.inv = np.zeros(v, dtype=np.int64)  # entry 0 unused
        for a in range(1, v):
            self.inv[a] = next(b for b in range(1, v) if self.mul[a, b] == 1)

    def _digits(self, s: int) -> list:
        d = []
        for _ in range(self.e):
            d.append(s % self.p)
            s //= self.p
        return d

    def _rank(self, digits) -> int:
        s = 0
        for c in reversed(digits):
            s = s * self.p + c
        return s

    def _add(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        return self._rank([(x + y) % self.p for x, y in zip(da, db)])

    def _mul(self, a: int, b: int) -> int:
        # Polynomial product reduced by the fixed irreducible modulus.
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        if self.e == 1:
            return prod[0]
        modulus = self.modulus
        for i in range(len(prod) - 1, self.e - 1, -1):
            c = prod[i]
            if c:
                for j, m in enumerate(modulus[:-1]):
                    prod[i - self.e + j] = (prod[i - self.e + j] - c * m) % self.p
                prod[i] = 0
        return self._rank(prod[: self.e])

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def affine(self, a: int, b: int, x):
        """Apply x -> a*x + b elementwise (x may be an array of symbols)."""
        return self.add[self.mul[a, x], b]


def _find_irreducible(p: int, e: int) -> list:
    # Deterministic fallback: lowest-rank monic irreducible of degree e.
    def reducible(poly):
        # poly irreducible iff it has no root-free factorization; brute force
        # over monic divisors of degree 1..e//2.
        for d in range(1, e // 2 + 1):
            for cand in itertools.product(range(p), repeat=d):
                div = list(cand) + [1]
                if _poly_divides(div, poly, p):
                    return True
        return False

    for tail in itertools.product(range(p), repeat=e):
        poly = list(tail) + [1]
        if not reducible(poly):
            return poly
    raise RuntimeError("no irreducible polynomial found")


def _poly_divides(div, poly, p):
    rem = list(poly)
    dd = len(div) - 1
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            for j in range(dd + 1):
                rem[i - dd + j] = (rem[i - dd + j] - c * div[j]) % p
    return not any(rem[:dd])


@lru_cache(maxsize=None)
def field_for(v: int) -> FiniteField:
    return FiniteField(v)


def canonicalize(group: GroupKind, symbols: tuple, v: int):
    """Map a symbol tuple to its orbit's canonical representative.

    Returns (canonical, is_short).  The cyclic canonical form starts with 0;
    the Frobenius canonical form starts with 0 and has 1 in the first
    position that differs from the first.  Short orbits (constant tuples)
    occur only under Frobenius.
    """
    if group is GroupKind.TRIVIAL:
        return tuple(symbols), False
    if group is GroupKind.CYCLIC:
        s0 = symbols[0]
        return tuple((s - s0) % v for s in symbols), False
    f = field_for(v)
    first = symbols[0]
    j = next((i for i, s in enumerate(symbols) if s != first), None)
    if j is None:
        return (0,) * len(symbols), True
    a = int(f.inv[f.sub(symbols[j], first)])
    return tuple(int(f.mul[a, f.sub(s, first)]) for s in symbols), False


def orbit_count(p: Parameters, group: GroupKind):
    """(full, short) orbit counts over all column t-sets.

    Short orbits (Frobenius constant tuples) are covered for free by the
    appended constant rows, so only full orbits need first-stage coverage.
    """
    eta = binomial(p.k, p.t)
    if group is GroupKind.TRIVIAL:
        return eta * p.v**p.t, 0
    if group is GroupKind.CYCLIC:
        return eta * p.v ** (p.t - 1), 0
    if prime_power(p.v) is None:
        raise ValueError(f"Frobenius group requires a prime-power v, got {p.v}")
    full = (p.v ** (p.t - 1) - 1) // (p.v - 1)
    return eta * full, eta


def develop(array: np.ndarray, group: GroupKind, v: int) -> np.ndarray:
    """Expand every row by the group action.

    Cyclic: v translated copies of each row.  Frobenius: v(v-1) affine
    images of each row, plus the v constant rows appended at the end.
    """
    array = np.asarray(array)
    if group is GroupKind.TRIVIAL:
        return array.copy()
    if group is GroupKind.CYCLIC:
        blocks = [(array + b) % v for b in range(v)]
        return np.concatenate(blocks, axis=0)
    f = field_for(v)
    blocks = [f.affine(a, b, array) for a in range(1, v) for b in range(v)]
    k = array.shape[1]
    const = np.repeat(np.arange(v, dtype=array.dtype), k).reshape(v, k)
    return np.concatenate(blocks + [const], axis=0)


class OrbitTable:
    """Orbit bookkeeping for one (t, v, group): tuple rank <-> orbit index.

    Tuple ranks are mixed-radix big-endian (first column most significant).
    ``orbit_of[rank]`` gives the orbit index, or -1 for members of a short
    orbit (Frobenius only).  Orbit indices follow the rank order of their
    canonical representatives.
    """

    def __init__(self, t: int, v: int, group: GroupKind):
        self.t, self.v, self.group = t, v, group
        self.radix = v ** np.arange(t - 1, -1, -1, dtype=np.int64)
        vt = v**t
        if group is GroupKind.TRIVIAL:
            self.n_orbits = vt
            self.orbit_of = np.arange(vt, dtype=np.int64)
            self.rep_rank = np.arange(vt, dtype=np.int64)
        else:
            canon = np.empty(vt, dtype=np.int64)
            for rank, tup in enumerate(itertools.product(range(v), repeat=t)):
                c, short = canonicalize(group, tup, v)
                canon[rank] = -1 if short else int(np.dot(c, self.radix))
            reps = np.unique(canon[canon >= 0])
            index = {int(r): i for i, r in enumerate(reps)}
            self.n_orbits = len(reps)
            self.orbit_of = np.array(
                [index[int(c)] if c >= 0 else -1 for c in canon], dtype=np.int64
            )
            self.rep_rank = reps
        members = [[] for _ in range(self.n_orbits)]
        for rank, o in enumerate(self.orbit_of):
            if o >= 0:
                members[o].append(rank)
        self.members = [np.array(m, dtype=np.int64) for m in members]

    def unrank(self, rank: int) -> tuple:
        out = []
        for _ in range(self.t):
            out.append(rank % self.v)
            rank //= self.v
        return tuple(reversed(out))

    def rep_symbols(self, orbit: int) -> tuple:
        return self.unrank(int(self.rep_rank[orbit]))


@lru_cache(maxsize=None)
def orbit_table(t: int, v: int, group: GroupKind) -> OrbitTable:
    return OrbitTable(t, v, group)
