"""Arithmetic mod p: Lucas binomials, multinomials, sparse elimination, partitions.

Scalars are plain ints reduced into ``range(p)``. Sparse vectors are dicts
``{index: coeff}`` with no stored zeros; keys may be any hashable, sortable
objects so that basis monomials can be used directly as coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Sequence


class NotPrimeError(ValueError):
    pass


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrimeError(f"{p!r} is not a prime")
    return p


def check_odd_prime(p: int) -> int:
    check_prime(p)
    if p == 2:
        raise ValueError("this construction needs an odd prime")
    return p


def trim(seq: Iterable[int]) -> tuple[int, ...]:
    """Canonical exponent sequence: a tuple with trailing zeros removed."""
    t = list(seq)
    while t and t[-1] == 0:
        t.pop()
    return tuple(t)


def _digits(n: int, p: int) -> list[int]:
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


@lru_cache(maxsize=1 << 16)
def _small_binom(n: int, k: int) -> int:
    # n < p, exact value is fine
    r = 1
    for i in range(k):
        r = r * (n - i) // (i + 1)
    return r


def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem.

    Convention: 0 when k < 0, when k > n >= 0, and whenever n < 0.
    """
    check_prime(p)
    if k < 0 or n < 0 or k > n:
        return 0
    result = 1
    while k:
        n, ni = divmod(n, p)
        k, ki = divmod(k, p)
        if ki > ni:
            return 0
        result = result * _small_binom(ni, ki) % p
    return result


def multinom_mod_p(parts: Sequence[int], p: int) -> int:
    """(sum parts)! / prod(parts!) mod p, as a product of Lucas binomials."""
    check_prime(p)
    if any(r < 0 for r in parts):
        raise ValueError("multinomial parts must be nonnegative")
    total = 0
    result = 1
    for r in parts:
        total += r
        result = result * binom_mod_p(total, r, p) % p
        if not result:
            return 0
    return result


def inv_mod(a: int, p: int) -> int:
    return pow(a % p, -1, p)


# ---------------------------------------------------------------------------
# sparse vectors


def vec_add(acc: dict, other: dict, p: int, scale: int = 1) -> dict:
    """acc += scale * other, in place; returns acc."""
    for key, c in other.items():
        v = (acc.get(key, 0) + scale * c) % p
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)
    return acc


def vec_scale(v: dict, c: int, p: int) -> dict:
    c %= p
    if not c:
        return {}
    return {k: x * c % p for k, x in v.items()}


class EchelonBasis:
    """Incrementally reduced set of sparse vectors over F_p.

    Each stored vector is monic at its pivot (its smallest key) and pivots
    are distinct. Only forward reduction is maintained, which is enough for
    rank and membership. With ``track=True`` every stored vector remembers
    the input combination that produced it, so kernel vectors and preimages
    can be read off.
    """

    def __init__(self, p: int, track: bool = False):
        self.p = p
        self.track = track
        self.rows: dict[Hashable, dict] = {}
        self.combos: dict[Hashable, dict] = {}
        self.kernel: list[dict] = []
        self._count = 0

    def reduce(self, v: dict, combo: dict | None = None) -> tuple[dict, dict | None]:
        p = self.p
        v = dict(v)
        combo = dict(combo) if combo is not None else None
        while v:
            piv = min(v)
            row = self.rows.get(piv)
            if row is None:
                break
            c = v[piv]
            vec_add(v, row, p, -c)
            if combo is not None:
                vec_add(combo, self.combos[piv], p, -c)
        return v, combo

    def add(self, v: dict) -> bool:
        """Insert v; returns True if it was independent of what is stored."""
        idx = self._count
        self._count += 1
        combo = {idx: 1} if self.track else None
        v, combo = self.reduce(v, combo)
        if not v:
            if self.track:
                self.kernel.append(combo)
            return False
        piv = min(v)
        inv = inv_mod(v[piv], self.p)
        self.rows[piv] = vec_scale(v, inv, self.p)
        if self.track:
            self.combos[piv] = vec_scale(combo, inv, self.p)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def sparse_rank(vectors: Iterable[dict], p: int) -> int:
    eb = EchelonBasis(p)
    for v in vectors:
        eb.add(v)
    return eb.rank


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class FpMatrix:
    """Sparse matrix over F_p stored as (row, col) -> nonzero entry."""

    rows: int
    cols: int
    p: int
    entries: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        check_prime(self.p)
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v %= self.p
            if v:
                clean[i, j] = v
        object.__setattr__(self, "entries", clean)

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.p, self.entries) == (
            other.rows, other.cols, other.p, other.entries)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], p: int) -> "FpMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        ent = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v % p}
        return cls(nr, nc, p, ent)

    @classmethod
    def from_columns(cls, columns: Sequence[dict], row_keys: Sequence, p: int) -> "FpMatrix":
        """Build from sparse column vectors keyed by ``row_keys`` entries."""
        index = {k: i for i, k in enumerate(row_keys)}
        ent = {}
        for j, col in enumerate(columns):
            for k, v in col.items():
                ent[index[k], j] = v
        return cls(len(row_keys), len(columns), p, ent)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> dict:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def columns(self) -> list[dict]:
        cols: list[dict] = [{} for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def apply(self, vec: Sequence[int]) -> list[int]:
        out = [0] * self.rows
        for (i, j), v in self.entries.items():
            out[i] = (out[i] + v * vec[j]) % self.p
        return out


def rank_and_kernel(m: FpMatrix) -> tuple[int, list[list[int]]]:
    """Rank of m and a basis of its right kernel (as dense coefficient lists)."""
    eb = EchelonBasis(m.p, track=True)
    for col in m.columns():
        eb.add(col)
    kernel = []
    for combo in eb.kernel:
        vec = [0] * m.cols
        for j, c in combo.items():
            vec[j] = c
        kernel.append(vec)
    return eb.rank, kernel


def solve(columns: Sequence[dict], target: dict, p: int) -> dict | None:
    """Find coefficients c with sum c_j columns[j] == target, or None."""
    eb = EchelonBasis(p, track=True)
    for col in columns:
        eb.add(col)
    residue, combo = eb.reduce(target, {})
    if residue:
        return None
    # reduce(target) subtracted combo-weighted columns; negate to get the solution
    return {j: (-c) % p for j, c in combo.items() if (-c) % p}


# ---------------------------------------------------------------------------
# combinatorics


@lru_cache(maxsize=None)
def _partitions_bounded(n: int, smallest: int) -> int:
    if n == 0:
        return 1
    return sum(_partitions_bounded(n - k, k) for k in range(smallest, n + 1))


def partitions_min2(n: int) -> int:
    """Number of partitions of n into parts >= 2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _partitions_bounded(n, 2)


def monomial_counts(weights: Sequence[int], bound: int) -> list[int]:
    """Coefficients of prod 1/(1 - x^w) up to x^bound."""
    counts = [0] * (bound + 1)
    counts[0] = 1
    for w in weights:
        if w <= 0:
            raise ValueError("weights must be positive")
        for d in range(w, bound + 1):
            counts[d] += counts[d - w]
    return counts
