"""Exact sparse linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`.  Matrices are immutable
:class:`SparseMatrix` values; every elimination routine works on a private
copy of the rows.

Two rank routines are provided.  :func:`rank` is plain sparse elimination
over Q and serves as the reference.  :func:`rank_certified` runs dense
elimination modulo random primes above 2**30 (numpy, int64) and only
returns a modular rank after proving it is the rational rank: either the
modular rank is already maximal, or a kernel basis is lifted from Z/p to Q
by rational reconstruction and checked exactly against the matrix.
"""

from __future__ import annotations

import heapq
import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

Rational = Fraction

__all__ = [
    "Rational",
    "SparseMatrix",
    "rank",
    "kernel_basis",
    "rank_certified",
    "rank_mod_p",
]


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], Fraction]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "SparseMatrix":
        nrows = len(rows)
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = Fraction(v)
        return cls(nrows, ncols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Fraction]], rows: int) -> "SparseMatrix":
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                entries[(i, j)] = v
        return cls(rows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.entries.get(key, Fraction(0))

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    T = property(transpose)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), v in self.entries.items():
            for j, w in right[k].items():
                acc[(i, j)] = acc.get((i, j), 0) + v * w
        return SparseMatrix(self.rows, other.cols, acc)

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            if vec[j]:
                out[i] += v * vec[j]
        return out

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        entries = dict(self.entries)
        for (i, j), v in other.entries.items():
            entries[(i, j + self.cols)] = v
        return SparseMatrix(self.rows, self.cols + other.cols, entries)

    def select_rows(self, keep: Sequence[int]) -> "SparseMatrix":
        pos = {r: k for k, r in enumerate(keep)}
        return SparseMatrix(
            len(keep), self.cols, {(pos[i], j): v for (i, j), v in self.entries.items() if i in pos}
        )

    def select_columns(self, keep: Sequence[int]) -> "SparseMatrix":
        pos = {c: k for k, c in enumerate(keep)}
        return SparseMatrix(
            self.rows, len(keep), {(i, pos[j]): v for (i, j), v in self.entries.items() if j in pos}
        )

    def is_zero(self) -> bool:
        return not self.entries


# ---------------------------------------------------------------------------
# exact elimination over Q


def _eliminate(rows: list[dict[int, Fraction]]) -> list[tuple[int, dict[int, Fraction]]]:
    """Sparse Gaussian elimination with a Markowitz-style pivot choice.

    Returns the pivot rows as (pivot column, row) pairs; each pivot row is
    normalised to 1 at its pivot and the pivot columns are distinct.  The
    remaining rows have been reduced to zero.
    """
    active = [dict(r) for r in rows if r]
    colcount: dict[int, int] = {}
    for r in active:
        for j in r:
            colcount[j] = colcount.get(j, 0) + 1
    pivots: list[tuple[int, dict[int, Fraction]]] = []
    while active:
        # sparsest row, then its sparsest column: cheap proxy for minimum fill
        k = min(range(len(active)), key=lambda t: len(active[t]))
        prow = active.pop(k)
        pcol = min(prow, key=lambda j: (colcount.get(j, 0), j))
        inv = 1 / prow[pcol]
        prow = {j: v * inv for j, v in prow.items()}
        for j in prow:
            colcount[j] -= 1
        survivors = []
        for r in active:
            f = r.get(pcol)
            if f is None:
                survivors.append(r)
                continue
            for j in r:
                colcount[j] -= 1
            for j, v in prow.items():
                nv = r.get(j, 0) - f * v
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
            if r:
                for j in r:
                    colcount[j] = colcount.get(j, 0) + 1
                survivors.append(r)
        active = survivors
        pivots.append((pcol, prow))
    return pivots


def rank(M: SparseMatrix) -> int:
    """Rank of ``M`` over Q by exact sparse elimination."""
    if M.rows <= M.cols:
        return len(_eliminate(M.row_dicts()))
    return len(_eliminate(M.column_dicts()))


def _rref(rows: list[dict[int, Fraction]]) -> list[tuple[int, dict[int, Fraction]]]:
    pivots = _eliminate(rows)
    pivots.sort(key=lambda t: t[0])
    # back substitution: clear each pivot column from every other pivot row
    for a in range(len(pivots) - 1, -1, -1):
        ca, ra = pivots[a]
        for b in range(len(pivots)):
            if b == a:
                continue
            rb = pivots[b][1]
            f = rb.get(ca)
            if f is None:
                continue
            for j, v in ra.items():
                nv = rb.get(j, 0) - f * v
                if nv:
                    rb[j] = nv
                else:
                    rb.pop(j, None)
    return pivots


def kernel_basis(M: SparseMatrix) -> list[list[Fraction]]:
    """Basis of the right kernel of ``M``, one vector per free column.

    Each vector has a 1 in its free column and zeros in the other free
    columns, so the basis is the reduced-echelon one and independent by
    construction.
    """
    pivots = _rref(M.row_dicts())
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for f in range(M.cols):
        if f in pivot_cols:
            continue
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for c, row in pivots:
            x = row.get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# modular rank with exact certification

_PRIME_LO = 2**30
_PRIME_HI = 2**31 - 1
_prime_rng = random.Random(0x6B6F737A)
_prime_pool: list[int] = []
_POOL_SIZE = 64
# below this many entries plain elimination over Q beats the modular machinery
_SMALL = 64
# largest Markowitz cost (row fill x column fill) accepted for a unit pivot
_UNIT_COST = 400

# how rank_certified concluded: "exact", "unit", "full", "kernel" or "fallback"; diagnostics only
certification_counts: Counter = Counter()


def _random_prime(exclude: Sequence[int] = ()) -> int:
    """A random prime in (2**30, 2**31), drawn from a lazily filled pool."""
    if len(_prime_pool) < _POOL_SIZE or len(exclude) >= len(_prime_pool) // 2:
        from sympy import nextprime

        while True:
            p = int(nextprime(_prime_rng.randrange(_PRIME_LO, _PRIME_HI - 2**16)))
            if p < _PRIME_HI and p not in _prime_pool:
                _prime_pool.append(p)
                return p
    while True:
        p = _prime_rng.choice(_prime_pool)
        if p not in exclude:
            return p


def _integer_rows(M: SparseMatrix) -> list[dict[int, int]]:
    """Rows of ``M`` scaled by their denominators' lcm (rank preserving)."""
    out = []
    for row in M.row_dicts():
        den = 1
        for v in row.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        out.append({j: int(v * den) for j, v in row.items()})
    return out


def _dense_mod(rows: list[dict[int, int]], ncols: int, p: int) -> np.ndarray:
    A = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, v in row.items():
            A[i, j] = v % p
    return A


def _rref_mod(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``A`` over Z/p; requires p < 2**31."""
    A = A.copy()
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = (A[r, c:] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit, c:] = (A[hit, c:] - np.outer(col[hit], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(M: SparseMatrix, p: int) -> int:
    """Rank of ``M`` reduced modulo ``p``.  Never exceeds the rational rank."""
    if M.rows == 0 or M.cols == 0:
        return 0
    rows = _integer_rows(M)
    return len(_rref_mod(_dense_mod(rows, M.cols, p), p)[1])


def _ratrecon(a: int, m: int) -> tuple[int, int] | None:
    """Rational reconstruction of a mod m as (num, den), |num|, den <= sqrt(m/2)."""
    bound = math.isqrt(m // 2)
    a %= m
    if a <= bound:
        return a, 1
    if m - a <= bound:
        return a - m, 1
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    if s1 < 0:
        return -r1, -s1
    return r1, s1


def _mod_kernel(rows: list[dict[int, int]], ncols: int, p: int):
    """Mod-p pivot columns and reduced kernel basis (one row per free column)."""
    R, pivots = _rref_mod(_dense_mod(rows, ncols, p), p)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    K = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        K[k, f] = 1
        if pivots:
            K[k, pivots] = (-R[:, f]) % p
    return pivots, K


def _lift_kernel(combined: list[list[int]], modulus: int) -> list[dict[int, int]] | None:
    """Reconstruct each modular kernel vector as a sparse integer vector.

    Vectors are scaled by the lcm of their denominators, which keeps the
    1 at the free column nonzero and every other free column zero.
    """
    out = []
    for row in combined:
        fracs = {}
        for j, x in enumerate(row):
            if x:
                nd = _ratrecon(x, modulus)
                if nd is None:
                    return None
                fracs[j] = nd
        den = 1
        for _, d in fracs.values():
            den = den * d // math.gcd(den, d)
        out.append({j: num * (den // d) for j, (num, d) in fracs.items()})
    return out


def _verify_kernel(columns: list[dict[int, int]], vectors: list[dict[int, int]]) -> bool:
    """Exact check that every vector is annihilated, over the integers."""
    for v in vectors:
        acc: dict[int, int] = {}
        for j, c in v.items():
            for i, a in columns[j].items():
                acc[i] = acc.get(i, 0) + a * c
        if any(acc.values()):
            return False
    return True


def _unit_pivot_reduce(
    rows: list[dict[int, int]], max_cost: int = _UNIT_COST
) -> tuple[int, list[dict[int, int]]]:
    """Eliminate on entries equal to +-1 while the Markowitz cost stays small.

    A unit pivot keeps every entry an integer, so this is exact.  Returns
    the number of pivots taken and the remaining (Schur complement) rows;
    the rank of the input is their sum's rank plus the pivot count.
    """
    active = {i: dict(r) for i, r in enumerate(rows) if r}
    colrows: dict[int, set[int]] = {}
    for i, r in active.items():
        for j in r:
            colrows.setdefault(j, set()).add(i)

    def cost(i, j):
        return (len(active[i]) - 1) * (len(colrows[j]) - 1)

    heap = [(cost(i, j), i, j) for i, r in active.items() for j, v in r.items() if v in (1, -1)]
    heapq.heapify(heap)
    count = 0
    while heap:
        c, i, j = heapq.heappop(heap)
        r = active.get(i)
        if r is None or r.get(j) not in (1, -1):
            continue
        now = cost(i, j)
        if now != c:
            heapq.heappush(heap, (now, i, j))
            continue
        if c > max_cost:
            break
        piv = r[j]
        del active[i]
        for k in r:
            colrows[k].discard(i)
        for s in list(colrows[j]):
            other = active[s]
            f = other[j] * piv  # other[j] / piv for piv = +-1
            for k, v in r.items():
                nv = other.get(k, 0) - f * v
                if nv:
                    if k not in other:
                        colrows[k].add(s)
                    other[k] = nv
                    if nv in (1, -1):
                        heapq.heappush(heap, (0, s, k))
                else:
                    other.pop(k, None)
                    colrows[k].discard(s)
            if not other:
                del active[s]
        del colrows[j]
        count += 1
    return count, [r for r in active.values() if r]


def rank_certified(M: SparseMatrix, max_primes: int = 6) -> int:
    """Rank of ``M`` over Q, found modulo primes and proven exactly.

    Unit pivots are first eliminated exactly over the integers.  On what
    remains, a modular rank r is a lower bound for the rational rank.  It
    is returned when it equals min(rows, cols), or when ``size - r``
    independent rational kernel vectors (of the remainder or of its
    transpose, whichever side is smaller) are reconstructed from the
    modular kernel and verified to be annihilated exactly.  If
    reconstruction keeps failing, falls back to :func:`rank`.
    """
    if M.rows == 0 or M.cols == 0 or not M.entries:
        return 0
    if M.rows * M.cols <= _SMALL:
        certification_counts["exact"] += 1
        return rank(M)
    pivots, rest = _unit_pivot_reduce(_integer_rows(M))
    if not rest:
        certification_counts["unit"] += 1
        return pivots
    colmap = {j: k for k, j in enumerate(sorted({j for r in rest for j in r}))}
    rest = [{colmap[j]: v for j, v in r.items()} for r in rest]
    return pivots + _rank_certified_int(rest, len(colmap), max_primes)


def _transpose_rows(rows: list[dict[int, int]], ncols: int) -> list[dict[int, int]]:
    out: list[dict[int, int]] = [{} for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, a in row.items():
            out[j][i] = a
    return out


def _rank_certified_int(rows: list[dict[int, int]], ncols: int, max_primes: int) -> int:
    nrows = len(rows)
    full = min(nrows, ncols)
    if nrows * ncols <= _SMALL:
        certification_counts["exact"] += 1
        return rank(SparseMatrix.from_rows([[r.get(j, 0) for j in range(ncols)] for r in rows], ncols))
    # the kernel of the side with fewer columns has the fewer vectors
    if nrows < ncols:
        rows, nrows, ncols = _transpose_rows(rows, ncols), ncols, nrows
    columns = _transpose_rows(rows, ncols)

    best_rank = -1
    key = None
    residues: list[np.ndarray] = []
    moduli: list[int] = []
    used: list[int] = []
    for _ in range(max_primes):
        p = _random_prime(used)
        used.append(p)
        pivots, K = _mod_kernel(rows, ncols, p)
        r = len(pivots)
        if r < best_rank:
            continue  # unlucky prime
        if r > best_rank or tuple(pivots) != key:
            best_rank, key = r, tuple(pivots)
            residues, moduli = [], []
        if r == full:
            certification_counts["full"] += 1
            return r
        residues.append(K)
        moduli.append(p)
        combined, modulus = _crt(residues, moduli)
        vectors = _lift_kernel(combined, modulus)
        if vectors is not None and _verify_kernel(columns, vectors):
            certification_counts["kernel"] += 1
            return ncols - len(vectors)
    certification_counts["fallback"] += 1
    return rank(SparseMatrix(nrows, ncols, {(i, j): v for i, r in enumerate(rows) for j, v in r.items()}))


def _crt(residues: list[np.ndarray], moduli: list[int]) -> tuple[list[list[int]], int]:
    if len(residues) == 1:
        return residues[0].tolist(), moduli[0]
    modulus = 1
    acc = [[0] * residues[0].shape[1] for _ in range(residues[0].shape[0])]
    for K, p in zip(residues, moduli):
        # x = acc + modulus * t,  t = (k - acc) / modulus  (mod p)
        inv = pow(modulus % p, -1, p)
        for i, row in enumerate(K.tolist()):
            cur = acc[i]
            for j, k in enumerate(row):
                t = ((k - cur[j]) * inv) % p
                cur[j] = cur[j] + modulus * t
        modulus *= p
    return acc, modulus


def rank_of_vectors(vectors: Iterable[Sequence], length: int) -> int:
    vecs = [list(v) for v in vectors]
    if not vecs:
        return 0
    return rank(SparseMatrix.from_rows(vecs, length))
